"""Acceptance suite: one test per release criterion.

Each criterion prints a single pass/fail line (on the real stdout so it
survives pytest capture) with its runtime against the stated budget.
"""

import hashlib
import itertools
import math
import random
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import make_doc
from newsauth.corpus import write_articles
from newsauth.features import extract
from newsauth.gbt import GbtConfig, train_gbt
from newsauth.neural import Adam, BiLstmConfig, BiLstmModel, MlpConfig, MlpModel
from newsauth.pipeline import PipelineConfig, run_experiment
from newsauth.sequences import TagVocabulary, encode
from newsauth.study import StudyStore
from newsauth.synthetic import make_synthetic_corpus
from test_gbt import brute_force_first_split
from test_neural import finite_difference, max_relative_error


@contextmanager
def criterion(name: str, budget_seconds: float):
    """Times one criterion and records its pass/fail line.

    The line prints immediately (visible with -s) and again in the
    terminal summary, which survives pytest's fd-level capture.
    """
    from conftest import ACCEPTANCE_RESULTS

    start = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_RESULTS.append((name, False, elapsed, budget_seconds))
        print(f"[FAIL] {name} ({elapsed:.2f}s / budget {budget_seconds:g}s)",
              file=sys.__stdout__, flush=True)
        raise
    elapsed = time.perf_counter() - start
    ACCEPTANCE_RESULTS.append((name, True, elapsed, budget_seconds))
    print(f"[PASS] {name} ({elapsed:.2f}s / budget {budget_seconds:g}s)",
          file=sys.__stdout__, flush=True)
    assert elapsed < budget_seconds, f"{name} exceeded its runtime budget"


# --------------------------------------------------------------------------
# criterion 1: feature oracle suite

# (tokens, tags, sentence count, expected 13-tuple); expectations are
# hand-counted fractions, written out literally
FEATURE_ORACLES = [
    (
        ["Hello", ",", "world", "!"], ["UH", ",", "NN", "."], 1,
        (2 / 4, 0.0, 4.0, 12 / 4, 0.0, 1 / 4, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    ),
    (
        ["the", "cat", "sat", "on", "the", "mat"], ["DT", "NN", "VBD", "IN", "DT", "NN"], 1,
        (0.0, 3 / 6, 6.0, 17 / 6, 0.0, 2 / 6, 0.0, 1 / 6, 0.0, 0.0, 0.0, 2 / 6, 1 / 6),
    ),
    (
        ["Hi", ".", "Go", "now", "."], ["UH", ".", "VB", "RB", "."], 2,
        (2 / 5, 1 / 5, 5 / 2, 9 / 5, 0.0, 0.0, 0.0, 0.0, 1 / 5, 0.0, 0.0, 0.0, 1 / 5),
    ),
    (
        [".", ",", ";", "!"], [".", ",", ":", "."], 1,
        (1.0, 0.0, 4.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
    ),
    (
        ["Which", "experts", "might", "disagree", "?"], ["WDT", "NNS", "MD", "VB", "."], 1,
        (1 / 5, 1 / 5, 5.0, 26 / 5, 0.0, 1 / 5, 0.0, 0.0, 0.0, 1 / 5, 1 / 5, 0.0, 1 / 5),
    ),
    (
        ["It", "'s", "fine", ".", "They", "do", "n't", "care", "."],
        ["PRP", "VBZ", "JJ", ".", "PRP", "VBP", "RB", "VB", "."], 2,
        (2 / 9, 3 / 9, 9 / 2, 23 / 9, 1 / 9, 0.0, 0.0, 0.0, 1 / 9, 0.0, 0.0, 0.0, 3 / 9),
    ),
    (
        ["The", "quick", "brown", "fox", "jumps", "over", "the", "lazy", "dog", "."],
        ["DT", "JJ", "JJ", "NN", "VBZ", "IN", "DT", "JJ", "NN", "."], 1,
        (1 / 10, 3 / 10, 10.0, 36 / 10, 3 / 10, 2 / 10, 0.0, 1 / 10, 0.0, 0.0, 0.0,
         2 / 10, 1 / 10),
    ),
    (
        ["Costs", "$", "3.88", "now", "!"], ["VBZ", "$", "CD", "RB", "."], 1,
        (2 / 5, 1 / 5, 5.0, 14 / 5, 0.0, 0.0, 0.0, 0.0, 1 / 5, 0.0, 0.0, 0.0, 1 / 5),
    ),
    (
        ["He", "and", "she", "walked", "from", "Paris", "to", "Berlin", "."],
        ["PRP", "CC", "PRP", "VBD", "IN", "NNP", "TO", "NNP", "."], 1,
        (1 / 9, 5 / 9, 9.0, 32 / 9, 0.0, 2 / 9, 1 / 9, 1 / 9, 0.0, 0.0, 0.0, 0.0, 1 / 9),
    ),
    (
        ["Walk", "slowly", ".", "Speak", "clearly", ".", "Think", "deeply", "."],
        ["VB", "RB", ".", "VB", "RB", ".", "VB", "RB", "."], 3,
        (3 / 9, 0.0, 3.0, 36 / 9, 0.0, 0.0, 0.0, 0.0, 3 / 9, 0.0, 0.0, 0.0, 3 / 9),
    ),
]


def test_feature_oracle_suite():
    with criterion("feature oracle suite (10 documents, 13 features, 1e-12)", 1.0):
        for tokens, tags, n_sentences, expected in FEATURE_ORACLES:
            if n_sentences == 1:
                bounds = ((0, len(tokens)),)
            else:
                cuts = [i + 1 for i, t in enumerate(tokens) if t in (".", "!", "?")]
                starts = [0] + cuts[:-1]
                bounds = tuple(zip(starts, cuts))
            doc = make_doc(tokens, tags, bounds=bounds)
            assert doc.n_sentences == n_sentences
            values = extract(doc).values
            for got, want in zip(values, expected):
                assert abs(got - want) <= 1e-12, (tokens, values, expected)


# --------------------------------------------------------------------------
# criterion 2: encoding suite


def test_encoding_suite():
    with criterion("encoding suite (1000 randomized documents)", 5.0):
        known_tags = ["NN", "VB", "DT", "JJ", "IN", "RB", "CC", "MD"]
        vocab = TagVocabulary({tag: i + 2 for i, tag in enumerate(known_tags)})
        rng = random.Random(20_24)
        for _ in range(1000):
            length = rng.randint(1, 400)
            tags = [
                rng.choice(known_tags) if rng.random() < 0.9 else f"UNSEEN{rng.randint(0, 3)}"
                for _ in range(length)
            ]
            values = encode(vocab, make_doc(["w"] * length, tags), length=200).values
            assert len(values) == 200
            expected_tail = [vocab.index.get(t, 1) for t in tags][-200:]
            assert list(values[200 - len(expected_tail):]) == expected_tail
            assert all(v == 0 for v in values[:200 - len(expected_tail)])
            if length >= 200:
                assert values[0] != 0 or tags[-200] not in known_tags or True
                assert 0 not in values  # no padding once content fills the window
            first_content = next(i for i, v in enumerate(values) if v != 0)
            assert all(v != 0 for v in values[first_content:])


# --------------------------------------------------------------------------
# criterion 3: boosted-tree split oracle and loss monotonicity


def test_gbt_oracle():
    with criterion("gbt split oracle (exhaustive <=6x2 grid) + loss monotonicity", 30.0):
        small = GbtConfig(learning_rate=0.5, max_depth=1, num_rounds=1, min_child_weight=0.0)
        for n in range(2, 7):
            column0 = np.arange(n, dtype=np.float64)
            column1 = np.array([2.0, 0.0, 1.0, 1.0, 3.0, 0.5][:n])
            for d in (1, 2):
                X = np.stack([column0, column1][:d], axis=1)
                for bits in itertools.product((0.0, 1.0), repeat=n):
                    if len(set(bits)) < 2:
                        continue
                    y = np.array(bits)
                    gain, feature, threshold = brute_force_first_split(X, y)
                    root = train_gbt(X, y, config=small).trees[0]
                    if gain <= 0.0:
                        assert root.is_leaf
                    else:
                        assert (root.feature, root.threshold) == (feature, threshold)

        rng = np.random.default_rng(0)
        X = rng.normal(size=(200, 13))
        y = (rng.random(200) < 0.5).astype(np.float64)
        log = train_gbt(X, y, config=GbtConfig(num_rounds=100, learning_rate=0.1)).training_log
        losses = [entry["train_loss"] for entry in log]
        assert len(losses) == 100
        assert all(later <= earlier + 1e-12 for earlier, later in zip(losses, losses[1:]))


# --------------------------------------------------------------------------
# criterion 4: gradient checks


def test_gradient_checks():
    # central differences are meaningless within eps of a ReLU kink, so
    # inputs are redrawn (deterministically) until every preactivation
    # clears the kink by a safe margin
    clearance = 5e-3

    with criterion("gradient checks (MLP + downsized BiLSTM, 5 seeds, <1e-3)", 60.0):
        for seed in range(5):
            mlp = MlpModel(MlpConfig(n_inputs=5, hidden1=4, hidden2=3))
            params = mlp.init_params(seed=seed)
            params["b1"] += 0.25
            params["b2"] += 0.15
            rng = np.random.default_rng(seed)
            for _ in range(100):
                X = rng.normal(size=(6, 5))
                z1 = X @ params["w1"] + params["b1"]
                z2 = np.maximum(z1, 0.0) @ params["w2"] + params["b2"]
                if min(np.abs(z1).min(), np.abs(z2).min()) > clearance:
                    break
            else:
                pytest.fail("no kink-free input found")
            y = (rng.random(6) < 0.5).astype(np.float64)
            if y.min() == y.max():
                y[0] = 1.0 - y[0]
            _, analytic = mlp.loss_and_grads(params, X, y)
            numeric = finite_difference(mlp, params, X, y, masks=None)
            assert max_relative_error(analytic, numeric) < 1e-3

        config = BiLstmConfig(vocab_size=10, embed_dim=8, hidden=6, dense_units=4, seq_len=12)
        skip = lambda name, idx: name == "embedding" and idx < config.embed_dim  # noqa: E731
        for seed in range(5):
            model = BiLstmModel(config)
            params = model.init_params(seed=seed)
            params["bd1"] += 0.2
            rng = np.random.default_rng(1000 + seed)
            for _ in range(100):
                ids = rng.integers(0, config.vocab_size + 2, size=(3, config.seq_len))
                ids[0, :4] = 0
                masks = model.make_masks(rng, 3)
                cache = {}
                model.forward(params, ids, masks=masks, cache=cache)
                if np.abs(cache["z1"]).min() > clearance:
                    break
            else:
                pytest.fail("no kink-free input found")
            y = np.array([0.0, 1.0, float(rng.integers(0, 2))])
            _, analytic = model.loss_and_grads(params, ids, y, masks=masks)
            numeric = finite_difference(model, params, ids, y, masks, skip=skip)
            assert max_relative_error(analytic, numeric, skip=skip) < 1e-3


# --------------------------------------------------------------------------
# criterion 5: BiLSTM overfit sanity


def test_bilstm_overfit_sanity():
    with criterion("BiLSTM overfit sanity (32 examples, 100% within 200 epochs)", 120.0):
        rng = np.random.default_rng(1)
        ids = np.zeros((32, 200), dtype=np.intp)
        y = np.zeros(32)
        for k in range(32):
            cls = k % 2
            length = int(rng.integers(20, 200))
            pool = np.array([2, 3]) if cls == 0 else np.array([4, 5])
            ids[k, 200 - length:] = pool[rng.integers(0, 2, size=length)]
            y[k] = cls

        model = BiLstmModel(BiLstmConfig(vocab_size=4))
        params = model.init_params(seed=0)
        optimizer = Adam(params, learning_rate=1e-3)
        mask_rng = np.random.default_rng(0)
        reached = None
        for epoch in range(1, 201):
            masks = model.make_masks(mask_rng, 32)
            _, grads = model.loss_and_grads(params, ids, y, masks=masks)
            optimizer.step(params, grads)
            accuracy = float(np.mean((model.predict_proba(params, ids) >= 0.5) == y))
            if accuracy == 1.0:
                reached = epoch
                break
        assert reached is not None, "did not reach 100% training accuracy in 200 epochs"


# --------------------------------------------------------------------------
# criterion 6: end-to-end synthetic benchmark


def test_end_to_end_synthetic_benchmark(tmp_path):
    with criterion("end-to-end synthetic benchmark (1000 articles, all >=95%)", 600.0):
        corpus = tmp_path / "synthetic.jsonl"
        write_articles(make_synthetic_corpus(1000, seed=7), corpus)
        config = PipelineConfig(
            corpus=str(corpus),
            out_dir=str(tmp_path / "bench"),
            seed=1,
            bilstm_epochs=15,
            bilstm_patience=5,
        )
        reports = run_experiment(config)
        for name, report in reports.items():
            assert report.accuracy >= 0.95, f"{name}: {report.accuracy:.4f}"
        ordering = " >= ".join(
            f"{name}={reports[name].accuracy:.4f}"
            for name in sorted(reports, key=lambda n: -reports[n].accuracy)
        )
        matches = (reports["bilstm"].accuracy >= reports["mlp"].accuracy
                   >= reports["gbt"].accuracy)
        print(f"[REPORT] accuracy ordering this run: {ordering} "
              f"(published ordering bilstm >= mlp >= gbt "
              f"{'matched' if matches else 'not matched; corpus-dependent'})",
              file=sys.__stdout__, flush=True)


# --------------------------------------------------------------------------
# criterion 7: determinism of training and evaluation


def test_determinism(tmp_path):
    with criterion("determinism (rerun -> byte-identical models and reports)", 300.0):
        corpus = tmp_path / "corpus.jsonl"
        write_articles(make_synthetic_corpus(80, seed=13), corpus)
        digests = []
        for run in ("first", "second"):
            out = tmp_path / run
            config = PipelineConfig(
                corpus=str(corpus), out_dir=str(out), seed=3,
                sequence_length=80, gbt_rounds=25, mlp_epochs=8,
                bilstm_embed=16, bilstm_hidden=8, bilstm_dense=6,
                bilstm_epochs=4, bilstm_patience=4,
            )
            run_experiment(config)
            digests.append({
                p.name: hashlib.sha256(p.read_bytes()).hexdigest()
                for p in sorted(out.iterdir())
            })
        assert digests[0] == digests[1]


# --------------------------------------------------------------------------
# criterion 8: study-service statistics


def test_study_service_statistics(tmp_path):
    with criterion("study service (63 random guessers in [0.37, 0.63] + reference)", 5.0):
        articles = make_synthetic_corpus(40, seed=3)
        store = StudyStore(articles, [a.id for a in articles],
                          tmp_path / "events.jsonl", seed=2024)
        rng = random.Random(99)
        for _ in range(63):
            session = store.create_session()
            for article_id in session.article_ids:
                store.submit_answer(session.session_id, article_id,
                                    rng.choice(["human", "llm"]))
        stats = store.stats()
        assert stats.participants == 63
        assert 0.37 <= stats.mean_accuracy <= 0.63
        payload = stats.to_payload()
        assert payload["reference_human_accuracy"] == 0.5778


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
