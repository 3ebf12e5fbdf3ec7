"""End-to-end experiment orchestration: featurize, train, evaluate, report.

Every stage is deterministic for a fixed seed and configuration, so
rerunning an experiment reproduces all artifacts byte-identically.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import features as feats
from . import sequences as seqs
from .corpus import NewsArticle, SplitManifest, ingest, label_to_int, split
from .evaluation import EvalReport, comparison_table, evaluate, fingerprint_file
from .gbt import GbtConfig, GbtEnsemble, predict_proba, train_gbt
from .modelio import load_model, save_model
from .neural import (
    BiLstmConfig,
    BiLstmModel,
    MlpConfig,
    MlpModel,
    TrainConfig,
    train_model,
)
from .textproc import TaggedDocument, TaggerModel, analyze, default_tagger

MODEL_KINDS = ("gbt", "mlp", "bilstm")


@dataclass(frozen=True)
class PipelineConfig:
    corpus: str = ""
    out_dir: str = ""
    seed: int = 0
    fractions: str = "0.70,0.15,0.15"
    sequence_length: int = 200
    scale_for_trees: bool = False
    tagger: str = ""  # empty -> bundled pretrained model
    gbt_learning_rate: float = 0.02
    gbt_max_depth: int = 4
    gbt_rounds: int = 500
    gbt_early_stop: int = 30
    gbt_min_child_weight: float = 1.0
    gbt_lambda: float = 1.0
    mlp_hidden1: int = 16
    mlp_hidden2: int = 8
    mlp_learning_rate: float = 1e-3
    mlp_batch_size: int = 32
    mlp_epochs: int = 50
    mlp_patience: int = 5
    bilstm_embed: int = 150
    bilstm_hidden: int = 64
    bilstm_dense: int = 32
    bilstm_dropout: float = 0.2
    bilstm_recurrent_dropout: float = 0.2
    bilstm_learning_rate: float = 1e-3
    bilstm_batch_size: int = 32
    bilstm_epochs: int = 50
    bilstm_patience: int = 5

    def fraction_values(self) -> tuple[str, ...]:
        return tuple(part.strip() for part in self.fractions.split(","))

    def gbt_config(self) -> GbtConfig:
        return GbtConfig(
            learning_rate=self.gbt_learning_rate,
            max_depth=self.gbt_max_depth,
            num_rounds=self.gbt_rounds,
            early_stop_rounds=self.gbt_early_stop,
            min_child_weight=self.gbt_min_child_weight,
            lambda_l2=self.gbt_lambda,
        )


def load_tagger(path: str = "") -> TaggerModel:
    return TaggerModel.load(path) if path else default_tagger()


def build_documents(articles: list[NewsArticle], tagger: TaggerModel) -> dict[str, TaggedDocument]:
    return {article.id: analyze(article.text, tagger) for article in articles}


def _matrix_for(ids, vectors_by_id):
    X = np.array([vectors_by_id[i].values for i in ids], dtype=np.float64)
    y = np.array([label_to_int(vectors_by_id[i].label) for i in ids], dtype=np.float64)
    return X, y


def _ids_matrix_for(ids, sequences_by_id):
    X = np.array([sequences_by_id[i].values for i in ids], dtype=np.intp)
    y = np.array([label_to_int(sequences_by_id[i].label) for i in ids], dtype=np.float64)
    return X, y


def _write_log(log: list[dict], path: Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for entry in log:
            handle.write(json.dumps(entry, sort_keys=True) + "\n")


def run_experiment(config: PipelineConfig) -> dict[str, EvalReport]:
    """Execute the full protocol and write all artifacts under out_dir."""
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    articles = ingest(config.corpus)
    by_id = {a.id: a for a in articles}
    manifest = split(articles, config.fraction_values(), seed=config.seed)
    manifest.save(out / "manifest.json")
    tagger = load_tagger(config.tagger)
    documents = build_documents(articles, tagger)

    ordered_ids = list(manifest.train_ids) + list(manifest.validation_ids) + list(manifest.test_ids)
    vectors = {
        i: feats.extract(documents[i], article_id=i, label=by_id[i].label) for i in ordered_ids
    }
    feats.write_matrix([vectors[i] for i in ordered_ids], out / "features.tsv")

    scaler = feats.fit_scaler([vectors[i] for i in manifest.train_ids])
    scaled = {i: feats.apply_scaler(scaler, v) for i, v in vectors.items()}

    vocab = seqs.build_vocab([documents[i] for i in manifest.train_ids])
    vocab.save(out / "vocab.json")
    encoded = {
        i: seqs.encode(vocab, documents[i], article_id=i, label=by_id[i].label,
                       length=config.sequence_length)
        for i in ordered_ids
    }
    seqs.write_sequences([encoded[i] for i in ordered_ids], out / "sequences.jsonl")

    test_labels = [by_id[i].label for i in manifest.test_ids]
    reports: dict[str, EvalReport] = {}

    # boosted trees (raw features unless scaling is forced on)
    tree_vectors = scaled if config.scale_for_trees else vectors
    X_train, y_train = _matrix_for(manifest.train_ids, tree_vectors)
    X_valid, y_valid = _matrix_for(manifest.validation_ids, tree_vectors)
    X_test, _ = _matrix_for(manifest.test_ids, tree_vectors)
    ensemble = train_gbt(X_train, y_train, X_valid, y_valid, config.gbt_config())
    if config.scale_for_trees:
        ensemble.preprocessing = {"scaler": {"mins": list(scaler.mins), "maxs": list(scaler.maxs)}}
    gbt_path = out / "gbt.json"
    ensemble.save(gbt_path)
    _write_log(ensemble.training_log, out / "gbt_log.jsonl")
    reports["gbt"] = evaluate(
        "gbt", predict_proba(ensemble, X_test), list(manifest.test_ids), test_labels,
        manifest=manifest, fingerprint=fingerprint_file(gbt_path), seed=config.seed,
        config=dataclasses.asdict(ensemble.config),
    )
    reports["gbt"].save(out / "report_gbt.json")

    # feed-forward net on scaled features
    X_train, y_train = _matrix_for(manifest.train_ids, scaled)
    X_valid, y_valid = _matrix_for(manifest.validation_ids, scaled)
    X_test, _ = _matrix_for(manifest.test_ids, scaled)
    mlp_config = MlpConfig(hidden1=config.mlp_hidden1, hidden2=config.mlp_hidden2)
    mlp = MlpModel(mlp_config)
    mlp_train = TrainConfig(
        learning_rate=config.mlp_learning_rate, batch_size=config.mlp_batch_size,
        epochs=config.mlp_epochs, patience=config.mlp_patience, seed=config.seed,
    )
    params, log = train_model(mlp, X_train, y_train, X_valid, y_valid, mlp_train)
    mlp_path = out / "mlp.model"
    save_model(
        mlp_path, "mlp", dataclasses.asdict(mlp_config), params,
        preprocessing={"scaler": {"mins": list(scaler.mins), "maxs": list(scaler.maxs)}},
        training_log=log,
    )
    _write_log(log, out / "mlp_log.jsonl")
    reports["mlp"] = evaluate(
        "mlp", mlp.predict_proba(params, X_test), list(manifest.test_ids), test_labels,
        manifest=manifest, fingerprint=fingerprint_file(mlp_path), seed=config.seed,
        config=dataclasses.asdict(mlp_config),
    )
    reports["mlp"].save(out / "report_mlp.json")

    # bidirectional LSTM on tag sequences
    S_train, sy_train = _ids_matrix_for(manifest.train_ids, encoded)
    S_valid, sy_valid = _ids_matrix_for(manifest.validation_ids, encoded)
    S_test, _ = _ids_matrix_for(manifest.test_ids, encoded)
    bilstm_config = BiLstmConfig(
        vocab_size=len(vocab), embed_dim=config.bilstm_embed, hidden=config.bilstm_hidden,
        dense_units=config.bilstm_dense, seq_len=config.sequence_length,
        dropout=config.bilstm_dropout, recurrent_dropout=config.bilstm_recurrent_dropout,
    )
    bilstm = BiLstmModel(bilstm_config)
    bilstm_train = TrainConfig(
        learning_rate=config.bilstm_learning_rate, batch_size=config.bilstm_batch_size,
        epochs=config.bilstm_epochs, patience=config.bilstm_patience, seed=config.seed,
    )
    params, log = train_model(bilstm, S_train, sy_train, S_valid, sy_valid, bilstm_train)
    bilstm_path = out / "bilstm.model"
    ordered_tags = sorted(vocab.index, key=vocab.index.get)
    save_model(
        bilstm_path, "bilstm", dataclasses.asdict(bilstm_config), params,
        preprocessing={"vocab": ordered_tags, "length": config.sequence_length},
        training_log=log,
    )
    _write_log(log, out / "bilstm_log.jsonl")
    reports["bilstm"] = evaluate(
        "bilstm", bilstm.predict_proba(params, S_test), list(manifest.test_ids), test_labels,
        manifest=manifest, fingerprint=fingerprint_file(bilstm_path), seed=config.seed,
        config=dataclasses.asdict(bilstm_config),
    )
    reports["bilstm"].save(out / "report_bilstm.json")

    (out / "comparison.tsv").write_text(
        comparison_table([reports[k] for k in MODEL_KINDS]), "utf-8"
    )
    return reports


def predict_text(model_path: str | Path, text: str, title: str = "",
                 tagger: TaggerModel | None = None) -> tuple[str, float]:
    """Classify raw article text with any saved model artifact."""
    if tagger is None:
        tagger = default_tagger()
    document = analyze(text, tagger)
    head = Path(model_path).read_bytes()[:4]
    if head == b"NANN":
        header, params = load_model(model_path)
        if header["kind"] == "mlp":
            vector = feats.extract(document, article_id="input", label="human")
            scaler_data = header["preprocessing"]["scaler"]
            scaler = feats.FeatureScaler(tuple(scaler_data["mins"]), tuple(scaler_data["maxs"]))
            vector = feats.apply_scaler(scaler, vector)
            model = MlpModel(MlpConfig(**header["config"]))
            probability = float(model.predict_proba(params, np.array([vector.values]))[0])
        elif header["kind"] == "bilstm":
            pre = header["preprocessing"]
            vocab = seqs.TagVocabulary({t: i + 2 for i, t in enumerate(pre["vocab"])})
            sequence = seqs.encode(vocab, document, length=pre["length"])
            model = BiLstmModel(BiLstmConfig(**header["config"]))
            probability = float(
                model.predict_proba(params, np.array([sequence.values], dtype=np.intp))[0]
            )
        else:
            raise ValueError(f"unknown neural model kind {header['kind']!r}")
    else:
        ensemble = GbtEnsemble.load(model_path)
        vector = feats.extract(document, article_id="input", label="human")
        scaler_data = ensemble.preprocessing.get("scaler")
        if scaler_data:
            scaler = feats.FeatureScaler(tuple(scaler_data["mins"]), tuple(scaler_data["maxs"]))
            vector = feats.apply_scaler(scaler, vector)
        probability = float(predict_proba(ensemble, np.array([vector.values]))[0])
    from .evaluation import classify

    label = "llm" if classify(probability) == 1 else "human"
    return label, probability
