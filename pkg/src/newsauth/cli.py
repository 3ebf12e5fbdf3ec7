"""Command-line entry point for every pipeline stage.

A flat key=value config file can preset any flag (``--config``); flags
given on the command line win.  Exit codes: 0 success, 1 usage error,
2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import features as feats
from . import sequences as seqs
from .errors import NewsauthError, UsageError
from .evaluation import comparison_table, evaluate, fingerprint_file
from .generation import ClientConfig, generate_counterparts, write_generation_log
from .pipeline import (
    PipelineConfig,
    build_documents,
    load_tagger,
    predict_text,
    run_experiment,
)
from .synthetic import make_synthetic_corpus
from .textproc import train_tagger


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def read_config_file(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _build_parser() -> _Parser:
    # nothing is argparse-required: any flag may arrive via --config, so
    # commands validate their inputs after the merge
    parser = _Parser(prog="newsauth", description=__doc__)
    parser.add_argument("--config", help="flat key=value file presetting any flag")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("ingest", help="validate a corpus file and normalize to jsonl")
    p.add_argument("--path", default="")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--out", default="", help="write normalized jsonl here")

    p = sub.add_parser("generate", help="produce machine counterparts for human articles")
    p.add_argument("--corpus", default="", help="jsonl of human articles")
    p.add_argument("--out", default="", help="output jsonl (human + generated)")
    p.add_argument("--endpoint", default="")
    p.add_argument("--model", default="")
    p.add_argument("--mock", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--concurrency", type=int, default=1)
    p.add_argument("--log", default="", help="per-article word-bound log (jsonl)")

    p = sub.add_parser("split", help="write a train/validation/test manifest")
    p.add_argument("--corpus", default="")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fractions", default="0.70,0.15,0.15")
    p.add_argument("--out", default="")

    p = sub.add_parser("stats", help="per-split token-count distribution table")
    p.add_argument("--corpus", default="")
    p.add_argument("--manifest", default="")
    p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")

    p = sub.add_parser("train-tagger", help="train the POS tagger")
    p.add_argument("--corpus", default="", help="token<TAB>tag training file")
    p.add_argument("--iterations", type=int, default=8)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="")

    p = sub.add_parser("featurize", help="write the 13-feature matrix")
    p.add_argument("--corpus", default="")
    p.add_argument("--tagger", default="")
    p.add_argument("--out", default="")

    p = sub.add_parser("encode", help="write fixed-length tag sequences")
    p.add_argument("--corpus", default="")
    p.add_argument("--manifest", default="", help="vocabulary uses the train split only")
    p.add_argument("--tagger", default="")
    p.add_argument("--length", type=int, default=200)
    p.add_argument("--out", default="")
    p.add_argument("--vocab-out", default="")

    p = sub.add_parser("train", help="train one classifier (runs the full experiment)")
    p.add_argument("--model", choices=("gbt", "mlp", "bilstm"), default="")
    _add_pipeline_flags(p)

    p = sub.add_parser("evaluate", help="score a saved model on the test split")
    p.add_argument("--model-file", default="")
    p.add_argument("--corpus", default="")
    p.add_argument("--manifest", default="")
    p.add_argument("--tagger", default="")
    p.add_argument("--report", default="", help="write the JSON report here")

    p = sub.add_parser("predict", help="classify one article text file")
    p.add_argument("--model-file", default="")
    p.add_argument("--text-file", default="")
    p.add_argument("--title", default="")
    p.add_argument("--tagger", default="")

    p = sub.add_parser("run-experiment", help="full protocol: split, train all, evaluate")
    _add_pipeline_flags(p)

    p = sub.add_parser("serve-study", help="run the human-baseline study backend")
    p.add_argument("--port", type=int, default=8600)
    p.add_argument("--corpus", default="")
    p.add_argument("--manifest", default="")
    p.add_argument("--log-path", default="")
    p.add_argument("--ui-dir", default="")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("synth", help="write the bundled synthetic benchmark corpus")
    p.add_argument("--out", default="")
    p.add_argument("--articles", type=int, default=1000)
    p.add_argument("--seed", type=int, default=7)

    return parser


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    defaults = PipelineConfig()
    for f in dataclasses.fields(PipelineConfig):
        flag = "--" + f.name.replace("_", "-")
        default = getattr(defaults, f.name)
        if isinstance(default, bool):
            p.add_argument(flag, action="store_true")
        else:
            p.add_argument(flag, type=type(default), default=default)


def _require(args, *names: str) -> None:
    missing = [n for n in names if not getattr(args, n.replace("-", "_"))]
    if missing:
        raise UsageError(
            f"newsauth {args.command}: missing required "
            + " ".join("--" + n.replace("_", "-") for n in missing)
        )


def _pipeline_config(args) -> PipelineConfig:
    _require(args, "corpus", "out_dir")
    kwargs = {f.name: getattr(args, f.name) for f in dataclasses.fields(PipelineConfig)}
    return PipelineConfig(**kwargs)


def _cmd_ingest(args) -> int:
    _require(args, "path")
    articles = corpus_mod.ingest(args.path, format=args.format)
    counts: dict[str, int] = {}
    for a in articles:
        counts[a.label] = counts.get(a.label, 0) + 1
    if args.out:
        corpus_mod.write_articles(articles, args.out)
    print(f"ingested {len(articles)} articles "
          + " ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return 0


def _cmd_generate(args) -> int:
    _require(args, "corpus", "out")
    if not args.mock:
        _require(args, "endpoint", "model")
    articles = corpus_mod.ingest(args.corpus)
    humans = [a for a in articles if a.label == corpus_mod.HUMAN]
    config = ClientConfig(endpoint=args.endpoint, model=args.model, mock=args.mock,
                          seed=args.seed, concurrency=args.concurrency)
    generated, results = generate_counterparts(humans, config)
    corpus_mod.write_articles(humans + generated, args.out)
    if args.log:
        write_generation_log(results, args.log)
    flagged = sum(r.out_of_bounds for r in results)
    print(f"generated {len(generated)} articles ({flagged} outside the word bounds)")
    return 0


def _cmd_split(args) -> int:
    _require(args, "corpus", "out")
    articles = corpus_mod.ingest(args.corpus)
    fractions = tuple(part.strip() for part in args.fractions.split(","))
    manifest = corpus_mod.split(articles, fractions, seed=args.seed)
    manifest.save(args.out)
    print(f"train={len(manifest.train_ids)} validation={len(manifest.validation_ids)} "
          f"test={len(manifest.test_ids)}")
    return 0


def _cmd_stats(args) -> int:
    _require(args, "corpus", "manifest")
    articles = corpus_mod.ingest(args.corpus, format=args.format)
    manifest = corpus_mod.SplitManifest.load(args.manifest)
    print(corpus_mod.stats(articles, manifest).to_table(), end="")
    return 0


def _cmd_train_tagger(args) -> int:
    _require(args, "corpus", "out")
    model = train_tagger(args.corpus, iterations=args.iterations, seed=args.seed)
    model.save(args.out)
    print(f"trained tagger with {len(model.tags)} tags -> {args.out}")
    return 0


def _cmd_featurize(args) -> int:
    _require(args, "corpus", "out")
    articles = corpus_mod.ingest(args.corpus)
    tagger = load_tagger(args.tagger)
    documents = build_documents(articles, tagger)
    vectors = [
        feats.extract(documents[a.id], article_id=a.id, label=a.label) for a in articles
    ]
    feats.write_matrix(vectors, args.out)
    print(f"wrote {len(vectors)} feature vectors -> {args.out}")
    return 0


def _cmd_encode(args) -> int:
    _require(args, "corpus", "manifest", "out")
    articles = corpus_mod.ingest(args.corpus)
    manifest = corpus_mod.SplitManifest.load(args.manifest)
    tagger = load_tagger(args.tagger)
    documents = build_documents(articles, tagger)
    vocab = seqs.build_vocab([documents[i] for i in manifest.train_ids])
    encoded = [
        seqs.encode(vocab, documents[a.id], article_id=a.id, label=a.label, length=args.length)
        for a in articles
    ]
    seqs.write_sequences(encoded, args.out)
    if args.vocab_out:
        vocab.save(args.vocab_out)
    print(f"encoded {len(encoded)} articles with {len(vocab)} tags -> {args.out}")
    return 0


def _cmd_train(args) -> int:
    _require(args, "model")
    reports = run_experiment(_pipeline_config(args))
    report = reports[args.model]
    print(f"{args.model} test accuracy {report.accuracy:.4f}")
    return 0


def _cmd_evaluate(args) -> int:
    _require(args, "model_file", "corpus", "manifest")
    articles = corpus_mod.ingest(args.corpus)
    manifest = corpus_mod.SplitManifest.load(args.manifest)
    by_id = {a.id: a for a in articles}
    tagger = load_tagger(args.tagger)
    probabilities = []
    for article_id in manifest.test_ids:
        _, p = predict_text(args.model_file, by_id[article_id].text, tagger=tagger)
        probabilities.append(p)
    report = evaluate(
        Path(args.model_file).stem, probabilities, list(manifest.test_ids),
        [by_id[i].label for i in manifest.test_ids], manifest=manifest,
        fingerprint=fingerprint_file(args.model_file),
    )
    if args.report:
        report.save(args.report)
    print(f"accuracy {report.accuracy:.4f} confusion {json.dumps(report.confusion, sort_keys=True)}")
    return 0


def _cmd_predict(args) -> int:
    _require(args, "model_file", "text_file")
    text = Path(args.text_file).read_text("utf-8")
    label, probability = predict_text(
        args.model_file, text, title=args.title,
        tagger=load_tagger(args.tagger) if args.tagger else None,
    )
    print(f"label={label} probability={probability:.6f}")
    return 0


def _cmd_run_experiment(args) -> int:
    reports = run_experiment(_pipeline_config(args))
    print(comparison_table([reports[k] for k in ("gbt", "mlp", "bilstm")]), end="")
    return 0


def _cmd_serve_study(args) -> int:
    from .study import StudyStore, serve

    _require(args, "corpus", "manifest", "log_path")
    articles = corpus_mod.ingest(args.corpus)
    manifest = corpus_mod.SplitManifest.load(args.manifest)
    store = StudyStore(articles, list(manifest.test_ids), args.log_path, seed=args.seed)
    server = serve(store, args.port, ui_dir=args.ui_dir or None)
    print(f"study service on port {server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def _cmd_synth(args) -> int:
    _require(args, "out")
    articles = make_synthetic_corpus(n_articles=args.articles, seed=args.seed)
    corpus_mod.write_articles(articles, args.out)
    print(f"wrote {len(articles)} synthetic articles -> {args.out}")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "generate": _cmd_generate,
    "split": _cmd_split,
    "stats": _cmd_stats,
    "train-tagger": _cmd_train_tagger,
    "featurize": _cmd_featurize,
    "encode": _cmd_encode,
    "train": _cmd_train,
    "evaluate": _cmd_evaluate,
    "predict": _cmd_predict,
    "run-experiment": _cmd_run_experiment,
    "serve-study": _cmd_serve_study,
    "synth": _cmd_synth,
}


def _config_path_from(argv: list[str]) -> str | None:
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--config="):
            return arg.split("=", 1)[1]
    return None


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        config_path = _config_path_from(argv)
        if config_path:
            config_values = read_config_file(config_path)
            subparsers = parser._subparsers._group_actions[0].choices  # noqa: SLF001
            for sub in subparsers.values():
                known = {a.dest: a for a in sub._actions}  # noqa: SLF001
                sub.set_defaults(**{
                    key: _coerce(known[key], value)
                    for key, value in config_values.items() if key in known
                })
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError(parser.format_usage())
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except NewsauthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _coerce(action, value: str):
    if isinstance(action, argparse._StoreTrueAction):  # noqa: SLF001
        return value.lower() in ("1", "true", "yes", "on")
    if action.type is not None:
        return action.type(value)
    return value


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
