"""Command-line driver for feature extraction, training, prediction and
cross-validated evaluation.

Subcommands: ``extract``, ``train``, ``predict``, ``xval``, ``report``.
Outputs are written to the ``--out`` directory via temp-file-and-rename, so
a failing run never leaves partial files; every run also writes a
``manifest.json`` capturing the config, input hashes and tool version.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import evaluation, knn, methods, morph, ontology, syntax
from .config import (
    ConfigError,
    ExperimentConfig,
    apply_overrides,
    build_manifest,
    load_config,
    manifest_json,
)
from .featurespace import format_matrix, parse_matrix
from .lexicon import (
    WordClass,
    filter_inventory,
    load_seed_lexicon,
    serialize_seed_lexicon,
)


class CliError(Exception):
    """User-facing error; exits with status 2."""


_SYNTAX_LEVELS = {
    "syntax-tagged": "tagged",
    "syntax-chunked": "chunked",
    "syntax-parsed": "parsed",
}

_RESOURCE_KEYS = {
    "ngram": ("lexicon",),
    "deriv": ("lexicon", "clusters"),
    "syntax-tagged": ("lexicon", "corpus"),
    "syntax-chunked": ("lexicon", "corpus"),
    "syntax-parsed": ("lexicon", "corpus"),
    "ontology": ("lexicon", "synsets", "edges"),
    "baseline": ("lexicon",),
}

_OPTIONAL_KEYS = {
    "ngram": ("word_list",),
}


def _resolve_config(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {
        key: getattr(args, key, None)
        for key in ("method", "seed", "out", "jobs")
    }
    return apply_overrides(config, **overrides)


def _require_paths(config: ExperimentConfig, keys) -> dict[str, str]:
    inputs: dict[str, str] = {}
    for key in keys:
        path = getattr(config, key)
        if not path:
            raise CliError("missing required resource: %s" % key)
        if not Path(path).is_file():
            raise CliError("%s path does not exist: %s" % (key, path))
        inputs[key] = path
    return inputs


def _optional_paths(config: ExperimentConfig, keys) -> dict[str, str]:
    inputs: dict[str, str] = {}
    for key in keys:
        path = getattr(config, key, "")
        if path:
            if not Path(path).is_file():
                raise CliError("%s path does not exist: %s" % (key, path))
            inputs[key] = path
    return inputs


def _load_lexicon(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_seed_lexicon(fh)


def _write_outputs(out_dir: str, files: dict[str, str]) -> None:
    """Atomically materialise output files: write temps, then rename."""
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    temps = []
    try:
        for name, text in files.items():
            tmp = directory / ("%s.tmp.%d" % (name, os.getpid()))
            tmp.write_text(text, encoding="utf-8")
            temps.append((tmp, directory / name))
        for tmp, final in temps:
            os.replace(tmp, final)
    except BaseException:
        for tmp, _ in temps:
            tmp.unlink(missing_ok=True)
        raise


def _build_feature_method(config: ExperimentConfig, lexicon) -> methods.KnnMethod:
    name = config.method
    if name == "ngram":
        words = None
        if config.word_list:
            with open(config.word_list, encoding="utf-8") as fh:
                words = [w.strip().lower() for w in fh if w.strip()]
        space, vectors = methods.ngram_pipeline(
            lexicon,
            words,
            min_freq=config.min_freq,
            total_cap=config.total_cap,
            n_min=config.n_min,
            n_max=config.n_max,
            sentinels=config.sentinels,
        )
    elif name == "deriv":
        with open(config.clusters, encoding="utf-8") as fh:
            clusters = morph.load_cluster_lexicon(fh)
        space, vectors = methods.deriv_pipeline(
            lexicon, clusters, min_freq=config.min_freq, total_cap=config.total_cap
        )
    elif name in _SYNTAX_LEVELS:
        level = _SYNTAX_LEVELS[name]
        sentences, relations = syntax.load_corpus(
            config.corpus, level, config.max_sentence_len
        )
        space, vectors = methods.syntax_pipeline(
            lexicon,
            sentences,
            level,
            relations,
            per_type_cap=config.per_type_cap,
            total_cap=config.total_cap,
        )
    else:
        raise CliError("method %r does not extract features" % name)
    inventory = frozenset(filter_inventory(lexicon, config.min_type_entries))
    return methods.KnnMethod(
        name, space, vectors, inventory, k=config.k, top_n=config.top_n
    )


def _build_method(config: ExperimentConfig, lexicon):
    if config.method == "baseline":
        return methods.BaselineMethod()
    if config.method == "ontology":
        with open(config.synsets, encoding="utf-8") as sf, open(
            config.edges, encoding="utf-8"
        ) as ef:
            onto = ontology.load_ontology(sf, ef)
        return methods.OntologyMethod(onto)
    return _build_feature_method(config, lexicon)


def cmd_extract(args) -> int:
    config = _resolve_config(args)
    if config.method not in methods.FEATURE_METHODS:
        raise CliError(
            "extract needs a feature method (%s)" % ", ".join(methods.FEATURE_METHODS)
        )
    inputs = _require_paths(config, _RESOURCE_KEYS[config.method])
    inputs.update(_optional_paths(config, _OPTIONAL_KEYS.get(config.method, ())))
    lexicon = _load_lexicon(config.lexicon)
    method = _build_feature_method(config, lexicon)
    matrix_text = format_matrix(method.space, method.vectors)
    manifest = build_manifest(config, inputs)
    _write_outputs(
        config.out,
        {"matrix.tsv": matrix_text, "manifest.json": manifest_json(manifest)},
    )
    print("wrote %s/matrix.tsv (%d features, %d lexemes)"
          % (config.out, len(method.space), len(method.vectors)))
    return 0


def cmd_train(args) -> int:
    config = _resolve_config(args)
    config = apply_overrides(config, matrix=args.matrix)
    inputs = _require_paths(config, ("lexicon", "matrix"))
    lexicon = _load_lexicon(config.lexicon)
    with open(config.matrix, encoding="utf-8") as fh:
        space, vectors = parse_matrix(fh)
    train_vectors = {l: v for l, v in vectors.items() if lexicon.entries_of(l)}
    inventory = filter_inventory(lexicon, config.min_type_entries)
    suite = knn.train(
        train_vectors,
        lexicon,
        inventory,
        n_features=config.top_n,
        n_columns=space.n_columns,
    )
    import io

    buffer = io.StringIO()
    knn.save_suite(suite, buffer, space_hash=space.content_hash(), k=config.k)
    manifest = build_manifest(config, inputs)
    _write_outputs(
        config.out,
        {"model.tsv": buffer.getvalue(), "manifest.json": manifest_json(manifest)},
    )
    print("wrote %s/model.tsv (%d classifiers)" % (config.out, len(suite.classifiers)))
    return 0


def _parse_targets(path: str) -> list[tuple[str, set[WordClass]]]:
    targets = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise CliError(
                    "targets line %d: expected lexeme<TAB>class[,class...]" % lineno
                )
            lexeme, classes = fields
            targets.append(
                (
                    lexeme.lower(),
                    {WordClass.from_tag(c.strip()) for c in classes.split(",")},
                )
            )
    return targets


def cmd_predict(args) -> int:
    config = _resolve_config(args)
    config = apply_overrides(
        config, matrix=args.matrix, model=args.model, targets=args.targets
    )
    inputs = _require_paths(config, ("model", "matrix", "targets"))
    with open(config.model, encoding="utf-8") as fh:
        suite, model_hash, model_k = knn.load_suite(fh)
    with open(config.matrix, encoding="utf-8") as fh:
        space, vectors = parse_matrix(fh)
    if model_hash and model_hash != space.content_hash():
        raise CliError("feature-space mismatch between model and matrix")
    lines = []
    for lexeme, classes in _parse_targets(config.targets):
        vector = vectors.get(lexeme) or methods.empty_vector(lexeme)
        entries = knn.predict_entries(suite, lexeme, vector, classes, k=model_k)
        for entry in sorted(entries, key=lambda e: (e.lexeme, e.ltype.name)):
            lines.append(
                "%s\t%s\t%s" % (entry.lexeme, entry.word_class.value, entry.ltype.name)
            )
    manifest = build_manifest(config, inputs)
    _write_outputs(
        config.out,
        {
            "entries.tsv": "\n".join(lines) + "\n" if lines else "",
            "manifest.json": manifest_json(manifest),
        },
    )
    print("wrote %s/entries.tsv (%d entries)" % (config.out, len(lines)))
    return 0


def cmd_xval(args) -> int:
    config = _resolve_config(args)
    if config.method not in methods.METHOD_NAMES:
        raise CliError("unknown method %r" % config.method)
    inputs = _require_paths(config, _RESOURCE_KEYS[config.method])
    inputs.update(_optional_paths(config, _OPTIONAL_KEYS.get(config.method, ())))
    inputs.update(_optional_paths(config, ("treebank_freqs",)))
    lexicon = _load_lexicon(config.lexicon)
    freqs = None
    if config.treebank_freqs:
        with open(config.treebank_freqs, encoding="utf-8") as fh:
            freqs = evaluation.load_treebank_freqs(fh, lexicon)
    method = _build_method(config, lexicon)
    report = evaluation.cross_validate(
        method,
        lexicon,
        freqs=freqs,
        n=config.n_folds,
        seed=config.seed,
        jobs=config.jobs,
    )
    manifest = build_manifest(config, inputs)
    _write_outputs(
        config.out,
        {
            "report.json": report.to_json(),
            "report.txt": report.to_table(),
            "manifest.json": manifest_json(manifest),
        },
    )
    mean_all = next(
        r for r in report.rows if r.fold == "mean" and r.word_class == "all"
    )
    print(
        "method=%s folds=%d mean F=%.4f (wrote %s/report.json)"
        % (config.method, config.n_folds, mean_all.fscore, config.out)
    )
    return 0


def cmd_report(args) -> int:
    import json

    with open(args.report, encoding="utf-8") as fh:
        payload = json.load(fh)
    rows = tuple(
        evaluation.ReportRow(**row) for row in payload["rows"]
    )
    sys.stdout.write(evaluation.EvaluationReport(rows).to_table())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--method", choices=methods.METHOD_NAMES)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="output directory")
    common.add_argument("--jobs", type=int)

    parser = argparse.ArgumentParser(
        prog="lexacq",
        description="Learn lexical-type entries for a precision-grammar "
        "lexicon from morphological, syntactic and ontological resources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common], help="write the feature matrix")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", parents=[common], help="train the classifier suite")
    p.add_argument("--matrix", help="matrix.tsv from `extract`")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", parents=[common], help="predict entries for targets")
    p.add_argument("--model", help="model.tsv from `train`")
    p.add_argument("--matrix", help="matrix.tsv with target vectors")
    p.add_argument("--targets", help="targets file: lexeme<TAB>class[,class...]")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("xval", parents=[common], help="cross-validated evaluation")
    p.set_defaults(func=cmd_xval)

    p = sub.add_parser("report", parents=[common], help="render a report.json as a table")
    p.add_argument("report", help="path to report.json")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
