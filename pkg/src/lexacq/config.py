"""Experiment configuration and run manifests.

Configuration comes from a key-value file (``key = value`` per line, ``#``
comments) plus command-line flag overrides; flags win.  Every run writes a
manifest recording the config snapshot, the SHA-256 of each input file and
the tool version, so equal manifests (timestamp aside) imply byte-identical
outputs.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path


class ConfigError(ValueError):
    """Invalid configuration."""


@dataclass
class ExperimentConfig:
    method: str = ""
    lexicon: str = ""
    word_list: str = ""
    clusters: str = ""
    corpus: str = ""
    synsets: str = ""
    edges: str = ""
    treebank_freqs: str = ""
    targets: str = ""
    matrix: str = ""
    model: str = ""
    out: str = "run-output"
    seed: int = 0
    jobs: int = 1
    k: int = 9
    top_n: int = 100
    per_type_cap: int = 50
    total_cap: int = 3900
    n_min: int = 1
    n_max: int = 6
    min_freq: int = 3
    n_folds: int = 10
    sentinels: bool = False
    max_sentence_len: int = 200
    min_type_entries: int = 1

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_INT_KEYS = {
    "seed", "jobs", "k", "top_n", "per_type_cap", "total_cap", "n_min",
    "n_max", "min_freq", "n_folds", "max_sentence_len", "min_type_entries",
}
_BOOL_KEYS = {"sentinels"}


def _coerce(key: str, value: str):
    if key in _INT_KEYS:
        try:
            return int(value)
        except ValueError:
            raise ConfigError("config key %r needs an integer, got %r" % (key, value))
    if key in _BOOL_KEYS:
        lowered = value.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError("config key %r needs a boolean, got %r" % (key, value))
    return value


def load_config(path: str | Path) -> ExperimentConfig:
    config = ExperimentConfig()
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ConfigError("config line %d: expected key = value" % lineno)
            key = key.strip()
            if key not in known:
                raise ConfigError("config line %d: unknown key %r" % (lineno, key))
            setattr(config, key, _coerce(key, value.strip()))
    return config


def apply_overrides(config: ExperimentConfig, **overrides) -> ExperimentConfig:
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in known:
            raise ConfigError("unknown config key %r" % key)
        setattr(config, key, value)
    return config


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def build_manifest(config: ExperimentConfig, inputs: dict[str, str]) -> dict:
    """Manifest dict for a run; ``inputs`` maps resource key -> file path."""
    from . import __version__

    return {
        "version": __version__,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()),
        "config": config.to_dict(),
        "inputs": {key: sha256_file(path) for key, path in sorted(inputs.items())},
    }


def manifest_json(manifest: dict) -> str:
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"
