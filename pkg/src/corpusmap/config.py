"""Pipeline configuration: JSON file in, validated PipelineConfig out."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .entities import EntityTag
from .errors import ConfigError

ALL_FORMATS = ("gexf", "graph_json", "sankey_json", "edges_csv")


@dataclass
class NerConfig:
    mode: str  # conll | heuristic
    conll_dir: Path | None = None
    gazetteer: Path | None = None


@dataclass
class NormalizeConfig:
    threshold: float = 0.8
    policy: str = "per_type"


@dataclass
class GraphConfig:
    types: frozenset[EntityTag] = frozenset({EntityTag.PERSON, EntityTag.ORGANIZATION})
    coref: str = "none"
    min_node_freq: int = 0
    min_edge_weight: int = 0
    drop_isolated: bool = False


@dataclass
class TemporalConfig:
    boundaries: list[int] = field(default_factory=list)
    top_terms: int = 10
    term_list: Path | None = None
    stoplist: Path | None = None


@dataclass
class OutputConfig:
    dir: Path = Path("out")
    formats: tuple[str, ...] = ALL_FORMATS


@dataclass
class PipelineConfig:
    manifest: Path
    ner: NerConfig
    normalize: NormalizeConfig = field(default_factory=NormalizeConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)
    temporal: TemporalConfig = field(default_factory=TemporalConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    workers: int = 1


def _require_keys(obj: dict, allowed: set[str], context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown key in {context}: {sorted(unknown)[0]!r}")


def _path(base: Path, value) -> Path:
    p = Path(value)
    return p if p.is_absolute() else base / p


def load_config(path: str | Path) -> PipelineConfig:
    """Parse and validate the run configuration; relative paths resolve
    against the config file's directory."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    base = path.parent

    _require_keys(
        raw,
        {"manifest", "ner", "normalize", "graph", "temporal", "output", "workers"},
        "config",
    )
    if "manifest" not in raw:
        raise ConfigError("config requires 'manifest'")
    if "ner" not in raw or not isinstance(raw["ner"], dict):
        raise ConfigError("config requires 'ner' object")

    ner_raw = raw["ner"]
    _require_keys(ner_raw, {"mode", "conll_dir", "gazetteer"}, "ner")
    mode = ner_raw.get("mode")
    if mode not in ("conll", "heuristic"):
        raise ConfigError(f"ner.mode must be 'conll' or 'heuristic', got {mode!r}")
    if mode == "conll" and "conll_dir" not in ner_raw:
        raise ConfigError("ner.mode 'conll' requires ner.conll_dir")
    ner = NerConfig(
        mode=mode,
        conll_dir=_path(base, ner_raw["conll_dir"]) if "conll_dir" in ner_raw else None,
        gazetteer=_path(base, ner_raw["gazetteer"]) if "gazetteer" in ner_raw else None,
    )

    norm_raw = raw.get("normalize", {})
    _require_keys(norm_raw, {"threshold", "policy"}, "normalize")
    normalize = NormalizeConfig(
        threshold=norm_raw.get("threshold", 0.8),
        policy=norm_raw.get("policy", "per_type"),
    )
    if not (0 < normalize.threshold <= 1.01):
        raise ConfigError(
            f"normalize.threshold must be in (0, 1.01], got {normalize.threshold}"
        )
    if normalize.policy not in ("per_type", "cross_type"):
        raise ConfigError(f"unknown normalize.policy: {normalize.policy!r}")

    graph_raw = raw.get("graph", {})
    _require_keys(
        graph_raw,
        {"types", "coref", "min_node_freq", "min_edge_weight", "drop_isolated"},
        "graph",
    )
    try:
        types = frozenset(EntityTag(t) for t in graph_raw["types"]) \
            if "types" in graph_raw else GraphConfig.types
    except ValueError as exc:
        raise ConfigError(f"graph.types: {exc}") from None
    graph = GraphConfig(
        types=types,
        coref=graph_raw.get("coref", "none"),
        min_node_freq=graph_raw.get("min_node_freq", 0),
        min_edge_weight=graph_raw.get("min_edge_weight", 0),
        drop_isolated=graph_raw.get("drop_isolated", False),
    )
    if graph.coref not in ("none", "alias"):
        raise ConfigError(f"graph.coref must be 'none' or 'alias', got {graph.coref!r}")

    temp_raw = raw.get("temporal", {})
    _require_keys(
        temp_raw, {"boundaries", "top_terms", "term_list", "stoplist"}, "temporal"
    )
    boundaries = temp_raw.get("boundaries", [])
    if any(b2 <= b1 for b1, b2 in zip(boundaries, boundaries[1:])):
        raise ConfigError("temporal.boundaries must be strictly ascending")
    temporal = TemporalConfig(
        boundaries=list(boundaries),
        top_terms=temp_raw.get("top_terms", 10),
        term_list=_path(base, temp_raw["term_list"]) if "term_list" in temp_raw else None,
        stoplist=_path(base, temp_raw["stoplist"]) if "stoplist" in temp_raw else None,
    )
    if temporal.top_terms < 1:
        raise ConfigError("temporal.top_terms must be >= 1")

    out_raw = raw.get("output", {})
    _require_keys(out_raw, {"dir", "formats"}, "output")
    formats = tuple(out_raw.get("formats", ALL_FORMATS))
    for f in formats:
        if f not in ALL_FORMATS:
            raise ConfigError(f"unknown output format: {f!r}")
    output = OutputConfig(dir=_path(base, out_raw.get("dir", "out")), formats=formats)

    workers = raw.get("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers must be a positive integer")

    return PipelineConfig(
        manifest=_path(base, raw["manifest"]),
        ner=ner,
        normalize=normalize,
        graph=graph,
        temporal=temporal,
        output=output,
        workers=workers,
    )
