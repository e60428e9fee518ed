"""End-to-end orchestration: corpus -> entities -> graph -> temporal -> files."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import coocgraph, corpus, entities, temporal, writers
from .config import PipelineConfig
from .errors import CorpusMapError, InputError
from .temporal import Term


@dataclass
class RunReport:
    counts: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {
            "counts": dict(sorted(self.counts.items())),
            "warnings": list(self.warnings),
            "timings": {k: round(v, 6) for k, v in sorted(self.timings.items())},
        }
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _load_gazetteer(path: Path) -> dict[str, entities.EntityTag]:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read gazetteer {path}: {exc}") from exc
    return {k: entities.EntityTag(v) for k, v in raw.items()}


def _load_lines(path: Path) -> list[str]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return [line.strip() for line in text.splitlines() if line.strip()]


class _StageTimer:
    def __init__(self, report: RunReport) -> None:
        self.report = report

    def __call__(self, stage: str):
        return _StageContext(self.report, stage)


class _StageContext:
    def __init__(self, report: RunReport, stage: str) -> None:
        self.report = report
        self.stage = stage

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.report.timings[self.stage] = time.perf_counter() - self.t0
        if exc is not None and isinstance(exc, CorpusMapError):
            raise type(exc)(f"[{self.stage}] {exc}") from exc
        return False


def run_pipeline(cfg: PipelineConfig) -> RunReport:
    """Execute every configured stage and write artifacts to output.dir.

    Reruns are byte-identical; a failing stage removes any partial
    artifacts written during this invocation.
    """
    report = RunReport()
    stage = _StageTimer(report)
    written: list[Path] = []
    try:
        with stage("corpus"):
            manifest = corpus.load_manifest(cfg.manifest)
            loaded = corpus.load_corpus(manifest, workers=cfg.workers)
            for doc_id in loaded.skipped_empty:
                report.warnings.append(f"document {doc_id!r} is empty, skipped")
        report.counts["documents"] = len(loaded.documents)
        report.counts["sentences"] = sum(len(s) for s in loaded.sentences.values())

        with stage("entities"):
            mentions: list[entities.EntityMention] = []
            if cfg.ner.mode == "conll":
                for doc_id, doc in loaded.documents.items():
                    conll_path = cfg.ner.conll_dir / f"{doc_id}.conll"
                    if not conll_path.is_file():
                        raise InputError(f"missing annotation file: {conll_path}")
                    with open(conll_path, encoding="utf-8") as fh:
                        mentions.extend(
                            entities.parse_conll(
                                fh,
                                doc,
                                loaded.sentences[doc_id],
                                loaded.tokens[doc_id],
                                warnings=report.warnings,
                            )
                        )
            else:
                gaz = _load_gazetteer(cfg.ner.gazetteer) if cfg.ner.gazetteer else {}
                for doc_id, doc in loaded.documents.items():
                    mentions.extend(
                        entities.recognize_heuristic(
                            doc, loaded.sentences[doc_id], loaded.tokens[doc_id], gaz
                        )
                    )
            clusters = entities.cluster_mentions(
                mentions,
                threshold=cfg.normalize.threshold,
                policy=cfg.normalize.policy,
                warnings=report.warnings,
            )
        report.counts["mentions"] = len(mentions)
        report.counts["clusters"] = len(clusters)

        with stage("graph"):
            opts = coocgraph.GraphOptions(types=cfg.graph.types, coref=cfg.graph.coref)
            graph = coocgraph.build_graph(clusters, mentions, loaded, opts)
            graph = coocgraph.filter_graph(
                graph,
                min_node_freq=cfg.graph.min_node_freq,
                min_edge_weight=cfg.graph.min_edge_weight,
                drop_isolated=cfg.graph.drop_isolated,
            )
        report.counts["nodes"] = len(graph.nodes)
        report.counts["edges"] = len(graph.edges)

        sankey = None
        if cfg.temporal.boundaries and loaded.documents:
            with stage("temporal"):
                stoplist = (
                    frozenset(_load_lines(cfg.temporal.stoplist))
                    if cfg.temporal.stoplist
                    else frozenset()
                )
                surfaces = frozenset(
                    s for c in clusters for s in c.surfaces
                )
                if cfg.temporal.term_list:
                    terms = [Term(text=t.lower(), score=0.0) for t in _load_lines(cfg.temporal.term_list)]
                else:
                    terms = temporal.extract_terms(
                        loaded,
                        k=cfg.temporal.top_terms,
                        stoplist=stoplist,
                        exclude_surfaces=surfaces,
                    )
                binning, periods = temporal.bin_documents(
                    loaded, cfg.temporal.boundaries
                )
                unassigned = len(loaded.documents) - len(binning)
                if unassigned:
                    report.warnings.append(
                        f"{unassigned} document(s) without a year excluded from temporal binning"
                    )
                associations = (
                    temporal.associate(mentions, clusters, terms, loaded, binning)
                    if terms
                    else []
                )
                report.counts["associations"] = len(associations)
                if len(periods) >= 2 and associations:
                    sankey = temporal.build_sankey(
                        associations, periods, clusters, cfg.temporal.top_terms
                    )
                    report.counts["links"] = len(sankey.links)
                else:
                    report.counts["links"] = 0
                    report.warnings.append(
                        "fewer than 2 populated periods, sankey skipped"
                    )
        else:
            report.counts["associations"] = 0
            report.counts["links"] = 0
            if not cfg.temporal.boundaries:
                report.warnings.append("no temporal boundaries configured, stage skipped")

        with stage("write"):
            out_dir = cfg.output.dir
            out_dir.mkdir(parents=True, exist_ok=True)

            def emit(name: str, content: str) -> None:
                path = out_dir / name
                path.write_text(content, encoding="utf-8", newline="")
                written.append(path)

            if loaded.documents:
                if "gexf" in cfg.output.formats:
                    emit("graph.gexf", writers.write_gexf(graph))
                if "graph_json" in cfg.output.formats:
                    emit("graph.json", writers.write_graph_json(graph))
                if "edges_csv" in cfg.output.formats:
                    emit("edges.csv", writers.write_edges_csv(graph))
                if "sankey_json" in cfg.output.formats and sankey is not None:
                    emit("sankey.json", writers.write_sankey_json(sankey))
            (out_dir / "report.json").write_text(
                report.to_json(), encoding="utf-8", newline=""
            )
        return report
    except CorpusMapError:
        for path in written:
            path.unlink(missing_ok=True)
        raise
