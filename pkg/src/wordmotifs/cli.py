"""Command-line interface: ingest, analyze, compare.

``ingest`` turns text files into edge lists and vocabularies, ``analyze``
runs the census / null-model / significance pipeline on an edge list, and
``compare`` overlays significance TSVs from several runs. ``analyze``
writes the resolved run manifest next to its outputs; re-running that
manifest reproduces the outputs byte for byte.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import __version__
from .census import write_census_tsv
from .graph import EdgeListError, load_edgelist, save_edgelist
from .ingest import IngestConfig, IngestError, build_network, tokenize
from .nullmodel import RandomizeConfig, randomize
from .pipeline import run_analysis
from .report import (correlation_tsv, frequency_figures, render_ascii,
                     render_html, tsp_figure)
from .significance import read_significance_tsv, write_significance_tsv

USAGE_ERROR = 1
DATA_ERROR = 2


@dataclass
class RunManifest:
    """Everything needed to reproduce one analyze run."""

    input: str
    label: str = ""
    k: int = 3
    mode: str = "full"  # or "sampled"
    sample_probs: str = ""  # comma list, sampled mode only
    num_networks: int = 1000
    exchanges_per_edge: int = 3
    exchange_attempts: int = 3
    preserve_reciprocal: bool = True
    seed: int = 0
    workers: int = 1
    outdir: str = "."
    dump_replicas: bool = False

    def randomize_config(self) -> RandomizeConfig:
        return RandomizeConfig(
            num_networks=self.num_networks,
            exchanges_per_edge=self.exchanges_per_edge,
            exchange_attempts=self.exchange_attempts,
            preserve_reciprocal=self.preserve_reciprocal,
            seed=self.seed)

    def probs(self) -> list[float] | None:
        if self.mode == "full":
            return None
        return [float(p) for p in self.sample_probs.split(",")]

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{f.name}={value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunManifest":
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"manifest line {lineno}: expected key=value")
            key, raw = line.split("=", 1)
            key = key.strip()
            raw = raw.strip()
            if key not in types:
                raise ValueError(f"manifest line {lineno}: unknown key {key!r}")
            kind = types[key]
            if kind == "bool":
                if raw not in ("true", "false"):
                    raise ValueError(
                        f"manifest line {lineno}: {key} must be true/false")
                values[key] = raw == "true"
            elif kind == "int":
                values[key] = int(raw)
            else:
                values[key] = raw
        if "input" not in values:
            raise ValueError("manifest is missing the 'input' key")
        manifest = cls(**values)
        if manifest.mode not in ("full", "sampled"):
            raise ValueError("manifest mode must be 'full' or 'sampled'")
        if manifest.mode == "sampled" and not manifest.sample_probs:
            raise ValueError("sampled mode needs sample_probs")
        return manifest


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(USAGE_ERROR)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wordmotifs",
                     description="Word co-occurrence network motif analysis")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ing = sub.add_parser("ingest", help="text files -> edge lists + vocabularies")
    p_ing.add_argument("files", nargs="+", help="UTF-8 text files")
    p_ing.add_argument("--outdir", default=".")
    p_ing.add_argument("--no-lowercase", action="store_true")
    p_ing.add_argument("--no-sentence-break", action="store_true",
                       help="let adjacency cross sentence-final punctuation")
    p_ing.add_argument("--no-drop-self-loops", action="store_true",
                       help="fail on adjacent repeated words instead of "
                            "dropping the pair")

    p_ana = sub.add_parser("analyze", help="census + null model + significance")
    p_ana.add_argument("edgelist", nargs="?", help="edge-list file")
    p_ana.add_argument("--manifest", help="run a previously written manifest "
                                          "(other options are ignored)")
    p_ana.add_argument("--subgraph-size", type=int, default=3, choices=(3, 4))
    p_ana.add_argument("--num-networks", type=int, default=1000)
    p_ana.add_argument("--exchanges-per-edge", type=int, default=3)
    p_ana.add_argument("--exchange-attempts", type=int, default=3)
    p_ana.add_argument("--no-preserve-reciprocal", action="store_true")
    p_ana.add_argument("--sample-probs",
                       help="comma-separated RAND-ESU probabilities, e.g. 1,1,0.5")
    p_ana.add_argument("--seed", type=int, default=0)
    p_ana.add_argument("--workers", type=int, default=1)
    p_ana.add_argument("--label", help="dataset label (default: input stem)")
    p_ana.add_argument("--outdir", default=".")
    p_ana.add_argument("--dump-replicas", action="store_true",
                       help="write every replica as an edge list for audit")

    p_cmp = sub.add_parser("compare", help="overlay significance TSVs")
    p_cmp.add_argument("tsvs", nargs="+", help="significance TSV files")
    p_cmp.add_argument("--outdir", default=".")
    return parser


def _cmd_ingest(args) -> int:
    config = IngestConfig(lowercase=not args.no_lowercase,
                          sentence_break=not args.no_sentence_break,
                          drop_self_loops=not args.no_drop_self_loops)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    header = "dataset\twords\tvertices\tedges"
    summary = [header]
    for name in args.files:
        path = Path(name)
        text = path.read_text(encoding="utf-8")
        sentences = tokenize(text, config)
        graph, vocab = build_network(sentences, config)
        words = sum(len(s) for s in sentences)
        save_edgelist(graph, outdir / f"{path.stem}.edges")
        vocab.write_tsv(outdir / f"{path.stem}.vocab.tsv")
        summary.append(f"{path.stem}\t{words}\t{graph.n}\t{graph.num_arcs}")
    (outdir / "ingest_summary.tsv").write_text("\n".join(summary) + "\n",
                                               encoding="utf-8")
    print("\n".join(summary))
    return 0


def _manifest_from_args(args) -> RunManifest:
    if args.manifest:
        return RunManifest.from_text(Path(args.manifest).read_text(encoding="utf-8"))
    if not args.edgelist:
        raise ValueError("analyze needs an edge-list file or --manifest")
    label = args.label or Path(args.edgelist).stem
    return RunManifest(
        input=args.edgelist,
        label=label,
        k=args.subgraph_size,
        mode="sampled" if args.sample_probs else "full",
        sample_probs=args.sample_probs or "",
        num_networks=args.num_networks,
        exchanges_per_edge=args.exchanges_per_edge,
        exchange_attempts=args.exchange_attempts,
        preserve_reciprocal=not args.no_preserve_reciprocal,
        seed=args.seed,
        workers=args.workers,
        outdir=args.outdir,
        dump_replicas=args.dump_replicas)


def run_manifest(manifest: RunManifest) -> Path:
    """Execute an analyze run; returns the output directory."""
    with open(manifest.input, "r", encoding="utf-8") as fh:
        graph = load_edgelist(fh)
    outdir = Path(manifest.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    config = manifest.randomize_config()

    result = run_analysis(
        graph, k=manifest.k, config=config, sample_probs=manifest.probs(),
        dataset=manifest.label or Path(manifest.input).stem,
        workers=manifest.workers)

    write_census_tsv(result.real, outdir / "census.tsv")
    write_significance_tsv(result.profile, result.real, result.stats,
                           outdir / "significance.tsv")
    graph_info = {"vertices": graph.n, "arcs": graph.num_arcs,
                  "input": manifest.input}
    (outdir / "report.txt").write_text(render_ascii(result, graph_info),
                                       encoding="utf-8")
    (outdir / "report.html").write_text(render_html(result, graph_info),
                                        encoding="utf-8")
    (outdir / "manifest.txt").write_text(manifest.to_text(), encoding="utf-8")

    if manifest.dump_replicas:
        replica_dir = outdir / "replicas"
        replica_dir.mkdir(exist_ok=True)
        for i in range(manifest.num_networks):
            replica, _ = randomize(graph, config, i)
            save_edgelist(replica, replica_dir / f"replica_{i:05d}.edges")
    return outdir


def _cmd_analyze(args) -> int:
    manifest = _manifest_from_args(args)
    outdir = run_manifest(manifest)
    print(f"analysis written to {outdir}")
    return 0


def _cmd_compare(args) -> int:
    loaded = []
    for name in args.tsvs:
        profile, census = read_significance_tsv(name)
        if not profile.dataset:
            profile = dataclasses.replace(profile, dataset=Path(name).stem)
        loaded.append((profile, census))
    ks = {p.k for p, _ in loaded}
    if len(ks) != 1:
        raise ValueError(f"inputs mix subgraph sizes {sorted(ks)}")
    profiles = [p for p, _ in loaded]
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "tsp.svg").write_text(tsp_figure(profiles), encoding="utf-8")
    linear, log = frequency_figures(
        [(p.dataset, c) for p, c in loaded])
    (outdir / "frequencies_linear.svg").write_text(linear, encoding="utf-8")
    (outdir / "frequencies_log.svg").write_text(log, encoding="utf-8")
    (outdir / "correlation.tsv").write_text(correlation_tsv(profiles),
                                            encoding="utf-8")
    print(f"comparison written to {outdir}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = {"ingest": _cmd_ingest,
               "analyze": _cmd_analyze,
               "compare": _cmd_compare}[args.command]
    try:
        return handler(args)
    except (EdgeListError, IngestError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
