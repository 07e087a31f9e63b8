"""Human-readable reports and comparison figures.

ASCII and HTML reports render from one table of pre-formatted strings, so
they always carry identical numbers. Reports round to 3 decimals; the TSV
files written alongside keep full precision and are the machine interface.
"""
from __future__ import annotations

import math
from html import escape

import numpy as np

from .census import CensusResult, build_class_table
from .charts import line_chart
from .pipeline import AnalysisResult
from .significance import SignificanceProfile, classify_motifs, compare_profiles

_COLUMNS = ("id", "class", "pattern", "count", "freq", "mean_rand", "sd_rand",
            "z", "p_over", "p_under", "sp", "label")


def _f3(x: float) -> str:
    return f"{x:.3f}"


def significance_rows(result: AnalysisResult, cutoff: float = 0.01) -> list[dict]:
    """Per-class report rows, sorted by |Z| descending (undefined last)."""
    labels = classify_motifs(result.profile, cutoff)
    freqs = result.real.frequencies
    rows = []
    for i, cls in enumerate(result.real.table.classes):
        z = result.profile.z[i]
        count = result.real.counts[i]
        rows.append({
            "id": str(cls.export_id),
            "class": cls.name,
            "pattern": cls.adjacency_string,
            "count": str(int(count)) if float(count).is_integer() else _f3(count),
            "freq": _f3(freqs[i]),
            "mean_rand": _f3(result.stats.mean[i]),
            "sd_rand": _f3(result.stats.sd[i]),
            "z": "n/a" if not np.isfinite(z) else _f3(z),
            "p_over": _f3(result.profile.p_over[i]),
            "p_under": _f3(result.profile.p_under[i]),
            "sp": _f3(result.profile.sp[i]),
            "label": labels[i],
            "_sort": (0, -abs(z)) if np.isfinite(z) else (1, 0.0),
            "_id": cls.export_id,
        })
    rows.sort(key=lambda r: (r["_sort"], r["_id"]))
    for r in rows:
        del r["_sort"], r["_id"]
    return rows


def _meta_lines(result: AnalysisResult, graph_info: dict) -> list[str]:
    lines = [f"dataset: {result.dataset}", f"subgraph size: {result.real.k}"]
    for key, value in graph_info.items():
        lines.append(f"{key}: {value}")
    lines.append(f"replicas: {result.stats.m}")
    lines.append(f"subgraphs in real network: {result.real.total}")
    lines.append(f"swap rounds: {result.swaps.attempted} "
                 f"(success ratio {result.swaps.success_ratio:.3f})")
    undefined = int(result.profile.undefined.sum())
    if undefined:
        lines.append(f"undefined z-scores: {undefined} "
                     f"(increase num-networks to resolve)")
    return lines


def render_ascii(result: AnalysisResult, graph_info: dict,
                 cutoff: float = 0.01) -> str:
    rows = significance_rows(result, cutoff)
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in _COLUMNS}
    header = "  ".join(c.ljust(widths[c]) for c in _COLUMNS)
    rule = "-" * len(header)
    out = ["motif significance report", rule]
    out.extend(_meta_lines(result, graph_info))
    out.extend([rule, header, rule])
    for r in rows:
        out.append("  ".join(r[c].ljust(widths[c]) for c in _COLUMNS))
    out.append(rule)
    return "\n".join(out) + "\n"


def render_html(result: AnalysisResult, graph_info: dict,
                cutoff: float = 0.01) -> str:
    rows = significance_rows(result, cutoff)
    meta = "".join(f"<li>{escape(line)}</li>"
                   for line in _meta_lines(result, graph_info))
    head = "".join(f"<th>{escape(c)}</th>" for c in _COLUMNS)
    body = "".join(
        "<tr>" + "".join(f"<td>{escape(r[c])}</td>" for c in _COLUMNS) + "</tr>"
        for r in rows)
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        f"<title>motif significance: {escape(result.dataset)}</title>"
        "<style>body{font-family:sans-serif}table{border-collapse:collapse}"
        "td,th{border:1px solid #999;padding:3px 8px;text-align:right}"
        "th{background:#eee}</style></head><body>"
        f"<h1>motif significance report</h1><ul>{meta}</ul>"
        f"<table><thead><tr>{head}</tr></thead>"
        f"<tbody>{body}</tbody></table></body></html>\n"
    )


def tsp_figure(profiles: list[SignificanceProfile]) -> str:
    """Overlaid normalized significance profiles over class ids."""
    ids = [c.export_id for c in build_class_table(profiles[0].k).classes]
    series = [
        (p.dataset, list(zip(map(float, ids), map(float, p.sp))))
        for p in profiles
    ]
    return line_chart(series, title="Triad significance profile"
                      if profiles[0].k == 3 else "Subgraph significance profile",
                      x_label="class id", y_label="normalized z-score",
                      x_ticks=ids, zero_line=True)


def frequency_figures(
    datasets: list[tuple[str, CensusResult]],
) -> tuple[str, str]:
    """(linear, log) frequency charts; log drops zero-count classes."""
    ids = [c.export_id for c in datasets[0][1].table.classes]
    linear_series = []
    log_series = []
    dropped: set[int] = set()
    for label, census in datasets:
        freqs = census.frequencies
        linear_series.append(
            (label, list(zip(map(float, ids), map(float, freqs)))))
        pts = []
        for cid, count, f in zip(ids, census.counts, freqs):
            if count > 0:
                pts.append((float(cid), math.log10(float(f))))
            else:
                dropped.add(cid)
        log_series.append((label, pts))
    note = ""
    if dropped:
        note = ("zero-count classes omitted on log scale: "
                + ", ".join(str(i) for i in sorted(dropped)))
    linear = line_chart(linear_series, title="Subgraph class frequencies",
                        x_label="class id", y_label="frequency",
                        x_ticks=ids)
    log = line_chart(log_series, title="Subgraph class frequencies (log)",
                     x_label="class id", y_label="frequency",
                     x_ticks=ids, log_ticks=True, note=note)
    return linear, log


def correlation_tsv(profiles: list[SignificanceProfile]) -> str:
    matrix = compare_profiles(profiles)
    labels = [p.dataset for p in profiles]
    lines = ["dataset\t" + "\t".join(labels)]
    for label, row in zip(labels, matrix):
        lines.append(label + "\t" + "\t".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"
