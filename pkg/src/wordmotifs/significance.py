"""Z-scores, p-values, significance profiles and motif classification.

Per class i, with real count N_i and ensemble mean/sd (mu_i, sigma_i):

    Z_i = (N_i - mu_i) / sigma_i

When sigma_i is zero, Z_i is 0 if the real count equals the ensemble mean
and UNDEFINED otherwise; UNDEFINED is represented as NaN, shown as ``n/a``
in reports, and contributes 0 to the profile. p-values use inclusive
tails: p_over = #{replicas with count >= N_i} / m and symmetrically for
p_under. The significance profile normalizes the Z vector to unit
Euclidean length over its finite entries, which makes profiles comparable
across networks of very different sizes.

Ensemble statistics accumulate in one pass (Welford) in replica-index
order, so parallel runs reduce to bit-identical results.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .census import CensusResult

MOTIF = "MOTIF"
ANTI_MOTIF = "ANTI-MOTIF"
NONE = "NONE"

DEFAULT_CUTOFF = 0.01
UNDEFINED_WARN_FRACTION = 0.25


@dataclass(frozen=True)
class EnsembleStats:
    """Per-class moments and tail counts over a replica ensemble."""

    k: int
    m: int
    mean: np.ndarray
    sd: np.ndarray
    n_ge_real: np.ndarray
    n_le_real: np.ndarray


class EnsembleAccumulator:
    """Streaming mean/variance/tails; feed replica counts in index order."""

    def __init__(self, real: CensusResult):
        size = len(real.counts)
        self.k = real.k
        self._real = np.asarray(real.counts, dtype=np.float64)
        self._mean = np.zeros(size)
        self._m2 = np.zeros(size)
        self._ge = np.zeros(size, dtype=np.int64)
        self._le = np.zeros(size, dtype=np.int64)
        self._m = 0

    def add(self, counts: np.ndarray) -> None:
        counts = np.asarray(counts, dtype=np.float64)
        if counts.shape != self._mean.shape:
            raise ValueError("replica counts do not match the class table")
        self._m += 1
        delta = counts - self._mean
        self._mean += delta / self._m
        self._m2 += delta * (counts - self._mean)
        self._ge += counts >= self._real
        self._le += counts <= self._real

    def result(self) -> EnsembleStats:
        if self._m == 0:
            raise ValueError("no replicas accumulated")
        # population sd: the ensemble is the reference population
        sd = np.sqrt(np.maximum(self._m2, 0.0) / self._m)
        return EnsembleStats(k=self.k, m=self._m, mean=self._mean.copy(),
                             sd=sd, n_ge_real=self._ge.copy(),
                             n_le_real=self._le.copy())


def ensemble_stats(real: CensusResult,
                   replica_counts: Sequence[np.ndarray]) -> EnsembleStats:
    acc = EnsembleAccumulator(real)
    for counts in replica_counts:
        acc.add(counts)
    return acc.result()


def _check_match(real: CensusResult, stats: EnsembleStats) -> None:
    if real.k != stats.k or len(real.counts) != len(stats.mean):
        raise ValueError("census result and ensemble stats use different "
                         "class tables")
    if stats.m < 2:
        raise ValueError("need at least 2 replicas for significance")


def zscores(real: CensusResult, stats: EnsembleStats) -> np.ndarray:
    """Per-class Z; NaN marks UNDEFINED (zero ensemble variance, count off)."""
    _check_match(real, stats)
    counts = np.asarray(real.counts, dtype=np.float64)
    z = np.empty(len(counts))
    degenerate = stats.sd == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        z = (counts - stats.mean) / stats.sd
    z[degenerate & (counts == stats.mean)] = 0.0
    z[degenerate & (counts != stats.mean)] = np.nan
    return z


def pvalues(real: CensusResult, stats: EnsembleStats) -> tuple[np.ndarray, np.ndarray]:
    """(p_over, p_under) with inclusive tails."""
    _check_match(real, stats)
    return stats.n_ge_real / stats.m, stats.n_le_real / stats.m


def significance_profile(z: np.ndarray) -> np.ndarray:
    """Z normalized to unit length over finite entries; NaN entries map to 0."""
    z = np.asarray(z, dtype=np.float64)
    finite = np.isfinite(z)
    if not finite.any():
        raise ValueError(
            "every Z-score is undefined; increase num_networks so the "
            "ensemble shows variance")
    sp = np.zeros(len(z))
    scale = float(np.max(np.abs(z[finite])))  # pre-scale: no under/overflow
    if scale > 0:
        scaled = z[finite] / scale
        sp[finite] = scaled / np.sqrt(np.sum(scaled ** 2))
    return sp


@dataclass(frozen=True)
class SignificanceProfile:
    """Z, p and normalized profile for one dataset."""

    dataset: str
    k: int
    z: np.ndarray
    p_over: np.ndarray
    p_under: np.ndarray
    sp: np.ndarray

    @property
    def undefined(self) -> np.ndarray:
        return ~np.isfinite(self.z)


def build_profile(real: CensusResult, stats: EnsembleStats,
                  dataset: str) -> SignificanceProfile:
    z = zscores(real, stats)
    p_over, p_under = pvalues(real, stats)
    sp = significance_profile(z)
    undefined = ~np.isfinite(z)
    if undefined.mean() > UNDEFINED_WARN_FRACTION:
        warnings.warn(
            f"{int(undefined.sum())}/{len(z)} classes have undefined "
            f"Z-scores; increase num_networks for a usable profile")
    return SignificanceProfile(dataset=dataset, k=real.k, z=z,
                               p_over=p_over, p_under=p_under, sp=sp)


def classify_motifs(profile: SignificanceProfile,
                    cutoff: float = DEFAULT_CUTOFF) -> list[str]:
    """MOTIF / ANTI-MOTIF / NONE per class at the given p cutoff."""
    labels = []
    for z, po, pu in zip(profile.z, profile.p_over, profile.p_under):
        if np.isfinite(z) and z > 0 and po < cutoff:
            labels.append(MOTIF)
        elif np.isfinite(z) and z < 0 and pu < cutoff:
            labels.append(ANTI_MOTIF)
        else:
            labels.append(NONE)
    return labels


def write_significance_tsv(profile: SignificanceProfile, real: CensusResult,
                           stats: EnsembleStats, target,
                           cutoff: float = DEFAULT_CUTOFF) -> None:
    """One row per class in export-id order; undefined Z written as ``n/a``."""
    from .census import _open_for_write

    labels = classify_motifs(profile, cutoff)
    freqs = real.frequencies
    fh, close = _open_for_write(target)
    try:
        fh.write(f"# dataset={profile.dataset}\n")
        fh.write(f"# k={profile.k}\n")
        fh.write("class_export_id\tcount\tfrequency\tmean_random\tsd_random\t"
                 "z_score\tp_over\tp_under\tsp\tlabel\n")
        for i, cls in enumerate(real.table.classes):
            count = real.counts[i]
            count_str = (str(int(count)) if float(count).is_integer()
                         else repr(float(count)))
            z_str = "n/a" if not np.isfinite(profile.z[i]) else repr(float(profile.z[i]))
            fh.write("\t".join([
                str(cls.export_id), count_str, repr(float(freqs[i])),
                repr(float(stats.mean[i])), repr(float(stats.sd[i])),
                z_str, repr(float(profile.p_over[i])),
                repr(float(profile.p_under[i])), repr(float(profile.sp[i])),
                labels[i],
            ]) + "\n")
    finally:
        if close:
            fh.close()


def read_significance_tsv(source) -> tuple[SignificanceProfile, CensusResult]:
    """Inverse of ``write_significance_tsv`` (labels are recomputable)."""
    from .census import _read_lines, build_class_table

    dataset = ""
    k = None
    rows = {}
    for line in _read_lines(source):
        line = line.rstrip("\n")
        if line.startswith("# dataset="):
            dataset = line.split("=", 1)[1]
            continue
        if line.startswith("# k="):
            k = int(line.split("=", 1)[1])
            continue
        if not line or line.startswith("#") or line.startswith("class_export_id"):
            continue
        f = line.split("\t")
        rows[int(f[0])] = f
    if k is None:
        raise ValueError("significance TSV is missing its '# k=' header")
    table = build_class_table(k)
    if set(rows) != {c.export_id for c in table.classes}:
        raise ValueError("significance TSV rows do not cover the class table")
    ordered = [rows[c.export_id] for c in table.classes]
    counts = np.array([float(f[1]) for f in ordered])
    if np.all(counts == np.floor(counts)):
        counts = counts.astype(np.int64)
    z = np.array([np.nan if f[5] == "n/a" else float(f[5]) for f in ordered])
    profile = SignificanceProfile(
        dataset=dataset, k=k, z=z,
        p_over=np.array([float(f[6]) for f in ordered]),
        p_under=np.array([float(f[7]) for f in ordered]),
        sp=np.array([float(f[8]) for f in ordered]))
    return profile, CensusResult(k=k, counts=counts)


def compare_profiles(profiles: Sequence[SignificanceProfile]) -> np.ndarray:
    """Pairwise Pearson correlation matrix of the SP vectors."""
    if not profiles:
        raise ValueError("need at least one profile")
    k = profiles[0].k
    size = len(profiles[0].sp)
    for p in profiles:
        if p.k != k or len(p.sp) != size:
            raise ValueError("profiles use different class tables")
    x = np.vstack([p.sp for p in profiles])
    centered = x - x.mean(axis=1, keepdims=True)
    norms = np.sqrt((centered ** 2).sum(axis=1))
    out = np.eye(len(profiles))
    for i in range(len(profiles)):
        for j in range(i + 1, len(profiles)):
            if norms[i] > 0 and norms[j] > 0:
                r = float(centered[i] @ centered[j] / (norms[i] * norms[j]))
            else:
                r = np.nan
            out[i, j] = out[j, i] = r
    return out
