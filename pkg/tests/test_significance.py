import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wordmotifs.census import CensusResult
from wordmotifs.significance import (ANTI_MOTIF, MOTIF, NONE,
                                     EnsembleAccumulator, SignificanceProfile,
                                     build_profile, classify_motifs,
                                     compare_profiles, ensemble_stats, pvalues,
                                     read_significance_tsv,
                                     significance_profile,
                                     write_significance_tsv, zscores)

N_CLASSES = 13


def census(values) -> CensusResult:
    counts = np.zeros(N_CLASSES)
    counts[:len(values)] = values
    return CensusResult(k=3, counts=counts)


def replicas(rows):
    out = []
    for row in rows:
        counts = np.zeros(N_CLASSES)
        counts[:len(row)] = row
        out.append(counts)
    return out


class TestZScores:
    def test_exact_agreement_zero_variance(self):
        real = census([10])
        stats = ensemble_stats(real, replicas([[10], [10], [10]]))
        assert zscores(real, stats)[0] == 0.0

    def test_arithmetic(self):
        real = census([12])
        stats = ensemble_stats(real, replicas([[9], [11]]))
        # mean 10, population sd 1
        assert zscores(real, stats)[0] == pytest.approx(2.0)

    def test_zero_variance_mismatch_is_undefined(self):
        real = census([12])
        stats = ensemble_stats(real, replicas([[10], [10], [10]]))
        assert np.isnan(zscores(real, stats)[0])

    def test_requires_two_replicas(self):
        real = census([1])
        stats = ensemble_stats(real, replicas([[1]]))
        with pytest.raises(ValueError, match="2 replicas"):
            zscores(real, stats)

    def test_table_mismatch(self):
        real3 = census([1])
        stats4 = ensemble_stats(CensusResult(k=4, counts=np.zeros(199)),
                                [np.zeros(199), np.zeros(199)])
        with pytest.raises(ValueError, match="class table"):
            zscores(real3, stats4)


class TestPValues:
    def test_all_below(self):
        real = census([10])
        stats = ensemble_stats(real, replicas([[4], [5], [6]]))
        p_over, p_under = pvalues(real, stats)
        assert p_over[0] == 0.0
        assert p_under[0] == 1.0

    def test_all_equal(self):
        real = census([7])
        stats = ensemble_stats(real, replicas([[7], [7]]))
        p_over, p_under = pvalues(real, stats)
        assert p_over[0] == 1.0
        assert p_under[0] == 1.0

    def test_motif_cutoff_example(self):
        # 7 of 1000 replicas at or above the real count: p_over = 0.007
        real = census([100])
        rows = [[101]] * 7 + [[50]] * 993
        stats = ensemble_stats(real, replicas(rows))
        p_over, _ = pvalues(real, stats)
        assert p_over[0] == pytest.approx(0.007)
        z = zscores(real, stats)
        profile = SignificanceProfile(
            dataset="x", k=3, z=z, p_over=p_over,
            p_under=pvalues(real, stats)[1], sp=significance_profile(z))
        assert classify_motifs(profile)[0] == MOTIF


class TestSignificanceProfile:
    def test_three_four_five(self):
        sp = significance_profile(np.array([3.0, 4.0]))
        assert sp.tolist() == pytest.approx([0.6, 0.8])

    def test_single_nonzero(self):
        sp = significance_profile(np.array([5.0, 0.0, 0.0]))
        assert sp.tolist() == [1.0, 0.0, 0.0]

    def test_scale_invariance(self):
        z = np.array([1.5, -2.0, 0.25])
        assert significance_profile(z * 37.0) == pytest.approx(
            significance_profile(z))

    def test_undefined_maps_to_zero(self):
        sp = significance_profile(np.array([np.nan, 3.0, 4.0]))
        assert sp[0] == 0.0
        assert sp[1] == pytest.approx(0.6)

    def test_all_undefined_is_error(self):
        with pytest.raises(ValueError, match="num_networks"):
            significance_profile(np.array([np.nan, np.nan]))

    def test_all_zero_gives_zero_vector(self):
        assert significance_profile(np.zeros(4)).tolist() == [0.0] * 4

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=30)
           .filter(lambda v: any(x != 0 for x in v)))
    @settings(max_examples=200, deadline=None)
    def test_unit_norm(self, values):
        sp = significance_profile(np.array(values))
        assert abs((sp ** 2).sum() - 1.0) < 1e-12


class TestClassify:
    def profile(self, z, p_over, p_under):
        n = len(z)
        return SignificanceProfile(
            dataset="t", k=3, z=np.array(z, dtype=float),
            p_over=np.array(p_over), p_under=np.array(p_under),
            sp=np.zeros(n))

    def test_rules(self):
        profile = self.profile([3.1, -4.0, 1.0, np.nan],
                               [0.007, 1.0, 0.2, 0.0],
                               [1.0, 0.0, 0.3, 1.0])
        assert classify_motifs(profile) == [MOTIF, ANTI_MOTIF, NONE, NONE]

    def test_undefined_never_classified(self):
        profile = self.profile([np.nan], [0.0], [0.0])
        assert classify_motifs(profile) == [NONE]

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_monotone_in_cutoff(self, data):
        z = data.draw(st.lists(st.floats(-5, 5), min_size=3, max_size=6))
        p = data.draw(st.lists(st.floats(0, 1), min_size=len(z), max_size=len(z)))
        q = data.draw(st.lists(st.floats(0, 1), min_size=len(z), max_size=len(z)))
        profile = self.profile(z, p, q)
        loose = classify_motifs(profile, cutoff=0.05)
        tight = classify_motifs(profile, cutoff=0.01)
        for a, b in zip(tight, loose):
            if a == MOTIF:
                assert b == MOTIF
            if a == ANTI_MOTIF:
                assert b == ANTI_MOTIF


class TestAccumulator:
    def test_streamed_equals_two_pass(self):
        rng = np.random.default_rng(3)
        real = census(rng.integers(0, 50, N_CLASSES))
        rows = rng.poisson(20.0, size=(400, N_CLASSES)).astype(float)
        acc = EnsembleAccumulator(real)
        for row in rows:
            acc.add(row)
        stats = acc.result()
        assert stats.mean == pytest.approx(rows.mean(axis=0), rel=1e-9)
        assert stats.sd == pytest.approx(rows.std(axis=0), rel=1e-9)
        assert (stats.n_ge_real ==
                (rows >= np.asarray(real.counts, float)).sum(axis=0)).all()
        assert (stats.n_le_real ==
                (rows <= np.asarray(real.counts, float)).sum(axis=0)).all()

    def test_empty_is_error(self):
        acc = EnsembleAccumulator(census([1]))
        with pytest.raises(ValueError):
            acc.result()

    def test_shape_checked(self):
        acc = EnsembleAccumulator(census([1]))
        with pytest.raises(ValueError):
            acc.add(np.zeros(5))


class TestBuildProfile:
    def test_warns_on_many_undefined(self):
        real = census([5] * 13)
        # replicas constant at 4 (real is 5): zero variance, mismatched mean
        # in 12 classes; the 13th varies so the profile stays computable
        rows = [[4] * 12 + [1], [4] * 12 + [2]]
        counts = replicas(rows)
        stats = ensemble_stats(real, counts)
        with pytest.warns(UserWarning, match="undefined"):
            build_profile(real, stats, "w")

    def test_sign_matches_z(self):
        rng = np.random.default_rng(4)
        real = census(rng.integers(0, 30, N_CLASSES))
        rows = rng.poisson(15.0, size=(100, N_CLASSES)).astype(float)
        stats = ensemble_stats(real, rows)
        profile = build_profile(real, stats, "s")
        finite = np.isfinite(profile.z)
        assert (np.sign(profile.sp[finite]) == np.sign(profile.z[finite])).all()


class TestCompare:
    def build(self, sp, dataset="d", k=3):
        n = len(sp)
        return SignificanceProfile(dataset=dataset, k=k,
                                   z=np.asarray(sp, float),
                                   p_over=np.zeros(n), p_under=np.zeros(n),
                                   sp=np.asarray(sp, float))

    def test_self_correlation(self):
        p = self.build([0.1, -0.5, 0.8])
        matrix = compare_profiles([p, p])
        assert matrix[0, 1] == pytest.approx(1.0)

    def test_negation(self):
        sp = np.array([0.1, -0.5, 0.8])
        matrix = compare_profiles([self.build(sp), self.build(-sp)])
        assert matrix[0, 1] == pytest.approx(-1.0)

    def test_shuffled_profiles_average_near_zero(self):
        rng = np.random.default_rng(5)
        base = rng.normal(size=13)
        vals = []
        for _ in range(100):
            a, b = rng.permutation(base), rng.permutation(base)
            matrix = compare_profiles([self.build(a), self.build(b)])
            vals.append(matrix[0, 1])
        assert abs(np.mean(vals)) < 0.1

    def test_matrix_shape_and_bounds(self):
        rng = np.random.default_rng(6)
        profiles = [self.build(rng.normal(size=13), dataset=str(i))
                    for i in range(5)]
        matrix = compare_profiles(profiles)
        assert matrix.shape == (5, 5)
        assert np.allclose(matrix, matrix.T)
        assert np.allclose(np.diag(matrix), 1.0)
        assert (matrix <= 1.0 + 1e-12).all() and (matrix >= -1.0 - 1e-12).all()

    def test_mismatched_tables_rejected(self):
        a = self.build(np.zeros(13), k=3)
        b = SignificanceProfile(dataset="b", k=4, z=np.zeros(199),
                                p_over=np.zeros(199), p_under=np.zeros(199),
                                sp=np.zeros(199))
        with pytest.raises(ValueError, match="class table"):
            compare_profiles([a, b])


class TestTsvRoundTrip:
    def test_round_trip_with_undefined(self):
        rng = np.random.default_rng(7)
        real = census(rng.integers(0, 40, N_CLASSES))
        rows = rng.poisson(12.0, size=(50, N_CLASSES)).astype(float)
        rows[:, 5] = real.counts[5] + 1  # zero variance, mismatch: undefined
        stats = ensemble_stats(real, rows)
        profile = build_profile(real, stats, "round")
        buf = io.StringIO()
        write_significance_tsv(profile, real, stats, buf)
        loaded, counts = read_significance_tsv(io.StringIO(buf.getvalue()))
        assert loaded.dataset == "round"
        assert loaded.k == 3
        assert np.isnan(loaded.z[5]) and np.isnan(profile.z[5])
        finite = np.isfinite(profile.z)
        assert loaded.z[finite] == pytest.approx(profile.z[finite])
        assert loaded.sp == pytest.approx(profile.sp)
        assert loaded.p_over == pytest.approx(profile.p_over)
        assert np.array_equal(counts.counts, real.counts)
