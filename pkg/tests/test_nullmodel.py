import warnings

import numpy as np
import pytest

from oracles import random_digraph
from wordmotifs._rng import derive_rng
from wordmotifs.graph import DirectedGraph, degrees
from wordmotifs.nullmodel import (RandomizeConfig, SwapReport, _try_single_swap,
                                  generate_ensemble, randomize)


def mutual_dyads(g: DirectedGraph) -> int:
    arcs = g.arc_set
    return sum(1 for (u, v) in arcs if u < v and (v, u) in arcs)


def quiet_randomize(g, config, index=0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return randomize(g, config, index)


class TestConfig:
    def test_defaults_match_tool_conventions(self):
        config = RandomizeConfig()
        assert config.num_networks == 1000
        assert config.exchanges_per_edge == 3
        assert config.exchange_attempts == 3
        assert config.preserve_reciprocal

    @pytest.mark.parametrize("field", ["num_networks", "exchanges_per_edge",
                                       "exchange_attempts"])
    def test_counts_must_be_positive(self, field):
        with pytest.raises(ValueError, match=field):
            RandomizeConfig(**{field: 0})


class TestRandomize:
    def test_single_arc_rejected(self):
        g = DirectedGraph(2, [(0, 1)])
        with pytest.raises(ValueError, match="at least 2 arcs"):
            randomize(g, RandomizeConfig(seed=0))

    def test_only_possible_swap(self):
        # arcs {0->1, 2->3}: the only valid rewire is {0->3, 2->1}
        singles = [(0, 1), (2, 3)]
        arc_set = {(0, 1), (2, 3)}
        rng = derive_rng("swap-example")
        applied = False
        while not applied:
            applied = _try_single_swap(rng.random, singles, arc_set, True)
        assert arc_set == {(0, 3), (2, 1)}

    def test_degrees_preserved_exactly(self):
        rng = np.random.default_rng(42)
        for trial in range(30):
            g = random_digraph(int(rng.integers(5, 40)), 0.15, rng)
            if g.num_arcs < 2:
                continue
            replica, _ = quiet_randomize(g, RandomizeConfig(seed=trial))
            assert np.array_equal(degrees(g), degrees(replica))

    def test_replica_is_simple(self):
        rng = np.random.default_rng(43)
        for trial in range(10):
            g = random_digraph(20, 0.2, rng)
            replica, _ = quiet_randomize(g, RandomizeConfig(seed=trial))
            arcs = replica.arcs
            assert (arcs[:, 0] != arcs[:, 1]).all()
            assert len({tuple(a) for a in arcs.tolist()}) == len(arcs)

    def test_mutual_dyads_preserved(self):
        rng = np.random.default_rng(44)
        for trial in range(20):
            g = random_digraph(18, 0.25, rng)
            if g.num_arcs < 2:
                continue
            replica, _ = quiet_randomize(g, RandomizeConfig(seed=trial))
            assert mutual_dyads(replica) == mutual_dyads(g)

    def test_without_reciprocal_flag_degrees_still_hold(self):
        rng = np.random.default_rng(45)
        g = random_digraph(25, 0.2, rng)
        config = RandomizeConfig(preserve_reciprocal=False, seed=1)
        replica, _ = quiet_randomize(g, config)
        assert np.array_equal(degrees(g), degrees(replica))

    def test_deterministic_per_replica_index(self):
        rng = np.random.default_rng(46)
        g = random_digraph(20, 0.2, rng)
        config = RandomizeConfig(seed=7)
        a1, _ = quiet_randomize(g, config, 3)
        a2, _ = quiet_randomize(g, config, 3)
        b, _ = quiet_randomize(g, config, 4)
        assert a1 == a2
        assert a1 != b

    def test_low_success_ratio_warns(self):
        # complete digraph: every rewire collides, all rounds fail
        n = 5
        g = DirectedGraph(n, [(i, j) for i in range(n)
                              for j in range(n) if i != j])
        with pytest.warns(UserWarning, match="swap rounds succeeded"):
            replica, report = randomize(g, RandomizeConfig(seed=0))
        assert report.successful == 0
        assert replica == g

    def test_report_counts(self):
        rng = np.random.default_rng(47)
        g = random_digraph(20, 0.2, rng)
        config = RandomizeConfig(exchanges_per_edge=2, seed=3)
        _, report = quiet_randomize(g, config)
        assert report.attempted == 2 * g.num_arcs
        assert 0 <= report.successful <= report.attempted
        assert report.success_ratio == report.successful / report.attempted

    def test_mixing_increases_with_exchanges(self):
        # P(replica == original) should drop as exchanges_per_edge grows.
        # Two disjoint 3-cycles mix freely but occasional rejected rounds
        # break the swap-parity lock that perfect matchings exhibit.
        g = DirectedGraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])

        def identical_fraction(epe, trials=300):
            hits = 0
            for i in range(trials):
                config = RandomizeConfig(exchanges_per_edge=epe, seed=17)
                replica, _ = quiet_randomize(g, config, i)
                hits += replica == g
            return hits / trials

        low, high = identical_fraction(1), identical_fraction(8)
        assert low > high


class TestGenerateEnsemble:
    def test_streams_requested_count(self):
        rng = np.random.default_rng(48)
        g = random_digraph(15, 0.2, rng)
        config = RandomizeConfig(num_networks=5, seed=2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            replicas = list(generate_ensemble(g, config))
        assert len(replicas) == 5
        for replica, report in replicas:
            assert isinstance(report, SwapReport)
            assert np.array_equal(degrees(g), degrees(replica))

    def test_reproducible(self):
        rng = np.random.default_rng(49)
        g = random_digraph(15, 0.25, rng)
        config = RandomizeConfig(num_networks=4, seed=9)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            first = [r for r, _ in generate_ensemble(g, config)]
            second = [r for r, _ in generate_ensemble(g, config)]
        assert first == second

    def test_matches_randomize_by_index(self):
        rng = np.random.default_rng(50)
        g = random_digraph(15, 0.25, rng)
        config = RandomizeConfig(num_networks=3, seed=11)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            streamed = [r for r, _ in generate_ensemble(g, config)]
            direct = [randomize(g, config, i)[0] for i in range(3)]
        assert streamed == direct
