from fractions import Fraction

import pytest

from scarfkit.exceptions import CapExceeded, InvalidInstance
from scarfkit.fspp import (
    FsppInstance,
    bounded_denominator_search,
    digraph_to_fspp,
    farey_values,
    fspp_solution_to_kernel,
    suffix_paths,
    verify_eps_solution,
    verify_eps_stable,
    verify_feasible,
    verify_stable,
)
from scarfkit.kernels import Digraph, verify_fractional_kernel, verify_nash

HALF = Fraction(1, 2)
UD, UVD, VD, VUD = ("u", "d"), ("u", "v", "d"), ("v", "d"), ("v", "u", "d")
STABLE = {UD: 0, UVD: 1, VD: 1, VUD: 0}
UNIFORM = {UD: HALF, UVD: HALF, VD: HALF, VUD: HALF}
DIRECT_ONLY = {UD: 1, UVD: 0, VD: 0, VUD: 0}


class TestInstance:
    def test_ranks_must_be_permutation(self):
        with pytest.raises(InvalidInstance):
            FsppInstance(("u", "d"), "d", (("u", "d"),), {"u": [UD]}, {"u": {UD: 2}})

    def test_path_must_use_edges(self):
        with pytest.raises(InvalidInstance):
            FsppInstance(("u", "v", "d"), "d", (("u", "d"),), {"u": [UVD]}, {"u": {UVD: 1}})

    def test_destination_has_no_paths(self):
        with pytest.raises(InvalidInstance):
            FsppInstance(("u", "d"), "d", (("u", "d"),), {"d": [("d", "u")]}, {"d": {("d", "u"): 1}})

    def test_non_simple_path(self):
        with pytest.raises(InvalidInstance):
            FsppInstance(
                ("u", "v", "d"), "d", (("u", "v"), ("v", "d")),
                {"u": [("u", "v", "u", "v", "d")]}, {"u": {("u", "v", "u", "v", "d"): 1}},
            )


class TestSuffixPaths:
    def test_through_neighbour(self, fspp_two_cycle):
        assert suffix_paths("u", VD, fspp_two_cycle) == [UVD]

    def test_path_is_its_own_suffix(self, fspp_two_cycle):
        assert suffix_paths("u", UD, fspp_two_cycle) == [UD]

    def test_no_match(self, fspp_two_cycle):
        assert suffix_paths("u", ("w", "d"), fspp_two_cycle) == []

    def test_needs_an_edge(self, fspp_two_cycle):
        with pytest.raises(ValueError):
            suffix_paths("u", ("d",), fspp_two_cycle)


class TestFeasible:
    def test_stable_weights(self, fspp_two_cycle):
        assert verify_feasible(fspp_two_cycle, STABLE)

    def test_tree_condition(self, fspp_two_cycle):
        verdict = verify_feasible(fspp_two_cycle, {UVD: 1, VD: 0})
        assert not verdict
        assert "tree condition at ('u', S=vd)" in verdict.failures

    def test_all_zero(self, fspp_two_cycle):
        assert verify_feasible(fspp_two_cycle, {})

    def test_unity(self, fspp_two_cycle):
        assert not verify_feasible(fspp_two_cycle, {UD: 1, UVD: 1, VD: 1})


class TestStable:
    def test_accepts_routing_via_v(self, fspp_two_cycle):
        assert verify_stable(fspp_two_cycle, STABLE)

    def test_accepts_uniform(self, fspp_two_cycle):
        assert verify_stable(fspp_two_cycle, UNIFORM)

    def test_rejects_direct_only(self, fspp_two_cycle):
        verdict = verify_stable(fspp_two_cycle, DIRECT_ONLY)
        assert not verdict
        assert "unstable at ('v', Q=vud)" in verdict.failures

    def test_missing_paths_weigh_zero(self, fspp_two_cycle):
        assert verify_stable(fspp_two_cycle, {UVD: 1, VD: 1})


class TestRelaxations:
    @pytest.mark.parametrize("w", [STABLE, UNIFORM, DIRECT_ONLY, {}, {UVD: 1}])
    def test_zero_eps_is_exact(self, fspp_two_cycle, w):
        exact = bool(verify_stable(fspp_two_cycle, w))
        assert bool(verify_eps_solution(fspp_two_cycle, w, 0)) == exact
        assert bool(verify_eps_stable(fspp_two_cycle, w, 0)) == exact

    def test_eps_stable_monotone(self, fspp_two_cycle):
        assert verify_eps_stable(fspp_two_cycle, STABLE, Fraction(1, 10))

    def test_eps_tree_relaxation(self, fspp_two_cycle):
        w = {UVD: Fraction(11, 20), VD: HALF}
        tree = "tree condition at ('u', S=vd)"
        assert tree in verify_feasible(fspp_two_cycle, w).failures
        assert tree in verify_eps_solution(fspp_two_cycle, w, Fraction(1, 100)).failures
        assert tree not in verify_eps_solution(fspp_two_cycle, w, Fraction(1, 20)).failures

    def test_negative_eps(self, fspp_two_cycle):
        with pytest.raises(ValueError):
            verify_eps_stable(fspp_two_cycle, STABLE, -1)


class TestReduction:
    def test_two_cycle_matches_fixture(self, two_cycle, fspp_two_cycle):
        inst, _ = digraph_to_fspp(two_cycle)
        assert inst.paths == fspp_two_cycle.paths
        assert inst.ranks == fspp_two_cycle.ranks

    def test_single_arc_out_orientation(self, single_arc):
        inst, _ = digraph_to_fspp(single_arc, orientation="out")
        assert inst.ranks["u"] == {UD: 1, UVD: 2}
        assert inst.ranks["v"] == {VD: 1}

    def test_single_arc_in_orientation(self, single_arc):
        inst, _ = digraph_to_fspp(single_arc)
        assert inst.ranks["u"] == {UD: 1}
        assert inst.ranks["v"] == {VD: 1, VUD: 2}

    def test_c5_one_path_via_successor(self, c5):
        inst, _ = digraph_to_fspp(c5, orientation="out")
        for v in c5.vertices:
            succ = v % 5 + 1
            assert inst.ranks[v] == {(v, "d"): 1, (v, succ, "d"): 2}

    def test_destination_name_avoids_clash(self):
        D = Digraph(("d", "e"), (("d", "e"),))
        inst, mapping = digraph_to_fspp(D)
        assert inst.dest == mapping.dest == "d'"

    def test_bad_orientation(self, c5):
        with pytest.raises(ValueError):
            digraph_to_fspp(c5, orientation="sideways")


class TestBackMapping:
    def test_two_cycle_stable(self, two_cycle):
        _, mapping = digraph_to_fspp(two_cycle)
        f = fspp_solution_to_kernel(STABLE, mapping)
        assert f == {"u": 0, "v": 1}
        assert verify_fractional_kernel(two_cycle, f)
        assert verify_nash(two_cycle, f)

    def test_two_cycle_uniform(self, two_cycle):
        _, mapping = digraph_to_fspp(two_cycle)
        f = fspp_solution_to_kernel(UNIFORM, mapping)
        assert f == {"u": HALF, "v": HALF}
        assert verify_nash(two_cycle, f)

    def test_c5_uniform(self, c5):
        inst, mapping = digraph_to_fspp(c5, orientation="out")
        w = {P: HALF for P in inst.all_paths}
        assert verify_stable(inst, w)
        assert fspp_solution_to_kernel(w, mapping) == {v: HALF for v in c5.vertices}

    def test_single_arc_in_orientation_gives_kernel(self, single_arc):
        inst, mapping = digraph_to_fspp(single_arc)
        sols = list(bounded_denominator_search(inst, 2))
        assert sols
        for w in sols:
            f = fspp_solution_to_kernel(w, mapping)
            assert f == {"u": 1, "v": 0}
            assert verify_fractional_kernel(single_arc, f)

    def test_single_arc_out_orientation_reverses(self, single_arc):
        # routing through out-neighbours yields kernels of the reversed digraph
        inst, mapping = digraph_to_fspp(single_arc, orientation="out")
        for w in bounded_denominator_search(inst, 2):
            f = fspp_solution_to_kernel(w, mapping)
            assert verify_fractional_kernel(single_arc.reversed(), f)


class TestSearch:
    def test_farey(self):
        assert farey_values(2) == [0, HALF, 1]

    def test_two_cycle_solutions_are_stable(self, fspp_two_cycle):
        sols = list(bounded_denominator_search(fspp_two_cycle, 2))
        assert {tuple(sorted(w.items())) for w in sols} >= {
            tuple(sorted({UD: 0, UVD: 1, VD: 1, VUD: 0}.items())),
        }
        assert all(verify_stable(fspp_two_cycle, w) for w in sols)

    def test_cap(self, c5):
        inst, _ = digraph_to_fspp(c5)
        with pytest.raises(CapExceeded):
            next(bounded_denominator_search(inst, 2))
