from fractions import Fraction

import pytest

from scarfkit.core import solve, validate_instance
from scarfkit.exceptions import InvalidInstance, NotCliqueAcyclic
from scarfkit.generators import gen_clique_acyclic_digraph, gen_directed_cycle
from scarfkit.kernels import (
    Digraph,
    compute_nash,
    cycle_cover_cycles,
    extract_kernel,
    is_clique_acyclic,
    is_homogeneous,
    maximal_cliques,
    proper_cycles,
    reduce_to_scarf,
    solve_strong_kernel,
    validate_3kernel_instance,
    verify_fractional_kernel,
    verify_nash,
    verify_strong_kernel,
)

HALF = Fraction(1, 2)


def c5_with_source(targets):
    base = gen_directed_cycle(5)
    return Digraph(base.vertices + (6,), base.arcs + tuple((6, t) for t in targets))


class TestDigraph:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidInstance):
            Digraph((1,), ((1, 1),))

    def test_rejects_unknown_vertex(self):
        with pytest.raises(InvalidInstance):
            Digraph((1,), ((1, 2),))

    def test_rejects_duplicate_arc(self):
        with pytest.raises(InvalidInstance):
            Digraph((1, 2), ((1, 2), (1, 2)))

    def test_in_neighbourhood(self, single_arc):
        assert single_arc.in_neighbourhood("v") == ["v", "u"]
        assert single_arc.in_neighbourhood("u") == ["u"]

    def test_irreversible(self, single_arc, two_cycle):
        assert single_arc.irreversible("u", "v")
        assert not two_cycle.irreversible("u", "v")


class TestCliques:
    def test_c5(self, c5):
        assert maximal_cliques(c5) == [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]

    def test_single_arc(self, single_arc):
        assert maximal_cliques(single_arc) == [("u", "v")]

    def test_triangle(self, triangle):
        assert maximal_cliques(triangle) == [("u", "v", "w")]

    def test_size_cap(self, triangle):
        with pytest.raises(InvalidInstance):
            maximal_cliques(triangle, max_size=2)

    def test_clique_acyclic(self, triangle, c5, two_cycle):
        assert not is_clique_acyclic(triangle)
        assert is_clique_acyclic(c5)
        assert is_clique_acyclic(two_cycle)


class TestCycles:
    def test_c5_single_proper_cycle(self, c5):
        cycles, complete = proper_cycles(c5)
        assert complete
        assert len(cycles) == 1
        assert validate_3kernel_instance(c5).violations == []

    def test_shared_vertex_fails(self):
        arcs = [(i, i % 5 + 1) for i in range(1, 6)]
        arcs += [(1, 6), (6, 7), (7, 8), (8, 9), (9, 1)]
        D = Digraph(tuple(range(1, 10)), tuple(arcs))
        assert validate_3kernel_instance(D).violations

    def test_partial_source_not_homogeneous(self):
        D = c5_with_source([1])
        assert not is_homogeneous(D, (1, 2, 3, 4, 5))
        assert validate_3kernel_instance(D).violations

    def test_full_source_homogeneous(self):
        assert is_homogeneous(c5_with_source([1, 2, 3, 4, 5]), (1, 2, 3, 4, 5))

    def test_cycle_cover(self, c5):
        assert [sorted(c) for c in cycle_cover_cycles(c5)] == [[1, 2, 3, 4, 5]]


class TestReduction:
    def test_single_arc_row(self, single_arc):
        inst, mapping = reduce_to_scarf(single_arc)
        assert (inst.m, inst.n) == (1, 3)
        row = inst.C[0]
        assert row[0] == -1
        assert row[mapping.vertex_cols["v"]] == 1
        assert row[mapping.vertex_cols["u"]] == 2

    def test_two_cycle_order_by_id(self, two_cycle):
        inst, mapping = reduce_to_scarf(two_cycle)
        assert (inst.m, inst.n) == (1, 3)
        assert inst.C[0][mapping.vertex_cols["u"]] < inst.C[0][mapping.vertex_cols["v"]]

    def test_c5_incidence(self, c5):
        inst, mapping = reduce_to_scarf(c5)
        assert (inst.m, inst.n) == (5, 10)
        for r, K in enumerate(mapping.clique_rows):
            for v, col in mapping.vertex_cols.items():
                assert inst.B[r][col] == (1 if v in K else 0)

    def test_reduced_instances_valid(self):
        for seed in range(30):
            D = gen_clique_acyclic_digraph(6, 0.4, 0.3, seed)
            inst, _ = reduce_to_scarf(D)
            assert validate_instance(inst).violations == []

    def test_c5_solution(self, c5):
        inst, mapping = reduce_to_scarf(c5)
        sol = solve(inst)
        assert set(sol.J) == set(mapping.vertex_cols.values())
        assert extract_kernel(sol, mapping) == {v: HALF for v in c5.vertices}
        assert all(sol.alpha[c] == 0 for c in mapping.slack_cols.values())


class TestVerifiers:
    def test_c5_half(self, c5):
        f = {v: HALF for v in c5.vertices}
        assert verify_strong_kernel(c5, f)
        assert verify_fractional_kernel(c5, f)

    def test_c5_third(self, c5):
        verdict = verify_fractional_kernel(c5, {v: Fraction(1, 3) for v in c5.vertices})
        assert not verdict
        assert "domination fails at 1" in verdict.failures

    def test_triangle_never_a_kernel(self, triangle):
        grid = [Fraction(k, 4) for k in range(5)]
        for a in grid:
            for b in grid:
                for c in grid:
                    assert not verify_fractional_kernel(triangle, dict(zip("uvw", (a, b, c))))

    def test_nash_path(self):
        D = Digraph(("u", "v", "w"), (("u", "v"), ("v", "w")))
        assert verify_nash(D, {"u": 1, "v": 0, "w": 1})

    def test_nash_two_cycle(self, two_cycle):
        assert verify_nash(two_cycle, {"u": HALF, "v": HALF})

    def test_nash_isolated(self):
        assert verify_nash(Digraph(("z",), ()), {"z": 1})

    def test_not_nash(self):
        D = Digraph(("u", "v", "w"), (("u", "v"), ("v", "w")))
        assert not verify_nash(D, {"u": 1, "v": 1, "w": 1})


class TestSolve:
    def test_c5(self, c5):
        assert solve_strong_kernel(c5) == {v: HALF for v in c5.vertices}

    def test_single_arc(self, single_arc):
        assert solve_strong_kernel(single_arc) == {"u": 1, "v": 0}

    def test_two_cycle(self, two_cycle):
        f = solve_strong_kernel(two_cycle)
        assert f["u"] + f["v"] == 1
        assert min(f.values()) >= 0

    def test_triangle_rejected(self, triangle):
        with pytest.raises(NotCliqueAcyclic):
            solve_strong_kernel(triangle)

    def test_empty(self):
        with pytest.raises(InvalidInstance):
            solve_strong_kernel(Digraph((), ()))

    def test_random(self):
        for seed in range(40):
            D = gen_clique_acyclic_digraph(7, 0.4, 0.3, seed)
            assert verify_strong_kernel(D, solve_strong_kernel(D))


class TestComputeNash:
    def test_identity_on_path(self):
        D = Digraph(("u", "v", "w"), (("u", "v"), ("v", "w")))
        W = {"u": Fraction(1), "v": Fraction(0), "w": Fraction(1)}
        assert compute_nash(D, W) == W

    def test_identity_on_c5(self, c5):
        W = {v: HALF for v in c5.vertices}
        assert compute_nash(c5, W) == W

    def test_repairs_over_dominated(self):
        D = Digraph((1, 2, 3, 4, 5), ((1, 5), (2, 3), (2, 4), (3, 2), (4, 5), (5, 1), (5, 4)))
        W = {v: HALF for v in D.vertices}
        assert verify_strong_kernel(D, W)
        assert not verify_nash(D, W)
        f = compute_nash(D, W)
        assert verify_fractional_kernel(D, f)
        assert verify_nash(D, f)

    def test_rejects_non_kernel(self, c5):
        with pytest.raises(InvalidInstance):
            compute_nash(c5, {v: Fraction(1, 3) for v in c5.vertices})
