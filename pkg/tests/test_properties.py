from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from scarfkit.core import canonicalize, cardinal_pivot, is_subordinating, solve, solve_basis, verify_solution, weak_witness
from scarfkit.exceptions import UnboundedDirection
from scarfkit.fspp import digraph_to_fspp, verify_eps_solution, verify_eps_stable, verify_stable
from scarfkit.generators import gen_clique_acyclic_digraph, gen_random_scarf
from scarfkit.kernels import Digraph, is_clique_acyclic, verify_fractional_kernel
from scarfkit.oracle import brute_solve, enumerate_feasible_bases

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])

sizes = st.integers(1, 4).flatmap(lambda m: st.tuples(st.just(m), st.integers(m + 1, 8)))
scarf_instances = st.builds(lambda mn, seed: gen_random_scarf(mn[0], mn[1], seed), sizes, st.integers(0, 2**32))


@SETTINGS
@given(scarf_instances, st.data())
def test_pivot_is_reversible(inst, data):
    bases = enumerate_feasible_bases(inst, lexicographic=True)
    F = solve_basis(data.draw(st.sampled_from(bases)), inst)
    k = data.draw(st.sampled_from([j for j in range(inst.n) if j not in F.J]))
    try:
        leaving, F2 = cardinal_pivot(F, k, inst)
    except UnboundedDirection:
        return
    back, F3 = cardinal_pivot(F2, leaving, inst)
    assert back == k
    assert F3.columns == F.columns


@SETTINGS
@given(scarf_instances, st.data())
def test_rank_subordination_implies_weak(inst, data):
    canon = canonicalize(inst)
    cols = data.draw(st.sets(st.integers(0, inst.n - 1), min_size=inst.m, max_size=inst.m))
    if is_subordinating(cols, canon) is not None:
        assert weak_witness(cols, inst) is not None


@SETTINGS
@given(scarf_instances)
def test_solver_agrees_with_oracle(inst):
    sol = solve(inst)
    assert verify_solution(inst, sol)
    assert sol.J in {s.J for s in brute_solve(inst)}


@SETTINGS
@given(scarf_instances)
def test_solution_alpha_nonnegative(inst):
    sol = solve(inst)
    assert all(a >= 0 for a in sol.alpha)
    assert all(sol.alpha[j] == 0 for j in range(inst.n) if j not in sol.J)


fractions = st.fractions(min_value=0, max_value=1, max_denominator=4)
small_digraphs = st.builds(
    lambda nv, seed: gen_clique_acyclic_digraph(nv, 0.6, 0.4, seed), st.integers(1, 3), st.integers(0, 10**6)
)


@SETTINGS
@given(small_digraphs, st.data())
def test_eps_zero_matches_exact(D, data):
    inst, _ = digraph_to_fspp(D)
    w = {P: data.draw(fractions) for P in inst.all_paths}
    exact = bool(verify_stable(inst, w))
    assert bool(verify_eps_solution(inst, w, 0)) == exact
    assert bool(verify_eps_stable(inst, w, 0)) == exact


@SETTINGS
@given(small_digraphs, st.data(), fractions, fractions)
def test_eps_stable_monotone(D, data, e1, e2):
    inst, _ = digraph_to_fspp(D)
    w = {P: data.draw(fractions) for P in inst.all_paths}
    lo, hi = sorted((e1, e2))
    if verify_eps_stable(inst, w, lo):
        assert verify_eps_stable(inst, w, hi)


@given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=6), min_size=3, max_size=3))
def test_triangle_has_no_fractional_kernel(values):
    D = Digraph(("u", "v", "w"), (("u", "v"), ("v", "w"), ("w", "u")))
    assert not verify_fractional_kernel(D, dict(zip(D.vertices, values)))


@SETTINGS
@given(st.integers(1, 9), st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**32))
def test_generator_is_clique_acyclic(nv, p, q, seed):
    assert is_clique_acyclic(gen_clique_acyclic_digraph(nv, p, q, seed))
