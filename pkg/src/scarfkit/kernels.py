"""Fractional kernels of digraphs and their reduction to Scarf instances.

``I(v)`` is ``v`` together with its in-neighbours. A nonnegative weighting
``f`` is a fractional kernel when every clique sums to at most 1 and every
``I(v)`` sums to at least 1; it is strong when some clique inside ``I(v)``
already reaches 1.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import islice
from typing import Hashable, Iterable, Mapping

import networkx as nx

from .core import ScarfInstance, ScarfSolution, solve
from .exceptions import (
    CliqueTooLarge,
    EmptyInstance,
    EnumerationCap,
    InvalidInstance,
    IterationCap,
    LemmaViolation,
    NotCliqueAcyclic,
    Unrepairable,
)
from .reports import ValidationReport, Verdict

logger = logging.getLogger(__name__)

Vertex = Hashable
KernelFunction = dict  # vertex -> Fraction

DEFAULT_CLIQUE_CAP = 10**5
DEFAULT_CYCLE_CAP = 10**5


@dataclass(frozen=True)
class Digraph:
    """Vertices in a fixed order plus a set of arcs (no loops, no duplicates).

    The position of a vertex in ``vertices`` is its id for every tie-break.
    """

    vertices: tuple
    arcs: tuple

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise InvalidInstance("duplicate vertices")
        known = set(vertices)
        arcs = []
        for arc in self.arcs:
            u, v = arc
            if u not in known or v not in known:
                raise InvalidInstance(f"arc {arc!r} references an unknown vertex")
            if u == v:
                raise InvalidInstance(f"self-loop at {u!r}")
            arcs.append((u, v))
        if len(set(arcs)) != len(arcs):
            raise InvalidInstance("duplicate arcs")
        index = {v: i for i, v in enumerate(vertices)}
        arcs.sort(key=lambda a: (index[a[0]], index[a[1]]))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arcs", tuple(arcs))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arc_set(self) -> frozenset:
        return frozenset(self.arcs)

    @cached_property
    def _in(self) -> dict:
        ins = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            ins[v].append(u)
        return ins

    @cached_property
    def _out(self) -> dict:
        outs = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            outs[u].append(v)
        return outs

    def has_arc(self, u, v) -> bool:
        return (u, v) in self.arc_set

    def adjacent(self, u, v) -> bool:
        return self.has_arc(u, v) or self.has_arc(v, u)

    def irreversible(self, u, v) -> bool:
        return self.has_arc(u, v) and not self.has_arc(v, u)

    def in_neighbourhood(self, v) -> list:
        """``I(v)``: ``v`` followed by its in-neighbours."""
        return [v, *self._in[v]]

    def out_neighbours(self, v) -> list:
        return list(self._out[v])

    def sort_key(self, v) -> int:
        return self.index[v]

    def underlying(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arcs)
        return g

    def reversed(self) -> "Digraph":
        return Digraph(self.vertices, tuple((v, u) for u, v in self.arcs))


@dataclass(frozen=True)
class KernelReductionMap:
    clique_rows: tuple[tuple, ...]
    vertex_cols: dict
    slack_cols: dict


def _sorted_clique(D: Digraph, clique: Iterable) -> tuple:
    return tuple(sorted(clique, key=D.sort_key))


def maximal_cliques(D: Digraph, max_size: int | None = None, cap: int = DEFAULT_CLIQUE_CAP) -> list[tuple]:
    """Maximal cliques of the underlying undirected graph, sorted by vertex id.

    With ``max_size`` set, a larger clique raises :class:`CliqueTooLarge`;
    otherwise more than ``cap`` cliques raises :class:`EnumerationCap`.
    """
    cliques = []
    for clique in nx.find_cliques(D.underlying()):
        if max_size is not None and len(clique) > max_size:
            raise CliqueTooLarge(f"clique of size {len(clique)} exceeds {max_size}")
        cliques.append(_sorted_clique(D, clique))
        if len(cliques) > cap:
            raise EnumerationCap(f"more than {cap} maximal cliques")
    cliques.sort(key=lambda K: [D.sort_key(v) for v in K])
    return cliques


def _irreversible_order(D: Digraph, clique: tuple) -> list:
    """Clique members ordered so that an irreversible arc ``v -> u`` puts ``u`` first.

    Kahn's algorithm on irreversible arcs, smallest vertex id first among the
    ready vertices. Returns fewer vertices than given when the irreversible
    arcs contain a cycle.
    """
    members = set(clique)
    # u must precede v whenever v -> u is irreversible
    blockers = {v: 0 for v in clique}
    followers = {v: [] for v in clique}
    for v in clique:
        for u in clique:
            if u != v and D.irreversible(v, u):
                blockers[v] += 1
                followers[u].append(v)
    ready = [(D.sort_key(v), v) for v in clique if blockers[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, u = heapq.heappop(ready)
        order.append(u)
        for v in followers[u]:
            blockers[v] -= 1
            if blockers[v] == 0 and v in members:
                heapq.heappush(ready, (D.sort_key(v), v))
    return order


def is_clique_acyclic(D: Digraph) -> bool:
    """No clique contains a cycle made only of irreversible arcs."""
    return all(len(_irreversible_order(D, K)) == len(K) for K in maximal_cliques(D))


def proper_cycles(D: Digraph, cap: int = DEFAULT_CYCLE_CAP) -> tuple[list[tuple], bool]:
    """Simple cycles of irreversible arcs, up to ``cap``; flag says whether the list is complete."""
    g = nx.DiGraph()
    g.add_nodes_from(D.vertices)
    g.add_edges_from((u, v) for u, v in D.arcs if not D.has_arc(v, u))
    found = list(islice(nx.simple_cycles(g), cap + 1))
    complete = len(found) <= cap
    cycles = []
    for cycle in found[:cap]:
        start = min(range(len(cycle)), key=lambda i: D.sort_key(cycle[i]))
        cycles.append(tuple(cycle[start:] + cycle[:start]))
    cycles.sort(key=lambda c: [D.sort_key(v) for v in c])
    return cycles, complete


def is_homogeneous(D: Digraph, cycle: Iterable) -> bool:
    members = set(cycle)
    for v in members:
        for u in D.in_neighbourhood(v)[1:]:
            if u not in members and not all(D.has_arc(u, w) for w in members):
                return False
    return True


def validate_3kernel_instance(D: Digraph, cycle_cap: int = DEFAULT_CYCLE_CAP) -> ValidationReport:
    """Hypotheses of the 3-kernel problems: clique-acyclic, cliques of size <= 3,
    proper cycles homogeneous and pairwise node-disjoint."""
    report = ValidationReport()
    cliques = maximal_cliques(D)
    large = [K for K in cliques if len(K) > 3]
    if large:
        report.add(f"maximal clique {list(large[0])} has size {len(large[0])} > 3")
    for K in cliques:
        if len(_irreversible_order(D, K)) != len(K):
            report.add(f"clique {list(K)} contains a proper cycle")
    cycles, complete = proper_cycles(D, cycle_cap)
    if not complete:
        report.inconclusive.append(f"more than {cycle_cap} proper cycles; homogeneity/disjointness unchecked")
    for cycle in cycles:
        if not is_homogeneous(D, cycle):
            report.add(f"proper cycle {list(cycle)} is not homogeneous")
    owner = {}
    for cycle in cycles:
        for v in cycle:
            if v in owner:
                report.add(f"proper cycles {list(owner[v])} and {list(cycle)} share node {v!r}")
                break
            owner[v] = cycle
    return report


def reduce_to_scarf(D: Digraph, max_clique: int | None = None) -> tuple[ScarfInstance, KernelReductionMap]:
    """Build the Scarf instance whose solutions are strong fractional kernels.

    Rows are maximal cliques. Column ``r < m`` is the slack of clique ``r``;
    column ``m + i`` is vertex ``i``. In row ``K`` the own slack is ``-1``, a
    member ``v`` gets its 1-based position in the irreversible order of ``K``
    (irreversible ``v -> u`` means ``u`` ranks below ``v``), a non-member gets
    ``|V| + id``, a foreign slack gets ``2|V| + m + id``.

    Why that works: if vertex column ``v`` is subordinated at row ``K`` then
    the slack of ``K`` is out of the solution, so the ``K`` row of
    ``B alpha = 1`` makes the solution's mass on ``K`` exactly 1. ``v`` must
    lie in ``K`` (a non-member outranks all members), and every member of the
    solution inside ``K`` ranks at or above ``v``, hence is ``v`` itself or an
    in-neighbour of ``v``. That tight sub-clique lies in ``I(v)``.
    """
    if not D.vertices:
        raise EmptyInstance("digraph has no vertices")
    cliques = maximal_cliques(D, max_size=max_clique)
    n_vertices = len(D.vertices)
    m = len(cliques)
    n = m + n_vertices
    B = [[0] * n for _ in range(m)]
    C = [[0] * n for _ in range(m)]
    for r, K in enumerate(cliques):
        order = _irreversible_order(D, K)
        if len(order) != len(K):
            raise NotCliqueAcyclic(f"clique {list(K)} contains a proper cycle")
        position = {v: p for p, v in enumerate(order, start=1)}
        B[r][r] = 1
        for L in range(m):
            C[r][L] = -1 if L == r else 2 * n_vertices + m + L + 1
        for i, v in enumerate(D.vertices):
            col = m + i
            if v in position:
                B[r][col] = 1
                C[r][col] = position[v]
            else:
                C[r][col] = n_vertices + i + 1
    inst = ScarfInstance(B, [1] * m, C)
    mapping = KernelReductionMap(
        clique_rows=tuple(cliques),
        vertex_cols={v: m + i for i, v in enumerate(D.vertices)},
        slack_cols={K: r for r, K in enumerate(cliques)},
    )
    return inst, mapping


def extract_kernel(sol: ScarfSolution, mapping: KernelReductionMap) -> KernelFunction:
    return {v: Fraction(sol.alpha[col]) for v, col in mapping.vertex_cols.items()}


def _weights(D: Digraph, f: Mapping) -> tuple[dict, list[str]]:
    failures = []
    missing = [v for v in D.vertices if v not in f]
    if missing:
        failures.append(f"f undefined at {missing}")
    values = {v: Fraction(f.get(v, 0)) for v in D.vertices}
    negative = [v for v, x in values.items() if x < 0]
    if negative:
        failures.append(f"f negative at {negative}")
    return values, failures


def _independence_failures(D: Digraph, values: dict) -> list[str]:
    return [
        f"independence fails on clique {list(K)} (sum {sum(values[v] for v in K)})"
        for K in maximal_cliques(D)
        if sum(values[v] for v in K) > 1
    ]


def verify_fractional_kernel(D: Digraph, f: Mapping) -> Verdict:
    values, failures = _weights(D, f)
    failures += _independence_failures(D, values)
    for v in D.vertices:
        if sum(values[u] for u in D.in_neighbourhood(v)) < 1:
            failures.append(f"domination fails at {v!r}")
    return Verdict.from_failures(failures)


def best_clique_in(D: Digraph, v, values: Mapping) -> tuple[tuple, Fraction]:
    """Heaviest clique inside ``I(v)`` (weights are nonnegative, so a maximal one)."""
    sub = D.underlying().subgraph(D.in_neighbourhood(v))
    best, best_sum = (), Fraction(-1)
    for clique in nx.find_cliques(sub):
        total = sum(values[u] for u in clique)
        if total > best_sum:
            best, best_sum = _sorted_clique(D, clique), total
    return best, best_sum


def verify_strong_kernel(D: Digraph, f: Mapping) -> Verdict:
    values, failures = _weights(D, f)
    failures += _independence_failures(D, values)
    for v in D.vertices:
        _, total = best_clique_in(D, v, values)
        if total < 1:
            failures.append(f"strong domination fails at {v!r}")
    return Verdict.from_failures(failures)


def verify_nash(D: Digraph, f: Mapping) -> Verdict:
    """Every vertex with positive weight sits in some exactly tight ``I(v')``.

    Lowering ``f(v)`` can only break a domination constraint containing
    ``v``, and only if that constraint is tight; clique upper bounds never
    block a decrease.
    """
    values, failures = _weights(D, f)
    tight = {v for v in D.vertices if sum(values[u] for u in D.in_neighbourhood(v)) == 1}
    for v in D.vertices:
        if values[v] > 0 and v not in tight and not any(w in tight for w in D.out_neighbours(v)):
            failures.append(f"{v!r} can lower its weight unilaterally")
    return Verdict.from_failures(failures)


def cycle_cover_cycles(D: Digraph) -> list[tuple]:
    """Cycles of a maximum-cardinality cycle cover (unit arc weights).

    A maximum bipartite matching between out-copies and in-copies gives
    every vertex at most one successor and one predecessor; its closed
    orbits are the cycles.
    """
    g = nx.Graph()
    tops = [("out", v) for v in D.vertices]
    g.add_nodes_from(tops, bipartite=0)
    g.add_nodes_from((("in", v) for v in D.vertices), bipartite=1)
    g.add_edges_from((("out", u), ("in", v)) for u, v in D.arcs)
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=tops)
    successor = {node[1]: matching[node][1] for node in tops if node in matching}
    cycles, seen = [], set()
    for start in D.vertices:
        if start in seen:
            continue
        walk, v = [start], successor.get(start)
        while v is not None and v != start and v not in walk:
            walk.append(v)
            v = successor.get(v)
        if v == start:
            cycles.append(tuple(walk))
            seen.update(walk)
    return cycles


def compute_nash(
    D: Digraph,
    W: Mapping,
    iteration_cap: int = 10_000,
    cycle_cap: int = DEFAULT_CYCLE_CAP,
) -> KernelFunction:
    """Turn a strong fractional kernel into a Nash fractional kernel.

    Homogeneous proper cycles from a maximum cycle cover are contracted into
    super nodes. Over-dominated vertices then shed weight (topping up any
    out-neighbour left under-dominated) until none remain, and each super
    node hands half its weight to every member. The result is verified; a
    failure raises :class:`Unrepairable`. Inputs that are already Nash
    kernels come back unchanged.
    """
    values, failures = _weights(D, W)
    if failures:
        raise InvalidInstance("; ".join(failures))
    if verify_fractional_kernel(D, values) and verify_nash(D, values):
        return dict(values)
    if not verify_strong_kernel(D, values):
        raise InvalidInstance("input is not a strong fractional kernel")
    report = validate_3kernel_instance(D, cycle_cap)
    if report.violations:
        raise InvalidInstance("; ".join(report.violations))

    contracted = [
        c for c in cycle_cover_cycles(D)
        if len(c) > 2 and all(D.irreversible(c[i], c[(i + 1) % len(c)]) for i in range(len(c))) and is_homogeneous(D, c)
    ]
    rep = {v: v for v in D.vertices}
    for number, cycle in enumerate(contracted):
        for v in cycle:
            rep[v] = ("super", number)
    nodes = list(dict.fromkeys(rep[v] for v in D.vertices))
    arcs = {(rep[u], rep[v]) for u, v in D.arcs if rep[u] != rep[v]}
    ins = {x: [x] for x in nodes}
    outs = {x: [] for x in nodes}
    for a, c in sorted(arcs, key=lambda arc: (nodes.index(arc[0]), nodes.index(arc[1]))):
        ins[c].append(a)
        outs[a].append(c)

    w = {x: values[x] for x in nodes if x in values}
    for number, cycle in enumerate(contracted):
        # average weight of consecutive pairs on the cycle
        w[("super", number)] = 2 * sum(values[v] for v in cycle) / len(cycle)

    def dominance(x):
        return sum(w[u] for u in ins[x])

    iterations = 0
    while True:
        target = next((x for x in nodes if dominance(x) > 1 and w[x] > 0), None)
        if target is None:
            break
        iterations += 1
        if iterations > iteration_cap:
            raise IterationCap(f"slack reduction did not settle within {iteration_cap} iterations")
        delta = dominance(target) - 1
        w[target] -= min(delta, w[target])
        for y in outs[target]:
            total = dominance(y)
            if total < 1:
                w[y] += 1 - total

    result = {}
    for v in D.vertices:
        x = rep[v]
        result[v] = w[x] / 2 if x != v else w[x]
    logger.debug("compute_nash: %d cycles contracted, %d iterations", len(contracted), iterations)
    failures = verify_fractional_kernel(D, result).failures + verify_nash(D, result).failures
    if failures:
        raise Unrepairable("; ".join(failures))
    return result


def solve_strong_kernel(D: Digraph, cap: int | None = None, max_clique: int | None = None) -> KernelFunction:
    if not D.vertices:
        raise EmptyInstance("digraph has no vertices")
    if not is_clique_acyclic(D):
        raise NotCliqueAcyclic("digraph has a clique containing a proper cycle")
    inst, mapping = reduce_to_scarf(D, max_clique=max_clique)
    sol = solve(inst, cap=cap)
    f = extract_kernel(sol, mapping)
    verdict = verify_strong_kernel(D, f)
    if not verdict:
        raise LemmaViolation(f"reduced solution is not a strong kernel: {verdict.reason}")
    return f
