"""Fractional stable matchings in hypergraphic preference systems.

Each vertex ``v`` ranks the edges containing it. ``orders[v]`` lists those
edges (as indices into ``edges``) from least to most preferred, so a larger
position means more preferred.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .core import ScarfInstance, ScarfSolution, solve
from .exceptions import EmptyInstance, InvalidInstance, LemmaViolation
from .reports import Verdict


@dataclass(frozen=True)
class HypergraphPrefSystem:
    vertices: tuple
    edges: tuple[tuple, ...]
    orders: Mapping

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = tuple(tuple(e) for e in self.edges)
        known = set(vertices)
        if len(known) != len(vertices):
            raise InvalidInstance("duplicate vertices")
        for e in edges:
            if not e:
                raise InvalidInstance("edges must be nonempty")
            if len(set(e)) != len(e) or not set(e) <= known:
                raise InvalidInstance(f"edge {e!r} repeats or references unknown vertices")
        orders = {}
        for v in vertices:
            incident = {h for h, e in enumerate(edges) if v in e}
            order = tuple(self.orders.get(v, ()))
            if len(order) != len(set(order)) or set(order) != incident:
                raise InvalidInstance(f"order at {v!r} must list exactly the edges containing it")
            orders[v] = order
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "orders", orders)

    @cached_property
    def rank(self) -> dict:
        """``rank[v][h]``: 1 for v's least preferred edge, up to ``|D(v)|``."""
        return {v: {h: p for p, h in enumerate(order, start=1)} for v, order in self.orders.items()}

    @classmethod
    def from_preferences(cls, vertices, edges, preferences: Mapping) -> "HypergraphPrefSystem":
        """Build from per-vertex lists of edges ordered best first."""
        index = {tuple(e): h for h, e in enumerate(edges)}
        orders = {}
        for v, ranked in preferences.items():
            orders[v] = [index[tuple(e)] if not isinstance(e, int) else e for e in reversed(list(ranked))]
        return cls(vertices, edges, orders)


FractionalMatching = dict  # edge index -> Fraction


@dataclass(frozen=True)
class MatchingReductionMap:
    vertex_rows: dict
    edge_cols: tuple[int, ...]


def reduce_to_scarf(H: HypergraphPrefSystem) -> tuple[ScarfInstance, MatchingReductionMap]:
    """Rows are vertices, columns are one slack per vertex then one column per edge.

    Row ``v``: own slack ``-1``; an edge through ``v`` gets its rank at ``v``
    (more preferred is larger); other edges get ``|E| + index``; foreign
    slacks sit above everything. If edge column ``e`` is subordinated at row
    ``v`` then ``v``'s slack is out of the solution, so ``v`` is saturated,
    and every solution edge through ``v`` ranks at least as high as ``e``.
    """
    if not H.edges:
        raise EmptyInstance("hypergraph has no edges")
    m, n_edges = len(H.vertices), len(H.edges)
    n = m + n_edges
    B = [[0] * n for _ in range(m)]
    C = [[0] * n for _ in range(m)]
    for r, v in enumerate(H.vertices):
        B[r][r] = 1
        for s in range(m):
            C[r][s] = -1 if s == r else 2 * n_edges + m + s + 1
        for h, e in enumerate(H.edges):
            if v in e:
                B[r][m + h] = 1
                C[r][m + h] = H.rank[v][h]
            else:
                C[r][m + h] = n_edges + h + 1
    mapping = MatchingReductionMap({v: r for r, v in enumerate(H.vertices)}, tuple(m + h for h in range(n_edges)))
    return ScarfInstance(B, [1] * m, C), mapping


def extract_matching(sol: ScarfSolution, mapping: MatchingReductionMap) -> FractionalMatching:
    return {h: Fraction(sol.alpha[col]) for h, col in enumerate(mapping.edge_cols)}


def verify_stable_matching(H: HypergraphPrefSystem, w: Mapping) -> Verdict:
    failures = []
    missing = [h for h in range(len(H.edges)) if h not in w]
    if missing:
        failures.append(f"w undefined on edges {missing}")
    weight = {h: Fraction(w.get(h, 0)) for h in range(len(H.edges))}
    if any(x < 0 for x in weight.values()):
        failures.append("w has negative entries")
    for v in H.vertices:
        load = sum(weight[h] for h in H.orders[v])
        if load > 1:
            failures.append(f"vertex {v!r} overloaded (sum {load})")
    for e, members in enumerate(H.edges):
        saturated = any(
            sum(weight[h] for h in H.orders[v] if H.rank[v][h] >= H.rank[v][e]) == 1 for v in members
        )
        if not saturated:
            failures.append(f"edge {{{','.join(map(str, members))}}} unstable")
    return Verdict.from_failures(failures)


def blocking_edges(H: HypergraphPrefSystem, matching: Sequence[int]) -> list[int]:
    """Edges that block an integral matching (classical stability check)."""
    chosen = set(matching)
    partner_edge = {}
    for h in chosen:
        for v in H.edges[h]:
            partner_edge[v] = h
    blocking = []
    for e, members in enumerate(H.edges):
        if not any(v in partner_edge and H.rank[v][partner_edge[v]] >= H.rank[v][e] for v in members):
            blocking.append(e)
    return blocking


def solve_stable_matching(H: HypergraphPrefSystem, cap: int | None = None) -> FractionalMatching:
    inst, mapping = reduce_to_scarf(H)
    sol = solve(inst, cap=cap)
    w = extract_matching(sol, mapping)
    verdict = verify_stable_matching(H, w)
    if not verdict:
        raise LemmaViolation(f"reduced solution is not a stable matching: {verdict.reason}")
    return w
