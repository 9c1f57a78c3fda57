"""Brute-force ground truth for small Scarf instances.

Everything here enumerates subsets outright, so it is only usable for small
``n``. Caps are hard: exceeding one raises :class:`CapExceeded` instead of
returning a truncated answer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ._exact import lex_positive
from .core import (
    CanonicalScarf,
    ScarfInstance,
    ScarfSolution,
    basis_tableau,
    canonicalize,
    is_subordinating,
    solve_basis,
    weak_witness,
)
from .exceptions import CapExceeded

DEFAULT_CAP = 16

Vertex = tuple[str, tuple[int, ...]]


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"n={n} exceeds enumeration cap {cap}")


def is_lex_feasible(J, inst: ScarfInstance) -> bool:
    """Feasible for ``b + (eps, eps^2, ...)`` with infinitesimal ``eps``."""
    tableau = basis_tableau(list(J), inst)
    if tableau is None:
        return False
    x, inverse_rows, _ = tableau
    return all(lex_positive([x[i], *inverse_rows[i]]) for i in range(inst.m))


def enumerate_feasible_bases(
    inst: ScarfInstance, cap: int = DEFAULT_CAP, lexicographic: bool = False
) -> list[tuple[int, ...]]:
    """All size-m column sets that are feasible bases, in lexicographic order.

    With ``lexicographic=True`` only bases that stay feasible under the
    symbolic perturbation used by the solver are returned.
    """
    _check_cap(inst.n, cap)
    found = []
    for J in combinations(range(inst.n), inst.m):
        if lexicographic:
            if is_lex_feasible(J, inst):
                found.append(J)
        elif solve_basis(J, inst) is not None:
            found.append(J)
    return found


def enumerate_subordinating(canon: CanonicalScarf, cap: int = DEFAULT_CAP, size: int | None = None) -> list[tuple[int, ...]]:
    _check_cap(canon.n, cap)
    size = canon.m if size is None else size
    return [J for J in combinations(range(canon.n), size) if is_subordinating(J, canon) is not None]


def brute_solve(inst: ScarfInstance, cap: int = DEFAULT_CAP) -> list[ScarfSolution]:
    """Every size-m set that is a feasible basis and subordinating under the ranks."""
    canon = canonicalize(inst)
    subordinating = set(enumerate_subordinating(canon, cap))
    solutions = []
    for J in enumerate_feasible_bases(inst, cap):
        if J not in subordinating:
            continue
        basis = solve_basis(J, inst)
        alpha = [0] * inst.n
        for j, v in zip(basis.J, basis.x):
            alpha[j] = v
        solutions.append(ScarfSolution(J, tuple(alpha), weak_witness(J, inst)))
    return solutions


def extension_counts(canon: CanonicalScarf, cap: int = DEFAULT_CAP) -> dict[tuple[int, ...], int]:
    """For every subordinating (m-1)-set, how many single columns extend it.

    Counts come from the m-set enumeration only, independent of
    :func:`scarfkit.core.ordinal_extensions`.
    """
    full = set(enumerate_subordinating(canon, cap))
    counts = {}
    for K in enumerate_subordinating(canon, cap, size=canon.m - 1):
        counts[K] = sum(1 for j in range(canon.n) if j not in K and tuple(sorted(K + (j,))) in full)
    return counts


def audit_ordinal_lemma(canon: CanonicalScarf, cap: int = DEFAULT_CAP) -> list[str]:
    violations = []
    for K, count in extension_counts(canon, cap).items():
        expected = 1 if all(j < canon.m for j in K) else 2
        if count != expected:
            violations.append(f"K={[j + 1 for j in K]} has {count} extensions, expected {expected}")
    return violations


@dataclass
class PathGraph:
    """Bipartite graph between feasible bases holding column 0 and subordinating sets without it."""

    m: int
    F_side: list[tuple[int, ...]]
    S_side: list[tuple[int, ...]]
    edges: list[tuple[tuple[int, ...], tuple[int, ...]]]
    terminals: set[Vertex] = field(default_factory=set)

    @property
    def start(self) -> Vertex:
        return ("F", tuple(range(self.m)))

    def neighbours(self) -> dict[Vertex, list[Vertex]]:
        adj = {("F", F): [] for F in self.F_side}
        adj.update({("S", S): [] for S in self.S_side})
        for F, S in self.edges:
            adj[("F", F)].append(("S", S))
            adj[("S", S)].append(("F", F))
        return adj

    @property
    def degrees(self) -> dict[Vertex, int]:
        return {v: len(nbrs) for v, nbrs in self.neighbours().items()}

    def start_path(self) -> list[Vertex]:
        """Vertices of the start component in walk order (stops on a branch or a cycle)."""
        adj = self.neighbours()
        path = [self.start]
        seen = {self.start}
        while True:
            nxt = [v for v in adj[path[-1]] if v not in seen]
            if len(nxt) != 1:
                return path
            path.append(nxt[0])
            seen.add(nxt[0])

    def audit(self) -> list[str]:
        violations = []
        degrees = self.degrees
        for vertex, degree in degrees.items():
            label = f"{vertex[0]}{[j + 1 for j in vertex[1]]}"
            if vertex == self.start:
                if degree != 1:
                    violations.append(f"start {label} has degree {degree}")
            elif vertex in self.terminals:
                if degree != 1:
                    violations.append(f"terminal {label} has degree {degree}")
            elif degree not in (0, 2):
                violations.append(f"{label} has degree {degree}")
        path = self.start_path()
        adj = self.neighbours()
        end = path[-1]
        if end not in self.terminals:
            violations.append(f"start component ends at non-terminal {end}")
        if any(len(adj[v]) > 2 for v in path):
            violations.append("start component is not a simple path")
        terminals_on_path = [v for v in path if v in self.terminals]
        if terminals_on_path != [end]:
            violations.append(f"start component holds terminals {terminals_on_path}")
        return violations

    def to_dot(self) -> str:
        def name(vertex: Vertex) -> str:
            return vertex[0] + "_" + "_".join(str(j + 1) for j in vertex[1])

        lines = ["graph scarf_path {"]
        for kind, sets in (("F", self.F_side), ("S", self.S_side)):
            shape = "box" if kind == "F" else "ellipse"
            for J in sets:
                vertex = (kind, J)
                extra = ", peripheries=2" if vertex in self.terminals or vertex == self.start else ""
                label = "{" + ",".join(str(j + 1) for j in J) + "}"
                lines.append(f'  {name(vertex)} [label="{label}", shape={shape}{extra}];')
        for F, S in self.edges:
            lines.append(f"  {name(('F', F))} -- {name(('S', S))};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_path_graph(inst: ScarfInstance, cap: int = DEFAULT_CAP, lexicographic: bool = True) -> PathGraph:
    """Materialise the whole bipartite graph the solver walks on.

    Feasibility defaults to the lexicographic (perturbed) notion so that the
    graph matches the solver on degenerate right-hand sides as well.
    """
    canon = canonicalize(inst)
    feasible = enumerate_feasible_bases(inst, cap, lexicographic=lexicographic)
    subordinating = enumerate_subordinating(canon, cap)
    feasible_set = set(feasible)
    F_side = [F for F in feasible if 0 in F]
    S_side = [S for S in subordinating if 0 not in S]
    S_set = set(S_side)
    edges = []
    for F in F_side:
        rest = F[1:]
        for j in range(1, inst.n):
            if j in F:
                continue
            S = tuple(sorted(rest + (j,)))
            if S in S_set:
                edges.append((F, S))
    subordinating_set = set(subordinating)
    terminals = {("F", F) for F in F_side if F in subordinating_set}
    terminals |= {("S", S) for S in S_side if S in feasible_set}
    return PathGraph(inst.m, F_side, S_side, edges, terminals)
