"""Fractional stable paths: the instance model with its verifiers, plus the digraph reduction.

Paths are tuples of nodes ending at the destination. A path belongs to its
first node, so a weight vector is simply a mapping ``path -> Fraction``;
paths missing from the mapping weigh zero. Ranks follow ``lambda``: rank 1 is
the least preferred permitted path and larger ranks are better (the empty
path, rank 0, is never listed).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterator, Mapping, Sequence

from .exceptions import CapExceeded, EmptyInstance, InvalidInstance
from .kernels import Digraph, KernelFunction
from .reports import Verdict

Path = tuple
FsppWeights = dict  # path -> Fraction


@dataclass(frozen=True)
class FsppInstance:
    """``paths[v]`` lists v's permitted paths; ``ranks[v][P]`` is ``lambda^v(P)``."""

    nodes: tuple
    dest: object
    edges: tuple
    paths: Mapping
    ranks: Mapping

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if self.dest not in nodes:
            raise InvalidInstance("destination must be one of the nodes")
        edge_set = set()
        for a, c in self.edges:
            if a not in nodes or c not in nodes or a == c:
                raise InvalidInstance(f"bad edge ({a!r}, {c!r})")
            edge_set.add(frozenset((a, c)))
        paths, ranks = {}, {}
        for v in nodes:
            own = tuple(tuple(P) for P in self.paths.get(v, ()))
            if v == self.dest and own:
                raise InvalidInstance("the destination has no permitted paths")
            for P in own:
                if len(P) < 2 or P[0] != v or P[-1] != self.dest:
                    raise InvalidInstance(f"path {P!r} must run from {v!r} to the destination")
                if len(set(P)) != len(P):
                    raise InvalidInstance(f"path {P!r} is not simple")
                if any(frozenset(pair) not in edge_set for pair in zip(P, P[1:])):
                    raise InvalidInstance(f"path {P!r} uses a missing edge")
            if len(set(own)) != len(own):
                raise InvalidInstance(f"duplicate paths at {v!r}")
            given = {tuple(P): r for P, r in self.ranks.get(v, {}).items()}
            if set(given) != set(own) or sorted(given.values()) != list(range(1, len(own) + 1)):
                raise InvalidInstance(f"ranks at {v!r} must be exactly 1..{len(own)} over its paths")
            paths[v] = own
            ranks[v] = given
        unknown = set(self.paths) - set(nodes)
        if unknown:
            raise InvalidInstance(f"paths given for unknown nodes {sorted(map(repr, unknown))}")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "paths", paths)
        object.__setattr__(self, "ranks", ranks)

    @property
    def sources(self) -> tuple:
        return tuple(v for v in self.nodes if v != self.dest)

    @cached_property
    def all_paths(self) -> tuple:
        return tuple(P for v in self.nodes for P in self.paths[v])

    def rank(self, P: Path) -> int:
        return self.ranks[P[0]][P]


def suffix_paths(v, S: Sequence, inst: FsppInstance) -> list[Path]:
    """Paths of ``v`` that end with the non-empty path ``S`` (``S`` itself included)."""
    S = tuple(S)
    if len(S) < 2 or S[-1] != inst.dest:
        raise ValueError("S must have at least one edge and end at the destination")
    return [P for P in inst.paths[v] if len(P) >= len(S) and P[-len(S):] == S]


def _strict_suffixes(P: Path) -> list[Path]:
    """Final segments of ``P`` with at least one edge, excluding ``P`` itself."""
    return [P[i:] for i in range(1, len(P) - 1)]


def _weights(inst: FsppInstance, w: Mapping) -> tuple[dict, list[str]]:
    failures = []
    permitted = set(inst.all_paths)
    unknown = [P for P in w if tuple(P) not in permitted]
    if unknown:
        failures.append(f"weights given for unknown paths {unknown}")
    values = {P: Fraction(w.get(P, 0)) for P in inst.all_paths}
    negative = [P for P, x in values.items() if x < 0]
    if negative:
        failures.append(f"negative weights on {negative}")
    return values, failures


def _fmt(P: Path) -> str:
    return "".join(map(str, P)) if all(len(str(x)) == 1 for x in P) else "-".join(map(str, P))


def _feasibility_failures(inst: FsppInstance, values: dict, eps: Fraction) -> list[str]:
    failures = []
    for v in inst.sources:
        own = inst.paths[v]
        total = sum(values[P] for P in own)
        if total > 1:
            failures.append(f"unity condition at {v!r} (sum {total})")
        segments = dict.fromkeys(S for P in own for S in _strict_suffixes(P))
        for S in segments:
            load = sum(values[P] for P in own if P[-len(S):] == S)
            if load > values.get(S, Fraction(0)) + eps:
                failures.append(f"tree condition at ({v!r}, S={_fmt(S)})")
    return failures


def _stability_failures(
    inst: FsppInstance,
    values: dict,
    full: Callable[[Fraction], bool],
    tight: Callable[[Fraction, Fraction], bool],
) -> list[str]:
    failures = []
    for v in inst.sources:
        own = inst.paths[v]
        total = sum(values[P] for P in own)
        for Q in own:
            floor = inst.rank(Q)
            if full(total) and all(inst.rank(P) >= floor for P in own if values[P] > 0):
                continue
            for S in _strict_suffixes(Q):
                through = [P for P in own if P[-len(S):] == S]
                load = sum(values[P] for P in through)
                if tight(load, values.get(S, Fraction(0))) and all(
                    inst.rank(P) >= floor for P in through if values[P] > 0
                ):
                    break
            else:
                failures.append(f"unstable at ({v!r}, Q={_fmt(Q)})")
    return failures


def verify_feasible(inst: FsppInstance, w: Mapping) -> Verdict:
    values, failures = _weights(inst, w)
    return Verdict.from_failures(failures + _feasibility_failures(inst, values, Fraction(0)))


def verify_stable(inst: FsppInstance, w: Mapping) -> Verdict:
    values, failures = _weights(inst, w)
    failures += _feasibility_failures(inst, values, Fraction(0))
    failures += _stability_failures(inst, values, lambda total: total == 1, lambda load, ws: load == ws)
    return Verdict.from_failures(failures)


def verify_eps_solution(inst: FsppInstance, w: Mapping, eps) -> Verdict:
    """Unity with the eps-relaxed tree condition; stability then needs ``sum = w(S) + eps``."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    values, failures = _weights(inst, w)
    failures += _feasibility_failures(inst, values, eps)
    failures += _stability_failures(inst, values, lambda total: total == 1, lambda load, ws: load == ws + eps)
    return Verdict.from_failures(failures)


def verify_eps_stable(inst: FsppInstance, w: Mapping, eps) -> Verdict:
    """Exact feasibility with each stability branch relaxed by ``eps``."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    values, failures = _weights(inst, w)
    failures += _feasibility_failures(inst, values, Fraction(0))
    failures += _stability_failures(
        inst,
        values,
        lambda total: 1 - eps <= total <= 1,
        lambda load, ws: ws - eps <= load <= ws,
    )
    return Verdict.from_failures(failures)


@dataclass(frozen=True)
class FsppNodeMap:
    vertex_nodes: dict
    dest: object


def digraph_to_fspp(D: Digraph, orientation: str = "in") -> tuple[FsppInstance, FsppNodeMap]:
    """Routing instance whose stable solutions give Nash fractional kernels via ``f(v) = w(vd)``.

    Each vertex may route directly (``vd``, least preferred, rank 1) or via a
    neighbour ``u`` (``vud``, ranks 2.. by ascending id of ``u``). With the
    default ``orientation="in"`` the neighbours are in-neighbours, which is
    the orientation that matches in-neighbourhood domination. ``"out"``
    routes through out-neighbours instead; its solutions map to kernels of
    the reversed digraph.
    """
    if orientation not in ("in", "out"):
        raise ValueError("orientation must be 'in' or 'out'")
    if not D.vertices:
        raise EmptyInstance("digraph has no vertices")
    dest = "d"
    while dest in D.index:
        dest += "'"
    edges = list(dict.fromkeys(tuple(sorted((u, v), key=D.sort_key)) for u, v in D.arcs))
    edges += [(v, dest) for v in D.vertices]
    paths, ranks = {}, {}
    for v in D.vertices:
        via = D.in_neighbourhood(v)[1:] if orientation == "in" else D.out_neighbours(v)
        own = [(v, dest)] + [(v, u, dest) for u in sorted(via, key=D.sort_key)]
        paths[v] = own
        ranks[v] = {P: r for r, P in enumerate(own, start=1)}
    inst = FsppInstance(D.vertices + (dest,), dest, tuple(edges), paths, ranks)
    return inst, FsppNodeMap({v: v for v in D.vertices}, dest)


def fspp_solution_to_kernel(w: Mapping, mapping: FsppNodeMap) -> KernelFunction:
    return {v: Fraction(w.get((node, mapping.dest), 0)) for v, node in mapping.vertex_nodes.items()}


def farey_values(max_denominator: int) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, max_denominator + 1) for p in range(q + 1)})


def bounded_denominator_search(
    inst: FsppInstance, max_denominator: int, max_paths: int = 6
) -> Iterator[FsppWeights]:
    """Every stable weight vector whose entries have denominators up to the bound.

    Brute force over the grid (unity is enforced per node while building the
    grid); only meant for instances with a handful of paths.
    """
    if len(inst.all_paths) > max_paths:
        raise CapExceeded(f"{len(inst.all_paths)} paths exceed search cap {max_paths}")
    grid = farey_values(max_denominator)
    per_node = []
    for v in inst.sources:
        own = inst.paths[v]
        choices = [c for c in product(grid, repeat=len(own)) if sum(c) <= 1]
        per_node.append([dict(zip(own, c)) for c in choices])
    for combo in product(*per_node):
        w = {}
        for part in combo:
            w.update(part)
        if verify_stable(inst, w):
            yield w
