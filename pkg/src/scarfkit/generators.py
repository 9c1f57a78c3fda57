"""Seeded instance generators. Output is a pure function of the arguments."""
from __future__ import annotations

import random

from .core import ScarfInstance
from .kernels import Digraph


def gen_random_scarf(m: int, n: int, seed: int, max_entry: int = 3, max_rank: int = 9) -> ScarfInstance:
    """Random instance satisfying every hypothesis of Scarf's lemma.

    ``B = [I | nonnegative integer columns]`` with no zero column. ``b`` is
    nonnegative with zeros allowed, so degenerate pairs occur. ``C`` uses
    small integers so that ties are common, then is clamped into the row
    ordering hypothesis.
    """
    if not 1 <= m < n:
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    rng = random.Random(seed)
    B = [[int(i == j) for j in range(m)] for i in range(m)]
    for _ in range(m, n):
        col = [rng.randint(0, max_entry) for _ in range(m)]
        if not any(col):
            col[rng.randrange(m)] = rng.randint(1, max_entry)
        for i in range(m):
            B[i].append(col[i])
    b = [rng.randint(0, 2 * max_entry) for _ in range(m)]
    C = []
    for i in range(m):
        row = [rng.randint(0, max_rank) for _ in range(n)]
        lo = min(row[m:])
        hi = max(row[m:])
        row[i] = min(row[i], lo)
        for j in range(m):
            if j != i:
                row[j] = max(row[j], hi)
        C.append(row)
    return ScarfInstance(B, b, C)


def gen_clique_acyclic_digraph(nv: int, arc_prob: float, rev_prob: float, seed: int) -> Digraph:
    """Random digraph on ``1..nv`` whose irreversible arcs follow a hidden vertex order.

    Every pair earlier->later in a shuffled order gets an arc with
    probability ``arc_prob``; an included arc is made reversible with
    probability ``rev_prob``. All irreversible arcs point forward, so no
    clique can hold a proper cycle.
    """
    if nv < 1:
        raise ValueError("nv must be at least 1")
    if not (0 <= arc_prob <= 1 and 0 <= rev_prob <= 1):
        raise ValueError("probabilities must lie in [0, 1]")
    rng = random.Random(seed)
    order = list(range(1, nv + 1))
    rng.shuffle(order)
    arcs = []
    for a in range(nv):
        for c in range(a + 1, nv):
            include, reverse = rng.random(), rng.random()
            if include < arc_prob:
                arcs.append((order[a], order[c]))
                if reverse < rev_prob:
                    arcs.append((order[c], order[a]))
    return Digraph(tuple(range(1, nv + 1)), tuple(arcs))


def gen_directed_cycle(k: int) -> Digraph:
    if k < 2:
        raise ValueError("a directed cycle needs k >= 2")
    return Digraph(tuple(range(1, k + 1)), tuple((i, i % k + 1) for i in range(1, k + 1)))
