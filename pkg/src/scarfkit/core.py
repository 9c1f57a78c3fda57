"""Scarf instances and the complementary pivoting path-follower.

Columns and rows are 0-based throughout the Python API. Column ``0`` is the
distinguished first slack column the walk is anchored on, and columns
``0..m-1`` are the identity block of ``B``. Human-facing diagnostics and the
file formats use 1-based indices.

The walk alternates between two kinds of vertices:

* feasible bases of ``(B, b)`` that contain column 0, and
* subordinating ``m``-sets of the rank matrix that do not contain column 0,

joined when the basis minus the subordinating set is exactly ``{0}``. Moving
from a subordinating set to a basis is a cardinal (simplex) pivot; moving from
a basis to a subordinating set is an ordinal pivot. The walk starts at the
slack basis ``{0..m-1}`` and stops at the first set that is both.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ._exact import identity, solve_columns, to_fraction
from .exceptions import (
    InvalidInstance,
    LemmaViolation,
    StepLimitExceeded,
    UnboundedDirection,
)
from .reports import ValidationReport, Verdict

logger = logging.getLogger(__name__)

MAX_DEFAULT_STEPS = 10**7


def _as_matrix(rows, name: str) -> tuple[tuple[Fraction, ...], ...]:
    try:
        return tuple(tuple(to_fraction(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(f"{name}: {exc}") from exc


@dataclass(frozen=True)
class ScarfInstance:
    """Matrices ``B``, ``C`` (m x n) and right-hand side ``b`` (length m).

    Entries are coerced to :class:`fractions.Fraction`. Shape problems raise
    :class:`InvalidInstance` immediately; the hypotheses of Scarf's lemma are
    checked separately by :func:`validate_instance`.
    """

    B: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    C: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        B = _as_matrix(self.B, "B")
        C = _as_matrix(self.C, "C")
        try:
            b = tuple(to_fraction(v) for v in self.b)
        except (TypeError, ValueError) as exc:
            raise InvalidInstance(f"b: {exc}") from exc
        m = len(B)
        if m == 0:
            raise InvalidInstance("B must have at least one row")
        n = len(B[0])
        if any(len(row) != n for row in B):
            raise InvalidInstance("B is ragged")
        if len(C) != m or any(len(row) != n for row in C):
            raise InvalidInstance(f"C must be {m}x{n} like B")
        if len(b) != m:
            raise InvalidInstance(f"b must have length {m}")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "b", b)

    @property
    def m(self) -> int:
        return len(self.B)

    @property
    def n(self) -> int:
        return len(self.B[0])

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.B)

    def replace(self, **changes) -> "ScarfInstance":
        fields = {"B": self.B, "b": self.b, "C": self.C}
        fields.update(changes)
        return ScarfInstance(**fields)


@dataclass(frozen=True)
class CanonicalScarf:
    """Instance plus strict per-row ranks ``R`` (values ``1..n``) replacing ``C``."""

    base: ScarfInstance
    R: tuple[tuple[int, ...], ...]
    tiebreak_log: tuple[tuple[int, tuple[int, int]], ...] = ()

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def n(self) -> int:
        return self.base.n


@dataclass(frozen=True)
class FeasibleBasis:
    """Ordered basis columns ``J`` with the basic solution ``x`` aligned to ``J``."""

    J: tuple[int, ...]
    x: tuple[Fraction, ...]

    @property
    def columns(self) -> frozenset[int]:
        return frozenset(self.J)


@dataclass(frozen=True)
class SubordinatingSet:
    J: frozenset[int]
    witness: dict[int, int]


@dataclass(frozen=True)
class ScarfSolution:
    """A size-m column set ``J`` with ``alpha`` supported on it.

    ``witness[k]`` is the row at which column ``k`` is ``J``-subordinated.
    ``n_pivots`` and ``trace`` describe the walk that produced the solution
    and do not take part in equality.
    """

    J: tuple[int, ...]
    alpha: tuple[Fraction, ...]
    witness: dict[int, int]
    n_pivots: int | None = field(default=None, compare=False)
    trace: tuple[tuple[str, tuple[int, ...]], ...] = field(default=(), compare=False, repr=False)


@dataclass
class WalkState:
    mode: str
    F: FeasibleBasis
    S: frozenset[int] | None
    steps: int
    cap: int


def validate_instance(inst: ScarfInstance, assume_bounded: bool = False) -> ValidationReport:
    """List every violated hypothesis of Scarf's lemma.

    With ``assume_bounded`` the sufficient boundedness test (``B >= 0`` and no
    zero column) is skipped; the caller vouches for boundedness.
    """
    report = ValidationReport()
    m, n = inst.m, inst.n
    if not m < n:
        report.add(f"m < n violated (m={m}, n={n})")
    for i in range(m):
        for j in range(min(m, n)):
            if inst.B[i][j] != (1 if i == j else 0):
                report.add(f"identity block violated at (row {i + 1}, col {j + 1})")
    negative_rows = [i + 1 for i, v in enumerate(inst.b) if v < 0]
    if negative_rows:
        report.add(f"b not nonnegative (rows {negative_rows})")
    for i in range(min(m, n)):
        row = inst.C[i]
        foreign = [row[j] for j in range(m) if j != i]
        ceiling = min(foreign) if foreign else None
        for k in range(m, n):
            if row[i] > row[k] or (ceiling is not None and row[k] > ceiling):
                report.add(f"C row-ordering hypothesis at (row {i + 1}, col {k + 1})")
    if not assume_bounded:
        for j in range(n):
            col = inst.column(j)
            if any(v < 0 for v in col):
                report.add(f"boundedness surrogate: column {j + 1} of B has a negative entry")
            elif not any(col):
                report.add(f"boundedness surrogate: column {j + 1} of B is zero")
    return report


def _check_valid(inst: ScarfInstance, assume_bounded: bool) -> None:
    report = validate_instance(inst, assume_bounded=assume_bounded)
    if not report.ok:
        raise InvalidInstance("; ".join(report.violations))


def _tie_group(i: int, k: int, m: int) -> int:
    if k == i:
        return 0
    if k >= m:
        return 1
    return 2


def canonicalize(inst: ScarfInstance) -> CanonicalScarf:
    """Replace each row of ``C`` by strict ranks ``1..n``.

    Equal entries are ordered: the row's own slack column, then non-slack
    columns by index, then the other slack columns by index. Under the row
    hypothesis this keeps the own slack minimal and foreign slacks above
    every non-slack column.
    """
    m, n = inst.m, inst.n
    ranks = []
    log = []
    for i, row in enumerate(inst.C):
        order = sorted(range(n), key=lambda k: (row[k], _tie_group(i, k, m), k))
        rank = [0] * n
        for position, k in enumerate(order, start=1):
            rank[k] = position
        for a, c in zip(order, order[1:]):
            if row[a] == row[c]:
                log.append((i, (a, c)))
        ranks.append(tuple(rank))
    return CanonicalScarf(inst, tuple(ranks), tuple(log))


def _witness(matrix: Sequence[Sequence], J: Iterable[int], n: int) -> dict[int, int] | None:
    J = list(J)
    bounds = [min((row[j] for j in J), default=None) for row in matrix]
    witness = {}
    for k in range(n):
        for i, row in enumerate(matrix):
            if bounds[i] is None or row[k] <= bounds[i]:
                witness[k] = i
                break
        else:
            return None
    return witness


def is_subordinating(J: Iterable[int], canon: CanonicalScarf) -> dict[int, int] | None:
    """Column -> row witness map if every column is ``J``-subordinated under ``R``."""
    return _witness(canon.R, J, canon.n)


def weak_witness(J: Iterable[int], inst: ScarfInstance) -> dict[int, int] | None:
    """Same as :func:`is_subordinating` but against the original ``C`` with ``<=``."""
    return _witness(inst.C, J, inst.n)


def solve_basis(J: Sequence[int], inst: ScarfInstance) -> FeasibleBasis | None:
    if len(J) != inst.m or len(set(J)) != len(J):
        raise ValueError(f"a basis needs {inst.m} distinct columns, got {list(J)}")
    sol = solve_columns([inst.column(j) for j in J], [inst.b])
    if sol is None:
        return None
    x = sol[0]
    if any(v < 0 for v in x):
        return None
    return FeasibleBasis(tuple(J), tuple(x))


def basis_tableau(J: Sequence[int], inst: ScarfInstance, entering: int | None = None):
    """Exact ``(x, inverse rows, direction)`` for basis ``J``.

    ``inverse rows[i]`` is row ``i`` of ``B_J^{-1}``; ``direction`` is
    ``B_J^{-1} B_entering`` (``None`` when no entering column is given).
    Returns ``None`` for a singular basis.
    """
    m = inst.m
    rhs = [inst.b] + identity(m)
    if entering is not None:
        rhs.append(inst.column(entering))
    sol = solve_columns([inst.column(j) for j in J], rhs)
    if sol is None:
        return None
    x = sol[0]
    inverse_rows = [[sol[1 + t][i] for t in range(m)] for i in range(m)]
    direction = sol[1 + m] if entering is not None else None
    return x, inverse_rows, direction


def cardinal_pivot(F: FeasibleBasis, k: int, inst: ScarfInstance) -> tuple[int, FeasibleBasis]:
    """Bring column ``k`` into ``F``; return the leaving column and the new basis.

    The leaving row is the lexicographic minimum of
    ``(x_i, B_J^{-1}[i, :]) / d_i`` over rows with ``d_i > 0``. That is the
    ratio test for ``b`` perturbed by ``(eps, eps^2, ...)``, so ties in the
    plain ratio are resolved without ever choosing a numeric epsilon.
    """
    if k in F.J:
        raise ValueError(f"column {k} is already in the basis")
    tableau = basis_tableau(F.J, inst, entering=k)
    if tableau is None:
        raise ValueError(f"basis {F.J} is singular")
    x, inverse_rows, d = tableau
    best_row, best_key = None, None
    for i in range(inst.m):
        if d[i] > 0:
            key = (x[i] / d[i], *(v / d[i] for v in inverse_rows[i]))
            if best_key is None or key < best_key:
                best_row, best_key = i, key
    if best_row is None:
        raise UnboundedDirection(
            f"entering column {k + 1} has no positive direction component; "
            "{alpha >= 0 : B alpha = b} is unbounded"
        )
    theta = best_key[0]
    new_x = [x[i] - theta * d[i] for i in range(inst.m)]
    new_x[best_row] = theta
    new_J = list(F.J)
    leaving = new_J[best_row]
    new_J[best_row] = k
    return leaving, FeasibleBasis(tuple(new_J), tuple(new_x))


def ordinal_extensions(K: Iterable[int], canon: CanonicalScarf) -> list[int]:
    """All ``j`` outside ``K`` such that ``K + j`` is subordinating under ``R``.

    Exhaustive scan. The count must be exactly two, or one when ``K`` lies
    inside the slack block; anything else raises :class:`LemmaViolation`.
    """
    K = frozenset(K)
    m, n, R = canon.m, canon.n, canon.R
    if len(K) != m - 1:
        raise ValueError(f"K must have {m - 1} columns, got {len(K)}")
    if is_subordinating(K, canon) is None:
        raise ValueError(f"K={sorted(K)} is not subordinating")
    inf = n + 1
    bounds = [min((row[j] for j in K), default=inf) for row in R]
    found = []
    for j in range(n):
        if j in K:
            continue
        limits = [min(bounds[i], R[i][j]) for i in range(m)]
        if all(any(R[i][k] <= limits[i] for i in range(m)) for k in range(n)):
            found.append(j)
    expected = 1 if all(j < m for j in K) else 2
    if len(found) != expected:
        raise LemmaViolation(
            f"K={sorted(K)} has {len(found)} subordinating extensions {found}, expected {expected}"
        )
    return found


def default_step_cap(m: int, n: int) -> int:
    return min(4 * math.comb(n, m), MAX_DEFAULT_STEPS)


def _advance(state: WalkState, mode: str, S: frozenset[int] | None, visited: set, trace: list) -> None:
    state.steps += 1
    if state.steps > state.cap:
        raise StepLimitExceeded(f"walk exceeded {state.cap} steps")
    state.mode = mode
    state.S = S
    vertex = (mode, S if mode == "S" else state.F.columns)
    if vertex in visited:
        raise LemmaViolation(f"walk revisited {mode}-vertex {sorted(vertex[1])}")
    visited.add(vertex)
    trace.append((mode, tuple(sorted(vertex[1]))))


def solve(inst: ScarfInstance, cap: int | None = None, assume_bounded: bool = False) -> ScarfSolution:
    """Follow the path from the slack basis to a subordinating feasible basis.

    ``n_pivots`` on the result counts the edges walked (ordinal and cardinal
    moves alike).
    """
    _check_valid(inst, assume_bounded)
    m, n = inst.m, inst.n
    canon = canonicalize(inst)
    if cap is None:
        cap = default_step_cap(m, n)
    start = FeasibleBasis(tuple(range(m)), inst.b)
    state = WalkState("F", start, None, 0, cap)
    visited = {("F", start.columns)}
    trace = [("F", tuple(range(m)))]

    (s,) = ordinal_extensions(range(1, m), canon)
    _advance(state, "S", frozenset(range(1, m)) | {s}, visited, trace)
    while True:
        # at a subordinating set: cardinal pivot on its one column outside F
        (entering,) = state.S - state.F.columns
        leaving, basis = cardinal_pivot(state.F, entering, inst)
        if leaving == 0:
            final = basis
            break
        state.F = basis
        _advance(state, "F", None, visited, trace)

        # at a feasible basis: ordinal pivot on F - {0}
        K = state.F.columns - {0}
        extensions = ordinal_extensions(K, canon)
        if leaving not in extensions:
            raise LemmaViolation(f"returning column {leaving} missing from extensions {extensions} of {sorted(K)}")
        (t,) = [j for j in extensions if j != leaving]
        if t == 0:
            final = state.F
            break
        _advance(state, "S", K | {t}, visited, trace)

    alpha = [Fraction(0)] * n
    for j, v in zip(final.J, final.x):
        alpha[j] = v
    J = tuple(sorted(final.J))
    witness = weak_witness(J, inst)
    if witness is None:
        raise LemmaViolation(f"terminal set {J} is not subordinating under C")
    logger.debug("scarf walk finished after %d pivots at J=%s", state.steps, J)
    return ScarfSolution(J, tuple(alpha), witness, n_pivots=state.steps, trace=tuple(trace))


def verify_solution(inst: ScarfInstance, sol: ScarfSolution) -> Verdict:
    """Independent check of a claimed solution against the original ``C``."""
    m, n = inst.m, inst.n
    failures = []
    J = list(sol.J)
    if len(J) != m or len(set(J)) != m:
        failures.append(f"|J| = {len(set(J))}, expected {m}")
    if any(not 0 <= j < n for j in J):
        return Verdict.from_failures(failures + ["J has out-of-range columns"])
    alpha = list(sol.alpha)
    if len(alpha) != n:
        return Verdict.from_failures(failures + [f"alpha has length {len(alpha)}, expected {n}"])
    negative = [j + 1 for j, v in enumerate(alpha) if v < 0]
    if negative:
        failures.append(f"alpha negative at columns {negative}")
    outside = [j + 1 for j, v in enumerate(alpha) if v and j not in sol.J]
    if outside:
        failures.append(f"alpha nonzero outside J at columns {outside}")
    if any(sum(row[j] * alpha[j] for j in range(n)) != inst.b[i] for i, row in enumerate(inst.B)):
        failures.append("B alpha != b")
    bounds = [min(row[j] for j in J) for row in inst.C] if J else None
    for k in range(n):
        if bounds is not None and not any(row[k] <= bounds[i] for i, row in enumerate(inst.C)):
            failures.append(f"column {k + 1} unsubordinated")
            break
    return Verdict.from_failures(failures)
