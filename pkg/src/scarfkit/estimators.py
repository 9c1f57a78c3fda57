"""Estimator-style front ends with ``get_params``/``set_params`` and ``fit``.

``fit`` takes one problem instance (domain object or JSON document) and
stores the solution in trailing-underscore attributes, so the solvers can be
cloned, parameter-searched and used wherever scikit-learn estimators are.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .core import solve, verify_solution
from .kernels import compute_nash, solve_strong_kernel
from .matchings import solve_stable_matching
from .validation import check_digraph, check_hypergraph, check_scarf_instance


class ScarfSolver(BaseEstimator):
    """Path-following solver for one Scarf instance.

    Parameters
    ----------
    max_steps : int or None
        Pivot limit; ``None`` uses ``4 * C(n, m)`` capped at ``10**7``.
    assume_bounded : bool
        Skip the ``B >= 0`` boundedness test.

    Attributes
    ----------
    solution_ : ScarfSolution
    J_ : tuple of int
    alpha_ : tuple of Fraction
    n_pivots_ : int
    """

    def __init__(self, max_steps=None, assume_bounded=False):
        self.max_steps = max_steps
        self.assume_bounded = assume_bounded

    def fit(self, X, y=None):
        inst = check_scarf_instance(X, assume_bounded=self.assume_bounded)
        self.instance_ = inst
        self.solution_ = solve(inst, cap=self.max_steps, assume_bounded=self.assume_bounded)
        self.J_ = self.solution_.J
        self.alpha_ = self.solution_.alpha
        self.n_pivots_ = self.solution_.n_pivots
        return self

    def transform(self, X):
        """Solution weights ``alpha`` for instance ``X``."""
        check_is_fitted(self)
        inst = check_scarf_instance(X, assume_bounded=self.assume_bounded)
        if inst == self.instance_:
            return self.alpha_
        return solve(inst, cap=self.max_steps, assume_bounded=self.assume_bounded).alpha

    def fit_transform(self, X, y=None):
        return self.fit(X).alpha_

    def score(self, X, y=None):
        """1.0 if the fitted solution verifies against ``X``, else 0.0."""
        check_is_fitted(self)
        inst = check_scarf_instance(X, assume_bounded=self.assume_bounded)
        return float(bool(verify_solution(inst, self.solution_)))


class StrongKernelSolver(BaseEstimator):
    """Strong fractional kernel of a clique-acyclic digraph, optionally made Nash."""

    def __init__(self, max_steps=None, max_clique=None, nash=False):
        self.max_steps = max_steps
        self.max_clique = max_clique
        self.nash = nash

    def fit(self, X, y=None):
        D = check_digraph(X)
        kernel = solve_strong_kernel(D, cap=self.max_steps, max_clique=self.max_clique)
        if self.nash:
            kernel = compute_nash(D, kernel)
        self.kernel_ = kernel
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).kernel_


class StableMatchingSolver(BaseEstimator):
    """Fractional stable matching of a hypergraphic preference system."""

    def __init__(self, max_steps=None):
        self.max_steps = max_steps

    def fit(self, X, y=None):
        self.matching_ = solve_stable_matching(check_hypergraph(X), cap=self.max_steps)
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).matching_
