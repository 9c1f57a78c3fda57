"""Input coercion helpers used by the estimator classes.

Each ``check_*`` accepts a domain object or its JSON document (plain tuples
work too) and returns the validated domain object.
"""
from __future__ import annotations

from . import io as fileio
from .core import ScarfInstance, validate_instance
from .exceptions import InvalidInstance
from .kernels import Digraph
from .matchings import HypergraphPrefSystem


def check_scarf_instance(X, assume_bounded: bool = False) -> ScarfInstance:
    if isinstance(X, ScarfInstance):
        inst = X
    elif isinstance(X, dict):
        inst = fileio.instance_from_json(X)
    elif isinstance(X, (tuple, list)) and len(X) == 3:
        inst = ScarfInstance(*X)
    else:
        raise InvalidInstance(f"cannot interpret {type(X).__name__} as a Scarf instance")
    report = validate_instance(inst, assume_bounded=assume_bounded)
    if not report.ok:
        raise InvalidInstance("; ".join(report.violations))
    return inst


def check_digraph(X) -> Digraph:
    if isinstance(X, Digraph):
        return X
    if isinstance(X, dict):
        return fileio.digraph_from_json(X)
    if isinstance(X, (tuple, list)) and len(X) == 2:
        return Digraph(tuple(X[0]), tuple(tuple(a) for a in X[1]))
    raise InvalidInstance(f"cannot interpret {type(X).__name__} as a digraph")


def check_hypergraph(X) -> HypergraphPrefSystem:
    if isinstance(X, HypergraphPrefSystem):
        return X
    if isinstance(X, dict):
        return fileio.hypergraph_from_json(X)
    raise InvalidInstance(f"cannot interpret {type(X).__name__} as a hypergraphic preference system")
