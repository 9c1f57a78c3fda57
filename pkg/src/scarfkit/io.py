"""JSON file formats.

Indices in files are 1-based (columns, rows, edges, path positions).
Rationals are written as bare integers or reduced ``"p/q"`` strings, and
:func:`dumps` is canonical, so equal objects give byte-identical files.
"""
from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Any

from ._exact import format_fraction, to_fraction
from .core import ScarfInstance, ScarfSolution
from .exceptions import InvalidInstance
from .fspp import FsppInstance
from .kernels import Digraph
from .matchings import HypergraphPrefSystem


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str) -> Any:
    """Load JSON from a file path, or from standard input when ``path`` is ``-``."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"{path}: invalid JSON ({exc})") from exc


def _require(data: Any, *keys: str) -> None:
    if not isinstance(data, dict):
        raise InvalidInstance("expected a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InvalidInstance(f"missing keys {missing}")


def _fractions(values) -> list[Fraction]:
    try:
        return [to_fraction(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(str(exc)) from exc


def _key_lookup(items) -> dict[str, Any]:
    return {str(v): v for v in items}


# Scarf instances and solutions

def instance_to_json(inst: ScarfInstance) -> dict:
    return {
        "m": inst.m,
        "n": inst.n,
        "B": [[format_fraction(v) for v in row] for row in inst.B],
        "b": [format_fraction(v) for v in inst.b],
        "C": [[format_fraction(v) for v in row] for row in inst.C],
    }


def instance_from_json(data: dict) -> ScarfInstance:
    _require(data, "B", "b", "C")
    inst = ScarfInstance(data["B"], data["b"], data["C"])
    if data.get("m", inst.m) != inst.m or data.get("n", inst.n) != inst.n:
        raise InvalidInstance(f"declared size m={data.get('m')}, n={data.get('n')} disagrees with B ({inst.m}x{inst.n})")
    return inst


def solution_to_json(sol: ScarfSolution) -> dict:
    return {
        "J": [j + 1 for j in sol.J],
        "alpha": [format_fraction(v) for v in sol.alpha],
        "witness": {str(k + 1): sol.witness[k] + 1 for k in sorted(sol.witness)},
    }


def solution_from_json(data: dict) -> ScarfSolution:
    _require(data, "J", "alpha")
    try:
        J = tuple(int(j) - 1 for j in data["J"])
        witness = {int(k) - 1: int(i) - 1 for k, i in data.get("witness", {}).items()}
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(f"bad solution indices: {exc}") from exc
    return ScarfSolution(J, tuple(_fractions(data["alpha"])), witness)


# Digraphs and kernels

def digraph_to_json(D: Digraph) -> dict:
    return {"vertices": list(D.vertices), "arcs": [[u, v] for u, v in D.arcs]}


def digraph_from_json(data: dict) -> Digraph:
    _require(data, "vertices", "arcs")
    try:
        return Digraph(tuple(data["vertices"]), tuple(tuple(a) for a in data["arcs"]))
    except (TypeError, ValueError) as exc:
        raise InvalidInstance(f"bad digraph: {exc}") from exc


def kernel_to_json(f: dict) -> dict:
    return {"f": {str(v): format_fraction(x) for v, x in f.items()}}


def kernel_from_json(data: dict, D: Digraph) -> dict:
    _require(data, "f")
    lookup = _key_lookup(D.vertices)
    unknown = [k for k in data["f"] if k not in lookup]
    if unknown:
        raise InvalidInstance(f"kernel mentions unknown vertices {unknown}")
    return {lookup[k]: x for k, x in zip(data["f"], _fractions(data["f"].values()))}


# Hypergraphic preference systems and matchings

def hypergraph_to_json(H: HypergraphPrefSystem) -> dict:
    return {
        "vertices": list(H.vertices),
        "edges": [list(e) for e in H.edges],
        "orders": {str(v): [h + 1 for h in H.orders[v]] for v in H.vertices},
    }


def hypergraph_from_json(data: dict) -> HypergraphPrefSystem:
    _require(data, "vertices", "edges", "orders")
    lookup = _key_lookup(data["vertices"])
    try:
        orders = {lookup[k]: [int(h) - 1 for h in hs] for k, hs in data["orders"].items()}
    except KeyError as exc:
        raise InvalidInstance(f"order given for unknown vertex {exc}") from exc
    return HypergraphPrefSystem(tuple(data["vertices"]), tuple(tuple(e) for e in data["edges"]), orders)


def matching_to_json(w: dict) -> dict:
    return {"w": {str(h + 1): format_fraction(w[h]) for h in sorted(w)}}


def matching_from_json(data: dict) -> dict:
    _require(data, "w")
    try:
        keys = [int(k) - 1 for k in data["w"]]
    except ValueError as exc:
        raise InvalidInstance(f"edge keys must be 1-based indices: {exc}") from exc
    return dict(zip(keys, _fractions(data["w"].values())))


# FSPP instances and weights

def fspp_to_json(inst: FsppInstance) -> dict:
    return {
        "nodes": list(inst.nodes),
        "dest": inst.dest,
        "edges": [list(e) for e in inst.edges],
        "paths": {
            str(v): [{"path": list(P), "rank": inst.ranks[v][P]} for P in inst.paths[v]]
            for v in inst.sources
        },
    }


def fspp_from_json(data: dict) -> FsppInstance:
    _require(data, "nodes", "dest", "edges", "paths")
    lookup = _key_lookup(data["nodes"])
    paths, ranks = {}, {}
    try:
        for key, entries in data["paths"].items():
            v = lookup[key]
            paths[v] = [tuple(e["path"]) for e in entries]
            ranks[v] = {tuple(e["path"]): int(e["rank"]) for e in entries}
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"bad paths entry: {exc}") from exc
    return FsppInstance(tuple(data["nodes"]), data["dest"], tuple(tuple(e) for e in data["edges"]), paths, ranks)


def fspp_weights_to_json(w: dict, inst: FsppInstance) -> dict:
    out = {}
    for v in inst.sources:
        for i, P in enumerate(inst.paths[v], start=1):
            if P in w:
                out[f"{v}/{i}"] = format_fraction(w[P])
    return {"w": out}


def fspp_weights_from_json(data: dict, inst: FsppInstance) -> dict:
    _require(data, "w")
    lookup = _key_lookup(inst.sources)
    w = {}
    for key, value in data["w"].items():
        node, _, index = key.rpartition("/")
        try:
            position = int(index)
            if position < 1:
                raise IndexError(position)
            P = inst.paths[lookup[node]][position - 1]
        except (KeyError, ValueError, IndexError) as exc:
            raise InvalidInstance(f"weight key {key!r} does not name a permitted path") from exc
        w[P] = _fractions([value])[0]
    return w
