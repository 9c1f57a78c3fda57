from fractions import Fraction

import pytest

from scarfkit.core import ScarfInstance
from scarfkit.fspp import FsppInstance
from scarfkit.generators import gen_directed_cycle
from scarfkit.kernels import Digraph
from scarfkit.matchings import HypergraphPrefSystem

HALF = Fraction(1, 2)


@pytest.fixture
def ex1():
    return ScarfInstance([[1, 0, 1], [0, 1, 1]], [2, 1], [[0, 9, 5], [9, 0, 5]])


@pytest.fixture
def ex1_degenerate(ex1):
    return ex1.replace(b=[1, 1])


@pytest.fixture
def c5():
    return gen_directed_cycle(5)


@pytest.fixture
def two_cycle():
    return Digraph(("u", "v"), (("u", "v"), ("v", "u")))


@pytest.fixture
def single_arc():
    return Digraph(("u", "v"), (("u", "v"),))


@pytest.fixture
def triangle():
    return Digraph(("u", "v", "w"), (("u", "v"), ("v", "w"), ("w", "u")))


@pytest.fixture
def fspp_two_cycle():
    ud, uvd, vd, vud = ("u", "d"), ("u", "v", "d"), ("v", "d"), ("v", "u", "d")
    return FsppInstance(
        ("u", "v", "d"),
        "d",
        (("u", "v"), ("u", "d"), ("v", "d")),
        {"u": [ud, uvd], "v": [vd, vud]},
        {"u": {ud: 1, uvd: 2}, "v": {vd: 1, vud: 2}},
    )


@pytest.fixture
def cyclic_triangle():
    # each vertex prefers its clockwise edge: a->ab, b->bc, c->ca
    edges = [("a", "b"), ("b", "c"), ("c", "a")]
    return HypergraphPrefSystem.from_preferences(
        ("a", "b", "c"),
        edges,
        {"a": [("a", "b"), ("c", "a")], "b": [("b", "c"), ("a", "b")], "c": [("c", "a"), ("b", "c")]},
    )


@pytest.fixture
def marriage_2x2():
    # aligned preferences: m1 and w1 rank each other first, as do m2 and w2
    edges = [("m1", "w1"), ("m1", "w2"), ("m2", "w1"), ("m2", "w2")]
    prefs = {
        "m1": [("m1", "w1"), ("m1", "w2")],
        "m2": [("m2", "w2"), ("m2", "w1")],
        "w1": [("m1", "w1"), ("m2", "w1")],
        "w2": [("m2", "w2"), ("m1", "w2")],
    }
    return HypergraphPrefSystem.from_preferences(("m1", "m2", "w1", "w2"), edges, prefs)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
