import pytest

from gradix import (
    BooleanLattice,
    FiniteChain,
    GoedelLattice,
    GoguenLattice,
    LukasiewiczLattice,
    RankedDataTable,
    Tuple,
)


def sch(*names):
    return frozenset(names)


def rdt(lat, scheme, rows):
    """Shorthand table builder: keys are value tuples in sorted-attribute
    order (a bare scalar for single-attribute schemes)."""
    attrs = sorted(scheme)
    out = {}
    for key, d in rows.items():
        values = key if isinstance(key, tuple) else (key,)
        out[Tuple(zip(attrs, values))] = d
    return RankedDataTable(frozenset(scheme), lat, out)


def tup(scheme, *values):
    return Tuple(zip(sorted(scheme), values))


def scores(table):
    """Support as a plain {value-tuple-dict: degree} map, for assertions."""
    return {tuple(sorted(t.items())): d for t, d in table.rows.items()}


@pytest.fixture
def boolean():
    return BooleanLattice()


@pytest.fixture
def godel():
    return GoedelLattice()


@pytest.fixture
def lukasiewicz():
    return LukasiewiczLattice()


@pytest.fixture
def goguen():
    return GoguenLattice()


@pytest.fixture
def chain5():
    return FiniteChain(5)


@pytest.fixture(params=["boolean", "godel", "lukasiewicz", "goguen", "chain3", "chain5"])
def any_lattice(request):
    return {
        "boolean": BooleanLattice(),
        "godel": GoedelLattice(),
        "lukasiewicz": LukasiewiczLattice(),
        "goguen": GoguenLattice(),
        "chain3": FiniteChain(3),
        "chain5": FiniteChain(5),
    }[request.param]


@pytest.fixture(params=["godel", "lukasiewicz", "goguen"])
def unit_lattice(request):
    return {
        "godel": GoedelLattice(),
        "lukasiewicz": LukasiewiczLattice(),
        "goguen": GoguenLattice(),
    }[request.param]
