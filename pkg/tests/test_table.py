"""Tuples, ranked tables, the fundamental operations, and CSV round trips."""

import io

import pytest
from hypothesis import given, strategies as st

import gradix as gx
from gradix import (
    AttributeRegistry,
    DatabaseInstance,
    EMPTY_TUPLE,
    NotJoinableError,
    SchemeError,
    Tuple,
    TypeRegistryError,
)
from gradix.harness import gen, oracle

from conftest import rdt, sch, scores, tup


def test_tuple_projection():
    r = Tuple({"A": 1, "B": 2})
    assert r.project(sch("A")) == Tuple({"A": 1})
    assert Tuple({"A": 1}).project(frozenset()) == EMPTY_TUPLE
    with pytest.raises(SchemeError):
        Tuple({"A": 1}).project(sch("B"))


def test_tuple_join():
    r1, r2 = Tuple({"A": 1, "B": 2}), Tuple({"B": 2, "C": 3})
    assert r1.joinable(r2)
    assert r1.join(r2) == Tuple({"A": 1, "B": 2, "C": 3})
    assert not Tuple({"A": 1, "B": 2}).joinable(Tuple({"B": 9}))
    with pytest.raises(NotJoinableError):
        Tuple({"A": 1, "B": 2}).join(Tuple({"B": 9}))
    assert r1.joinable(EMPTY_TUPLE) and r1.join(EMPTY_TUPLE) == r1


@given(st.dictionaries(st.sampled_from("ABCD"), st.integers(0, 3), max_size=4),
       st.dictionaries(st.sampled_from("ABCD"), st.integers(0, 3), max_size=4))
def test_tuple_join_is_agreement(m1, m2):
    t1, t2 = Tuple(m1), Tuple(m2)
    agrees = all(m1[k] == m2[k] for k in m1.keys() & m2.keys())
    assert t1.joinable(t2) == agrees
    if agrees:
        assert t1.join(t2).as_dict() == {**m1, **m2}


def test_table_drops_zero_scores(godel):
    d = rdt(godel, {"A"}, {1: 0.0, 2: 0.5})
    assert len(d) == 1
    assert d.score(tup({"A"}, 1)) == 0.0


def test_table_rejects_off_scheme_tuples(godel):
    with pytest.raises(SchemeError):
        gx.RankedDataTable(sch("A"), godel, {Tuple({"B": 1}): 0.5})


def test_dee_and_empty(godel):
    assert gx.dee(godel, 1.0).score(EMPTY_TUPLE) == 1.0
    assert len(gx.dee(godel, 0.0)) == 0
    assert gx.dee(godel, 0.5).score(EMPTY_TUPLE) == 0.5
    assert len(gx.empty(godel, sch("A", "B"))) == 0


def test_union_intersection(godel):
    d1 = rdt(godel, {"A"}, {1: 0.3})
    d2 = rdt(godel, {"A"}, {1: 0.8})
    assert gx.union(d1, d2).score(tup({"A"}, 1)) == 0.8
    assert gx.intersection(d1, d2).score(tup({"A"}, 1)) == 0.3
    assert gx.union(d1, gx.empty(godel, sch("A"))) == d1
    assert gx.intersection(d1, d1) == d1
    with pytest.raises(SchemeError):
        gx.union(d1, rdt(godel, {"B"}, {1: 0.5}))
    with pytest.raises(gx.LatticeMismatchError):
        gx.union(d1, rdt(gx.make_lattice("goguen"), {"A"}, {1: 0.5}))


def test_natural_join(goguen, godel):
    d1 = rdt(goguen, {"A", "B"}, {("a1", "b1"): 0.8})
    d2 = rdt(goguen, {"B", "C"}, {("b1", "c1"): 0.5})
    out = gx.natural_join(d1, d2)
    assert scores(out) == {(("A", "a1"), ("B", "b1"), ("C", "c1")): 0.4}
    assert gx.natural_join(d1, gx.dee(goguen, 1.0)).approx_equals(d1)
    d2miss = rdt(goguen, {"B", "C"}, {("b2", "c1"): 0.5})
    assert len(gx.natural_join(d1, d2miss)) == 0
    # joining with a Dee table scales every score by its degree
    d = rdt(godel, {"A"}, {1: 0.7, 2: 0.2})
    scaled = gx.natural_join(d, gx.dee(godel, 0.5))
    assert scaled.score(tup({"A"}, 1)) == 0.5
    assert scaled.score(tup({"A"}, 2)) == 0.2


def test_projection(godel):
    d = rdt(godel, {"A", "B"}, {("a1", "b1"): 0.6, ("a1", "b2"): 0.9})
    assert scores(gx.projection(d, sch("A"))) == {(("A", "a1"),): 0.9}
    assert gx.projection(d, d.scheme) == d
    onto_empty = gx.projection(d, frozenset())
    assert onto_empty.score(EMPTY_TUPLE) == 0.9
    with pytest.raises(SchemeError):
        gx.projection(d, sch("C"))


def test_projection_composition(godel):
    d = rdt(godel, {"A", "B", "C"}, {(1, 1, 1): 0.4, (1, 2, 2): 0.9})
    assert gx.projection(gx.projection(d, sch("A", "B")), sch("A")) == gx.projection(d, sch("A"))


def test_semijoin(godel):
    d1 = rdt(godel, {"A", "B"}, {("a1", "b1"): 0.7})
    d2 = rdt(godel, {"B"}, {"b1": 0.4})
    assert scores(gx.semijoin(d1, d2)) == {(("A", "a1"), ("B", "b1")): 0.4}
    assert gx.semijoin(d1, gx.dee(godel, 1.0)).approx_equals(d1)
    assert len(gx.semijoin(d1, gx.empty(godel, sch("B")))) == 0


def test_semijoin_two_definitions_agree(any_lattice):
    cfg = gen.GenConfig(seed=5, lattice=any_lattice)
    for i in range(30):
        rng = gen.sub_rng(5, "semijoin", i)
        s1 = gen.gen_scheme(rng, rng.randint(1, 3))
        s2 = gen.gen_scheme(rng, rng.randint(1, 3))
        d1 = gen.gen_rdt(cfg.with_seed(i), s1, "x")
        d2 = gen.gen_rdt(cfg.with_seed(i), s2, "y")
        via_join = gx.projection(gx.natural_join(d1, d2), d1.scheme)
        via_proj = gx.natural_join(d1, gx.projection(d2, s1 & s2))
        assert via_join.approx_equals(via_proj)
        assert gx.semijoin(d1, d2).approx_equals(via_join)


def test_difference_graded(boolean, godel, lukasiewicz):
    one = rdt(boolean, {"A"}, {1: 1})
    assert len(gx.difference_graded(one, one)) == 0
    out = gx.difference_graded(rdt(godel, {"A"}, {1: 0.6}), rdt(godel, {"A"}, {1: 0.3}))
    assert len(out) == 0  # 0.6 ⊗ (0.3 → 0) = 0.6 ⊗ 0
    out = gx.difference_graded(
        rdt(lukasiewicz, {"A"}, {1: 0.9}), rdt(lukasiewicz, {"A"}, {1: 0.3})
    )
    assert out.score(tup({"A"}, 1)) == pytest.approx(0.6, abs=1e-9)


def test_nabla_delta(godel):
    d = rdt(godel, {"A"}, {1: 0.3, 2: 1.0})
    assert scores(gx.nabla(d)) == {(("A", 1),): 1.0, (("A", 2),): 1.0}
    assert scores(gx.delta(d)) == {(("A", 2),): 1.0}
    assert len(gx.nabla(gx.empty(godel, sch("A")))) == 0
    # near-1 drift counts as 1 for the kernel
    drift = rdt(godel, {"A"}, {1: 1.0 - 1e-12})
    assert len(gx.delta(drift)) == 1


def test_residuum_with_range(boolean, godel):
    out = gx.residuum_with_range(
        rdt(godel, {"A"}, {1: 0.8}), rdt(godel, {"A"}, {1: 0.5}),
        rdt(godel, {"A"}, {1: 1.0}),
    )
    assert out.score(tup({"A"}, 1)) == 0.5
    empty_rng = gx.residuum_with_range(
        rdt(godel, {"A"}, {1: 0.8}), rdt(godel, {"A"}, {1: 0.5}),
        gx.empty(godel, sch("A")),
    )
    assert len(empty_rng) == 0
    b = rdt(boolean, {"A"}, {1: 1})
    assert gx.residuum_with_range(b, b, b).score(tup({"A"}, 1)) == 1


def test_boolean_collapse_matches_set_oracle(boolean):
    cfg = gen.GenConfig(seed=11, lattice=boolean)
    for i in range(40):
        rng = gen.sub_rng(11, "collapse", i)
        s1 = gen.gen_scheme(rng, rng.randint(1, 3))
        s2 = gen.gen_scheme(rng, rng.randint(1, 3))
        d1 = gen.gen_rdt(cfg.with_seed(i), s1, "p")
        d2 = gen.gen_rdt(cfg.with_seed(i), s2, "q")
        a, b = frozenset(d1.support()), frozenset(d2.support())
        assert frozenset(gx.natural_join(d1, d2).support()) == oracle.set_natural_join(a, b)
        assert frozenset(gx.semijoin(d1, d2).support()) == oracle.set_semijoin(a, b)
        target = frozenset(rng.sample(sorted(s1), rng.randint(0, len(s1))))
        assert frozenset(gx.projection(d1, target).support()) == oracle.set_projection(a, target)


def test_instance_binding(godel):
    d = rdt(godel, {"A"}, {1: 0.5})
    inst = DatabaseInstance(godel, {"D": d})
    assert inst.table("D") is d
    assert inst.symbols() == ["D"]
    with pytest.raises(gx.UnboundSymbolError):
        inst.table("E")
    with pytest.raises(gx.LatticeMismatchError):
        DatabaseInstance(godel, {"X": rdt(gx.make_lattice("boolean"), {"A"}, {1: 1})})
    wide = inst.with_table("E", d)
    assert wide.symbols() == ["D", "E"]
    assert inst.symbols() == ["D"]


def test_registry():
    reg = AttributeRegistry()
    reg.declare("A", "int")
    reg.declare("A", "integer")
    with pytest.raises(TypeRegistryError):
        reg.declare("A", "text")
    with pytest.raises(TypeRegistryError):
        reg.declare("B", "varchar")
    assert reg.parse_value("A", "3") == 3
    reg.declare("C", "decimal")
    assert reg.parse_value("C", "0.5") == 0.5
    assert reg.parse_value("unknown", "zz") == "zz"
    with pytest.raises(TypeRegistryError):
        reg.parse_value("A", "zz")


CSV_TEXT = """A,B,rank
a1,2,0.9
a2,1,0.4
"""


def test_csv_round_trip(godel):
    reg = AttributeRegistry()
    table = gx.read_csv(CSV_TEXT, godel, reg, {"A": "text", "B": "int"})
    assert table.scheme == sch("A", "B")
    assert table.score(Tuple({"A": "a1", "B": 2})) == 0.9
    assert gx.table_to_csv(table) == CSV_TEXT
    again = gx.read_csv(gx.table_to_csv(table), godel, reg)
    assert again == table


def test_csv_rank_defaults_and_sorting(godel):
    reg = AttributeRegistry()
    table = gx.read_csv("A\n2\n1\n", godel, reg, {"A": "int"})
    assert table.score(tup({"A"}, 1)) == 1.0
    # equal ranks fall back to lexicographic tuple order
    assert gx.table_to_csv(table) == "A,rank\n1,1\n2,1\n"


def test_csv_sort_by_descending_rank(godel):
    table = rdt(godel, {"A"}, {3: 0.2, 1: 0.9, 2: 0.9})
    assert gx.table_to_csv(table) == "A,rank\n1,0.9\n2,0.9\n3,0.2\n"


def test_csv_nine_significant_digits(godel):
    table = rdt(godel, {"A"}, {1: 0.123456789123})
    assert "0.123456789" in gx.table_to_csv(table)


def test_csv_empty_scheme(godel):
    d = gx.dee(godel, 0.25)
    text = gx.table_to_csv(d)
    assert text == "rank\n0.25\n"
    again = gx.read_csv(text, godel, AttributeRegistry())
    assert again == d


def test_csv_errors(godel):
    reg = AttributeRegistry()
    with pytest.raises(SchemeError):
        gx.read_csv("", godel, reg)
    with pytest.raises(SchemeError):
        gx.read_csv("A,A,rank\n1,2,1\n", godel, reg)
    with pytest.raises(SchemeError):
        gx.read_csv("A,rank\n1\n", godel, reg)
    with pytest.raises(gx.DegreeError):
        gx.read_csv("A,rank\n1,1.5\n", godel, reg)


def test_csv_chain_ranks():
    chain = gx.FiniteChain(5)
    reg = AttributeRegistry()
    table = gx.read_csv("A,rank\n1,0.75\n", chain, reg, {"A": "int"})
    assert table.score(tup({"A"}, 1)) == 3
    assert gx.table_to_csv(table) == "A,rank\n1,0.75\n"


def test_write_csv_to_stream(godel):
    buf = io.StringIO()
    gx.write_csv(rdt(godel, {"A"}, {1: 0.5}), buf)
    assert buf.getvalue() == "A,rank\n1,0.5\n"
