"""Algebra expressions: scheme inference, evaluation, active domains, the
explicit active-domain expression, and printing."""

import pytest

import gradix as gx
from gradix import (
    DatabaseInstance,
    DeeConst,
    DivRanged,
    EadomExpr,
    GCodd,
    Intersection,
    NaturalJoin,
    Projection,
    RelSym,
    ResiduumRange,
    SchemeError,
    Singleton,
    Tuple,
    UnboundSymbolError,
)
from gradix.algebra import Nabla, Union, constants_of, symbols_of, walk
from gradix.harness import gen

from conftest import rdt, sch, scores


@pytest.fixture
def inst(godel):
    return DatabaseInstance(godel, {
        "D": rdt(godel, {"A", "B"}, {(1, 1): 0.5, (2, 1): 0.9}),
        "E": rdt(godel, {"B"}, {1: 0.4, 2: 1.0}),
    })


D = RelSym("D", sch("A", "B"))
E = RelSym("E", sch("B"))


def test_scheme_of_rules():
    assert gx.scheme_of(D) == sch("A", "B")
    assert gx.scheme_of(Projection(sch("A"), D)) == sch("A")
    assert gx.scheme_of(NaturalJoin(D, E)) == sch("A", "B")
    assert gx.scheme_of(DeeConst(0.7)) == frozenset()
    assert gx.scheme_of(Singleton("A", 3)) == sch("A")
    assert gx.scheme_of(EadomExpr(sch("A", "B"))) == sch("A", "B")
    assert gx.scheme_of(DivRanged(D, E, Projection(sch("A"), D))) == sch("A")


def test_scheme_of_errors():
    with pytest.raises(SchemeError):
        gx.scheme_of(RelSym("X"))
    with pytest.raises(SchemeError):
        gx.scheme_of(Union(D, E))
    with pytest.raises(SchemeError):
        gx.scheme_of(Projection(sch("C"), D))
    with pytest.raises(SchemeError):
        gx.scheme_of(ResiduumRange(D, E, D))
    with pytest.raises(SchemeError):
        gx.scheme_of(DivRanged(D, E, E))  # divisor/range overlap
    with pytest.raises(SchemeError):
        gx.scheme_of(GCodd(D, E, E))


def test_eval_relsym_and_dee(inst, godel):
    assert gx.eval_ra(D, inst) is inst.table("D")
    assert gx.eval_ra(DeeConst(0.7), inst) == gx.dee(godel, 0.7)
    with pytest.raises(UnboundSymbolError):
        gx.eval_ra(RelSym("X", sch("A")), inst)
    with pytest.raises(SchemeError):
        gx.eval_ra(RelSym("D", sch("A")), inst)


def test_eval_core_ops(inst, godel):
    out = gx.eval_ra(Projection(sch("A"), Nabla(D)), inst)
    assert scores(out) == {(("A", 1),): 1.0, (("A", 2),): 1.0}
    joined = gx.eval_ra(NaturalJoin(D, E), inst)
    assert joined.score(Tuple({"A": 2, "B": 1})) == 0.4
    single = gx.eval_ra(Singleton("B", 1), inst)
    assert scores(single) == {(("B", 1),): 1.0}


def test_eval_div_ranged_with_eadom_range(inst):
    expr = DivRanged(D, E, EadomExpr(sch("A")))
    direct = gx.div_ranged(
        inst.table("D"), inst.table("E"), gx.eadom(inst, sch("A"))
    )
    assert gx.eval_ra(expr, inst) == direct


def test_eval_sugar_nodes_match_direct_calls(inst):
    d, e = inst.table("D"), inst.table("E")
    cases = [
        (gx.Semijoin(D, E), gx.semijoin(d, e)),
        (gx.GradedDifference(E, E), gx.difference_graded(e, e)),
        (gx.GSDO(Projection(sch("A"), D), E, D), gx.div_gsdo(gx.projection(d, sch("A")), e, d)),
        (gx.GCodd(D, E, Nabla(Projection(sch("A"), D))),
         gx.div_gcodd(d, e, gx.nabla(gx.projection(d, sch("A"))))),
    ]
    for expr, want in cases:
        assert gx.eval_ra(expr, inst) == want


def test_adom_and_eadom(inst, godel):
    d = inst.table("D")
    assert scores(gx.adom("A", d)) == {(("A", 1),): 1.0, (("A", 2),): 1.0}
    assert len(gx.adom("B", gx.empty(godel, sch("B")))) == 0
    with pytest.raises(SchemeError):
        gx.adom("Z", d)

    ead = gx.eadom(inst, sch("A", "B"))
    # A values {1,2} from D; B values {1} from D plus {1,2} from E
    assert frozenset(ead.support()) == frozenset(
        Tuple({"A": a, "B": b}) for a in (1, 2) for b in (1, 2)
    )
    assert ead.is_non_ranked()
    assert gx.eadom(inst, frozenset()) == gx.dee(godel, 1.0)
    with_extra = gx.eadom(inst, sch("A"), [("A", 99)])
    assert Tuple({"A": 99}) in with_extra.support()


def test_eadom_monotone_under_widening(inst, godel):
    wide = inst.with_table("Z", rdt(godel, {"A"}, {7: 0.3}))
    base = frozenset(gx.eadom(inst, sch("A")).support())
    assert base <= frozenset(gx.eadom(wide, sch("A")).support())


def test_eadom_empty_attribute(godel):
    inst = DatabaseInstance(godel, {"D": gx.empty(godel, sch("A"))})
    assert len(gx.eadom(inst, sch("A"))) == 0


def test_eadom_ra_expr_matches_eadom(inst):
    symbols = {"D": sch("A", "B"), "E": sch("B")}
    for scheme in (frozenset(), sch("A"), sch("B"), sch("A", "B")):
        expr = gx.eadom_ra_expr(scheme, symbols)
        assert gx.eval_ra(expr, inst) == gx.eadom(inst, scheme)
    expr = gx.eadom_ra_expr(sch("A"), symbols, constants=[("A", 42)])
    got = gx.eval_ra(expr, inst)
    assert got == gx.eadom(inst, sch("A"), [("A", 42)])


def test_eadom_ra_expr_on_random_instances(godel):
    symbols = {"P": sch("A", "B"), "Q": sch("B", "C")}
    for i in range(15):
        inst = gen.gen_instance(gen.GenConfig(seed=100 + i, lattice=godel), symbols)
        for scheme in (sch("A"), sch("B", "C"), sch("A", "C")):
            expr = gx.eadom_ra_expr(scheme, symbols)
            assert gx.eval_ra(expr, inst) == gx.eadom(inst, scheme)


def test_eadom_ra_expr_single_symbol_shape():
    expr = gx.eadom_ra_expr(sch("A"), {"D": sch("A")})
    assert expr == Projection(sch("A"), Nabla(RelSym("D", sch("A"))))


def test_eadom_ra_expr_uncovered_attribute(inst):
    expr = gx.eadom_ra_expr(sch("Z"), {"D": sch("A", "B")})
    assert len(gx.eval_ra(expr, inst)) == 0


def test_eadom_expr_evaluates_instance_wide(inst):
    got = gx.eval_ra(EadomExpr(sch("B")), inst)
    assert got == gx.eadom(inst, sch("B"))


def test_domain_bound_invariant(godel):
    cfg = gen.GenConfig(seed=17, lattice=godel)
    inst = gen.gen_instance(cfg, {"P": sch("A", "B"), "Q": sch("B", "C")})
    exprs = [
        NaturalJoin(RelSym("P", sch("A", "B")), RelSym("Q", sch("B", "C"))),
        Projection(sch("A"), RelSym("P", sch("A", "B"))),
        ResiduumRange(
            NaturalJoin(RelSym("P", sch("A", "B")), EadomExpr(sch("C"))),
            NaturalJoin(RelSym("Q", sch("B", "C")), EadomExpr(sch("A"))),
            EadomExpr(sch("A", "B", "C")),
        ),
        NaturalJoin(RelSym("P", sch("A", "B")), Singleton("C", 99)),
    ]
    for expr in exprs:
        out = gx.eval_ra(expr, inst)
        bound = gx.eadom(inst, gx.scheme_of(expr), constants_of(expr))
        assert frozenset(out.support()) <= frozenset(bound.support())


def test_walk_symbols_constants():
    expr = NaturalJoin(D, Intersection(Singleton("B", 1), E))
    assert {type(n).__name__ for n in walk(expr)} == {
        "NaturalJoin", "RelSym", "Intersection", "Singleton",
    }
    assert symbols_of(expr) == {"D": sch("A", "B"), "E": sch("B")}
    assert constants_of(expr) == frozenset({("B", 1)})


def test_resolve_schemes():
    raw = NaturalJoin(RelSym("D"), RelSym("E"))
    resolved = gx.resolve_schemes(raw, {"D": sch("A", "B"), "E": sch("B")})
    assert gx.scheme_of(resolved) == sch("A", "B")
    with pytest.raises(UnboundSymbolError):
        gx.resolve_schemes(RelSym("Nope"), {})


def test_memoized_evaluation_reuses_subtrees(inst):
    shared = NaturalJoin(D, E)
    expr = Union(shared, shared)
    calls = []
    orig = gx.natural_join

    def counting(*args):
        calls.append(1)
        return orig(*args)

    import gradix.table

    old = gradix.table.natural_join
    try:
        import gradix.algebra as alg_mod

        alg_mod.tb.natural_join = counting
        gx.eval_ra(expr, inst)
    finally:
        alg_mod.tb.natural_join = old
    assert len(calls) == 1


def test_ra_to_text_shapes():
    expr = DivRanged(D, E, EadomExpr(sch("A")))
    assert gx.ra_to_text(expr) == "DIV(D BY E OVER EADOM[A])"
    assert gx.ra_to_text(Projection(sch("A"), Nabla(D))) == "PROJECT[A](NABLA(D))"
    assert gx.ra_to_text(Singleton("A", "v")) == '[A: "v"]'
    assert gx.ra_to_text(Singleton("A", 3.0)) == "[A: 3.0]"
    assert gx.ra_to_text(DeeConst(0.7)) == "DEE(0.7)"
    assert gx.ra_to_text(Union(D, E)) == "(D UNION E)"
