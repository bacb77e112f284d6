"""Seeded random generators for tables, instances, and calculus expressions.

Generation is deterministic per seed across processes (sub-seeds derive
from a keyed blake2 digest, never from Python's randomized hashing), and
desk-scale by construction: few attributes, few values, few rows, so naive
universe enumeration stays well under a second per instance.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace
from typing import Mapping

from .. import algebra as ra
from .. import ptc as pc
from ..lattice import BooleanLattice, FiniteChain, FiniteTableLattice, ResiduatedLattice
from ..table import DatabaseInstance, RankedDataTable, Scheme, Tuple

ATTR_POOL = ("A", "B", "C", "D", "E", "F")


@dataclass(frozen=True)
class GenConfig:
    """Bounds for random generation; all draws derive from `seed`."""

    seed: int = 0
    lattice: ResiduatedLattice = None  # type: ignore[assignment]
    max_attrs: int = 3
    max_values: int = 4
    max_rows: int = 8
    score_step: float = 0.05

    def with_seed(self, seed: int) -> "GenConfig":
        return replace(self, seed=seed)


def sub_rng(*key) -> random.Random:
    """A Random seeded stably from the key parts (process-independent)."""
    digest = hashlib.blake2b("|".join(map(str, key)).encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def gen_score(rng: random.Random, lat: ResiduatedLattice, step: float):
    """A nonzero degree on the configured granularity grid."""
    if isinstance(lat, BooleanLattice):
        return 1
    if isinstance(lat, FiniteChain):
        return rng.randint(1, lat.n - 1)
    if isinstance(lat, FiniteTableLattice):
        choices = [e for e in lat.elements() if e != lat.bottom]
        return rng.choice(choices)
    levels = round(1.0 / step)
    return rng.randint(1, levels) * step


def gen_rdt(config: GenConfig, scheme: Scheme, salt: str = "") -> RankedDataTable:
    """Deterministic random table on the scheme: 1..max_rows distinct rows,
    integer values 1..max_values, scores from the granularity grid."""
    lat = config.lattice
    rng = sub_rng(config.seed, "rdt", salt, ",".join(sorted(scheme)))
    attrs = sorted(scheme)
    rows = {}
    for _ in range(rng.randint(1, config.max_rows)):
        t = Tuple({a: rng.randint(1, config.max_values) for a in attrs})
        rows[t] = gen_score(rng, lat, config.score_step)
    return RankedDataTable(frozenset(scheme), lat, rows)


def gen_instance(config: GenConfig, symbol_schemes: Mapping[str, Scheme]) -> DatabaseInstance:
    return DatabaseInstance(
        config.lattice,
        {name: gen_rdt(config, scheme, salt=name)
         for name, scheme in sorted(symbol_schemes.items())},
    )


def gen_scheme(rng: random.Random, size: int, pool=ATTR_POOL) -> Scheme:
    return frozenset(rng.sample(pool, size))


def split_pool(rng: random.Random, sizes: list[int], pool=ATTR_POOL) -> list[Scheme]:
    """Pairwise disjoint schemes of the requested sizes."""
    if sum(sizes) > len(pool):
        raise ValueError("attribute pool too small")
    chosen = rng.sample(pool, sum(sizes))
    out, k = [], 0
    for size in sizes:
        out.append(frozenset(chosen[k:k + size]))
        k += size
    return out


def fresh_universe(config: GenConfig, schemes) -> dict:
    """Per-attribute value lists covering the generator's whole value range
    plus one value no generated table can contain (the analytic tail)."""
    attrs = set()
    for s in schemes:
        attrs |= s
    return {a: list(range(1, config.max_values + 2)) for a in attrs}


# -- random calculus expressions ---------------------------------------------


def gen_ptc_expr(
    config: GenConfig,
    symbols: Mapping[str, Scheme],
    max_depth: int = 4,
    salt: str = "",
) -> pc.PtcExpr:
    """A well-formed random calculus expression over the given symbols.

    Variables are minted by a deterministic counter; atom schemes are
    randomly split across variables (sometimes reusing an existing variable
    with the same scheme, which is what lets quantifiers tie atoms
    together), and quantifiers bind overlap-closed groups of free variables
    so the bound/free scheme disjointness always holds.
    """
    rng = sub_rng(config.seed, "ptc", salt)
    factory = pc.VarFactory()
    by_scheme: dict[Scheme, list[pc.TupleVar]] = {}

    def var_for(scheme: Scheme) -> pc.TupleVar:
        scheme = frozenset(scheme)
        known = by_scheme.setdefault(scheme, [])
        if known and rng.random() < 0.5:
            return rng.choice(known)
        v = factory.fresh(scheme)
        known.append(v)
        return v

    def gen_atom() -> pc.Atom:
        name = rng.choice(sorted(symbols))
        scheme = frozenset(symbols[name])
        expr: object = ra.RelSym(name, scheme)
        roll = rng.random()
        if roll < 0.10 and scheme:
            attr = rng.choice(sorted(scheme))
            value = rng.randint(1, config.max_values + 1)
            expr = ra.NaturalJoin(expr, ra.Singleton(attr, value))
        elif roll < 0.20 and len(scheme) > 1:
            keep = frozenset(rng.sample(sorted(scheme), len(scheme) - 1))
            expr = ra.Projection(keep, expr)
            scheme = keep
        elif roll < 0.25:
            expr = ra.Nabla(expr)
        scheme = ra.scheme_of(expr)
        attrs = sorted(scheme)
        rng.shuffle(attrs)
        parts: list[Scheme] = []
        while attrs:
            k = rng.randint(1, len(attrs))
            parts.append(frozenset(attrs[:k]))
            attrs = attrs[k:]
        vs = frozenset(var_for(p) for p in parts) if parts else frozenset()
        if not vs and scheme:
            vs = frozenset({var_for(scheme)})
        return pc.Atom(expr, vs)

    def quantify(node_cls, body: pc.PtcExpr):
        free = pc.free_vars(body)
        if not free:
            return None
        groups: list[set] = []
        for v in sorted(free, key=lambda v: v.name):
            hit = [g for g in groups if any(v.scheme & w.scheme for w in g)]
            merged = {v}
            for g in hit:
                merged |= g
                groups.remove(g)
            groups.append(merged)
        rng.shuffle(groups)
        take = rng.randint(1, len(groups))
        bound = frozenset().union(*groups[:take])
        return node_cls(frozenset(bound), body)

    def gen(depth: int) -> pc.PtcExpr:
        if depth <= 0:
            return gen_atom()
        roll = rng.random()
        if roll < 0.30:
            return gen_atom()
        if roll < 0.62:
            op = rng.choice([pc.OTIMES, pc.MEET, pc.RESIDUUM])
            return pc.PtcBinary(op, gen(depth - 1), gen(depth - 1))
        if roll < 0.72:
            return pc.PtcNabla(gen(depth - 1))
        if roll < 0.78:
            return pc.PtcDelta(gen(depth - 1))
        body = gen(depth - 1)
        node_cls = pc.PtcInf if rng.random() < 0.6 else pc.PtcSup
        q = quantify(node_cls, body)
        return q if q is not None else body

    expr = gen(max_depth)
    pc.validate_ptc(expr)
    return expr
