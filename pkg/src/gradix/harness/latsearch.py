"""Exhaustive enumeration of finite residuated lattices and the search for
a multiplication that fails to distribute over binary meets.

Bounded lattices on up to 6 elements are enumerated up to isomorphism of
the order (bottom and top fixed, middles permuted); for each, every
commutative, monotone, unital multiplication with residuation (the set
{c | a⊗c ≤ b} is join-closed, equivalently ⊗ distributes over ∨) is found
by backtracking over the middle-by-middle products.  Monotonicity and the
a⊗b ≤ a∧b bound prune the search to a handful of nodes per lattice.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from ..lattice import FiniteTableLattice


def _middle_posets(m: int) -> Iterator[tuple]:
    """All strict partial orders on m labeled points, as leq matrices."""
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = [[i == j for j in range(m)] for i in range(m)]
        for (i, j), bit in zip(pairs, bits):
            if bit:
                rel[i][j] = True
        ok = True
        for i in range(m):
            for j in range(m):
                if i != j and rel[i][j] and rel[j][i]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        transitive = True
        for i in range(m):
            for j in range(m):
                if rel[i][j]:
                    for k in range(m):
                        if rel[j][k] and not rel[i][k]:
                            transitive = False
        if transitive:
            yield tuple(tuple(row) for row in rel)


def _bound_tables(leq, n):
    """Meet/join tables, or None when some pair has no unique bound."""
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            lows = [k for k in range(n) if leq[k][i] and leq[k][j]]
            best = [k for k in lows if all(leq[m][k] for m in lows)]
            if len(best) != 1:
                return None
            meet[i][j] = best[0]
            ups = [k for k in range(n) if leq[i][k] and leq[j][k]]
            best = [k for k in ups if all(leq[k][m] for m in ups)]
            if len(best) != 1:
                return None
            join[i][j] = best[0]
    return tuple(map(tuple, meet)), tuple(map(tuple, join))


def enumerate_bounded_lattices(n: int) -> Iterator[tuple]:
    """Lattices on n elements (element 0 bottom, n-1 top) up to order
    isomorphism; yields (leq, meet, join) index tables."""
    m = n - 2
    seen = set()
    middle_iter = _middle_posets(m) if m > 0 else iter([tuple()])
    for rel in middle_iter:
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
            leq[0][i] = True
            leq[i][n - 1] = True
        for i in range(m):
            for j in range(m):
                if rel[i][j]:
                    leq[1 + i][1 + j] = True
        leq = tuple(map(tuple, leq))
        tables = _bound_tables(leq, n)
        if tables is None:
            continue
        canon = min(
            tuple(
                tuple(leq[perm_full[i]][perm_full[j]] for j in range(n))
                for i in range(n)
            )
            for perm in itertools.permutations(range(1, n - 1))
            for perm_full in [(0, *perm, n - 1)]
        ) if m > 1 else leq
        if canon in seen:
            continue
        seen.add(canon)
        yield leq, tables[0], tables[1]


def enumerate_multiplications(leq, meet, join, n: int) -> Iterator[tuple]:
    """All residuated multiplications on the lattice, as index tables."""
    top, bot = n - 1, 0
    t = [[None] * n for _ in range(n)]
    for x in range(n):
        t[x][top] = t[top][x] = x
        t[x][bot] = t[bot][x] = bot
    pairs = [(a, b) for a in range(1, n - 1) for b in range(a, n - 1)]

    def candidates(a, b):
        lo, hi = bot, meet[a][b]
        for x in range(n):
            for y in range(n):
                v = t[x][y]
                if v is None:
                    continue
                if leq[x][a] and leq[y][b]:
                    lo = join[lo][v]
                if leq[a][x] and leq[b][y]:
                    hi = meet[hi][v]
        return [v for v in range(n) if leq[lo][v] and leq[v][hi]]

    def residuated() -> bool:
        for a in range(n):
            for b in range(n):
                s = bot
                for c in range(n):
                    if leq[t[a][c]][b]:
                        s = join[s][c]
                if not leq[t[a][s]][b]:
                    return False
        return True

    def associative() -> bool:
        for a in range(1, n - 1):
            for b in range(1, n - 1):
                for c in range(1, n - 1):
                    if t[t[a][b]][c] != t[a][t[b][c]]:
                        return False
        return True

    def rec(k: int) -> Iterator[tuple]:
        if k == len(pairs):
            if associative() and residuated():
                yield tuple(map(tuple, t))
            return
        a, b = pairs[k]
        for v in candidates(a, b):
            t[a][b] = t[b][a] = v
            yield from rec(k + 1)
            t[a][b] = t[b][a] = None

    yield from rec(0)


def enumerate_residuated_lattices(max_size: int) -> Iterator[tuple]:
    """Every residuated lattice with 2..max_size elements, as
    (size, leq, meet, join, otimes) index tables."""
    for n in range(2, max_size + 1):
        for leq, meet, join in enumerate_bounded_lattices(n):
            for otimes in enumerate_multiplications(leq, meet, join, n):
                yield n, leq, meet, join, otimes


def _labels(n: int) -> list[str]:
    return ["0"] + [f"x{i}" for i in range(1, n - 1)] + ["1"]


def as_table_lattice(n, leq, otimes) -> FiniteTableLattice:
    """Materialize an enumerated structure, re-running full validation."""
    return FiniteTableLattice.from_index_tables(_labels(n), leq, otimes)


def find_meet_distributivity_gap(n, meet, otimes) -> Optional[tuple]:
    """First triple with a⊗(b∧c) ≠ (a⊗b)∧(a⊗c), if any."""
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if otimes[a][meet[b][c]] != meet[otimes[a][b]][otimes[a][c]]:
                    return a, b, c
    return None


def search_distributivity_counterexample(max_size: int = 6) -> Optional[tuple]:
    """Scan every residuated lattice up to the size bound for a failure of
    ⊗ distributing over binary ∧; returns (lattice, a, b, c) or None.

    The outcome is genuinely open a priori: chains and all prelinear or
    divisible structures distribute, and whether anything within the bound
    does not must be answered by the scan itself.
    """
    for n, leq, meet, _join, otimes in enumerate_residuated_lattices(max_size):
        gap = find_meet_distributivity_gap(n, meet, otimes)
        if gap is not None:
            return as_table_lattice(n, leq, otimes), *gap
    return None
