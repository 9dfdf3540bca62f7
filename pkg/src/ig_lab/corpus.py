"""Stock semigroups used throughout the test corpus.

These are the small tables whose biorders exercise every branch of the
pipeline: left/right zero bands, a chain semilattice, the full
transformation monoid on two points, the Brandt semigroup B2, and
rectangular bands (whose IG maximal subgroups are infinite and therefore
trip the enumeration caps on purpose).
"""

from __future__ import annotations

import itertools

from .biorder import BiorderedSet, SemigroupTable, build_biorder


def left_zero(n: int = 2) -> SemigroupTable:
    names = [chr(ord("a") + i) for i in range(n)]
    return SemigroupTable([[i] * n for i in range(n)], names)


def right_zero(n: int = 2) -> SemigroupTable:
    names = [chr(ord("a") + i) for i in range(n)]
    return SemigroupTable([list(range(n)) for _ in range(n)], names)


def chain_semilattice(n: int = 3) -> SemigroupTable:
    """Chain x0 > x1 > ... with meet (min rank) as the product."""
    names = [f"x{i}" for i in range(n)]
    return SemigroupTable([[max(i, j) for j in range(n)] for i in range(n)], names)


def full_transformations(n: int = 2) -> SemigroupTable:
    """T_n with maps composed left to right: (fg)(x) = g(f(x))."""
    maps = sorted(itertools.product(range(n), repeat=n))
    idx = {m: i for i, m in enumerate(maps)}
    table = [[idx[tuple(g[f[x]] for x in range(n))] for g in maps] for f in maps]
    names = ["[" + "".join(str(v + 1) for v in m) + "]" for m in maps]
    return SemigroupTable(table, names)


def brandt_b2() -> SemigroupTable:
    """B2 = {0} u {(i,j)}: (i,j)(k,l) = (i,l) if j = k, else 0."""
    elems = [None, (0, 0), (0, 1), (1, 0), (1, 1)]  # 0, e11, e12, e21, e22
    names = ["0", "e11", "e12", "e21", "e22"]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        if x is None or y is None:
            return None
        return (x[0], y[1]) if x[1] == y[0] else None

    table = [[idx[mul(x, y)] for y in elems] for x in elems]
    return SemigroupTable(table, names)


def rectangular_band(rows: int, cols: int) -> SemigroupTable:
    """(i,l)(j,m) = (i,m); every element idempotent."""
    elems = [(i, l) for i in range(rows) for l in range(cols)]
    idx = {e: k for k, e in enumerate(elems)}
    names = [f"r{i}c{l}" for i, l in elems]
    table = [[idx[(x[0], y[1])] for y in elems] for x in elems]
    return SemigroupTable(table, names)


CORPUS_TABLES = {
    "lz2": left_zero,
    "rz2": right_zero,
    "chain3": chain_semilattice,
    "t2": full_transformations,
    "b2": brandt_b2,
}


def corpus_biorders() -> dict[str, BiorderedSet]:
    """The five-member corpus pinned by the acceptance suite."""
    return {name: build_biorder(make()) for name, make in CORPUS_TABLES.items()}
