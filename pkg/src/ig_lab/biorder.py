"""Biordered sets: the partial algebra of idempotents of a semigroup.

Given a semigroup S we keep the set E of its idempotents and only the
products ef with {ef, fe} n {e, f} nonempty.  Pairs whose products survive
are called basic; if ef lands in {e, f} then fe is idempotent too, so either
both products are recorded or none.  The quasi-orders are read off the
partial products (e <=_l f iff ef = e, e <=_r f iff fe = e) and R, L, D on E
are derived from them, with D the join of R and L.

Abstract biorders (no ambient semigroup) are accepted after sanity checks
only: definedness symmetry, idempotency, products landing in E, and the
basic-pair condition per defined product.  The full Nambooripad axioms are
NOT verified; the recommended input path is an ambient table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonAssociative, SanityViolation


class SemigroupTable:
    """A finite semigroup as a size x size table, validated associative."""

    def __init__(self, table, names=None):
        n = len(table)
        self.size = n
        self.table = [tuple(int(x) for x in row) for row in table]
        for row in self.table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise ValueError("table must be square with entries in range")
        if names is not None and len(names) != n:
            raise ValueError("names length does not match size")
        self.element_names = [str(x) for x in names] if names is not None else [str(i) for i in range(n)]
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise NonAssociative((a, b, c))
        self._green = None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product_of(self, word) -> int:
        it = iter(word)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def idempotents(self) -> list[int]:
        return [a for a in range(self.size) if self.table[a][a] == a]

    def name(self, a: int) -> str:
        return self.element_names[a]

    # Green's relations of the ambient semigroup; used as exact prefilters
    # by the word engine (homomorphic images preserve R, L, D).
    def green_classes(self):
        if self._green is None:
            n = self.size
            rideal = [frozenset([a]) | frozenset(self.table[a]) for a in range(n)]
            lideal = [frozenset([a]) | frozenset(self.table[b][a] for b in range(n)) for a in range(n)]
            r_of = _partition_by(lambda a, b: a in rideal[b] and b in rideal[a], n)
            l_of = _partition_by(lambda a, b: a in lideal[b] and b in lideal[a], n)
            d_of = _components(n, lambda a: {b for b in range(n) if r_of[a] == r_of[b] or l_of[a] == l_of[b]})
            self._green = (r_of, l_of, d_of)
        return self._green

    def to_json(self) -> dict:
        return {"size": self.size, "table": [list(r) for r in self.table], "names": list(self.element_names)}


def _partition_by(related, n: int) -> list[int]:
    cls = [-1] * n
    nxt = 0
    for a in range(n):
        if cls[a] >= 0:
            continue
        cls[a] = nxt
        for b in range(a + 1, n):
            if cls[b] < 0 and related(a, b):
                cls[b] = nxt
        nxt += 1
    return cls


def _components(n: int, neighbors) -> list[int]:
    comp = [-1] * n
    nxt = 0
    for a in range(n):
        if comp[a] >= 0:
            continue
        stack = [a]
        comp[a] = nxt
        while stack:
            x = stack.pop()
            for y in neighbors(x):
                if comp[y] < 0:
                    comp[y] = nxt
                    stack.append(y)
        nxt += 1
    return comp


class BiorderedSet:
    """E with its partial products, quasi-orders and R/L/D partitions.

    Letters are indices 0..n-1 into `elements` (display labels).  The partial
    product is a dense option-valued matrix: prod[e][f] is an E-index or None.
    """

    def __init__(self, elements, prod, ambient: SemigroupTable | None = None,
                 ambient_index: list[int] | None = None):
        self.elements = [str(x) for x in elements]
        n = len(self.elements)
        self.n = n
        self.prod = [[None if x is None else int(x) for x in row] for row in prod]
        self.ambient = ambient
        self.ambient_index = ambient_index  # E-index -> ambient element index
        self._label_index = {lab: i for i, lab in enumerate(self.elements)}
        if len(self._label_index) != n:
            raise SanityViolation("duplicate element labels")

        # quasi-orders from the recorded products
        self.leq_l = [[self.prod[e][f] == e for f in range(n)] for e in range(n)]
        self.leq_r = [[self.prod[f][e] == e for f in range(n)] for e in range(n)]
        r_rel = lambda a, b: self.leq_r[a][b] and self.leq_r[b][a]
        l_rel = lambda a, b: self.leq_l[a][b] and self.leq_l[b][a]
        self.r_class_of = _partition_by(r_rel, n)
        self.l_class_of = _partition_by(l_rel, n)
        self.d_class_of = _components(
            n, lambda a: {b for b in range(n)
                          if self.r_class_of[a] == self.r_class_of[b] or self.l_class_of[a] == self.l_class_of[b]})
        self.r_classes = _classes(self.r_class_of)
        self.l_classes = _classes(self.l_class_of)
        self.d_classes = _classes(self.d_class_of)

    # -- basics --------------------------------------------------------------

    def is_basic(self, e: int, f: int) -> bool:
        return self.prod[e][f] is not None

    def product(self, e: int, f: int) -> int | None:
        return self.prod[e][f]

    def basic_pairs(self) -> list[tuple[int, int]]:
        return [(e, f) for e in range(self.n) for f in range(self.n) if self.prod[e][f] is not None]

    def label(self, e: int) -> str:
        return self.elements[e]

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise KeyError(f"unknown idempotent label {label!r}") from None

    def word_from_labels(self, labels) -> tuple[int, ...]:
        w = tuple(self.index_of(x) for x in labels)
        if not w:
            raise ValueError("words over E must be nonempty")
        return w

    def labels_of(self, word) -> list[str]:
        return [self.elements[e] for e in word]

    def ambient_image(self, word) -> int | None:
        if self.ambient is None:
            return None
        return self.ambient.product_of(self.ambient_index[e] for e in word)

    def ambient_d_related(self, e: int, s_elem: int) -> bool:
        """Is the letter e D-related to the ambient element s_elem in S?"""
        _, _, d_of = self.ambient.green_classes()
        return d_of[self.ambient_index[e]] == d_of[s_elem]

    def same_structure(self, other: "BiorderedSet") -> bool:
        return (self.elements == other.elements and self.prod == other.prod)

    def to_json(self) -> dict:
        prods = [[self.elements[e], self.elements[f], self.elements[g]]
                 for e in range(self.n) for f in range(self.n)
                 if (g := self.prod[e][f]) is not None]
        return {"elements": list(self.elements), "products": prods}

    def __repr__(self):
        return (f"<BiorderedSet |E|={self.n} basic_pairs={len(self.basic_pairs())} "
                f"d_classes={len(self.d_classes)}>")


def _classes(class_of: list[int]) -> list[list[int]]:
    k = max(class_of) + 1 if class_of else 0
    out = [[] for _ in range(k)]
    for x, c in enumerate(class_of):
        out[c].append(x)
    return out


def build_biorder(s: SemigroupTable) -> BiorderedSet:
    """Extract the biordered set of a semigroup table.

    E = idempotents of S; a pair {e,f} is basic iff {ef, fe} n {e, f} != {};
    for basic pairs both products are recorded (they are idempotent again).
    """
    amb = s.idempotents()
    n = len(amb)
    pos = {a: i for i, a in enumerate(amb)}
    prod: list[list[int | None]] = [[None] * n for _ in range(n)]
    for i, e in enumerate(amb):
        for j, f in enumerate(amb):
            ef, fe = s.mul(e, f), s.mul(f, e)
            if ef in (e, f) or fe in (e, f):
                # both products are idempotent and recorded
                prod[i][j] = pos[ef]
                prod[j][i] = pos[fe]
    names = [s.name(a) for a in amb]
    return BiorderedSet(names, prod, ambient=s, ambient_index=amb)


def load_abstract_biorder(spec: dict) -> BiorderedSet:
    """Sanity-validated abstract biorder from {"elements": [...], "products": [[e,f,g], ...]}.

    Checks: labels known, definedness symmetry, idempotency e.e = e (added
    implicitly when omitted), products land in E, and each defined product
    satisfies {ef, fe} n {e, f} != {}.  Nambooripad's axioms are not checked.
    """
    elements = [str(x) for x in spec["elements"]]
    n = len(elements)
    idx = {lab: i for i, lab in enumerate(elements)}
    if len(idx) != n:
        raise SanityViolation("duplicate element labels")
    prod: list[list[int | None]] = [[None] * n for _ in range(n)]
    for entry in spec.get("products", []):
        if len(entry) != 3:
            raise SanityViolation(f"product entries must be triples, got {entry}")
        try:
            e, f, g = (idx[str(x)] for x in entry)
        except KeyError as exc:
            raise SanityViolation(f"unknown label in product entry {entry}: {exc}") from None
        if prod[e][f] is not None and prod[e][f] != g:
            raise SanityViolation("conflicting product values", pair=(elements[e], elements[f]))
        prod[e][f] = g
    for e in range(n):
        if prod[e][e] is None:
            prod[e][e] = e  # e.e = e is always a recorded product
        elif prod[e][e] != e:
            raise SanityViolation("element is not idempotent", pair=(elements[e], elements[e]))
    for e in range(n):
        for f in range(n):
            if (prod[e][f] is None) != (prod[f][e] is None):
                raise SanityViolation("definedness must be symmetric", pair=(elements[e], elements[f]))
            if prod[e][f] is not None:
                ef, fe = prod[e][f], prod[f][e]
                if ef not in (e, f) and fe not in (e, f):
                    raise SanityViolation("defined product on a non-basic pair", pair=(elements[e], elements[f]))
    return BiorderedSet(elements, prod)
