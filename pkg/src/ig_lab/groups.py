"""Finite group arithmetic on explicit Cayley tables.

A group is an order x order table of element indices together with derived
identity and inverse tables.  Everything downstream (subgroups, one-sided
cosets, coset intersection, quotients, dual direct products and their
projections) stays in index space, so each operation is an exact table
lookup.  This is deliberate: the coset formulas driving the word-problem
machinery only ever need desk-scale groups, and tables keep them exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import NonAssociative, NotNormal, NotSubgroup, OrderOverflow

# Full n^3 associativity validation is only attempted below this order;
# constructions that are associative by design skip it via _trusted.
ASSOC_CHECK_MAX = 2000


class FiniteGroup:
    """A finite group given by a full Cayley table over indices 0..order-1."""

    def __init__(self, cayley, names=None, *, _trusted: bool = False):
        table = np.asarray(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("cayley table must be square")
        n = table.shape[0]
        if n == 0:
            raise ValueError("group cannot be empty")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("cayley entries out of range")
        self.order: int = int(n)
        self.cayley = table
        self.cayley.setflags(write=False)
        if names is not None and len(names) != n:
            raise ValueError("names length does not match order")
        self.element_names: list[str] = [str(x) for x in names] if names is not None else [str(i) for i in range(n)]

        idx = np.arange(n)
        # rows and columns must be permutations
        if not _trusted:
            for a in range(n):
                if len(set(table[a].tolist())) != n or len(set(table[:, a].tolist())) != n:
                    raise ValueError(f"row/column {a} of cayley table is not a permutation")
        ident = [a for a in range(n) if np.array_equal(table[a], idx) and np.array_equal(table[:, a], idx)]
        if len(ident) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity: int = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(table[a] == self.identity)[0]
            if len(hits) != 1 or table[hits[0], a] != self.identity:
                raise ValueError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        self.inverse = inv
        self.inverse.setflags(write=False)
        if not _trusted:
            if n > ASSOC_CHECK_MAX:
                raise ValueError(f"refusing to validate a table of order {n} > {ASSOC_CHECK_MAX}")
            self._check_associative()

    def _check_associative(self):
        t = self.cayley
        for a in range(self.order):
            left = t[t[a], :]          # (a*b)*c
            right = t[a][t]            # a*(b*c)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                raise NonAssociative((a, int(bad[0]), int(bad[1])))

    # -- element arithmetic ------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, x: int) -> int:
        """x^-1 g x."""
        return self.mul(self.mul(self.inv(x), g), x)

    def elements(self) -> range:
        return range(self.order)

    def name(self, a: int) -> str:
        return self.element_names[a]

    def __repr__(self):
        return f"<FiniteGroup order={self.order}>"

    def to_json(self) -> dict:
        return {"order": self.order, "cayley": self.cayley.tolist(), "names": list(self.element_names)}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        return cls(data["cayley"], data.get("names"))


class DualProductGroup(FiniteGroup):
    """G1 x G2^d: pairs multiplying as (a,b)(c,d) = (a c, d b).

    The second coordinate composes in reversed order (the dual group).
    Element (a, b) is packed as a * |G2| + b; pi1/pi2 unpack.
    """

    def __init__(self, g1: FiniteGroup, g2: FiniteGroup, *, max_order: int = 5000):
        n1, n2 = g1.order, g2.order
        if n1 * n2 > max_order:
            raise OrderOverflow(f"dual product order {n1 * n2} exceeds max_group_order {max_order}")
        t1, t2 = g1.cayley, g2.cayley
        table = np.empty((n1 * n2, n1 * n2), dtype=np.int64)
        for a in range(n1):
            for b in range(n2):
                # row for (a,b): entry at (c,d) is (t1[a,c], t2[d,b])
                row = (t1[a][:, None] * n2 + t2[:, b][None, :]).reshape(-1)
                table[a * n2 + b] = row
        names = [f"({g1.name(a)}|{g2.name(b)})" for a in range(n1) for b in range(n2)]
        super().__init__(table, names, _trusted=True)
        self.left = g1
        self.right = g2

    def pair(self, a: int, b: int) -> int:
        return a * self.right.order + b

    def pi1(self, x: int) -> int:
        return x // self.right.order

    def pi2(self, x: int) -> int:
        return x % self.right.order


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a table group: sorted element indices plus the generators used."""

    parent: FiniteGroup
    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        g = self.parent
        elems = set(self.elements)
        if tuple(sorted(elems)) != self.elements:
            raise ValueError("subgroup elements must be sorted and unique")
        if g.identity not in elems:
            raise ValueError("subgroup must contain the identity")
        for a in self.elements:
            if g.inv(a) not in elems:
                raise ValueError(f"subgroup not closed under inverse at {a}")
            for b in self.elements:
                if g.mul(a, b) not in elems:
                    raise ValueError(f"subgroup not closed under product at ({a},{b})")
        object.__setattr__(self, "_set", frozenset(elems))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def element_set(self) -> frozenset:
        return self._set

    def conjugate(self, x: int) -> "Subgroup":
        """x^-1 H x."""
        g = self.parent
        return Subgroup(g, tuple(sorted(g.conj(h, x) for h in self.elements)))

    def __repr__(self):
        return f"<Subgroup order={self.order} of group order {self.parent.order}>"


@dataclass(frozen=True)
class CosetDescriptor:
    """One coset, with the side always explicit.

    A right coset H x and a left coset x H over the same (H, x) denote
    different sets unless x normalises H, so the side is never implicit.
    """

    subgroup: Subgroup
    representative: int
    side: str  # "right" | "left"

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")

    def element_set(self) -> frozenset:
        g = self.subgroup.parent
        x = self.representative
        if self.side == "right":
            return frozenset(g.mul(h, x) for h in self.subgroup.elements)
        return frozenset(g.mul(x, h) for h in self.subgroup.elements)

    def elements_sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_set()))

    @property
    def order(self) -> int:
        return self.subgroup.order

    def __repr__(self):
        return f"<{self.side} coset of order {self.order}, rep {self.representative}>"


# -- operations -------------------------------------------------------------


def subgroup_closure(group: FiniteGroup, gens) -> Subgroup:
    """Smallest subgroup containing gens; in a finite group, closing under
    products alone already yields inverses."""
    gens = tuple(dict.fromkeys(int(g) for g in gens))
    for g in gens:
        if not 0 <= g < group.order:
            raise IndexError(f"generator index {g} out of range")
    elems = {group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return Subgroup(group, tuple(sorted(elems)), gens)


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (group.identity,))


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def coset_intersect(group: FiniteGroup, a: CosetDescriptor, b: CosetDescriptor) -> CosetDescriptor | None:
    """Intersection of two right cosets Hx, Ky in the same group.

    Empty or a right coset of H n K; we scan the smaller coset for
    membership in the other and return the canonical (least) representative.
    """
    if a.subgroup.parent is not group or b.subgroup.parent is not group:
        raise ValueError("cosets do not live in the given parent group")
    if a.side != "right" or b.side != "right":
        raise ValueError("coset_intersect expects right cosets")
    small, big = (a, b) if a.order <= b.order else (b, a)
    big_set = big.element_set()
    common = [x for x in small.element_set() if x in big_set]
    if not common:
        return None
    sub = Subgroup(group, tuple(sorted(a.subgroup.element_set() & b.subgroup.element_set())))
    return CosetDescriptor(sub, min(common), "right")


def dual_product(g1: FiniteGroup, g2: FiniteGroup, *, max_order: int = 5000) -> DualProductGroup:
    return DualProductGroup(g1, g2, max_order=max_order)


def quotient(group: FiniteGroup, k: Subgroup, l: Subgroup) -> FiniteGroup:
    """The quotient K/L as a table group on canonical L-coset representatives."""
    if k.parent is not group or l.parent is not group:
        raise ValueError("subgroups do not live in the given parent group")
    if not l.element_set() <= k.element_set():
        raise NotSubgroup("L is not contained in K")
    lset = l.element_set()
    for x in k.elements:
        if frozenset(group.conj(h, x) for h in l.elements) != lset:
            raise NotNormal(f"conjugation by {x} does not fix L", witness=x)
    # right cosets L x within K; canonical representative = least element
    rep_of: dict[int, int] = {}
    reps: list[int] = []
    for x in k.elements:  # ascending, so the first hit is the least member
        if x in rep_of:
            continue
        coset = sorted(group.mul(h, x) for h in l.elements)
        for y in coset:
            rep_of[y] = coset[0]
        reps.append(coset[0])
    index = {r: i for i, r in enumerate(reps)}
    n = len(reps)
    table = [[index[rep_of[group.mul(reps[i], reps[j])]] for j in range(n)] for i in range(n)]
    names = [f"{group.name(r)}L" for r in reps]
    return FiniteGroup(table, names, _trusted=True)


def project2(g12: DualProductGroup, s: Subgroup) -> Subgroup:
    """Image of a dual-product subgroup under the second projection.

    The projection of a subgroup is a subgroup; the second factor carries the
    dual multiplication but its element set is unaffected, so the image is a
    subgroup of G2 proper.
    """
    if s.parent is not g12:
        raise ValueError("subgroup does not live in the given dual product")
    return Subgroup(g12.right, tuple(sorted({g12.pi2(x) for x in s.elements})))


def project1(g12: DualProductGroup, s: Subgroup) -> Subgroup:
    if s.parent is not g12:
        raise ValueError("subgroup does not live in the given dual product")
    return Subgroup(g12.left, tuple(sorted({g12.pi1(x) for x in s.elements})))


def tall_subgroup(g12: DualProductGroup, h: Subgroup) -> Subgroup:
    """H x G2 inside G1 x G2^d, for H <= G1."""
    if h.parent is not g12.left:
        raise ValueError("tall subgroup wants a subgroup of the left factor")
    elems = tuple(sorted(g12.pair(a, b) for a in h.elements for b in range(g12.right.order)))
    return Subgroup(g12, elems)


def wide_subgroup(g12: DualProductGroup, h: Subgroup) -> Subgroup:
    """G1 x H inside G1 x G2^d, for H <= G2."""
    if h.parent is not g12.right:
        raise ValueError("wide subgroup wants a subgroup of the right factor")
    elems = tuple(sorted(g12.pair(a, b) for a in range(g12.left.order) for b in h.elements))
    return Subgroup(g12, elems)


# -- stock groups ------------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["1"], _trusted=True)


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, [str(i) for i in range(n)], _trusted=True)


def _cycle_notation(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) if parts else "e"


class SymmetricGroup(FiniteGroup):
    """S_n on points 0..n-1; the product p*q applies p first, then q."""

    def __init__(self, n: int):
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        table = [[index[tuple(q[p[i]] for i in range(n))] for q in perms] for p in perms]
        super().__init__(table, [_cycle_notation(p) for p in perms], _trusted=True)
        self.perms = perms
        self._perm_index = index

    def perm_index(self, perm) -> int:
        return self._perm_index[tuple(perm)]


def symmetric_group(n: int) -> SymmetricGroup:
    return SymmetricGroup(n)


def klein_four() -> FiniteGroup:
    z2 = cyclic_group(2)
    prod = DualProductGroup(z2, z2)  # abelian, so the dual twist is invisible
    return FiniteGroup(prod.cayley, ["e", "a", "b", "ab"], _trusted=True)
