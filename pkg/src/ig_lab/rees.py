"""Rees-coordinate models of the regular D-classes of IG(E).

Every regular D-class of IG(E) mirrors a D-class d of the biorder: its
R-classes are indexed by the R-classes I of d, its L-classes by the
L-classes Lambda, and its maximal subgroup G is the H-class of a base
idempotent e0.  The model materialises the classic coordinatisation: fix
row words r_i in the H-class (i, lambda0) and column words q_lambda in
(i0, lambda), built by walking the Graham-Houghton graph of d (bipartite on
I u Lambda, one edge per idempotent; connected because D = R v L on E).
Then every regular word w in the class factors uniquely as r_i g q_lambda
with g in G, and the sandwich entry p_{lambda i} is the group value of
q_lambda r_i whenever the H-class (i, lambda) holds an idempotent.

G itself is enumerated through the rewriting oracle: the products
q_lambda r_i over all Graham-Houghton edges are provable members of the
H-class of e0 and generate it, so we close them under concatenation,
deduplicating with capped oracle probes.  Enumerations that fail to close,
or whose probes come back Unknown, raise GroupNotFiniteWithinCap with the
partial data gathered so far; a bounded sweep over short words that are
provably H-related to e0 double-checks the harvest at desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .biorder import BiorderedSet
from .config import Caps
from .errors import CapExceeded, GroupNotFiniteWithinCap, NotInThisDClass
from .groups import FiniteGroup
from .words import Word, WordEngine


@dataclass
class RegularDClassModel:
    """One regular D-class of IG(E) in Rees coordinates.

    sandwich is a Lambda x I table over group indices, with None for 0.
    Word-valued fields (row_reps, col_reps, group_words, idempotent_coords,
    base_idempotent) are present for models built from a biorder and may be
    None for synthetic models supplied directly.
    """

    dclass_id: int
    group: FiniteGroup
    n_i: int
    n_lambda: int
    sandwich: tuple  # tuple of tuples, entry int | None
    base_i: int = 0
    base_lambda: int = 0
    row_reps: tuple | None = None          # word per i
    col_reps: tuple | None = None          # word per lambda
    group_words: tuple | None = None       # normal-form word per group element
    idempotent_coords: dict | None = None  # E-index -> (i, lambda)
    base_idempotent: int | None = None
    r_class_ids: tuple | None = None       # biorder R-class id per i
    l_class_ids: tuple | None = None

    def validate(self) -> None:
        if self.n_i <= 0 or self.n_lambda <= 0:
            raise ValueError("index sets must be nonempty")
        if len(self.sandwich) != self.n_lambda or any(len(r) != self.n_i for r in self.sandwich):
            raise ValueError("sandwich must be a Lambda x I table")
        for lam in range(self.n_lambda):
            for i in range(self.n_i):
                p = self.sandwich[lam][i]
                if p is not None and not 0 <= p < self.group.order:
                    raise ValueError(f"sandwich entry ({lam},{i}) out of group range")
        for lam in range(self.n_lambda):
            if all(x is None for x in self.sandwich[lam]):
                raise ValueError(f"sandwich row {lam} is all zero")
        for i in range(self.n_i):
            if all(self.sandwich[lam][i] is None for lam in range(self.n_lambda)):
                raise ValueError(f"sandwich column {i} is all zero")
        if not 0 <= self.base_i < self.n_i or not 0 <= self.base_lambda < self.n_lambda:
            raise ValueError("base coordinates out of range")
        if self.sandwich[self.base_lambda][self.base_i] != self.group.identity:
            raise ValueError("sandwich entry at the base must be the group identity")
        if self.group_words is not None and len(self.group_words) != self.group.order:
            raise ValueError("group_words length does not match group order")
        if self.row_reps is not None and len(self.row_reps) != self.n_i:
            raise ValueError("row_reps length does not match |I|")
        if self.col_reps is not None and len(self.col_reps) != self.n_lambda:
            raise ValueError("col_reps length does not match |Lambda|")
        if self.idempotent_coords is not None:
            cells = sorted(self.idempotent_coords.values())
            nonzero = sorted((i, lam) for lam in range(self.n_lambda) for i in range(self.n_i)
                             if self.sandwich[lam][i] is not None)
            if cells != nonzero:
                raise ValueError("idempotent coordinates are not a bijection onto nonzero sandwich cells")

    def p(self, lam: int, i: int) -> int | None:
        return self.sandwich[lam][i]

    def multiply(self, t1: tuple, t2: tuple) -> tuple | None:
        """(i, g, lam)(j, h, mu) inside the class; None when it falls out."""
        i, g, lam = t1
        j, h, mu = t2
        p = self.sandwich[lam][j]
        if p is None:
            return None
        gp = self.group.mul(self.group.mul(g, p), h)
        return (i, gp, mu)

    def to_json(self) -> dict:
        return {
            "dclass_id": self.dclass_id,
            "group": self.group.to_json(),
            "n_i": self.n_i,
            "n_lambda": self.n_lambda,
            "sandwich": [[x for x in row] for row in self.sandwich],
            "base": [self.base_i, self.base_lambda],
            "row_reps": [list(w) for w in self.row_reps] if self.row_reps else None,
            "col_reps": [list(w) for w in self.col_reps] if self.col_reps else None,
            "group_words": [list(w) for w in self.group_words] if self.group_words else None,
            "idempotent_coords": {str(k): list(v) for k, v in self.idempotent_coords.items()}
            if self.idempotent_coords else None,
            "base_idempotent": self.base_idempotent,
        }


@dataclass
class PartialActionTable:
    """sigma_e: partial I -> I with left cocycles, tau_e: partial Lambda -> Lambda
    with right cocycles, per letter and per D-class model.

    Contract: sigma_e(i) = j with cocycle c means e.(i, g, lam) = (j, c g, lam)
    for every g and lam; dually (i, g, lam).e = (i, g d, tau_e(lam)).
    """

    n_letters: int
    sigma: dict  # (dclass_id, letter) -> {i: (j, cocycle)}
    tau: dict    # (dclass_id, letter) -> {lam: (mu, cocycle)}

    def sigma_map(self, dclass_id: int, e: int) -> dict:
        return self.sigma.get((dclass_id, e), {})

    def tau_map(self, dclass_id: int, e: int) -> dict:
        return self.tau.get((dclass_id, e), {})

    def validate(self, models: dict) -> None:
        """Structural coherence; e.e = e forces image points to be fixed
        points with identity cocycle, so incoherent tables are rejected."""
        for kind, table in (("sigma", self.sigma), ("tau", self.tau)):
            for (d, e), mp in table.items():
                model = models[d]
                size = model.n_i if kind == "sigma" else model.n_lambda
                for src, (dst, coc) in mp.items():
                    if not (0 <= src < size and 0 <= dst < size):
                        raise ValueError(f"{kind} map out of range for class {d}, letter {e}")
                    if not 0 <= coc < model.group.order:
                        raise ValueError(f"{kind} cocycle out of group range for class {d}, letter {e}")
                for src, (dst, _) in mp.items():
                    if dst not in mp or mp[dst][0] != dst:
                        raise ValueError(f"{kind} of letter {e} on class {d} is not idempotent at {src}")
                    if mp[dst][1] != model.group.identity:
                        raise ValueError(f"{kind} cocycle at fixed point {dst} must be the identity "
                                         f"(class {d}, letter {e})")


# -- Graham-Houghton scaffolding ---------------------------------------------


def _gh_paths(bi: BiorderedSet, members: list[int], r_ids: list[int], l_ids: list[int],
              root: tuple) -> dict:
    """BFS tree over the bipartite idempotent graph of one D-class.

    Nodes are ("I", idx) and ("L", idx); each idempotent of the class is the
    unique edge between its row and column.  Returns node -> word of edge
    letters along the tree path root -> node (deterministic adjacency order).
    """
    r_index = {rid: k for k, rid in enumerate(r_ids)}
    l_index = {lid: k for k, lid in enumerate(l_ids)}
    adj: dict[tuple, list[tuple]] = {}
    for f in members:
        u = ("I", r_index[bi.r_class_of[f]])
        v = ("L", l_index[bi.l_class_of[f]])
        adj.setdefault(u, []).append((v, f))
        adj.setdefault(v, []).append((u, f))
    for u in adj:
        adj[u].sort()
    words = {root: ()}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, letter in adj.get(u, []):
            if v not in words:
                words[v] = words[u] + (letter,)
                queue.append(v)
    return words


def _contraction_min(engine: WordEngine, word: Word) -> Word:
    closure = engine.contraction_closure(word)
    return min(closure, key=lambda w: (len(w), w))


class _Enumeration:
    """Oracle-backed closure of the maximal subgroup of one D-class."""

    def __init__(self, engine: WordEngine, caps: Caps, max_order: int):
        self.engine = engine
        self.caps = caps
        self.max_order = max_order
        self.members: list[Word] = []

    def locate(self, word: Word, context: str) -> int | None:
        for k, m in enumerate(self.members):
            verdict = self.engine.oracle_equal(word, m)
            if verdict.is_equal:
                return k
            if not verdict.is_distinct:
                raise GroupNotFiniteWithinCap(
                    f"H-class enumeration could not decide {context}: "
                    f"comparison of candidate with member #{k} came back Unknown",
                    self.caps, partial={"members": list(self.members)})
        return None

    def absorb(self, word: Word, context: str) -> int:
        idx = self.locate(word, context)
        if idx is not None:
            return idx
        if len(self.members) >= self.max_order:
            raise GroupNotFiniteWithinCap(
                f"H-class enumeration exceeded max_group_order={self.max_order}",
                self.caps, partial={"members": list(self.members)})
        self.members.append(word)
        return len(self.members) - 1


def build_dclass_model(bi: BiorderedSet, dclass_id: int, caps: Caps,
                       engine: WordEngine | None = None) -> RegularDClassModel:
    """Materialise one regular D-class of IG(E) as a Rees-coordinate model.

    Raises GroupNotFiniteWithinCap (with partial data) when the maximal
    subgroup does not close under the caps, e.g. over rectangular bands.
    """
    if not 0 <= dclass_id < len(bi.d_classes):
        raise IndexError(f"no D-class {dclass_id}")
    if engine is None:
        engine = WordEngine(bi, caps)
    probe_engine = WordEngine(bi, caps.probe())
    probe_engine._seed_cache = engine._seed_cache
    probe_engine._fact_cache = engine._fact_cache

    members = sorted(bi.d_classes[dclass_id])
    r_ids = sorted({bi.r_class_of[f] for f in members}, key=lambda c: min(x for x in members if bi.r_class_of[x] == c))
    l_ids = sorted({bi.l_class_of[f] for f in members}, key=lambda c: min(x for x in members if bi.l_class_of[x] == c))
    r_index = {rid: k for k, rid in enumerate(r_ids)}
    l_index = {lid: k for k, lid in enumerate(l_ids)}
    e0 = members[0]
    base_i, base_lambda = r_index[bi.r_class_of[e0]], l_index[bi.l_class_of[e0]]
    coords = {f: (r_index[bi.r_class_of[f]], l_index[bi.l_class_of[f]]) for f in members}

    # representative words along Graham-Houghton paths
    to_cols = _gh_paths(bi, members, r_ids, l_ids, ("I", base_i))   # i0 -> lambda paths
    to_rows = _gh_paths(bi, members, r_ids, l_ids, ("L", base_lambda))  # lambda0 -> i paths
    col_reps = []
    for lam in range(len(l_ids)):
        col_reps.append(to_cols[("L", lam)])
    row_reps = []
    for i in range(len(r_ids)):
        row_reps.append(tuple(reversed(to_rows[("I", i)])))
    assert row_reps[base_i] == (e0,) and col_reps[base_lambda] == (e0,)

    # maximal subgroup: close the sandwich-entry words q_lambda . r_i
    enum = _Enumeration(probe_engine, caps, caps.max_group_order)
    e0_word = _contraction_min(probe_engine, (e0,))
    enum.members.append(e0_word)
    # deterministic generator list, deduplicated textually
    gen_words = []
    seen = set()
    for f in members:
        i, lam = coords[f]
        w = _contraction_min(probe_engine, col_reps[lam] + row_reps[i])
        if w not in seen:
            seen.add(w)
            gen_words.append(w)
    for w in gen_words:
        enum.absorb(w, "a sandwich generator")
    cursor = 0
    while cursor < len(enum.members):
        base = enum.members[cursor]
        for g in gen_words:
            enum.absorb(_contraction_min(probe_engine, base + g), "a closure product")
        cursor += 1

    _sweep_check(bi, probe_engine, enum, e0, caps)

    order = len(enum.members)
    table = [[0] * order for _ in range(order)]
    for a in range(order):
        for b in range(order):
            w = _contraction_min(probe_engine, enum.members[a] + enum.members[b])
            idx = enum.locate(w, f"the product of members #{a} and #{b}")
            if idx is None:
                raise GroupNotFiniteWithinCap(
                    "H-class member product escaped the enumerated set",
                    caps, partial={"members": list(enum.members)})
            table[a][b] = idx
    group = FiniteGroup(table, names=["".join(bi.label(x) for x in w) for w in enum.members])
    if group.identity != 0:
        raise GroupNotFiniteWithinCap("base idempotent is not the enumerated identity", caps)

    sandwich = [[None] * len(r_ids) for _ in range(len(l_ids))]
    for f in members:
        i, lam = coords[f]
        w = _contraction_min(probe_engine, col_reps[lam] + row_reps[i])
        idx = enum.locate(w, f"sandwich entry ({lam},{i})")
        if idx is None:
            raise GroupNotFiniteWithinCap("sandwich entry escaped the enumerated group", caps)
        sandwich[lam][i] = idx

    model = RegularDClassModel(
        dclass_id=dclass_id,
        group=group,
        n_i=len(r_ids),
        n_lambda=len(l_ids),
        sandwich=tuple(tuple(row) for row in sandwich),
        base_i=base_i,
        base_lambda=base_lambda,
        row_reps=tuple(row_reps),
        col_reps=tuple(col_reps),
        group_words=tuple(enum.members),
        idempotent_coords=coords,
        base_idempotent=e0,
        r_class_ids=tuple(r_ids),
        l_class_ids=tuple(l_ids),
    )
    model.validate()
    return model


def _sweep_check(bi: BiorderedSet, engine: WordEngine, enum: _Enumeration, e0: int, caps: Caps) -> None:
    """Bounded completeness sweep: every short word provably H-related to e0
    must land on an enumerated member.  Candidates whose H-test or dedupe is
    Unknown are skipped (they are not provably members at these caps)."""
    depth = min(4, caps.witness_len) if bi.ambient is not None else min(3, caps.witness_len)
    e0_word = (e0,)
    dclass = bi.d_class_of[e0]
    if bi.ambient is not None:
        r_of, l_of, _ = bi.ambient.green_classes()
        img0 = bi.ambient_index[e0]
    stack: list[Word] = [()]
    for _ in range(depth):
        stack = [w + (a,) for w in stack for a in range(bi.n)]
        for w in stack:
            if w == e0_word:
                continue
            if bi.ambient is not None:
                img = bi.ambient_image(w)
                if r_of[img] != r_of[img0] or l_of[img] != l_of[img0]:
                    continue
            try:
                # members are regular with fingerprint (d,); this kills the
                # expensive witness searches on obvious non-members
                if engine.minimal_r_factorisation(w).fingerprint != (dclass,):
                    continue
            except CapExceeded:
                continue
            if engine.green_r_words(w, e0_word) is not True:
                continue
            if engine.green_l_words(w, e0_word) is not True:
                continue
            try:
                idx = enum.locate(w, "a sweep candidate")
            except GroupNotFiniteWithinCap:
                raise
            if idx is None:
                raise GroupNotFiniteWithinCap(
                    f"sweep found an H-class member outside the closure: {w}",
                    caps, partial={"members": list(enum.members), "stray": w})


def build_all_models(bi: BiorderedSet, caps: Caps, engine: WordEngine | None = None):
    """All D-class models; returns (models, errors) keyed by dclass_id."""
    models: dict[int, RegularDClassModel] = {}
    errors: dict[int, GroupNotFiniteWithinCap] = {}
    for d in range(len(bi.d_classes)):
        try:
            models[d] = build_dclass_model(bi, d, caps, engine)
        except GroupNotFiniteWithinCap as exc:
            errors[d] = exc
    return models, errors


# -- words <-> triples --------------------------------------------------------


def triple_to_word(model: RegularDClassModel, triple: tuple, engine: WordEngine | None = None) -> Word:
    """r_i . g . q_lambda, lightly contracted for readability."""
    i, g, lam = triple
    if model.row_reps is None:
        raise ValueError("model carries no representative words (synthetic model)")
    word = model.row_reps[i] + model.group_words[g] + model.col_reps[lam]
    if engine is not None:
        word = _contraction_min(engine, word)
    return word


def coordinatize(bi: BiorderedSet, model: RegularDClassModel, word, engine: WordEngine) -> tuple:
    """Rees coordinates (i, g, lam) of a regular word in this model's class.

    i and lam come from R-/L-witness tests against one canonical idempotent
    per row and column; g is recovered by scanning the enumerated group for
    the unique match of r_i g q_lambda.
    """
    w = engine.check_word(word)
    img = r_of = l_of = None
    if bi.ambient is not None:
        img = bi.ambient_image(w)
        if not bi.ambient_d_related(model.base_idempotent, img):
            raise NotInThisDClass("ambient image lies in a different D-class")
        r_of, l_of, _ = bi.ambient.green_classes()
    row_idems = [min(f for f in bi.d_classes[model.dclass_id] if bi.r_class_of[f] == rid)
                 for rid in model.r_class_ids]
    col_idems = [min(f for f in bi.d_classes[model.dclass_id] if bi.l_class_of[f] == lid)
                 for lid in model.l_class_ids]
    i = lam = None
    for k, f in enumerate(row_idems):
        # the ambient image pins the row exactly (phi maps R-classes onto R-classes)
        if r_of is not None and r_of[bi.ambient_index[f]] != r_of[img]:
            continue
        res = engine.green_r_words(w, (f,))
        if res is True:
            i = k
            break
        if res is None:
            raise CapExceeded(f"R-test against row idempotent {f} inconclusive", engine.caps)
    for k, f in enumerate(col_idems):
        if l_of is not None and l_of[bi.ambient_index[f]] != l_of[img]:
            continue
        res = engine.green_l_words(w, (f,))
        if res is True:
            lam = k
            break
        if res is None:
            raise CapExceeded(f"L-test against column idempotent {f} inconclusive", engine.caps)
    if i is None or lam is None:
        raise NotInThisDClass("word matches no row/column of this D-class")
    for g in range(model.group.order):
        candidate = model.row_reps[i] + model.group_words[g] + model.col_reps[lam]
        verdict = engine.oracle_equal(w, candidate)
        if verdict.is_equal:
            return (i, g, lam)
        if not verdict.is_distinct:
            raise CapExceeded("group coordinate scan inconclusive", engine.caps)
    raise CapExceeded("no group coordinate matched; caps too small for this class", engine.caps)


def partial_actions(bi: BiorderedSet, models: dict, caps: Caps,
                    engine: WordEngine | None = None) -> PartialActionTable:
    """Compute sigma_e / tau_e with their cocycles on every finite model.

    sigma_e(i) is defined iff e.(i, 1, lambda0) is regular in the same
    D-class; the cocycle is its group coordinate.  The contract then extends
    to all (g, lam) because the sandwich entry at the base is the identity.
    """
    if engine is None:
        engine = WordEngine(bi, caps)
    sigma: dict = {}
    tau: dict = {}
    for d, model in sorted(models.items()):
        ident = model.group.identity
        for e in range(bi.n):
            smap: dict[int, tuple] = {}
            tmap: dict[int, tuple] = {}
            for i in range(model.n_i):
                base_word = triple_to_word(model, (i, ident, model.base_lambda), engine)
                res = _classify_in_model(bi, model, (e,) + base_word, engine)
                if res is not None:
                    j, c, lam_out = res
                    if lam_out != model.base_lambda:
                        raise CapExceeded("left action moved the column coordinate; model inconsistent", caps)
                    smap[i] = (j, c)
            for lam in range(model.n_lambda):
                base_word = triple_to_word(model, (model.base_i, ident, lam), engine)
                res = _classify_in_model(bi, model, base_word + (e,), engine)
                if res is not None:
                    i_out, dcoc, mu = res
                    if i_out != model.base_i:
                        raise CapExceeded("right action moved the row coordinate; model inconsistent", caps)
                    tmap[lam] = (mu, dcoc)
            if smap:
                sigma[(d, e)] = smap
            if tmap:
                tau[(d, e)] = tmap
    table = PartialActionTable(n_letters=bi.n, sigma=sigma, tau=tau)
    table.validate(models)
    return table


def _classify_in_model(bi: BiorderedSet, model: RegularDClassModel, word: Word,
                       engine: WordEngine) -> tuple | None:
    """Coordinates of word if it is regular inside this model's class, else None."""
    if bi.ambient is not None:
        img = bi.ambient_image(word)
        if not bi.ambient_d_related(model.base_idempotent, img):
            return None
    fact = engine.minimal_r_factorisation(word)
    if len(fact.blocks) != 1 or fact.fingerprint[0] != model.dclass_id:
        return None
    return coordinatize(bi, model, word, engine)


def ig_element(bi: BiorderedSet, word, models: dict, caps: Caps,
               engine: WordEngine | None = None):
    """Normal form of a word: minimal r-factorisation, each block coordinatized."""
    from .theta import TripleChain  # local import to keep the module DAG acyclic

    if engine is None:
        engine = WordEngine(bi, caps)
    w = engine.check_word(word)
    fact = engine.minimal_r_factorisation(w)
    triples = []
    for block, d in zip(fact.blocks, fact.fingerprint):
        if d not in models:
            raise GroupNotFiniteWithinCap(f"no finite model for D-class {d}", caps)
        triples.append(coordinatize(bi, models[d], block, engine))
    return TripleChain(tuple(triples), fact.fingerprint)
