"""The word engine over the defining presentation of IG(E).

Words are nonempty tuples of E-indices.  The only rewriting moves are the
defining relations read in both directions: contract an adjacent basic pair
(e, f) into the letter e.f, or expand a letter g into a basic pair (e, f)
with e.f = g.  Equality of word classes is undecidable in general, so the
oracle here is a capped bidirectional BFS plus two sound separating
invariants (ambient image and D-fingerprint); its verdicts are Equal with a
replayable certificate, Distinct with the invariant that separates, or an
honest Unknown.

Green's relation tests between word classes are bounded witness searches:
x R y iff some appended word carries x to y and vice versa.  Instead of
enumerating witness words and running one BFS per candidate, the search
walks a product graph whose moves are "rewrite" and "append one letter", so
a single BFS decides witness existence up to the caps.  A negative answer
is always "no at these caps"; searches that were cut off report themselves
as such and the callers raise CapExceeded rather than fake a verdict.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from heapq import heappop, heappush

from .biorder import BiorderedSet
from .config import Caps, DEFAULT_CAPS
from .errors import CapExceeded

Word = tuple  # nonempty tuple of E-indices

EQUAL = "equal"
DISTINCT = "distinct"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class RewriteStep:
    """One application of a defining relation at a position (0-based)."""

    position: int
    rule: tuple[int, int, int]  # (e, f, g) with e.f = g a basic product
    direction: str  # "contract": ef -> g, "expand": g -> ef

    def apply(self, word: Word) -> Word:
        e, f, g = self.rule
        p = self.position
        if self.direction == "contract":
            if word[p:p + 2] != (e, f):
                raise ValueError(f"step does not apply at {p}: {word}")
            return word[:p] + (g,) + word[p + 2:]
        if word[p] != g:
            raise ValueError(f"step does not apply at {p}: {word}")
        return word[:p] + (e, f) + word[p + 1:]

    def invert(self) -> "RewriteStep":
        return RewriteStep(self.position, self.rule, "expand" if self.direction == "contract" else "contract")

    def to_json(self) -> dict:
        return {"position": self.position, "rule": list(self.rule), "direction": self.direction}


@dataclass(frozen=True)
class SeedWitness:
    """A seed position for a regular word: w = u e v with ue L e R ev.

    f_left / f_right are idempotents R- (resp. L-) related to the whole word.
    """

    position: int  # 0-based index of the seed letter
    letter: int
    f_left: int
    f_right: int


@dataclass(frozen=True)
class RFactorisation:
    blocks: tuple[Word, ...]
    coordinates: tuple[int, ...]  # 1-based start positions, alpha_1 = 1
    fingerprint: tuple[int, ...]  # E-D-class ids, one per block
    seeds: tuple[SeedWitness, ...]


@dataclass(frozen=True)
class EqualityVerdict:
    status: str
    certificate: tuple[RewriteStep, ...] | None = None
    reason: str | None = None  # for Distinct: "ambient-image" | "fingerprint"
    detail: tuple | None = None
    caps: Caps = DEFAULT_CAPS

    @property
    def is_equal(self) -> bool:
        return self.status == EQUAL

    @property
    def is_distinct(self) -> bool:
        return self.status == DISTINCT

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.certificate is not None:
            out["certificate"] = [s.to_json() for s in self.certificate]
        if self.reason:
            out["reason"] = self.reason
            out["detail"] = list(self.detail) if self.detail is not None else None
        return out


@dataclass
class SearchOutcome:
    """Result of one capped multiplier search."""

    found: bool
    complete: bool  # frontier exhausted within caps (so "not found" is definite at caps)
    states: int = 0


def replay(word: Word, steps) -> Word:
    for s in steps:
        word = s.apply(word)
    return word


class WordEngine:
    """Rewriting searches over one biorder, with per-word caches.

    All methods are pure relative to (biorder, caps); the caches only
    memoise results, so an engine may be shared by concurrent readers.
    """

    def __init__(self, bi: BiorderedSet, caps: Caps = DEFAULT_CAPS):
        self.bi = bi
        self.caps = caps
        # expansions[g] = all basic pairs (e, f) with e.f = g
        self.expansions: list[list[tuple[int, int]]] = [[] for _ in range(bi.n)]
        for e in range(bi.n):
            for f in range(bi.n):
                g = bi.prod[e][f]
                if g is not None:
                    self.expansions[g].append((e, f))
        self._seed_cache: dict[Word, SeedWitness | None | str] = {}
        self._fact_cache: dict[Word, RFactorisation | str] = {}
        self._closure_cache: dict[Word, dict] = {}

    # -- basic moves ---------------------------------------------------------

    def check_word(self, word) -> Word:
        w = tuple(int(x) for x in word)
        if not w:
            raise ValueError("IG(E) words are nonempty")
        for x in w:
            if not 0 <= x < self.bi.n:
                raise IndexError(f"letter {x} outside E")
        return w

    def neighbor_steps(self, word: Word, *, allow_expand: bool = True):
        """Yield (next_word, step) for all one-step rewrites."""
        prod = self.bi.prod
        n = len(word)
        for p in range(n - 1):
            g = prod[word[p]][word[p + 1]]
            if g is not None:
                yield word[:p] + (g,) + word[p + 2:], RewriteStep(p, (word[p], word[p + 1], g), "contract")
        if allow_expand and n < self.caps.max_word_len:
            for p in range(n):
                for e, f in self.expansions[word[p]]:
                    yield word[:p] + (e, f) + word[p + 1:], RewriteStep(p, (e, f, word[p]), "expand")

    def rewrite_neighbors(self, word) -> set[Word]:
        w = self.check_word(word)
        return {nxt for nxt, _ in self.neighbor_steps(w)}

    def contraction_closure(self, word: Word) -> dict[Word, tuple[Word, RewriteStep] | None]:
        """All words reachable by contractions only, with parent pointers."""
        cached = self._closure_cache.get(word)
        if cached is not None:
            return cached
        out: dict[Word, tuple[Word, RewriteStep] | None] = {word: None}
        queue = deque([word])
        while queue:
            w = queue.popleft()
            for nxt, step in self.neighbor_steps(w, allow_expand=False):
                if nxt not in out:
                    out[nxt] = (w, step)
                    queue.append(nxt)
        self._closure_cache[word] = out
        return out

    @staticmethod
    def _chain(parents, word) -> list[RewriteStep]:
        steps: list[RewriteStep] = []
        while parents[word] is not None:
            prev, step = parents[word]
            steps.append(step)
            word = prev
        steps.reverse()
        return steps

    # -- connectivity oracle ---------------------------------------------------

    def bfs_equal(self, u: Word, v: Word) -> tuple[str, tuple[RewriteStep, ...] | None]:
        """Bidirectional BFS in the rewriting graph truncated at max_word_len.

        Returns ("equal", path), ("no_path", None) when one side exhausted its
        truncated component, or ("aborted", None) at the state budget.
        """
        if u == v:
            return EQUAL, ()
        fwd: dict[Word, tuple | None] = {u: None}
        bwd: dict[Word, tuple | None] = {v: None}
        qf, qb = deque([u]), deque([v])
        budget = self.caps.max_bfs_states

        def stitch(meet: Word) -> tuple[RewriteStep, ...]:
            left = self._chain(fwd, meet)
            right = self._chain(bwd, meet)
            return tuple(left + [s.invert() for s in reversed(right)])

        while qf and qb:
            # expand the smaller frontier
            if len(qf) <= len(qb):
                queue, seen, other = qf, fwd, bwd
            else:
                queue, seen, other = qb, bwd, fwd
            for _ in range(len(queue)):
                w = queue.popleft()
                for nxt, step in self.neighbor_steps(w):
                    if nxt in seen:
                        continue
                    seen[nxt] = (w, step)
                    if nxt in other:
                        return EQUAL, stitch(nxt)
                    queue.append(nxt)
                    if len(fwd) + len(bwd) > budget:
                        return "aborted", None
        return "no_path", None

    # -- multiplier searches ---------------------------------------------------

    def _mult_search(self, source: Word, target: Word, side: str) -> SearchOutcome:
        """Is target reachable from source by rewrites plus <= witness_len
        appended (side="right") or prepended (side="left") letters?

        Sound and complete within caps: appended letters commute with the
        rewrites already performed, so interleavings cover exactly the words
        source.s (resp. s.source) with |s| <= witness_len.  The frontier is a
        priority queue on (word length, appends used): visiting order does
        not affect what is reachable within the caps, but shrinking targets
        are found long before the expansion fan-out is touched.
        """
        if source == target:
            return SearchOutcome(True, True)
        if len(target) > self.caps.max_word_len:
            return SearchOutcome(False, False)
        budget = self.caps.max_bfs_states
        wl = self.caps.witness_len
        tlen = len(target)
        best: dict[Word, int] = {source: 0}
        heap = [(abs(len(source) - tlen), 0, source)]
        letters = range(self.bi.n)
        max_len = self.caps.max_word_len
        while heap:
            _, used, w = heappop(heap)
            if used > best.get(w, wl + 1):
                continue  # superseded by a cheaper visit
            candidates = [(nxt, used) for nxt, _ in self.neighbor_steps(w)]
            if used < wl and len(w) < max_len:
                if side == "right":
                    candidates.extend(((w + (a,), used + 1) for a in letters))
                else:
                    candidates.extend((((a,) + w, used + 1) for a in letters))
            for nxt, nused in candidates:
                prev = best.get(nxt)
                if prev is not None and prev <= nused:
                    continue
                best[nxt] = nused
                if nxt == target:
                    return SearchOutcome(True, True, len(best))
                heappush(heap, (abs(len(nxt) - tlen), nused, nxt))
                if len(best) > budget:
                    return SearchOutcome(False, False, len(best))
        return SearchOutcome(False, True, len(best))

    def right_mult_search(self, source: Word, target: Word) -> SearchOutcome:
        return self._mult_search(source, target, "right")

    def left_mult_search(self, source: Word, target: Word) -> SearchOutcome:
        return self._mult_search(source, target, "left")

    def _class_scan(self, word: Word, predicate) -> SearchOutcome:
        """Scan the rewrite class of word (within caps, shortest first) for any
        member satisfying the predicate."""
        if predicate(word):
            return SearchOutcome(True, True, 1)
        budget = self.caps.max_bfs_states
        seen = {word}
        heap = [(len(word), word)]
        while heap:
            _, w = heappop(heap)
            for nxt, _ in self.neighbor_steps(w):
                if nxt in seen:
                    continue
                seen.add(nxt)
                if predicate(nxt):
                    return SearchOutcome(True, True, len(seen))
                heappush(heap, (len(nxt), nxt))
                if len(seen) > budget:
                    return SearchOutcome(False, False, len(seen))
        return SearchOutcome(False, True, len(seen))

    # -- Green's relation witnesses between word classes -----------------------

    def _reaches_right(self, u: Word, v: Word) -> SearchOutcome:
        """Some s with u.s = v.  When u is a single letter e this is exactly
        "the class of v contains a word starting with e", scanned directly."""
        if len(u) == 1:
            e = u[0]
            return self._class_scan(v, lambda w: w[0] == e)
        return self.right_mult_search(u, v)

    def _reaches_left(self, u: Word, v: Word) -> SearchOutcome:
        if len(u) == 1:
            e = u[0]
            return self._class_scan(v, lambda w: w[-1] == e)
        return self.left_mult_search(u, v)

    def contraction_min(self, word: Word) -> Word:
        """The (len, lex)-least member of the contraction cone; same class."""
        return min(self.contraction_closure(word), key=lambda w: (len(w), w))

    def green_r_words(self, u: Word, v: Word) -> bool | None:
        """u R v in IG(E), by witness search; None when a cut-off prevented a
        verdict.  Both sides are first contracted to minimal forms, which the
        relations cannot distinguish and the searches hit far sooner."""
        u, v = self.contraction_min(u), self.contraction_min(v)
        a = self._reaches_right(u, v)
        if a.found:
            b = self._reaches_right(v, u)
            if b.found:
                return True
            return False if b.complete else None
        return False if a.complete else None

    def green_l_words(self, u: Word, v: Word) -> bool | None:
        u, v = self.contraction_min(u), self.contraction_min(v)
        a = self._reaches_left(u, v)
        if a.found:
            b = self._reaches_left(v, u)
            if b.found:
                return True
            return False if b.complete else None
        return False if a.complete else None

    # -- regularity ---------------------------------------------------------

    def _seed_candidates(self, w: Word) -> list[int]:
        """Positions that can possibly carry a seed.

        A seed letter e satisfies e D w in IG(E); homomorphisms preserve D,
        so with an ambient semigroup the letter must be D-related to the
        image of w there.  Without an ambient table all positions qualify.
        """
        if self.bi.ambient is None:
            return list(range(len(w)))
        img = self.bi.ambient_image(w)
        return [p for p, e in enumerate(w) if self.bi.ambient_d_related(e, img)]

    def regularity_seed(self, word) -> SeedWitness | None:
        """A seed position for w, or None when no position passes at the caps.

        Raises CapExceeded when some sub-search was cut off and no seed was
        found, since then "no seed" would not be honest even at desk scale.
        """
        w = self.check_word(word)
        cached = self._seed_cache.get(w)
        if cached is not None or w in self._seed_cache:
            if cached == "capexceeded":
                raise CapExceeded("seed search inconclusive", self.caps)
            return cached
        result = self._regularity_seed(w)
        self._seed_cache[w] = "capexceeded" if result == "capexceeded" else result
        if result == "capexceeded":
            raise CapExceeded("seed search inconclusive", self.caps)
        return result

    def _regularity_seed(self, w: Word):
        cut_off = False
        for p in self._seed_candidates(w):
            e = w[p]
            target = (e,)
            # ue L e: the nontrivial half is some s with s.(ue) = e
            if p == 0:
                left_ok = True
            else:
                out = self.left_mult_search(w[:p + 1], target)
                left_ok = out.found
                cut_off |= not out.found and not out.complete
            if not left_ok:
                continue
            # e R ev: the nontrivial half is some t with (ev).t = e
            if p == len(w) - 1:
                right_ok = True
            else:
                out = self.right_mult_search(w[p:], target)
                right_ok = out.found
                cut_off |= not out.found and not out.complete
            if not right_ok:
                continue
            witness = self._attach_flanks(w, p, e)
            if witness == "capexceeded":
                cut_off = True
                continue
            return witness
        return "capexceeded" if cut_off else None

    def _attach_flanks(self, w: Word, p: int, e: int):
        """Idempotents f_left R w and f_right L w; they exist whenever w has a seed."""
        f_left = f_right = None
        if self.bi.ambient is not None:
            img = self.bi.ambient_image(w)
            r_of, l_of, _ = self.bi.ambient.green_classes()
        for f in range(self.bi.n):
            if self.bi.ambient is not None and r_of[self.bi.ambient_index[f]] != r_of[img]:
                continue
            if self.green_r_words((f,), w):
                f_left = f
                break
        for f in range(self.bi.n):
            if self.bi.ambient is not None and l_of[self.bi.ambient_index[f]] != l_of[img]:
                continue
            if self.green_l_words((f,), w):
                f_right = f
                break
        if f_left is None or f_right is None:
            return "capexceeded"
        return SeedWitness(p, e, f_left, f_right)

    def is_regular(self, word) -> bool:
        return self.regularity_seed(word) is not None

    # -- minimal r-factorisations ----------------------------------------------

    def minimal_r_factorisation(self, word) -> RFactorisation:
        """Left-greedy longest-regular-prefix factorisation.

        Greed gives minimality: if blocks i..j (j > i) concatenated were
        regular, block i was not the longest regular prefix of its suffix.
        """
        w = self.check_word(word)
        cached = self._fact_cache.get(w)
        if cached == "capexceeded":
            raise CapExceeded("factorisation inconclusive", self.caps)
        if cached is not None:
            return cached
        try:
            fact = self._factorise(w)
        except CapExceeded:
            self._fact_cache[w] = "capexceeded"
            raise
        self._fact_cache[w] = fact
        return fact

    def _factorise(self, w: Word) -> RFactorisation:
        blocks: list[Word] = []
        coords: list[int] = []
        seeds: list[SeedWitness] = []
        i = 0
        while i < len(w):
            found = None
            for j in range(len(w), i, -1):
                seed = self.regularity_seed(w[i:j])
                if seed is not None:
                    found = (j, seed)
                    break
            # single letters are always regular, so the greedy scan cannot stall
            j, seed = found
            blocks.append(w[i:j])
            coords.append(i + 1)
            seeds.append(seed)
            i = j
        fingerprint = tuple(self.bi.d_class_of[s.letter] for s in seeds)
        return RFactorisation(tuple(blocks), tuple(coords), fingerprint, tuple(seeds))

    def fingerprint(self, word) -> tuple[int, ...]:
        return self.minimal_r_factorisation(word).fingerprint

    # -- the equality oracle -----------------------------------------------------

    def oracle_equal(self, u, v) -> EqualityVerdict:
        """Three-valued capped equality: Equal with a replayable certificate,
        Distinct with a sound separating invariant, else Unknown."""
        wu, wv = self.check_word(u), self.check_word(v)
        if wu == wv:
            return EqualityVerdict(EQUAL, (), caps=self.caps)
        if self.bi.ambient is not None:
            iu, iv = self.bi.ambient_image(wu), self.bi.ambient_image(wv)
            if iu != iv:
                return EqualityVerdict(DISTINCT, reason="ambient-image",
                                       detail=(self.bi.ambient.name(iu), self.bi.ambient.name(iv)),
                                       caps=self.caps)
        # cheap confluence-free shortcut: meet of the contraction cones
        cu = self.contraction_closure(wu)
        cv = self.contraction_closure(wv)
        meet = cu.keys() & cv.keys()
        if meet:
            m = min(meet, key=lambda x: (len(x), x))
            steps = self._chain(cu, m) + [s.invert() for s in reversed(self._chain(cv, m))]
            return EqualityVerdict(EQUAL, tuple(steps), caps=self.caps)
        # the fingerprint invariant separates before the full search is paid for
        try:
            fu, fv = self.fingerprint(wu), self.fingerprint(wv)
            if fu != fv:
                return EqualityVerdict(DISTINCT, reason="fingerprint", detail=(fu, fv), caps=self.caps)
        except CapExceeded:
            pass
        status, path = self.bfs_equal(wu, wv)
        if status == EQUAL:
            return EqualityVerdict(EQUAL, path, caps=self.caps)
        return EqualityVerdict(UNKNOWN, caps=self.caps)

    def equal_elements(self, u, v) -> bool | None:
        verdict = self.oracle_equal(u, v)
        if verdict.status == EQUAL:
            return True
        if verdict.status == DISTINCT:
            return False
        return None


# -- spec-level convenience wrappers ----------------------------------------


def rewrite_neighbors(bi: BiorderedSet, word, caps: Caps = DEFAULT_CAPS) -> set[Word]:
    return WordEngine(bi, caps).rewrite_neighbors(word)


def oracle_equal(bi: BiorderedSet, u, v, caps: Caps = DEFAULT_CAPS) -> EqualityVerdict:
    return WordEngine(bi, caps).oracle_equal(u, v)


def regularity_seed(bi: BiorderedSet, word, caps: Caps = DEFAULT_CAPS) -> SeedWitness | None:
    return WordEngine(bi, caps).regularity_seed(word)


def minimal_r_factorisation(bi: BiorderedSet, word, caps: Caps = DEFAULT_CAPS) -> RFactorisation:
    return WordEngine(bi, caps).minimal_r_factorisation(word)
