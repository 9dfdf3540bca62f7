"""Rewriting moves, the capped equality oracle, seeds and r-factorisations."""

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from ig_lab.config import Caps
from ig_lab.corpus import corpus_biorders
from ig_lab.errors import CapExceeded
from ig_lab.words import EQUAL, DISTINCT, UNKNOWN, WordEngine, replay

BIOS = corpus_biorders()
ENGINES = {name: WordEngine(bi) for name, bi in BIOS.items()}


def eng(name) -> WordEngine:
    return ENGINES[name]


def labels(name, *words):
    bi = BIOS[name]
    return tuple(bi.word_from_labels(w) for w in words)


# -- rewrite neighbors ---------------------------------------------------------


def test_double_letter_contracts():
    for name, engine in ENGINES.items():
        for e in range(engine.bi.n):
            assert (e,) in engine.rewrite_neighbors((e, e))


def test_b2_mixed_has_no_contraction():
    engine = eng("b2")
    (w,) = labels("b2", ["e11", "e22"])
    neighbors = engine.rewrite_neighbors(w)
    assert all(len(n) > len(w) for n in neighbors)
    (exp,) = labels("b2", ["e11", "e11", "e22"])
    assert exp in neighbors


def test_lz2_ab_contracts_to_a():
    engine = eng("lz2")
    w, a = labels("lz2", ["a", "b"], ["a"])
    assert a in engine.rewrite_neighbors(w)


def test_neighbor_symmetry_exhaustive():
    # u in N(v) iff v in N(u), all corpus words of length <= 4
    for name, engine in ENGINES.items():
        words = [w for k in range(1, 5) for w in itertools.product(range(engine.bi.n), repeat=k)]
        neighbor_sets = {w: engine.rewrite_neighbors(w) for w in words}
        for w in words:
            for n in neighbor_sets[w]:
                if len(n) <= 4:
                    assert w in neighbor_sets[n], (name, w, n)
                else:
                    assert w in engine.rewrite_neighbors(n)


# -- the oracle -----------------------------------------------------------------


def test_oracle_reflexive():
    engine = eng("b2")
    (w,) = labels("b2", ["e11", "e22"])
    verdict = engine.oracle_equal(w, w)
    assert verdict.status == EQUAL and verdict.certificate == ()


def test_oracle_lz2_contraction():
    engine = eng("lz2")
    w, a = labels("lz2", ["a", "b"], ["a"])
    verdict = engine.oracle_equal(w, a)
    assert verdict.status == EQUAL
    assert replay(w, verdict.certificate) == a


def test_oracle_b2_swap_distinct_by_fingerprint():
    engine = eng("b2")
    u, v = labels("b2", ["e11", "e22"], ["e22", "e11"])
    # the ambient images agree (both are 0), so only the fingerprint separates
    assert engine.bi.ambient_image(u) == engine.bi.ambient_image(v)
    verdict = engine.oracle_equal(u, v)
    assert verdict.status == DISTINCT
    assert verdict.reason == "fingerprint"


def test_oracle_ambient_distinct():
    engine = eng("chain3")
    u, v = labels("chain3", ["x0"], ["x1"])
    verdict = engine.oracle_equal(u, v)
    assert verdict.status == DISTINCT
    assert verdict.reason == "ambient-image"


def test_certificates_replay_on_sampled_pairs():
    rng = random.Random(5)
    for name, engine in ENGINES.items():
        n = engine.bi.n
        for _ in range(200):
            u = tuple(rng.randrange(n) for _ in range(rng.randint(1, 6)))
            v = tuple(rng.randrange(n) for _ in range(rng.randint(1, 6)))
            verdict = engine.oracle_equal(u, v)
            if verdict.status == EQUAL:
                assert replay(u, verdict.certificate) == v


def test_distinct_certificates_recompute():
    rng = random.Random(6)
    for name, engine in ENGINES.items():
        n = engine.bi.n
        for _ in range(150):
            u = tuple(rng.randrange(n) for _ in range(rng.randint(1, 5)))
            v = tuple(rng.randrange(n) for _ in range(rng.randint(1, 5)))
            verdict = engine.oracle_equal(u, v)
            if verdict.status != DISTINCT:
                continue
            if verdict.reason == "ambient-image":
                iu, iv = verdict.detail
                assert iu != iv
                assert engine.bi.ambient.name(engine.bi.ambient_image(u)) == iu
            else:
                fu, fv = verdict.detail
                assert fu != fv
                assert engine.fingerprint(u) == fu and engine.fingerprint(v) == fv


# -- seeds -----------------------------------------------------------------------


def test_single_letter_is_its_own_seed():
    for name, engine in ENGINES.items():
        for e in range(engine.bi.n):
            seed = engine.regularity_seed((e,))
            assert seed is not None and seed.position == 0 and seed.letter == e


def test_b2_mixed_word_has_no_seed():
    engine = eng("b2")
    (w,) = labels("b2", ["e11", "e22"])
    assert engine.regularity_seed(w) is None


def test_lz2_ab_is_regular():
    engine = eng("lz2")
    (w,) = labels("lz2", ["a", "b"])
    seed = engine.regularity_seed(w)
    assert seed is not None


def test_seed_flanks_are_green_related():
    # f_left R w and f_right L w, by the witness searches themselves
    rng = random.Random(7)
    for name, engine in ENGINES.items():
        n = engine.bi.n
        for _ in range(40):
            w = tuple(rng.randrange(n) for _ in range(rng.randint(1, 5)))
            seed = engine.regularity_seed(w)
            if seed is None:
                continue
            assert engine.green_r_words((seed.f_left,), w) is True
            assert engine.green_l_words((seed.f_right,), w) is True


# -- minimal r-factorisations -------------------------------------------------------


def test_single_letter_factorisation():
    engine = eng("b2")
    (w,) = labels("b2", ["e11"])
    fact = engine.minimal_r_factorisation(w)
    assert fact.blocks == (w,)
    assert fact.coordinates == (1,)
    assert fact.fingerprint == (engine.bi.d_class_of[w[0]],)


def test_b2_two_blocks():
    engine = eng("b2")
    u, = labels("b2", ["e11", "e22"])
    fact = engine.minimal_r_factorisation(u)
    assert len(fact.blocks) == 2
    d1, d2 = engine.bi.d_class_of[u[0]], engine.bi.d_class_of[u[1]]
    assert fact.fingerprint == (d1, d2)


def test_b2_three_blocks():
    engine = eng("b2")
    (w,) = labels("b2", ["e11", "e22", "e11"])
    fact = engine.minimal_r_factorisation(w)
    assert len(fact.blocks) == 3
    assert fact.coordinates == (1, 2, 3)


def test_factorisation_blocks_concatenate():
    rng = random.Random(8)
    for name, engine in ENGINES.items():
        n = engine.bi.n
        for _ in range(60):
            w = tuple(rng.randrange(n) for _ in range(rng.randint(1, 7)))
            fact = engine.minimal_r_factorisation(w)
            assert tuple(x for b in fact.blocks for x in b) == w
            assert fact.coordinates[0] == 1


def test_left_greedy_minimality_adjacent_blocks():
    # no concatenation of consecutive blocks may be regular
    rng = random.Random(9)
    for name, engine in ENGINES.items():
        n = engine.bi.n
        for _ in range(60):
            w = tuple(rng.randrange(n) for _ in range(rng.randint(2, 7)))
            fact = engine.minimal_r_factorisation(w)
            for i in range(len(fact.blocks) - 1):
                for j in range(i + 1, len(fact.blocks)):
                    chunk = tuple(x for b in fact.blocks[i:j + 1] for x in b)
                    assert engine.regularity_seed(chunk) is None, (name, w, chunk)


def test_fingerprint_invariance_under_rewrites():
    # random rewrite walks preserve block count and fingerprint
    rng = random.Random(10)
    for name, engine in ENGINES.items():
        n = engine.bi.n
        for _ in range(20):
            w = tuple(rng.randrange(n) for _ in range(rng.randint(1, 5)))
            base = engine.minimal_r_factorisation(w)
            for _ in range(10):
                variant = w
                for _ in range(rng.randint(1, 6)):
                    moves = sorted(engine.rewrite_neighbors(variant))
                    variant = moves[rng.randrange(len(moves))]
                fact = engine.minimal_r_factorisation(variant)
                assert fact.fingerprint == base.fingerprint, (name, w, variant)
