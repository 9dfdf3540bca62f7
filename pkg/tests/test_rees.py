"""D-class models: enumeration, coordinatization round trips, partial actions."""

import itertools
import random

import pytest

from ig_lab.biorder import build_biorder
from ig_lab.config import Caps
from ig_lab.corpus import corpus_biorders, rectangular_band
from ig_lab.errors import GroupNotFiniteWithinCap, NotInThisDClass
from ig_lab.rees import (build_all_models, build_dclass_model, coordinatize, partial_actions,
                         triple_to_word)
from ig_lab.words import WordEngine

CAPS = Caps()


@pytest.fixture(scope="module")
def stacks():
    """(biorder, engine, models, actions) per corpus member."""
    out = {}
    for name, bi in corpus_biorders().items():
        engine = WordEngine(bi, CAPS)
        models, errors = build_all_models(bi, CAPS, engine)
        assert not errors, (name, errors)
        actions = partial_actions(bi, models, CAPS, engine)
        out[name] = (bi, engine, models, actions)
    return out


def test_b2_models_trivial(stacks):
    bi, engine, models, _ = stacks["b2"]
    for d, model in models.items():
        assert (model.n_i, model.n_lambda, model.group.order) == (1, 1, 1)
        assert model.sandwich == ((0,),)


def test_lz2_model_shape(stacks):
    bi, engine, models, _ = stacks["lz2"]
    model = models[0]
    assert model.n_i == 2 and model.n_lambda == 1
    assert model.group.order == 1
    assert all(p is not None for row in model.sandwich for p in row)


def test_t2_constant_class_shape(stacks):
    bi, engine, models, _ = stacks["t2"]
    d = bi.d_class_of[bi.index_of("[11]")]
    model = models[d]
    # the two constants are R-related with distinct images: 1 row, 2 columns
    assert model.n_i == 1 and model.n_lambda == 2
    assert model.group.order == 1


def test_rectangular_bands_exceed_caps():
    for shape in ((2, 2), (2, 3)):
        bi = build_biorder(rectangular_band(*shape))
        with pytest.raises(GroupNotFiniteWithinCap) as err:
            build_dclass_model(bi, 0, CAPS)
        assert err.value.partial is not None  # carries the partial data


def test_coordinatize_base_idempotent(stacks):
    for name, (bi, engine, models, _) in stacks.items():
        for d, model in models.items():
            w = (model.base_idempotent,)
            assert coordinatize(bi, model, w, engine) == (model.base_i, model.group.identity,
                                                          model.base_lambda)


def test_coordinatize_lz2_b(stacks):
    bi, engine, models, _ = stacks["lz2"]
    model = models[0]
    b = bi.index_of("b")
    i, g, lam = coordinatize(bi, model, (b,), engine)
    assert (i, g, lam) == (1, model.group.identity, 0)


def test_coordinatize_wrong_class(stacks):
    bi, engine, models, _ = stacks["b2"]
    e22 = bi.index_of("e22")
    model_e11 = models[bi.d_class_of[bi.index_of("e11")]]
    with pytest.raises(NotInThisDClass):
        coordinatize(bi, model_e11, (e22,), engine)


def test_round_trips_exhaustive(stacks):
    for name, (bi, engine, models, _) in stacks.items():
        for d, model in models.items():
            for i in range(model.n_i):
                for g in range(model.group.order):
                    for lam in range(model.n_lambda):
                        w = triple_to_word(model, (i, g, lam), engine)
                        assert coordinatize(bi, model, w, engine) == (i, g, lam), (name, d, i, g, lam)


def test_oracle_round_trip_on_regular_words(stacks):
    rng = random.Random(11)
    for name, (bi, engine, models, _) in stacks.items():
        for _ in range(40):
            w = tuple(rng.randrange(bi.n) for _ in range(rng.randint(1, 5)))
            fact = engine.minimal_r_factorisation(w)
            if len(fact.blocks) != 1:
                continue
            model = models[fact.fingerprint[0]]
            t = coordinatize(bi, model, w, engine)
            back = triple_to_word(model, t, engine)
            assert engine.oracle_equal(w, back).is_equal


def test_idempotent_coords_bijection(stacks):
    for name, (bi, engine, models, _) in stacks.items():
        for model in models.values():
            cells = sorted(model.idempotent_coords.values())
            nonzero = sorted((i, lam) for lam in range(model.n_lambda) for i in range(model.n_i)
                             if model.sandwich[lam][i] is not None)
            assert cells == nonzero


def test_rees_multiplication_law(stacks):
    # word(t1) + word(t2) ~ word(t1 t2) whenever the sandwich entry is nonzero
    for name, (bi, engine, models, _) in stacks.items():
        for d, model in models.items():
            triples = list(itertools.product(range(model.n_i), range(model.group.order),
                                             range(model.n_lambda)))
            for t1 in triples:
                for t2 in triples:
                    prod = model.multiply(t1, t2)
                    w = triple_to_word(model, t1, engine) + triple_to_word(model, t2, engine)
                    fact = engine.minimal_r_factorisation(w)
                    if prod is None:
                        assert fact.fingerprint != (d,)
                    else:
                        assert fact.fingerprint == (d,)
                        assert engine.oracle_equal(w, triple_to_word(model, prod, engine)).is_equal


def test_base_action_is_identity(stacks):
    for name, (bi, engine, models, actions) in stacks.items():
        for d, model in models.items():
            e0 = model.base_idempotent
            smap = actions.sigma_map(d, e0)
            assert smap.get(model.base_i) == (model.base_i, model.group.identity)
            tmap = actions.tau_map(d, e0)
            assert tmap.get(model.base_lambda) == (model.base_lambda, model.group.identity)


def test_b2_cross_actions_undefined(stacks):
    bi, engine, models, actions = stacks["b2"]
    e11, e22 = bi.index_of("e11"), bi.index_of("e22")
    d22 = bi.d_class_of[e22]
    assert actions.sigma_map(d22, e11) == {}
    assert actions.tau_map(d22, e11) == {}


def test_lz2_tau_b_defined(stacks):
    bi, engine, models, actions = stacks["lz2"]
    b = bi.index_of("b")
    assert actions.tau_map(0, b) == {0: (0, models[0].group.identity)}


def test_sigma_invariant_exhaustively(stacks):
    # sigma_e(i) = j with cocycle c  means  e.(i, g, lam) = (j, c g, lam)
    for name, (bi, engine, models, actions) in stacks.items():
        for d, model in models.items():
            size = model.group.order * model.n_lambda * model.n_i
            if size > 100:
                continue
            for e in range(bi.n):
                smap = actions.sigma_map(d, e)
                for i, (j, coc) in smap.items():
                    for g in range(model.group.order):
                        for lam in range(model.n_lambda):
                            left = (e,) + triple_to_word(model, (i, g, lam), engine)
                            expect = triple_to_word(model, (j, model.group.mul(coc, g), lam), engine)
                            assert engine.oracle_equal(left, expect).is_equal, (name, d, e, i)
                tmap = actions.tau_map(d, e)
                for lam, (mu, coc) in tmap.items():
                    for g in range(model.group.order):
                        for i in range(model.n_i):
                            left = triple_to_word(model, (i, g, lam), engine) + (e,)
                            expect = triple_to_word(model, (i, model.group.mul(g, coc), mu), engine)
                            assert engine.oracle_equal(left, expect).is_equal, (name, d, e, lam)


def test_sigma_undefined_means_out_of_class(stacks):
    for name, (bi, engine, models, actions) in stacks.items():
        for d, model in models.items():
            for e in range(bi.n):
                smap = actions.sigma_map(d, e)
                for i in range(model.n_i):
                    if i in smap:
                        continue
                    w = (e,) + triple_to_word(model, (i, model.group.identity, model.base_lambda),
                                              engine)
                    fact = engine.minimal_r_factorisation(w)
                    assert fact.fingerprint != (d,), (name, d, e, i)


def test_models_validate_and_roundtrip_json(stacks):
    for name, (bi, engine, models, _) in stacks.items():
        for model in models.values():
            model.validate()
            data = model.to_json()
            assert data["n_i"] == model.n_i and data["n_lambda"] == model.n_lambda
