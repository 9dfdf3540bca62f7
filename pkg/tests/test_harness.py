"""Reports, determinism, differential validation, and fault injection."""

import json

import pytest

from ig_lab.config import Caps
from ig_lab.corpus import brandt_b2, corpus_biorders, left_zero, rectangular_band
from ig_lab.fixtures import s3_action_fixture, s3_sign_fixture
from ig_lab.gain import build_contact
from ig_lab.harness import (RunConfig, cross_validate, inject_action_fault, inject_fault,
                            run_report)
from ig_lab.serialize import dump_json, parse_input
from ig_lab.session import IgContext
from ig_lab.theta import ThetaEnv, dclass_census, schutzenberger


def small_config(**kw):
    base = dict(exhaustive_len=3, sample_len=6, samples=150, seed=7)
    base.update(kw)
    return RunConfig(**base)


def test_run_report_lz2(contexts):
    ctx = contexts["lz2"]
    report = run_report(ctx, small_config())
    assert len(report["models"]) == 1
    assert report["model_errors"] == {}
    model = report["models"]["0"]
    assert model["n_i"] == 2 and model["n_lambda"] == 1
    assert "contact_automata" in report


def test_run_report_b2_queries(contexts):
    ctx = contexts["b2"]
    config = small_config()
    config.queries = [
        {"kind": "word-eq", "u": ["e11", "e22"], "v": ["e22", "e11"]},
        {"kind": "census", "word": ["e11", "e22"]},
        {"kind": "green", "u": ["e11"], "v": ["e22"], "rel": "D"},
    ]
    report = run_report(ctx, config)
    assert len(report["models"]) == 3
    answers = report["queries"]
    assert answers[0]["equal"] is False
    assert answers[0]["oracle"]["status"] == "distinct"
    assert answers[1]["census"]["d_class_size"] == 1
    assert answers[2]["related"] is False


def test_run_report_rectangular_band_partial():
    ctx = IgContext(parse_input(rectangular_band(2, 2).to_json()))
    report = run_report(ctx, small_config())
    assert report["models"] == {}
    assert "0" in report["model_errors"]
    assert "contact_automata" not in report


def test_report_deterministic_bytes(contexts):
    ctx1 = IgContext(parse_input(brandt_b2().to_json()))
    ctx2 = IgContext(parse_input(brandt_b2().to_json()))
    config = small_config()
    a = dump_json(run_report(ctx1, config))
    b = dump_json(run_report(ctx2, config))
    assert a == b


def test_cross_validate_clean_on_corpus(contexts):
    for name in ("lz2", "b2"):
        report = cross_validate(contexts[name], small_config())
        assert report["ok"], report["counts"]
        assert report["counts"]["disagreements"] == 0
        assert report["counts"]["certificate_failures"] == 0


def test_sandwich_fault_detected(contexts):
    ctx = IgContext(parse_input(brandt_b2().to_json()))
    env = inject_fault(ctx.env(), "sandwich", seed=0)
    report = cross_validate(ctx, small_config(), env)
    assert not report["ok"]
    assert report["counts"]["rees_failures"] > 0


def test_gain_fault_detected_on_sign_fixture():
    env, x = s3_sign_fixture()
    frozen = (schutzenberger(x, env).order, dclass_census(x, env).to_json())
    bad = inject_fault(env, "gain", seed=0)
    moved = (schutzenberger(x, bad).order, dclass_census(x, bad).to_json())
    assert moved != frozen


def test_cocycle_fault_detected_on_action_fixture():
    models, actions, env, x = s3_action_fixture()
    frozen = dclass_census(x, env).to_json()
    bad_actions = inject_action_fault(actions, models, seed=3)
    env2 = ThetaEnv(models, {(0, 1): build_contact(models[0], models[1], bad_actions)})
    assert dclass_census(x, env2).to_json() != frozen


def test_injected_fault_changes_exactly_one_datum():
    models, actions, env, x = s3_action_fixture()
    bad = inject_action_fault(actions, models, seed=3)
    diffs = 0
    for key in set(actions.sigma) | set(bad.sigma):
        for src in set(actions.sigma.get(key, {})) | set(bad.sigma.get(key, {})):
            if actions.sigma.get(key, {}).get(src) != bad.sigma.get(key, {}).get(src):
                diffs += 1
    for key in set(actions.tau) | set(bad.tau):
        for src in set(actions.tau.get(key, {})) | set(bad.tau.get(key, {})):
            if actions.tau.get(key, {}).get(src) != bad.tau.get(key, {}).get(src):
                diffs += 1
    assert diffs == 1
