"""Reporting and the differential-testing harness.

cross_validate is the ground-truth loop: sample word pairs, decide each by
the algebraic pipeline (chains + coset propagation) and by the rewriting
oracle, and record agreement.  A record with algebraic=True against a
definite oracle Distinct, or algebraic=False against an oracle Equal, is a
hard failure.  The same loop replays every Equal certificate and probes the
Rees multiplication law (oracle on concatenated words vs sandwich product),
so a corrupted model cannot hide behind internally consistent propagation.

Fault-injection hooks deliberately corrupt one sandwich entry, one action
cocycle or one contact edge so the suites can demonstrate they would fail;
a validator that cannot fail validates nothing.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace

from .biorder import BiorderedSet
from .config import Caps, DEFAULT_CAPS
from .errors import CapExceeded, GroupNotFiniteWithinCap, IgLabError
from .gain import ContactAutomaton, GainGraph, build_contact
from .rees import PartialActionTable, RegularDClassModel, triple_to_word
from .session import IgContext
from .theta import ThetaEnv, ig_equal
from .words import EQUAL, DISTINCT, replay


@dataclass
class RunConfig:
    input_path: str | None = None
    caps: Caps = DEFAULT_CAPS
    seed: int = 0
    fmt: str = "json"        # json | text
    dot_path: str | None = None
    figures_dir: str | None = None
    out_dir: str | None = None
    queries: list = field(default_factory=list)
    exhaustive_len: int = 4
    sample_len: int = 8
    samples: int = 2000
    fault: str | None = None  # sandwich | cocycle | gain

    def to_json(self) -> dict:
        return {"caps": self.caps.to_json(), "seed": self.seed,
                "exhaustive_len": self.exhaustive_len, "sample_len": self.sample_len,
                "samples": self.samples, "fault": self.fault}


# -- reporting ----------------------------------------------------------------


def biorder_summary(bi: BiorderedSet) -> dict:
    return {
        "elements": list(bi.elements),
        "basic_pairs": [[bi.label(e), bi.label(f)] for e, f in bi.basic_pairs() if e <= f],
        "r_classes": [[bi.label(e) for e in cls] for cls in bi.r_classes],
        "l_classes": [[bi.label(e) for e in cls] for cls in bi.l_classes],
        "d_classes": [[bi.label(e) for e in cls] for cls in bi.d_classes],
        "has_ambient": bi.ambient is not None,
    }


def model_report(model: RegularDClassModel, bi: BiorderedSet) -> dict:
    data = model.to_json()
    data["group"]["names"] = list(model.group.element_names)
    if model.row_reps is not None:
        data["row_reps"] = [bi.labels_of(w) for w in model.row_reps]
        data["col_reps"] = [bi.labels_of(w) for w in model.col_reps]
        data["group_words"] = [bi.labels_of(w) for w in model.group_words]
        data["idempotent_coords"] = {bi.label(e): list(c) for e, c in model.idempotent_coords.items()}
        data["base_idempotent"] = bi.label(model.base_idempotent)
    return data


def automaton_report(auto: ContactAutomaton) -> dict:
    graph = auto.graph
    return {
        "d1": auto.d1,
        "d2": auto.d2,
        "vertices": [list(v) for v in graph.vertices],
        "edges": [
            {"u": list(e.u), "v": list(e.v), "gain": graph.gain_group.name(e.gain), "letter": e.letter}
            for e in graph.edges
        ],
        "vertex_groups": {
            str(list(v)): [graph.gain_group.name(x) for x in graph.vertex_group(v).elements]
            for v in graph.vertices
        },
        "components": [[list(v) for v in comp] for comp in graph.components()],
    }


def run_report(ctx: IgContext, config: RunConfig) -> dict:
    """Full analysis: biorder summary, per-class models or finiteness errors,
    contact automata with vertex groups, and answers to supplied queries."""
    bi = ctx.biorder
    models, errors = ctx.all_models()
    report: dict = {
        "config": config.to_json(),
        "biorder": biorder_summary(bi),
        "models": {str(d): model_report(m, bi) for d, m in sorted(models.items())},
        "model_errors": {str(d): str(e) for d, e in sorted(errors.items())},
    }
    if not errors:
        automata = {}
        pairs = sorted({(d1, d2) for d1 in models for d2 in models})
        for d1, d2 in pairs:
            automata[f"{d1},{d2}"] = automaton_report(ctx.automaton(d1, d2))
        report["contact_automata"] = automata
    answers = []
    for query in config.queries:
        answers.append(answer_query(ctx, query))
    report["queries"] = answers
    return report


def answer_query(ctx: IgContext, query: dict) -> dict:
    kind = query.get("kind", "word-eq")
    out = {"kind": kind, "query": query}
    try:
        if kind == "word-eq":
            u, v = ctx.word(query["u"]), ctx.word(query["v"])
            eq, cert = ctx.equal(u, v)
            oracle = ctx.oracle(u, v)
            out.update({"equal": eq, "certificate": cert.to_json(), "oracle": oracle.to_json()})
        elif kind == "green":
            u, v = ctx.word(query["u"]), ctx.word(query["v"])
            rel = query.get("rel", "D")
            out.update({"related": ctx.green(u, v, rel), "rel": rel.upper()})
        elif kind == "schutz":
            out.update({"schutzenberger": ctx.schutzenberger(ctx.word(query["word"])).to_json()})
        elif kind == "census":
            out.update({"census": ctx.census(ctx.word(query["word"])).to_json()})
        else:
            out["error"] = f"unknown query kind {kind!r}"
    except IgLabError as exc:
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out


# -- differential validation ---------------------------------------------------


def _word_pool(bi: BiorderedSet, config: RunConfig) -> tuple[list, list]:
    exhaustive = []
    for length in range(1, config.exhaustive_len + 1):
        exhaustive.extend(itertools.product(range(bi.n), repeat=length))
    rng = random.Random(config.seed)
    sampled = []
    for _ in range(config.samples):
        length = rng.randint(1, config.sample_len)
        sampled.append(tuple(rng.randrange(bi.n) for _ in range(length)))
    return exhaustive, sampled


def cross_validate(ctx: IgContext, config: RunConfig, env: ThetaEnv | None = None) -> dict:
    """Agreement of chain-level equality with the rewriting oracle, plus
    certificate replays and Rees-law probes.  Records never show
    algebraic=True/oracle=Distinct or algebraic=False/oracle=Equal without
    tripping the hard-failure flag."""
    bi = ctx.biorder
    if env is None:
        env = ctx.env()
    exhaustive, sampled = _word_pool(bi, config)
    pairs = []
    pairs.extend(itertools.combinations_with_replacement(exhaustive, 2))
    rng = random.Random(config.seed + 1)
    pool = exhaustive + sampled
    for _ in range(config.samples):
        pairs.append((rng.choice(pool), rng.choice(pool)))
    counts = {"agree_equal": 0, "agree_distinct": 0, "unknown": 0, "disagreements": 0,
              "cap_exceeded": 0, "certificate_failures": 0, "rees_failures": 0}
    disagreements = []
    for u, v in pairs:
        try:
            alg, _ = ig_equal(ctx.element(u), ctx.element(v), env)
        except (CapExceeded, GroupNotFiniteWithinCap):
            counts["cap_exceeded"] += 1
            continue
        verdict = ctx.oracle(u, v)
        if verdict.status == EQUAL and not _certificate_ok(ctx, u, v, verdict):
            counts["certificate_failures"] += 1
        if verdict.status == EQUAL:
            if alg:
                counts["agree_equal"] += 1
            else:
                counts["disagreements"] += 1
                disagreements.append({"u": bi.labels_of(u), "v": bi.labels_of(v),
                                      "algebraic": alg, "oracle": verdict.status})
        elif verdict.status == DISTINCT:
            if not alg:
                counts["agree_distinct"] += 1
            else:
                counts["disagreements"] += 1
                disagreements.append({"u": bi.labels_of(u), "v": bi.labels_of(v),
                                      "algebraic": alg, "oracle": verdict.status})
        else:
            counts["unknown"] += 1
    counts["rees_failures"] = _rees_law_probes(ctx, env, config)
    report = {
        "config": config.to_json(),
        "pairs_checked": len(pairs),
        "counts": counts,
        "disagreements": disagreements[:50],
        "ok": counts["disagreements"] == 0 and counts["certificate_failures"] == 0
              and counts["rees_failures"] == 0,
    }
    return report


def _certificate_ok(ctx: IgContext, u, v, verdict) -> bool:
    try:
        return replay(u, verdict.certificate) == v
    except ValueError:
        return False


def _rees_law_probes(ctx: IgContext, env: ThetaEnv, config: RunConfig) -> int:
    """Oracle-grounded sandwich checks: for sampled same-class triples,
    word(t1) . word(t2) must equal word(t1 t2) exactly when the sandwich
    entry is nonzero, and must leave the class when it is zero."""
    rng = random.Random(config.seed + 2)
    failures = 0
    for d, model in sorted(env.models.items()):
        if model.row_reps is None:
            continue
        cells = [(i, g, lam) for i in range(model.n_i) for g in range(model.group.order)
                 for lam in range(model.n_lambda)]
        sample = cells if len(cells) <= 6 else rng.sample(cells, 6)
        for t1 in sample:
            for t2 in (cells if len(cells) <= 6 else rng.sample(cells, 6)):
                prod = model.multiply(t1, t2)
                w = triple_to_word(model, t1, ctx.engine) + triple_to_word(model, t2, ctx.engine)
                try:
                    fact = ctx.engine.minimal_r_factorisation(w)
                except CapExceeded:
                    continue
                stays = fact.fingerprint == (d,)
                if prod is None:
                    if stays:
                        failures += 1
                    continue
                if not stays:
                    failures += 1
                    continue
                verdict = ctx.oracle(w, triple_to_word(model, prod, ctx.engine))
                if verdict.status == DISTINCT:
                    failures += 1
                elif verdict.status != EQUAL:
                    pass  # unknowns are not failures
    return failures


# -- fault injection -------------------------------------------------------------


def inject_fault(env: ThetaEnv, kind: str, seed: int = 0) -> ThetaEnv:
    """A copy of env with exactly one datum corrupted.

    kinds: "sandwich" (one entry rewritten: value bumped in a nontrivial
    group, toggled zero/nonzero otherwise), "gain" (one contact edge's gain
    bumped, or its endpoint redirected when the gain group is trivial),
    "cocyle"/"cocycle" is accepted as an alias of "gain" at the automaton
    level since cocycles enter the pipeline only through edge gains.
    """
    rng = random.Random(seed)
    models = {d: m for d, m in env.models.items()}
    keys = sorted(env.automata.keys())
    if not keys:
        keys = sorted((d1, d2) for d1 in models for d2 in models)
    automata = {}
    for key in keys:
        try:
            automata[key] = env.automata[key]
        except KeyError:
            continue
    if kind == "sandwich":
        d, model = sorted(models.items())[rng.randrange(len(models))]
        sandwich = [list(row) for row in model.sandwich]
        lam = rng.randrange(model.n_lambda)
        i = rng.randrange(model.n_i)
        entry = sandwich[lam][i]
        if model.group.order > 1 and entry is not None:
            sandwich[lam][i] = (entry + 1) % model.group.order
        elif entry is None:
            sandwich[lam][i] = model.group.identity
        else:
            sandwich[lam][i] = None
        corrupted = RegularDClassModel(
            dclass_id=model.dclass_id, group=model.group, n_i=model.n_i, n_lambda=model.n_lambda,
            sandwich=tuple(tuple(r) for r in sandwich), base_i=model.base_i,
            base_lambda=model.base_lambda, row_reps=model.row_reps, col_reps=model.col_reps,
            group_words=model.group_words, idempotent_coords=model.idempotent_coords,
            base_idempotent=model.base_idempotent, r_class_ids=model.r_class_ids,
            l_class_ids=model.l_class_ids)
        models[d] = corrupted
        automata = {key: (ContactAutomaton(a.graph, a.d1, a.d2,
                                           corrupted if a.d1 == d else a.model1,
                                           corrupted if a.d2 == d else a.model2))
                    for key, a in automata.items()}
        return ThetaEnv(models, automata)
    if kind in ("gain", "cocycle", "cocyle"):
        for key in sorted(automata):
            auto = automata[key]
            if auto.graph.edges:
                graph = auto.graph
                edges = [(e.u, e.v, e.gain, e.letter) for e in graph.edges]
                k = rng.randrange(len(edges))
                u, v, gain, letter = edges[k]
                if graph.gain_group.order > 1 and u != v:
                    bumped = (gain + 1) % graph.gain_group.order
                    edges[k] = (u, v, bumped, letter)
                else:
                    # trivial gains: redirect the edge to a different vertex
                    others = [w for w in graph.vertices if w != v]
                    if not others:
                        edges.pop(k)
                    else:
                        edges[k] = (u, others[rng.randrange(len(others))], gain, letter)
                new_graph = GainGraph(graph.gain_group, graph.vertices, edges)
                automata = dict(automata)
                automata[key] = ContactAutomaton(new_graph, auto.d1, auto.d2, auto.model1, auto.model2)
                return ThetaEnv(models, automata)
        raise ValueError("no automaton with edges to corrupt")
    raise ValueError(f"unknown fault kind {kind!r}")


def inject_action_fault(actions: PartialActionTable, models: dict, seed: int = 0) -> PartialActionTable:
    """Corrupt one cocycle or redirect/delete one action target.

    All structurally legal single-entry perturbations are enumerated and the
    seed picks one, so tests can select a semantically visible corruption.
    """
    sigma = {k: dict(v) for k, v in actions.sigma.items()}
    tau = {k: dict(v) for k, v in actions.tau.items()}
    perturbations = []
    for kind, table in (("sigma", sigma), ("tau", tau)):
        for key in sorted(table):
            model = models[key[0]]
            mp = table[key]
            fixed = sorted({dst for (dst, _) in mp.values()})
            for src in sorted(mp):
                dst, coc = mp[src]
                if src == dst:
                    continue  # fixed points are pinned to identity cocycles
                for delta in range(1, model.group.order):
                    perturbations.append((mp, src, (dst, (coc + delta) % model.group.order)))
                for alt in fixed:
                    if alt != dst:
                        perturbations.append((mp, src, (alt, coc)))
                perturbations.append((mp, src, None))
    if not perturbations:
        raise ValueError("no corruptible action entry found")
    mp, src, value = perturbations[random.Random(seed).randrange(len(perturbations))]
    if value is None:
        del mp[src]
    else:
        mp[src] = value
    return PartialActionTable(actions.n_letters, sigma, tau)
