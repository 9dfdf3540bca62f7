"""Synthetic D-class structures for exercising the coset machinery.

Small natural biorders only realise trivial maximal subgroups, so the
propagation layer is additionally tested over synthetic models: Rees data
(index sets, group, sandwich) plus either hand-designed contact automata or
partial-action tables fed through build_contact.  Models supplied this way
carry no representative words; they are validated against the stated model
invariants and used purely at the chain level.
"""

from __future__ import annotations

import random

from .gain import ContactAutomaton, GainGraph, build_contact
from .groups import FiniteGroup, cyclic_group, dual_product, klein_four, symmetric_group
from .rees import PartialActionTable, RegularDClassModel
from .theta import ThetaEnv, TripleChain


def synthetic_model(dclass_id: int, group: FiniteGroup, n_i: int = 1, n_lambda: int = 1,
                    sandwich=None) -> RegularDClassModel:
    """A bare Rees model; default sandwich is all-identity (every H-class
    idempotent-bearing), which trivially satisfies the nonzero-pattern rules."""
    if sandwich is None:
        sandwich = tuple(tuple(group.identity for _ in range(n_i)) for _ in range(n_lambda))
    model = RegularDClassModel(
        dclass_id=dclass_id, group=group, n_i=n_i, n_lambda=n_lambda,
        sandwich=tuple(tuple(row) for row in sandwich))
    model.validate()
    return model


def involutions(group: FiniteGroup) -> list[int]:
    return [g for g in group.elements() if group.mul(g, g) == group.identity]


def random_gain_graph(rng: random.Random, group: FiniteGroup, n_vertices: int,
                      n_edges: int, vertices=None) -> GainGraph:
    """Random multigraph with legal gains (loops draw from the involutions)."""
    verts = list(vertices) if vertices is not None else list(range(n_vertices))
    invs = involutions(group)
    edges = []
    for _ in range(n_edges):
        u, v = rng.choice(verts), rng.choice(verts)
        gain = rng.choice(invs) if u == v else rng.randrange(group.order)
        edges.append((u, v, gain))
    return GainGraph(group, verts, edges)


def direct_automaton(m1: RegularDClassModel, m2: RegularDClassModel, edges,
                     *, max_group_order: int = 5000) -> ContactAutomaton:
    """A contact automaton drawn directly as a gain graph on Lambda_1 x I_2."""
    g12 = dual_product(m1.group, m2.group, max_order=max_group_order)
    vertices = [(lam, i) for lam in range(m1.n_lambda) for i in range(m2.n_i)]
    packed = []
    for e in edges:
        u, v = e[0], e[1]
        gain = e[2] if len(e) > 3 or not isinstance(e[2], tuple) else e[2]
        if isinstance(gain, tuple):
            gain = g12.pair(*gain)
        letter = e[3] if len(e) > 3 else None
        packed.append((u, v, gain, letter))
    graph = GainGraph(g12, vertices, packed)
    return ContactAutomaton(graph, m1.dclass_id, m2.dclass_id, m1, m2)


def random_idempotent_action(rng: random.Random, size: int, group: FiniteGroup) -> dict:
    """A random partial map that is idempotent with identity cocycles on its
    image, the coherence the letter relation e.e = e forces."""
    if size == 0 or rng.random() < 0.25:
        return {}
    n_fixed = rng.randint(1, size)
    fixed = sorted(rng.sample(range(size), n_fixed))
    mp = {f: (f, group.identity) for f in fixed}
    for x in range(size):
        if x in mp:
            continue
        if rng.random() < 0.5:
            mp[x] = (rng.choice(fixed), rng.randrange(group.order))
    return mp


def random_action_table(rng: random.Random, models: dict, n_letters: int) -> PartialActionTable:
    sigma: dict = {}
    tau: dict = {}
    for d, model in sorted(models.items()):
        for e in range(n_letters):
            smap = random_idempotent_action(rng, model.n_i, model.group)
            tmap = random_idempotent_action(rng, model.n_lambda, model.group)
            if smap:
                sigma[(d, e)] = smap
            if tmap:
                tau[(d, e)] = tmap
    table = PartialActionTable(n_letters=n_letters, sigma=sigma, tau=tau)
    table.validate(models)
    return table


GROUP_MAKERS = {
    "S3": lambda: symmetric_group(3),
    "Z4": lambda: cyclic_group(4),
    "V4": klein_four,
    "Z6": lambda: cyclic_group(6),
    "S4": lambda: symmetric_group(4),
}


def random_fixture(rng: random.Random, m: int, *, group_names=("S3", "Z4", "V4"),
                   max_index: int = 2, n_letters: int = 3, via_actions: bool = True):
    """A chain-length-m synthetic environment plus two random chains in it.

    Returns (env, u, v).  With via_actions the automata come from random
    action tables through build_contact, otherwise they are drawn directly
    as random gain graphs on the proper vertex sets.
    """
    models = {}
    for k in range(m):
        g = GROUP_MAKERS[rng.choice(list(group_names))]()
        models[k] = synthetic_model(k, g, rng.randint(1, max_index), rng.randint(1, max_index))
    automata = {}
    if via_actions:
        actions = random_action_table(rng, models, n_letters)
        for k in range(m - 1):
            automata[(k, k + 1)] = build_contact(models[k], models[k + 1], actions)
    else:
        for k in range(m - 1):
            m1, m2 = models[k], models[k + 1]
            g12 = dual_product(m1.group, m2.group)
            verts = [(lam, i) for lam in range(m1.n_lambda) for i in range(m2.n_i)]
            n_edges = rng.randint(0, 2 * len(verts))
            graph = random_gain_graph(rng, g12, 0, n_edges, vertices=verts)
            automata[(k, k + 1)] = ContactAutomaton(graph, k, k + 1, m1, m2)
    env = ThetaEnv(models, automata)

    def rand_chain():
        triples = tuple(
            (rng.randrange(models[k].n_i), rng.randrange(models[k].group.order),
             rng.randrange(models[k].n_lambda))
            for k in range(m))
        return TripleChain(triples, tuple(range(m)))

    return env, rand_chain(), rand_chain()


def s3_sign_fixture():
    """The designed fixture whose Schutzenberger group has order 2.

    m = 2, both groups S3.  The single contact automaton has vertex group
    W = {(g, h) : sgn g = sgn h} of order 18 at the chain vertex: two
    transposition loops generate the twisted diagonal {(g, g^-1)}, and a
    parallel pair contributes (c, c) for a 3-cycle c.  Then the full-start
    propagation value is S3, the trivial-start value is A3, and the quotient
    has order 2.
    """
    s3 = symmetric_group(3)
    d1 = synthetic_model(0, s3, n_i=1, n_lambda=2)
    d2 = synthetic_model(1, s3, n_i=1, n_lambda=1)
    t12 = s3.perm_index((1, 0, 2))  # (12)
    t13 = s3.perm_index((2, 1, 0))  # (13)
    c3 = s3.perm_index((1, 2, 0))   # (123)
    e = s3.identity
    edges = [
        ((0, 0), (0, 0), (t12, t12)),
        ((0, 0), (0, 0), (t13, t13)),
        ((0, 0), (1, 0), (c3, c3)),
        ((0, 0), (1, 0), (e, e)),
    ]
    auto = direct_automaton(d1, d2, edges)
    env = ThetaEnv({0: d1, 1: d2}, {(0, 1): auto})
    x = TripleChain(((0, e, 0), (0, e, 0)), (0, 1))
    return env, x


def s3_action_fixture():
    """An action-table fixture over S3: nontrivial cocycles feed build_contact.

    Returns (models, actions, env, x).  The frozen expectations in the tests
    were computed with the set-based propagation reference at design time.
    """
    s3 = symmetric_group(3)
    d0 = synthetic_model(0, s3, n_i=1, n_lambda=2)
    d1 = synthetic_model(1, s3, n_i=2, n_lambda=1)
    e = s3.identity
    t12 = s3.perm_index((1, 0, 2))
    c3 = s3.perm_index((1, 2, 0))
    models = {0: d0, 1: d1}
    sigma = {
        (1, 0): {0: (0, e), 1: (0, c3)},
        (1, 1): {0: (0, e)},
    }
    tau = {
        (0, 0): {0: (0, e), 1: (0, t12)},
        (0, 1): {0: (0, e), 1: (0, c3)},
    }
    actions = PartialActionTable(n_letters=2, sigma=sigma, tau=tau)
    actions.validate(models)
    env = ThetaEnv(models, {(0, 1): build_contact(d0, d1, actions)})
    x = TripleChain(((0, e, 0), (0, e, 0)), (0, 1))
    return models, actions, env, x


def z4_fixture():
    """m = 3 over Z4 with designed walks; exercises multi-step propagation."""
    z4 = cyclic_group(4)
    models = {k: synthetic_model(k, z4, n_i=2, n_lambda=2) for k in range(3)}
    g12 = None
    automata = {}
    edges01 = [((0, 0), (0, 0), (2, 2)), ((0, 0), (1, 1), (1, 0)), ((1, 0), (0, 1), (0, 1))]
    edges12 = [((0, 0), (1, 0), (1, 1)), ((1, 0), (0, 1), (2, 0)), ((1, 1), (1, 1), (2, 2))]
    automata[(0, 1)] = direct_automaton(models[0], models[1], edges01)
    automata[(1, 2)] = direct_automaton(models[1], models[2], edges12)
    env = ThetaEnv(models, automata)
    x = TripleChain(((0, 0, 0), (0, 1, 1), (0, 2, 1)), (0, 1, 2))
    return env, x
