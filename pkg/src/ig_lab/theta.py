"""Coset propagation across a fingerprint chain, and everything it decides.

An element with fingerprint (D_1, ..., D_m) is a chain of Rees triples
(i_k, g_k, lam_k).  For two chains u, v with the same fingerprint, the
forward map theta pushes a right coset L x <= G_1 through the automata
A(D_k, D_{k+1}): at each step the running coset is widened to a "tall"
right coset in the dual product, intersected with the walk coset
W_{(lam_k, i_{k+1})} . g_{k,k+1}, and projected to the second factor, where
it becomes a left coset.  Emptiness propagates.  The dual map theta_bar
walks the chain backwards with "wide" cosets and first projections.

Everything downstream is membership and emptiness of these values:

  u = v        iff  i_1 = j_1, lam_m = mu_m, b_m a_m^-1 in theta({a_1^-1 b_1}, u, v)
  u R v        iff  i_1 = j_1 and theta({a_1^-1 b_1}, u, v) nonempty
  u L v        iff  lam_m = mu_m and b_m a_m^-1 in theta(G_1, u, v)
  u D v        iff  theta(G_1, u, v) nonempty          (and J = D)

For u = v = x with subgroup starts the values are subgroups of G_m; the
Schutzenberger group of H_x is theta(G_1, x, x) / theta({1}, x, x) (the
trivial-subgroup start realises the paper-level "(E,x,x)" value), and the
D-class census of x is index arithmetic in these subgroups.

Each coset step is mirrored by a brute-force set iteration used as a
reference oracle in the tests; the two must agree element for element.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FingerprintMismatch, MissingAutomaton, NormalityViolation
from .gain import ContactAutomaton
from .groups import (CosetDescriptor, FiniteGroup, Subgroup, coset_intersect, full_subgroup,
                     project1, project2, quotient, subgroup_closure, tall_subgroup,
                     trivial_subgroup, wide_subgroup)
from .rees import RegularDClassModel


@dataclass(frozen=True)
class TripleChain:
    """A product of Rees triples along a fingerprint; triples[k] lives in the
    model of fingerprint[k].  Adjacent triples never multiply inside one
    regular D-class (that is what minimality of the r-factorisation means)."""

    triples: tuple  # ((i, g, lam), ...)
    fingerprint: tuple  # (dclass_id, ...)

    def __post_init__(self):
        if len(self.triples) != len(self.fingerprint) or not self.triples:
            raise ValueError("chain and fingerprint lengths differ or are empty")

    def __len__(self):
        return len(self.triples)

    def coords(self, k: int) -> tuple:
        return self.triples[k]

    def to_json(self) -> dict:
        return {"triples": [list(t) for t in self.triples], "fingerprint": list(self.fingerprint)}


@dataclass
class ThetaEnv:
    """Models plus the contact automata the propagation needs."""

    models: dict  # dclass_id -> RegularDClassModel
    automata: dict  # (dclass_id, dclass_id) -> ContactAutomaton

    def model(self, d: int) -> RegularDClassModel:
        return self.models[d]

    def automaton(self, d1: int, d2: int) -> ContactAutomaton:
        try:
            return self.automata[(d1, d2)]
        except KeyError:
            raise MissingAutomaton(f"no contact automaton for D-class pair ({d1}, {d2})") from None

    def validate_chain(self, chain: TripleChain) -> None:
        for k, (t, d) in enumerate(zip(chain.triples, chain.fingerprint)):
            model = self.models[d]
            i, g, lam = t
            if not (0 <= i < model.n_i and 0 <= lam < model.n_lambda and 0 <= g < model.group.order):
                raise ValueError(f"triple #{k} out of range for model {d}")
            if k and chain.fingerprint[k - 1] == d:
                prev = chain.triples[k - 1]
                if model.p(prev[2], i) is not None:
                    raise ValueError(
                        f"triples #{k - 1}, #{k} multiply inside D-class {d}; chain is not minimal")


@dataclass
class ThetaResult:
    """Value of one propagation: empty, or a one-sided coset, plus the trace."""

    value: CosetDescriptor | None
    trace: tuple = ()

    @property
    def is_empty(self) -> bool:
        return self.value is None

    def element_set(self) -> frozenset:
        return frozenset() if self.value is None else self.value.element_set()

    def __contains__(self, g: int) -> bool:
        return self.value is not None and g in self.value.element_set()

    def subgroup_or_none(self) -> Subgroup | None:
        """The value as a subgroup when it is one (identity-containing coset)."""
        if self.value is None:
            return None
        if self.value.subgroup.parent.identity not in self.value.element_set():
            return None
        return self.value.subgroup

    def to_json(self) -> dict:
        if self.value is None:
            return {"empty": True, "trace": [t for t in self.trace]}
        return {
            "empty": False,
            "side": self.value.side,
            "representative": self.value.representative,
            "subgroup": list(self.value.subgroup.elements),
            "trace": [t for t in self.trace],
        }


def _check_pair(u: TripleChain, v: TripleChain) -> int:
    if u.fingerprint != v.fingerprint:
        raise FingerprintMismatch(f"fingerprints differ: {u.fingerprint} vs {v.fingerprint}")
    return len(u)


def singleton_start(group: FiniteGroup, g: int) -> CosetDescriptor:
    return CosetDescriptor(trivial_subgroup(group), g, "right")


def full_start(group: FiniteGroup) -> CosetDescriptor:
    return CosetDescriptor(full_subgroup(group), group.identity, "right")


def theta(start: CosetDescriptor, u: TripleChain, v: TripleChain, env: ThetaEnv,
          *, collect_trace: bool = True) -> ThetaResult:
    """(start, u, v) |-> A_m: forward coset propagation; start is a right
    coset L x in G_1 and the value a left coset in G_m (or empty)."""
    m = _check_pair(u, v)
    if m < 2:
        raise ValueError("theta is defined for chains of length >= 2")
    g1 = env.model(u.fingerprint[0]).group
    if start.side != "right" or start.subgroup.parent is not g1:
        raise ValueError("theta start must be a right coset in G_1")
    trace: list = []
    # A_k as (subgroup M_k, representative x_k, side): right coset for k = 1,
    # left cosets afterwards.
    sub, rep, side = start.subgroup, start.representative, "right"
    for k in range(m - 1):
        dk, dk1 = u.fingerprint[k], u.fingerprint[k + 1]
        auto = env.automaton(dk, dk1)
        gk, gk1 = env.model(dk).group, env.model(dk1).group
        g12 = auto.gain_group
        lam_u, i_u = u.triples[k][2], u.triples[k + 1][0]
        lam_v, i_v = v.triples[k][2], v.triples[k + 1][0]
        walk = auto.graph.walk_coset((lam_u, i_u), (lam_v, i_v))
        if walk is None:
            trace.append({"step": k + 1, "walk": None, "result": "empty"})
            return ThetaResult(None, tuple(trace))
        if k == 0:
            # (L x G_2) (x, 1)
            tall_sub, tall_rep = start.subgroup, start.representative
        else:
            a_k, b_k = u.triples[k][1], v.triples[k][1]
            # a_k^-1 (x M)^-1 b_k = (a_k^-1 M a_k) . (a_k^-1 x^-1 b_k)
            tall_sub = sub.conjugate(a_k)
            tall_rep = gk.mul(gk.mul(gk.inv(a_k), gk.inv(rep)), b_k)
        tall = CosetDescriptor(tall_subgroup(g12, tall_sub), g12.pair(tall_rep, gk1.identity), "right")
        meet = coset_intersect(g12, tall, walk)
        if meet is None:
            trace.append({"step": k + 1, "walk": walk.representative, "result": "empty"})
            return ThetaResult(None, tuple(trace))
        sub = project2(g12, meet.subgroup)
        rep = g12.pi2(meet.representative)
        side = "left"
        if collect_trace:
            trace.append({"step": k + 1, "walk": walk.representative,
                          "subgroup": list(sub.elements), "representative": rep})
    return ThetaResult(CosetDescriptor(sub, rep, side), tuple(trace))


def theta_bar(start: CosetDescriptor, u: TripleChain, v: TripleChain, env: ThetaEnv,
              *, collect_trace: bool = True) -> ThetaResult:
    """Dual propagation: start is a right coset in G_m, the walk runs
    backwards with wide cosets and first projections, and the value is
    normalised to a left coset in G_1."""
    m = _check_pair(u, v)
    if m < 2:
        raise ValueError("theta_bar is defined for chains of length >= 2")
    gm = env.model(u.fingerprint[-1]).group
    if start.side != "right" or start.subgroup.parent is not gm:
        raise ValueError("theta_bar start must be a right coset in G_m")
    trace: list = []
    sub, rep = start.subgroup, start.representative
    for back in range(m - 1):
        k = m - 2 - back  # automaton A(D_k, D_k+1), walking right to left
        dk, dk1 = u.fingerprint[k], u.fingerprint[k + 1]
        auto = env.automaton(dk, dk1)
        gk, gk1 = env.model(dk).group, env.model(dk1).group
        g12 = auto.gain_group
        lam_u, i_u = u.triples[k][2], u.triples[k + 1][0]
        lam_v, i_v = v.triples[k][2], v.triples[k + 1][0]
        walk = auto.graph.walk_coset((lam_u, i_u), (lam_v, i_v))
        if walk is None:
            trace.append({"step": k + 1, "walk": None, "result": "empty"})
            return ThetaResult(None, tuple(trace))
        if back == 0:
            # G_{m-1} x (N z): a dual-product right coset has second
            # components z . H, so take H = z^-1 N z
            wide_sub, wide_rep = sub.conjugate(rep), rep
        else:
            a, b = u.triples[k + 1][1], v.triples[k + 1][1]
            # b^-1 (N z)^-1 a = (b^-1 z^-1 a) . (a^-1 N a)
            r2 = gk1.mul(gk1.mul(gk1.inv(b), gk1.inv(rep)), a)
            wide_sub, wide_rep = sub.conjugate(a), r2
        wide = CosetDescriptor(wide_subgroup(g12, wide_sub), g12.pair(gk.identity, wide_rep), "right")
        meet = coset_intersect(g12, wide, walk)
        if meet is None:
            trace.append({"step": k + 1, "walk": walk.representative, "result": "empty"})
            return ThetaResult(None, tuple(trace))
        proj_sub = project1(g12, meet.subgroup)
        proj_rep = g12.pi1(meet.representative)
        sub, rep = proj_sub, proj_rep
        if collect_trace:
            trace.append({"step": k + 1, "walk": walk.representative,
                          "subgroup": list(sub.elements), "representative": rep})
    # the accumulated value is the right coset (sub . rep) in G_1; report it
    # as the left coset rep . (rep^-1 sub rep), the shape the theory quotes
    g1 = env.model(u.fingerprint[0]).group
    left_sub = sub.conjugate(rep)
    return ThetaResult(CosetDescriptor(left_sub, rep, "left"), tuple(trace))


# -- brute-force set references (the oracle side of the dual route) ----------


def theta_setwise(start_set, u: TripleChain, v: TripleChain, env: ThetaEnv) -> frozenset:
    m = _check_pair(u, v)
    current = frozenset(start_set)
    for k in range(m - 1):
        auto = env.automaton(u.fingerprint[k], u.fingerprint[k + 1])
        gk = env.model(u.fingerprint[k]).group
        gk1 = env.model(u.fingerprint[k + 1]).group
        g12 = auto.gain_group
        walk = auto.graph.walk_coset((u.triples[k][2], u.triples[k + 1][0]),
                                     (v.triples[k][2], v.triples[k + 1][0]))
        if walk is None or not current:
            return frozenset()
        walk_set = walk.element_set()
        if k == 0:
            tall_first = current
        else:
            a, b = u.triples[k][1], v.triples[k][1]
            tall_first = {gk.mul(gk.mul(gk.inv(a), gk.inv(x)), b) for x in current}
        current = frozenset(g12.pi2(p) for p in walk_set if g12.pi1(p) in tall_first)
    return current


def theta_bar_setwise(u: TripleChain, v: TripleChain, start_set, env: ThetaEnv) -> frozenset:
    m = _check_pair(u, v)
    current = frozenset(start_set)
    for back in range(m - 1):
        k = m - 2 - back
        auto = env.automaton(u.fingerprint[k], u.fingerprint[k + 1])
        gk1 = env.model(u.fingerprint[k + 1]).group
        g12 = auto.gain_group
        walk = auto.graph.walk_coset((u.triples[k][2], u.triples[k + 1][0]),
                                     (v.triples[k][2], v.triples[k + 1][0]))
        if walk is None or not current:
            return frozenset()
        walk_set = walk.element_set()
        if back == 0:
            wide_second = current
        else:
            a, b = u.triples[k + 1][1], v.triples[k + 1][1]
            wide_second = {gk1.mul(gk1.mul(gk1.inv(b), gk1.inv(x)), a) for x in current}
        current = frozenset(g12.pi1(p) for p in walk_set if g12.pi2(p) in wide_second)
    return current


# -- decisions ----------------------------------------------------------------


@dataclass
class EqualityCertificate:
    equal: bool
    reason: str
    theta_trace: tuple = ()
    membership: int | None = None

    def to_json(self) -> dict:
        return {"equal": self.equal, "reason": self.reason,
                "membership_witness": self.membership,
                "theta_trace": [t for t in self.theta_trace]}


def ig_equal(u: TripleChain, v: TripleChain, env: ThetaEnv) -> tuple[bool, EqualityCertificate]:
    """Chain equality in IG(E), per the fingerprint/theta characterisation."""
    if u.fingerprint != v.fingerprint:
        return False, EqualityCertificate(False, "fingerprint-mismatch")
    m = len(u)
    if m == 1:
        same = u.triples[0] == v.triples[0]
        return same, EqualityCertificate(same, "rees-triple-comparison")
    (i1, a1, _), (j1, b1, _) = u.triples[0], v.triples[0]
    (_, am, lam_m), (_, bm, mu_m) = u.triples[-1], v.triples[-1]
    if i1 != j1:
        return False, EqualityCertificate(False, "first-row-differs")
    if lam_m != mu_m:
        return False, EqualityCertificate(False, "last-column-differs")
    g1 = env.model(u.fingerprint[0]).group
    gm = env.model(u.fingerprint[-1]).group
    res = theta(singleton_start(g1, g1.mul(g1.inv(a1), b1)), u, v, env)
    target = gm.mul(bm, gm.inv(am))
    ok = target in res
    return ok, EqualityCertificate(ok, "theta-membership", res.trace, target)


def green(u: TripleChain, v: TripleChain, rel: str, env: ThetaEnv, *, dual: bool = False) -> bool:
    """Green's relation tests; rel in {R, L, H, D, J}.  J delegates to D.
    With dual=True the theta_bar formulas are used instead."""
    rel = rel.upper()
    if rel == "J":
        rel = "D"
    if rel not in ("R", "L", "H", "D"):
        raise ValueError(f"unknown relation {rel!r}")
    if u.fingerprint != v.fingerprint:
        return False
    m = len(u)
    if m == 1:
        (i, _, lam), (j, _, mu) = u.triples[0], v.triples[0]
        if rel == "R":
            return i == j
        if rel == "L":
            return lam == mu
        if rel == "H":
            return i == j and lam == mu
        return True  # same regular D-class
    if rel == "H":
        return (green(u, v, "R", env, dual=dual) and green(u, v, "L", env, dual=dual))
    (i1, a1, _), (j1, b1, _) = u.triples[0], v.triples[0]
    (_, am, lam_m), (_, bm, mu_m) = u.triples[-1], v.triples[-1]
    g1 = env.model(u.fingerprint[0]).group
    gm = env.model(u.fingerprint[-1]).group
    a1b1 = g1.mul(g1.inv(a1), b1)
    bmam = gm.mul(bm, gm.inv(am))
    if not dual:
        if rel == "R":
            return i1 == j1 and not theta(singleton_start(g1, a1b1), u, v, env).is_empty
        if rel == "L":
            return lam_m == mu_m and bmam in theta(full_start(g1), u, v, env)
        return not theta(full_start(g1), u, v, env).is_empty
    if rel == "R":
        return i1 == j1 and a1b1 in theta_bar(full_start(gm), u, v, env)
    if rel == "L":
        return lam_m == mu_m and not theta_bar(singleton_start(gm, bmam), u, v, env).is_empty
    return not theta_bar(full_start(gm), u, v, env).is_empty


@dataclass
class SchutzDescriptor:
    """Gamma_{H_x} as the quotient K / L of subgroups of one maximal subgroup."""

    ambient_label: str
    ambient: FiniteGroup
    k: Subgroup
    l: Subgroup
    quotient: FiniteGroup
    dual: "SchutzDescriptor | None" = None

    @property
    def order(self) -> int:
        return self.quotient.order

    def to_json(self) -> dict:
        out = {"ambient": self.ambient_label, "k": list(self.k.elements), "l": list(self.l.elements),
               "order": self.order}
        if self.dual is not None:
            out["dual"] = self.dual.to_json()
        return out


def schutzenberger(x: TripleChain, env: ThetaEnv) -> SchutzDescriptor:
    """K = theta(G_1, x, x), L = theta({1}, x, x), Gamma = K / L; the dual
    theta_bar quotient is computed alongside and must have the same order."""
    m = len(x)
    if m == 1:
        g = env.model(x.fingerprint[0]).group
        full, triv = full_subgroup(g), trivial_subgroup(g)
        return SchutzDescriptor(f"G(D{x.fingerprint[0]})", g, full, triv, quotient(g, full, triv))
    g1 = env.model(x.fingerprint[0]).group
    gm = env.model(x.fingerprint[-1]).group
    k_res = theta(full_start(g1), x, x, env)
    l_res = theta(singleton_start(g1, g1.identity), x, x, env)
    k_sub, l_sub = k_res.subgroup_or_none(), l_res.subgroup_or_none()
    if k_sub is None or l_sub is None:
        raise NormalityViolation("theta(x, x) values are not subgroups; propagation is inconsistent")
    try:
        q = quotient(gm, k_sub, l_sub)
    except Exception as exc:
        raise NormalityViolation(f"trivial-start value is not normal in the full-start value: {exc}") from exc
    kb_res = theta_bar(full_start(gm), x, x, env)
    lb_res = theta_bar(singleton_start(gm, gm.identity), x, x, env)
    kb, lb = kb_res.subgroup_or_none(), lb_res.subgroup_or_none()
    if kb is None or lb is None:
        raise NormalityViolation("theta_bar(x, x) values are not subgroups; propagation is inconsistent")
    try:
        qb = quotient(g1, kb, lb)
    except Exception as exc:
        raise NormalityViolation(f"dual trivial-start value is not normal: {exc}") from exc
    if qb.order != q.order:
        raise NormalityViolation(
            f"theta and theta_bar quotient orders disagree: {q.order} vs {qb.order}")
    dual = SchutzDescriptor(f"G(D{x.fingerprint[0]})", g1, kb, lb, qb)
    return SchutzDescriptor(f"G(D{x.fingerprint[-1]})", gm, k_sub, l_sub, q, dual=dual)


@dataclass
class CensusReport:
    """The six Theorem-level census quantities of the D-class of x."""

    n_r_classes: int
    n_l_classes: int
    h_size: int
    r_size: int
    l_size: int
    d_size: int

    def to_json(self) -> dict:
        return {
            "r_classes": self.n_r_classes,
            "l_classes": self.n_l_classes,
            "h_class_size": self.h_size,
            "r_class_size": self.r_size,
            "l_class_size": self.l_size,
            "d_class_size": self.d_size,
        }


def dclass_census(x: TripleChain, env: ThetaEnv) -> CensusReport:
    m = len(x)
    model1 = env.model(x.fingerprint[0])
    modelm = env.model(x.fingerprint[-1])
    n_i1, n_lm = model1.n_i, modelm.n_lambda
    g1, gm = model1.group, modelm.group
    if m == 1:
        g = g1.order
        return CensusReport(model1.n_i, model1.n_lambda, g,
                            model1.n_lambda * g, model1.n_i * g,
                            model1.n_i * model1.n_lambda * g)
    desc = schutzenberger(x, env)
    k_theta, l_theta = desc.k, desc.l
    k_bar, l_bar = desc.dual.k, desc.dual.l
    n_r = n_i1 * (g1.order // k_bar.order)
    n_l = n_lm * (gm.order // k_theta.order)
    h = k_theta.order // l_theta.order
    r_size = n_lm * (gm.order // l_theta.order)
    l_size = n_i1 * (g1.order // l_bar.order)
    d_size = n_i1 * n_lm * (g1.order // l_bar.order) * (gm.order // k_theta.order)
    d_size_alt = n_i1 * n_lm * (g1.order // k_bar.order) * (gm.order // l_theta.order)
    if d_size != d_size_alt:
        raise NormalityViolation(f"census cross-check failed: {d_size} != {d_size_alt}")
    return CensusReport(n_r, n_l, h, r_size, l_size, d_size)


def translate_right(x: TripleChain, g: int, env: ThetaEnv) -> TripleChain | None:
    """x . (i_m, g, lam_m): right translation by a triple in the last H-class's
    column; None when the Rees product falls out of D_m (sandwich zero)."""
    model = env.model(x.fingerprint[-1])
    i_m, a_m, lam_m = x.triples[-1]
    product = model.multiply((i_m, a_m, lam_m), (i_m, g, lam_m))
    if product is None:
        return None
    return TripleChain(x.triples[:-1] + (product,), x.fingerprint)
