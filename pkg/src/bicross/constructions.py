"""Builders: primitive coproducts, crossed products and coproducts, bicrossproducts, Abelian twists."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import factorial

from .errors import ConfigurationError, InputError
from .hopf import (
    BialgebraStructure,
    CounitSolution,
    check_antipode_axiom,
    check_coassociativity,
    check_counit_axiom,
    require_verified,
    solve_antipode,
    solve_counit,
)
from .morphism import (
    ANTIMULTIPLICATIVE,
    AlgebraMorphism,
    LeftAction,
    LeftCoaction,
    RightAction,
    verify_comodule_coalgebra,
    verify_module_algebra,
    verify_morphism,
)
from .ncpoly import (
    GROUND,
    Element,
    Presentation,
    RawTerms,
    _add_into,
    apply_slots,
    check_confluence,
    random_element,
    tensor_elements,
    tensor_presentation,
)
from .report import Report
from .scalars import ONE, I, DeformationSeries, Q, as_scalar

log = logging.getLogger(__name__)

__all__ = [
    "ConstructionFailure",
    "ConfluenceError",
    "CrossedProduct",
    "BicrossData",
    "TwistSpec",
    "QuantumSpaceSpec",
    "primitive_coproduct",
    "half_primitive_coproduct",
    "crossed_product",
    "verify_crossed_product_matches",
    "crossed_coproduct",
    "crossed_coproduct_formula",
    "check_bicross_conditions",
    "bicrossproduct",
    "theta_twist",
    "heisenberg_twist",
    "twist_cocycle_check",
    "star_commutator",
    "star_product",
    "half_primitive_image",
]


@dataclass
class ConstructionFailure:
    """A builder could not produce a valid structure; ``report`` holds the residuals."""

    stage: str
    report: Report
    message: str = ""

    passed = False

    def render(self):
        head = f"construction failed at {self.stage}"
        if self.message:
            head += f": {self.message}"
        return "\n".join([head] + [r.render() for r in self.report.failures])


class ConfluenceError(ConfigurationError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def _mono(p, w, N):
    return Element(p, N, {(w, 0): ONE})


def _legs(x: Element):
    split = x.parent.split
    for (w, k), c in x._t.items():
        yield split(w), k, c


def _acc(out, e, k, c, N):
    for (w, k2), c2 in e._t.items():
        if k + k2 <= N:
            _add_into(out, (w, k + k2), c * c2)


# -- primitive and half-primitive coproducts ------------------------------------------


def primitive_coproduct(alg: Presentation, order: int, label=None):
    """``g -> g (x) 1 + 1 (x) g`` on generators, with solved counit and antipode.

    Returns a :class:`ConstructionFailure` carrying the relation residuals when
    the map is not an algebra morphism.
    """
    T = tensor_presentation([alg, alg])
    images = {}
    for g in alg.generators:
        x = alg.gen(g.sort_key, order)
        images[g.sort_key] = T.embed(x, 0) + T.embed(x, 1)
    D = AlgebraMorphism(alg, T, images, order, label="Delta")
    rep = verify_morphism(D, "morphism:primitive")
    if not rep.passed:
        return ConstructionFailure("primitive coproduct", rep, "not an algebra morphism")
    sol = solve_counit(alg, D)
    if not isinstance(sol, CounitSolution) or sol.morphism is None:
        return ConstructionFailure("primitive coproduct", rep, "counit not determined")
    B = BialgebraStructure(alg, D, sol.morphism, label=label or alg.label)
    S = solve_antipode(B)
    if isinstance(S, AlgebraMorphism):
        B.antipode = S
    else:
        B.notes.append(S.render())
    return B


def half_primitive_coproduct(alg: Presentation, side="left", order=0, label=None) -> BialgebraStructure:
    """``g -> g (x) 1`` (left) or ``g -> 1 (x) g`` (right); a non-counital bialgebra on any algebra."""
    if side not in ("left", "right"):
        raise InputError(f"side must be left or right, not {side!r}")
    slot = 0 if side == "left" else 1
    T = tensor_presentation([alg, alg])
    images = {g.sort_key: T.embed(alg.gen(g.sort_key, order), slot) for g in alg.generators}
    D = AlgebraMorphism(alg, T, images, order, label=f"Delta^{side[0].upper()}")
    rep = verify_morphism(D, "morphism:half-primitive")
    if not rep.passed:  # cannot happen for an associative presentation
        raise ConfigurationError(rep.failures[0].render())
    B = BialgebraStructure(alg, D, None, None, label=label or alg.label)
    B.notes.append(f"non-counital: {side} half-primitive coproduct")
    return B


def half_primitive_image(e: Element, side="left") -> Element:
    """``e (x) 1`` or ``1 (x) e``, the value of the half-primitive coproduct on any element."""
    one = e.parent.one(e.order)
    return tensor_elements(e, one) if side == "left" else tensor_elements(one, e)


# -- crossed products ------------------------------------------------------------------


def _ensure_module(action, degree=2):
    if getattr(action, "verified", False):
        return
    rep = verify_module_algebra(action, degree=degree, samples=1)
    if not rep.passed:
        raise ConfigurationError(f"{action.label} is not a module algebra: {rep.failures[0].render()}")
    action.verified = True


class CrossedProduct(Presentation):
    """The algebra on ``H (x) A`` (right action, H letters first) or ``A (x) H`` (left action)."""

    def __init__(self, H: Presentation, A: Presentation, action=None, side="right", order=0, label=None):
        if side not in ("left", "right"):
            raise InputError(f"side must be left or right, not {side!r}")
        clash = set(H.names) & set(A.names)
        if clash:
            raise InputError(f"generator names shared by both factors: {sorted(clash)}")
        self.H, self.A, self.side, self.action = H, A, side, action
        first, second = (H, A) if side == "right" else (A, H)
        self.first, self.second = first, second
        off = first.ngens
        self.offset = off
        N = order
        rels = []
        for f, o in ((first, 0), (second, off)):
            for r in f.rules():
                if r.remainder:
                    rem = RawTerms({(tuple(x + o for x in w), k): c for (w, k), c in r.remainder})
                    rels.append((r.high + o, r.low + o, rem))
        if action is not None:
            rels.extend(self._cross_rules(action, N))
        if label is None:
            sym = " |x " if side == "right" else " x| "
            label = f"{H.label}{sym}{A.label}" if side == "right" else f"{A.label}{sym}{H.label}"
        super().__init__(label, list(first.names) + list(second.names), rels)

    def _cross_rules(self, action, N):
        H, A, off = self.H, self.A, self.offset
        acting = action.acting
        if acting.alg is not H:
            raise ConfigurationError("action is not by the given bialgebra")
        rels = []
        for g in H.generators:
            d = acting.coproduct.images[g.sort_key]
            for a in A.generators:
                full = {}
                fa = _mono(A, (a.sort_key,), N)
                for (u, v), k, c in _legs(d):
                    if self.side == "right":
                        # a g = sum u (a <| v)
                        img = action.apply(fa, _mono(H, v, N))
                        for (w, k2), c2 in img._t.items():
                            if k + k2 <= N:
                                _add_into(full, (u + tuple(x + off for x in w), k + k2), c * c2)
                    else:
                        # g a = sum (u |> a) v
                        img = action.apply(fa, _mono(H, u, N))
                        for (w, k2), c2 in img._t.items():
                            if k + k2 <= N:
                                _add_into(full, (w + tuple(x + off for x in v), k + k2), c * c2)
                if self.side == "right":
                    lead = ((g.sort_key, a.sort_key + off), 0)
                    high, low = a.sort_key + off, g.sort_key
                else:
                    lead = ((a.sort_key, g.sort_key + off), 0)
                    high, low = g.sort_key + off, a.sort_key
                if full.pop(lead, None) != ONE:
                    raise ConfigurationError(
                        f"coproduct of {g.name} lacks the leading term with coefficient 1"
                    )
                rels.append((high, low, RawTerms(full)))
        return rels

    def embed_h(self, e: Element) -> Element:
        return self._embed(e, 0 if self.side == "right" else self.offset)

    def embed_a(self, e: Element) -> Element:
        return self._embed(e, self.offset if self.side == "right" else 0)

    def _embed(self, e, off):
        return Element(self, e.order, {(tuple(x + off for x in w), k): c for (w, k), c in e._t.items()})

    def split_pair(self, word):
        """Normal word -> (H word, A word)."""
        off = self.offset
        cut = next((i for i, x in enumerate(word) if x >= off), len(word))
        a, b = word[:cut], tuple(x - off for x in word[cut:])
        return (a, b) if self.side == "right" else (b, a)

    def join_pair(self, hw, aw):
        off = self.offset
        if self.side == "right":
            return hw + tuple(x + off for x in aw)
        return aw + tuple(x + off for x in hw)


def crossed_product(H: BialgebraStructure, A: Presentation, action, side="right", *,
                    order=None, confluence_degree=4, confluence_samples=200, seed=0) -> CrossedProduct:
    """Smash product from the action; confluence of the derived rules is certified."""
    if side == "right" and not isinstance(action, RightAction):
        raise ConfigurationError("the right crossed product needs a right action")
    if side == "left" and not isinstance(action, LeftAction):
        raise ConfigurationError("the left crossed product needs a left action")
    if action.module_alg is not A:
        raise ConfigurationError("action does not act on the given algebra")
    N = action.order if order is None else order
    _ensure_module(action)
    built = CrossedProduct(H.alg, A, action, side, N)
    rep = check_confluence(built, degree=confluence_degree, samples=confluence_samples, seed=seed, order=N)
    if not rep.confluent:
        raise ConfluenceError(f"derived rules of {built.label} are not confluent", rep)
    return built


def verify_crossed_product_matches(built: Presentation, target: Presentation, degree=3, *,
                                   bijection=None, order=0, samples=20, seed=0) -> Report:
    """Compare two presentations under a generator bijection ``{built_name: (target_name, scale)}``."""
    rep = Report(f"match:{built.label}")
    bij = {}
    for g in built.generators:
        spec = (bijection or {}).get(g.name, g.name)
        name, scale = spec if isinstance(spec, tuple) else (spec, 1)
        if name not in target:
            rep.add("match:generators", "FAIL", g.name, f"no generator {name} in {target.label}")
            return rep
        bij[g.sort_key] = (target.index(name), as_scalar(scale))
    if len({t for t, _s in bij.values()}) != target.ngens or built.ngens != target.ngens:
        rep.add("match:generators", "FAIL", "", "generator map is not a bijection")
        return rep
    N = order
    fwd = AlgebraMorphism(
        built, target, {i: target.gen(t, N).scale(s) for i, (t, s) in bij.items()}, N, label="match"
    )
    back = AlgebraMorphism(
        target, built, {t: built.gen(i, N).scale(s.inverse()) for i, (t, s) in bij.items()}, N, label="match-inverse"
    )
    for r in verify_morphism(fwd, "match:relations").records:
        rep.records.append(r)
    for r in verify_morphism(back, "match:relations-inverse").records:
        rep.records.append(r)
    rng = random.Random(seed)
    for i in range(samples):
        length = rng.randint(2, max(degree, 2))
        word = tuple(rng.randrange(built.ngens) for _ in range(length))
        lhs = fwd(built.monomial(word, N))
        rhs = target.one(N)
        for x in word:
            rhs = rhs * fwd.images[x]
        rep.check("match:words", lhs - rhs, built.render_word(word))
    return rep


# -- crossed coproducts ----------------------------------------------------------------


def _ensure_comodule(beta, degree=2):
    if getattr(beta, "verified", False):
        return
    rep = verify_comodule_coalgebra(beta, degree=degree, samples=1)
    if not rep.passed:
        raise ConfigurationError(f"{beta.label} is not a comodule coalgebra: {rep.failures[0].render()}")
    beta.verified = True


def crossed_coproduct_formula(space: CrossedProduct, Hc: BialgebraStructure, A: BialgebraStructure,
                              beta: LeftCoaction, e: Element) -> Element:
    """``L (x) f -> (L_(1) (x) L_(2)^(-1) f_(1)) (x) (L_(2)^(0) (x) f_(2))`` on every basis term of ``e``."""
    N = e.order
    T = tensor_presentation([space, space])
    Ta = tensor_presentation([A.alg, Hc.alg])
    out = {}
    for (w, k), c in e._t.items():
        hw, aw = space.split_pair(w)
        dH = Hc.coproduct(_mono(Hc.alg, hw, N))
        dA = A.coproduct(_mono(A.alg, aw, N))
        for (l1, l2), k1, c1 in _legs(dH):
            b2 = beta.coact_word(l2)
            for (f1, f2), k2, c2 in _legs(dA):
                for (bw, k3), c3 in b2._t.items():
                    a, b = Ta.split(bw)
                    kk = k + k1 + k2 + k3
                    if kk > N:
                        continue
                    cc = c * c1 * c2 * c3
                    for (af, k4), c4 in A.alg._mul_word(a, f1, N).items():
                        if kk + k4 > N:
                            continue
                        word = T.join((space.join_pair(l1, af), space.join_pair(b, f2)))
                        _add_into(out, (word, kk + k4), cc * c4)
    return Element(T, N, out)


def crossed_coproduct(Hc: BialgebraStructure, A: BialgebraStructure, beta: LeftCoaction,
                      algebra: CrossedProduct | None = None, label=None) -> BialgebraStructure:
    """Coalgebra on ``H (x) A`` twisted by the coaction; counit only when both factors have one.

    ``algebra`` supplies the product on ``H (x) A`` (default: the plain tensor
    product); the coproduct must be multiplicative for it.
    """
    if beta.comodule is not Hc or beta.coacting is not A:
        raise ConfigurationError("coaction does not match the given coalgebras")
    _ensure_comodule(beta)
    N = beta.order
    space = algebra or CrossedProduct(Hc.alg, A.alg, None, "right", N)
    if space.H is not Hc.alg or space.A is not A.alg or space.side != "right":
        raise ConfigurationError("algebra sector must be laid out as H (x) A")
    images = {}
    for g in space.generators:
        images[g.sort_key] = crossed_coproduct_formula(space, Hc, A, beta, _mono(space, (g.sort_key,), N))
    T = tensor_presentation([space, space])
    D = AlgebraMorphism(space, T, images, N, label="Delta")
    rep = verify_morphism(D, "morphism:crossed-coproduct")
    if not rep.passed:
        raise ConfigurationError(
            f"crossed coproduct is not multiplicative on {space.label}: {rep.failures[0].render()}"
        )
    counit = None
    if Hc.counit is not None and A.counit is not None:
        eps = {}
        for g in space.generators:
            hw, aw = space.split_pair((g.sort_key,))
            eps[g.sort_key] = (Hc.counit.images[hw[0]] if hw else A.counit.images[aw[0]])
        counit = AlgebraMorphism(space, GROUND, eps, N, label="eps")
        if not verify_morphism(counit).passed:
            raise ConfigurationError("product counit is not multiplicative")
    B = BialgebraStructure(space, D, counit, label=label or space.label)
    if counit is None:
        B.notes.append("non-counital: a factor has no counit")
        log.info("%s: crossed coproduct has no counit", B.label)
    return B


# -- bicrossproduct ----------------------------------------------------------------------


@dataclass
class BicrossData:
    H: BialgebraStructure
    A: BialgebraStructure
    action: RightAction
    coaction: LeftCoaction
    label: str = ""

    def __post_init__(self):
        if self.action.acting is not self.H or self.action.module_alg is not self.A.alg:
            raise ConfigurationError("action must be A <| H")
        if self.coaction.comodule is not self.H or self.coaction.coacting is not self.A:
            raise ConfigurationError("coaction must be H -> A (x) H")
        if self.coaction.action is None:
            # condition (B) mentions the action even for the trivial coaction
            self.coaction.action = self.action
        if not self.label:
            self.label = f"{self.H.label} >< {self.A.label}"

    @property
    def order(self):
        return self.action.order


def _cond_A1(data, f: Element, L: Element) -> Element:
    """``Delta_A(f <| L) - (f_(1) <| L_(1)) L_(2)^(-1) (x) f_(2) <| L_(2)^(0)``."""
    A, act, beta, N = data.A.alg, data.action, data.coaction, data.order
    lhs = data.A.coproduct(act.apply(f, L))
    T = lhs.parent
    Ta = beta.target
    out = {}
    dA = data.A.coproduct(f)
    dH = data.H.coproduct(L)
    for (f1, f2), k1, c1 in _legs(dA):
        for (l1, l2), k2, c2 in _legs(dH):
            left0 = act.act_words(f1, l1)
            for (bw, k3), c3 in beta.coact_word(l2)._t.items():
                a, b = Ta.split(bw)
                kk = k1 + k2 + k3
                if kk > N:
                    continue
                x = tensor_elements(left0 * _mono(A, a, N), act.act_words(f2, b))
                _acc(out, x, kk, c1 * c2 * c3, N)
    return lhs - Element(T, N, out)


def _cond_C(data, f: Element, L: Element) -> Element:
    """``(L_(1))^(-1) (f <| L_(2)) (x) (L_(1))^(0) - (f <| L_(1)) (L_(2))^(-1) (x) (L_(2))^(0)``."""
    A, act, beta, N = data.A.alg, data.action, data.coaction, data.order
    Ta = beta.target
    H = data.H.alg
    out = {}
    for (l1, l2), k1, c1 in _legs(data.H.coproduct(L)):
        fl2 = act.apply(f, _mono(H, l2, N))
        fl1 = act.apply(f, _mono(H, l1, N))
        for (bw, k2), c2 in beta.coact_word(l1)._t.items():
            a, b = Ta.split(bw)
            _acc(out, tensor_elements(_mono(A, a, N) * fl2, _mono(H, b, N)), k1 + k2, c1 * c2, N)
        for (bw, k2), c2 in beta.coact_word(l2)._t.items():
            a, b = Ta.split(bw)
            _acc(out, tensor_elements(fl1 * _mono(A, a, N), _mono(H, b, N)), k1 + k2, -(c1 * c2), N)
    return Element(Ta, N, out)


def check_bicross_conditions(data: BicrossData, degree=2, *, samples=2, seed=0, prechecks=True) -> Report:
    """Evaluate (A1), (A2), (B), (B2), (C) on all generator pairs and on random elements."""
    rep = Report(f"bicross:{data.label}")
    N = data.order
    A, H = data.A.alg, data.H.alg
    if prechecks:
        for sub in (
            verify_module_algebra(data.action, degree=degree, samples=1, seed=seed),
            verify_comodule_coalgebra(data.coaction, degree=degree, samples=1, seed=seed),
        ):
            rep.extend(sub)
    rng = random.Random(seed)
    fs = [(g.name, A.gen(g.sort_key, N)) for g in A.generators]
    Ls = [(g.name, H.gen(g.sort_key, N)) for g in H.generators]
    fr = [(f"random#{i}", random_element(A, N, rng, degree=degree)) for i in range(samples)]
    Lr = [(f"random#{i}", random_element(H, N, rng, degree=degree)) for i in range(samples)]
    pairs = [(a, b) for a in fs for b in Ls] + list(zip(fr, Lr))
    epsA, epsH = data.A.counit, data.H.counit
    for (fn, f), (ln, L) in pairs:
        gens = f"{fn},{ln}"
        rep.check("bicross:A1", _cond_A1(data, f, L), gens)
        if epsA is None or epsH is None:
            rep.skip("bicross:A2", gens, "needs both counits (non-counital mode)")
        else:
            lhs = epsA(data.action.apply(f, L)).scalar_part()
            rhs = epsA(f).scalar_part() * epsH(L).scalar_part()
            res = GROUND.scalar(lhs - rhs, N)
            rep.check("bicross:A2", res, gens)
        rep.check("bicross:C", _cond_C(data, f, L), gens)
    beta = data.coaction
    Lpairs = [(a, b) for a in Ls for b in Ls] + list(zip(Lr, reversed(Lr)))
    for (ln, L), (mn, M) in Lpairs:
        rep.check("bicross:B", beta.coact(L * M) - beta.product_formula(L, M), f"{ln},{mn}")
    rep.check("bicross:B2", beta.coact(H.one(N)) - tensor_elements(A.one(N), H.one(N)), "1")
    return rep


def bicrossproduct(data: BicrossData, *, degree=2, samples=2, seed=0, conditions: Report | None = None,
                   confluence_samples=200):
    """Crossed product algebra with crossed coproduct; the full axiom suite must pass.

    Returns the bundle (with ``report`` attached) or a :class:`ConstructionFailure`.
    """
    cond = conditions or check_bicross_conditions(data, degree, samples=samples, seed=seed)
    if not cond.passed:
        return ConstructionFailure("bicross conditions", cond, "compatibility conditions fail")
    data.action.verified = True
    data.coaction.verified = True
    space = crossed_product(data.H, data.A.alg, data.action, "right", confluence_samples=confluence_samples,
                            seed=seed)
    B = crossed_coproduct(data.H, data.A, data.coaction, algebra=space, label=data.label)
    suite = Report(f"suite:{data.label}")
    suite.extend(cond)
    suite.extend(check_coassociativity(B, degree, samples=samples, seed=seed))
    suite.extend(check_counit_axiom(B))
    if B.counit is not None:
        SH = data.H.antipode or _solved_antipode(data.H)
        SA = data.A.antipode or _solved_antipode(data.A)
        if SH is not None and SA is not None:
            B.antipode = _bicross_antipode(space, data, SH, SA)
            suite.extend(verify_morphism(B.antipode, "morphism:antipode"))
            suite.extend(check_antipode_axiom(B, degree, samples=samples, seed=seed))
    else:
        suite.notes.append("antipode skipped: no counit")
    B.report = suite
    B.checklist = {
        "conditions": cond.passed,
        "coassociative": all(r.ok for r in suite.of("coassoc")),
        "counital": B.counit is not None,
        "hopf": B.antipode is not None,
    }
    if not suite.passed:
        return ConstructionFailure("bicross axiom suite", suite, "bicrossproduct fails its axioms")
    return B


def _solved_antipode(B):
    if B.counit is None:
        return None
    S = solve_antipode(B)
    return S if isinstance(S, AlgebraMorphism) else None


def _bicross_antipode(space, data, SH, SA):
    """``S(L (x) f) = (1 (x) S_A(L^(-1) f)) (S_H(L^(0)) (x) 1)`` on generators."""
    N = data.order
    Ta = data.coaction.target
    images = {}
    for g in space.generators:
        hw, aw = space.split_pair((g.sort_key,))
        if aw:
            images[g.sort_key] = space.embed_a(SA.images[aw[0]])
            continue
        acc = space.zero(N)
        for (bw, k), c in data.coaction.coact_word(hw)._t.items():
            a, b = Ta.split(bw)
            left = space.embed_a(SA(_mono(data.A.alg, a, N)))
            right = space.embed_h(SH(_mono(data.H.alg, b, N)))
            acc = acc + (left * right).scale(_series(c, k, N))
        images[g.sort_key] = acc
    S = AlgebraMorphism(space, space, images, N, ANTIMULTIPLICATIVE, label="S")
    return S


def _series(c, k, N):
    return DeformationSeries.from_sparse({k: c}, N)


# -- twists --------------------------------------------------------------------------------


def _exp(X: Element) -> Element:
    """Truncated exponential of an element without h^0 part."""
    if X.h_part(0):
        raise InputError("twist exponent must carry an explicit factor of h")
    N = X.order
    out = X.parent.one(N)
    power = X.parent.one(N)
    for n in range(1, N + 1):
        power = power * X
        if not power:
            break
        out = out + power.scale(Q(1, factorial(n)))
    return out


@dataclass
class TwistSpec:
    """``F = exp(X_1) exp(X_2) ...`` for exponents ``X_j`` in ``H (x) H`` built from commuting primitives."""

    bialgebra: BialgebraStructure
    exponents: list
    theta: dict = field(default_factory=dict)
    lam: dict = field(default_factory=dict)
    label: str = "F"

    def __post_init__(self):
        H = self.bialgebra.alg
        letters = set()
        T = tensor_presentation([H, H])
        for X in self.exponents:
            if X.parent is not T:
                raise InputError("twist exponents must live in H (x) H")
            for parts, _k, _c in _legs(X):
                for part in parts:
                    letters.update(part)
        for a in letters:
            for b in letters:
                if a < b and not H.commutes(b, a):
                    raise InputError(
                        f"exponent letters {H.generators[a].name} and {H.generators[b].name} do not commute"
                    )
        N = self.bialgebra.order
        for a in letters:
            x = H.gen(a, N)
            prim = T.embed(x, 0) + T.embed(x, 1)
            if self.bialgebra.coproduct.images[a] != prim:
                raise InputError(f"exponent letter {H.generators[a].name} is not primitive")

    def element(self) -> Element:
        T = tensor_presentation([self.bialgebra.alg] * 2)
        out = T.one(self.bialgebra.order)
        for X in self.exponents:
            out = out * _exp(X)
        return out

    def inverse(self) -> Element:
        T = tensor_presentation([self.bialgebra.alg] * 2)
        out = T.one(self.bialgebra.order)
        for X in reversed(self.exponents):
            out = out * _exp(-X)
        return out


def _wedge(T, a: Element, b: Element) -> Element:
    """``a ^ b = a (x) b - b (x) a``."""
    return tensor_elements(a, b) - tensor_elements(b, a)


def theta_twist(B: BialgebraStructure, theta, gens=None, factor=1) -> TwistSpec:
    """``exp(factor * h * theta^{mu nu} P_mu ^ P_nu)`` summed over all index pairs.

    ``theta`` maps ``(mu, nu)`` (1-based, mu < nu) to a scalar; antisymmetry
    fills in the rest.
    """
    H, N = B.alg, B.order
    names = list(gens or H.names)
    T = tensor_presentation([H, H])
    full = _antisymmetric(theta, len(names))
    X = T.zero(N)
    hf = _series(as_scalar(factor), 1, N)
    for (m, n), t in full.items():
        X = X + _wedge(T, H.gen(names[m - 1], N), H.gen(names[n - 1], N)).scale(t)
    return TwistSpec(B, [X.scale(hf)], theta=full, label="F_theta")


def heisenberg_twist(B: BialgebraStructure, theta, lam, p_names, central) -> TwistSpec:
    """``exp(i h theta^{mu nu} P_mu ^ P_nu) exp(h lambda^mu P_mu ^ C)``; lambda is taken as order h."""
    H, N = B.alg, B.order
    T = tensor_presentation([H, H])
    full = _antisymmetric(theta, len(p_names))
    X1 = T.zero(N)
    for (m, n), t in full.items():
        X1 = X1 + _wedge(T, H.gen(p_names[m - 1], N), H.gen(p_names[n - 1], N)).scale(t)
    X1 = X1.scale(_series(I, 1, N))
    C = H.gen(central, N)
    X2 = T.zero(N)
    for mu, l in lam.items():
        X2 = X2 + _wedge(T, H.gen(p_names[mu - 1], N), C).scale(as_scalar(l))
    X2 = X2.scale(_series(ONE, 1, N))
    return TwistSpec(B, [X1, X2], theta=full, lam=dict(lam), label="F_hl")


def _antisymmetric(theta, n):
    full = {}
    for (m, nu), t in theta.items():
        t = as_scalar(t)
        if not (1 <= m <= n and 1 <= nu <= n):
            raise InputError(f"theta index ({m},{nu}) out of range")
        if m == nu:
            if t:
                raise InputError("theta must be antisymmetric")
            continue
        for key, val in (((m, nu), t), ((nu, m), -t)):
            if key in full and full[key] != val:
                raise InputError("theta must be antisymmetric")
            full[key] = val
    return full


def twist_cocycle_check(F: TwistSpec, B: BialgebraStructure | None = None, order=None) -> Report:
    """``F_12 (Delta (x) id)(F) == F_23 (id (x) Delta)(F)`` and the counit normalisation."""
    B = B or F.bialgebra
    if B.counit is None:
        raise ConfigurationError("twist checks need a counital bialgebra")
    require_verified(B.coproduct)
    N = B.order if order is None else order
    if N != B.order:
        raise ConfigurationError(f"twist check order {N} differs from bundle order {B.order}")
    rep = Report(f"twist:{F.label}")
    H = B.alg
    Fe = F.element()
    T3 = tensor_presentation([H, H, H])
    F12 = T3.embed(Fe, 0)
    F23 = T3.embed(Fe, 1)
    lhs = F12 * apply_slots(Fe, [B.coproduct, None])
    rhs = F23 * apply_slots(Fe, [None, B.coproduct])
    rep.check("twist:cocycle", lhs - rhs, F.label)
    one = H.one(N)
    left = _drop_ground(apply_slots(Fe, [B.counit, None]), H)
    right = _drop_ground(apply_slots(Fe, [None, B.counit]), H)
    rep.check("twist:counit-left", left - one, F.label)
    rep.check("twist:counit-right", right - one, F.label)
    return rep


def _drop_ground(x: Element, target: Presentation) -> Element:
    out = {}
    for parts, k, c in _legs(x):
        w = next(p for p, f in zip(parts, x.parent.factors) if f is not GROUND)
        _add_into(out, (w, k), c)
    return Element(target, x.order, out)


def star_product(F: TwistSpec, action: RightAction, f: Element, g: Element) -> Element:
    """``f * g = mul((f (x) g) <| F^{-1})``."""
    if action.acting.alg is not F.bialgebra.alg:
        raise ConfigurationError("action is not by the twisted bialgebra")
    H, A, N = F.bialgebra.alg, action.module_alg, action.order
    out = {}
    for (u, v), k, c in _legs(F.inverse()):
        x = action.apply(f, _mono(H, u, N)) * action.apply(g, _mono(H, v, N))
        _acc(out, x, k, c, N)
    return Element(A, N, out)


def star_commutator(F: TwistSpec, action: RightAction, xa, xb) -> Element:
    """``x_a * x_b - x_b * x_a``; for linear coordinates and the theta twist this is ``-4 h theta^{ab}``."""
    A, N = action.module_alg, action.order
    fa = xa if isinstance(xa, Element) else A.gen(xa, N)
    fb = xb if isinstance(xb, Element) else A.gen(xb, N)
    return star_product(F, action, fa, fb) - star_product(F, action, fb, fa)


# -- quantum spaces ------------------------------------------------------------------------


@dataclass
class QuantumSpaceSpec:
    """``x^mu x^nu - x^nu x^mu = theta^{mu nu} + theta^{mu nu}_l x^l + theta^{mu nu}_{rs} x^r x^s``.

    Keys use 1-based indices with ``mu > nu``; quadratic words must be normal (``r <= s``).
    """

    n: int
    constant: dict = field(default_factory=dict)
    linear: dict = field(default_factory=dict)
    quadratic: dict = field(default_factory=dict)
    symbol: str = "x"

    def presentation(self, label=None, *, check=True, samples=1000, degree=5) -> Presentation:
        names = [f"{self.symbol}{i}" for i in range(1, self.n + 1)]
        rems = {}

        def slot(mu, nu):
            if not (1 <= nu < mu <= self.n):
                raise InputError(f"quantum-space index pair ({mu},{nu}) must satisfy n >= mu > nu >= 1")
            return rems.setdefault((mu - 1, nu - 1), {})

        for (mu, nu), c in self.constant.items():
            _add_into(slot(mu, nu), (), as_scalar(c))
        for (mu, nu, lam), c in self.linear.items():
            _add_into(slot(mu, nu), (names[lam - 1],), as_scalar(c))
        for (mu, nu, r, s), c in self.quadratic.items():
            if r > s:
                raise InputError("quadratic quantum-space words must be written in normal order (r <= s)")
            _add_into(slot(mu, nu), (names[r - 1], names[s - 1]), as_scalar(c))
        rels = [(hi, lo, rem) for (hi, lo), rem in sorted(rems.items())]
        p = Presentation(label or f"qspace({self.n})", names, rels)
        if check:
            rep = check_confluence(p, degree=degree, samples=samples)
            if not rep.confluent:
                raise ConfluenceError(f"{p.label} is not confluent", rep)
        return p
