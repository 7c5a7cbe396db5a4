"""Structure maps: algebra (anti)morphisms, right/left module actions, left coactions.

Maps are fixed by their values on generators and extended by the usual
rules; every ``verify_*`` function reports residuals rather than raising.
"""

from __future__ import annotations

import logging
import random

from .errors import ConfigurationError, InputError
from .ncpoly import (
    GROUND,
    Element,
    Presentation,
    apply_slots,
    random_element,
    regroup,
    slot_factors,
    tensor_elements,
    tensor_presentation,
)
from .report import Report
from .scalars import ONE, DeformationSeries

log = logging.getLogger(__name__)

__all__ = [
    "AlgebraMorphism",
    "apply_morphism",
    "verify_morphism",
    "RightAction",
    "LeftAction",
    "act",
    "verify_module_algebra",
    "LeftCoaction",
    "coact",
    "verify_comodule_coalgebra",
]

MULTIPLICATIVE = "multiplicative"
ANTIMULTIPLICATIVE = "antimultiplicative"


def _as_element(value, parent, order):
    if isinstance(value, Element):
        if value.parent is not parent:
            raise InputError(f"image lives in {value.parent.label}, expected {parent.label}")
        if value.order != order:
            raise ConfigurationError(f"truncation order mismatch: {value.order} vs {order}")
        return value
    return parent.scalar(value, order)


class AlgebraMorphism:
    """A unital (anti)multiplicative map fixed by generator images."""

    def __init__(self, domain: Presentation, codomain: Presentation, images, order, parity=MULTIPLICATIVE, label="map"):
        if parity not in (MULTIPLICATIVE, ANTIMULTIPLICATIVE):
            raise InputError(f"unknown parity {parity!r}")
        self.domain = domain
        self.codomain = codomain
        self.order = order
        self.parity = parity
        self.label = label
        imgs = []
        for g in domain.generators:
            if g.name in images:
                v = images[g.name]
            elif g.sort_key in images:
                v = images[g.sort_key]
            else:
                raise InputError(f"{label}: no image for generator {g.name}")
            imgs.append(_as_element(v, codomain, order))
        self.images = tuple(imgs)
        self.verified = False
        self._cache = {(): codomain.one(order)}

    def image(self, name) -> Element:
        i = name if isinstance(name, int) else self.domain.index(name)
        return self.images[i]

    def word_image(self, word) -> Element:
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        head = self.word_image(word[:-1])
        last = self.images[word[-1]]
        res = head * last if self.parity == MULTIPLICATIVE else last * head
        self._cache[word] = res
        return res

    def __call__(self, e: Element) -> Element:
        return apply_morphism(self, e)

    def truncate(self, order):
        return AlgebraMorphism(
            self.domain, self.codomain, {i: im.truncate(order) for i, im in enumerate(self.images)},
            order, self.parity, self.label,
        )

    def render(self):
        return [f"{self.label}({g.name}) = {im.render()}" for g, im in zip(self.domain.generators, self.images)]


def apply_morphism(m: AlgebraMorphism, e: Element) -> Element:
    if e.parent is not m.domain:
        raise InputError(f"{m.label}: element of {e.parent.label} outside domain {m.domain.label}")
    if e.order != m.order:
        raise ConfigurationError(f"truncation order mismatch: {e.order} vs {m.order}")
    N = m.order
    out = {}
    for (w, k), c in e._t.items():
        for (w2, k2), c2 in m.word_image(w)._t.items():
            kk = k + k2
            if kk <= N:
                v = out.get((w2, kk))
                v = c * c2 if v is None else v + c * c2
                out[(w2, kk)] = v
    return Element(m.codomain, N, out)


def rule_residual(m: AlgebraMorphism, rule) -> Element:
    """``[m(low), m(high)] - m(value)`` for the relation ``[low, high] = value`` (order reversed for anti maps)."""
    dom = m.domain
    lo, hi = m.images[rule.low], m.images[rule.high]
    value = Element(dom, m.order, rule.value_terms())
    if m.parity == MULTIPLICATIVE:
        comm = lo * hi - hi * lo
    else:
        comm = hi * lo - lo * hi
    return comm - m(value)


def verify_morphism(m: AlgebraMorphism, condition=None) -> Report:
    """Check every defining relation of the domain; sets ``m.verified``."""
    cond = condition or f"morphism:{m.label}"
    rep = Report(cond)
    dom = m.domain
    for rule in dom.rules():
        res = rule_residual(m, rule)
        gens = f"{dom.generators[rule.low].name},{dom.generators[rule.high].name}"
        rep.check(cond, res, gens)
    m.verified = rep.passed
    return rep


# -- actions --------------------------------------------------------------------


def _unit_word(p, order, word=()):
    return Element(p, order, {(word, 0): ONE})


class _Action:
    def __init__(self, module_alg: Presentation, acting, table, order, label):
        self.module_alg = module_alg
        self.acting = acting
        self.order = order
        self.label = label
        H = acting.alg
        self.table = {}
        for (a, g), v in table.items():
            ai = a if isinstance(a, int) else module_alg.index(a)
            gi = g if isinstance(g, int) else H.index(g)
            self.table[(ai, gi)] = _as_element(v, module_alg, order)
        self._words = {}
        self._gen = {}

    def _lookup(self, a, g):
        try:
            return self.table[(a, g)]
        except KeyError:
            raise ConfigurationError(
                f"{self.label}: no table entry for {self.module_alg.generators[a].name} "
                f"and {self.acting.alg.generators[g].name}"
            ) from None

    def _counit_of(self, g):
        eps = getattr(self.acting, "counit", None)
        if eps is None:
            raise ConfigurationError(
                f"{self.label}: acting bialgebra {self.acting.alg.label} has no counit, "
                "so the action on the unit is undefined"
            )
        return eps.images[g].scalar_part()

    def _coproduct_terms(self, g):
        """Sweedler legs of Delta_H(g) as (u, v, k, c)."""
        d = self.acting.coproduct.images[g]
        T = d.parent
        return [(*T.split(w), k, c) for (w, k), c in d._t.items()]

    def apply(self, f: Element, L: Element) -> Element:
        """The action of ``L`` on ``f`` (module element first regardless of side)."""
        if f.parent is not self.module_alg:
            raise InputError(f"{self.label}: {f.parent.label} is not the module algebra")
        if L.parent is not self.acting.alg:
            raise InputError(f"{self.label}: {L.parent.label} is not the acting algebra")
        N = self.order
        if f.order != N or L.order != N:
            raise ConfigurationError("truncation order mismatch in action")
        out = {}
        for (fw, k1), c1 in f._t.items():
            for (lw, k2), c2 in L._t.items():
                k = k1 + k2
                if k > N:
                    continue
                c = c1 * c2
                for (w, k3), c3 in self.act_words(fw, lw)._t.items():
                    kk = k + k3
                    if kk <= N:
                        v = out.get((w, kk))
                        out[(w, kk)] = c * c3 if v is None else v + c * c3
        return Element(self.module_alg, N, out)


class RightAction(_Action):
    """``f <| L`` of a bialgebra H on an algebra A, extended by

    ``(f g) <| L = (f <| L_(1)) (g <| L_(2))`` and ``f <| (L M) = (f <| L) <| M``.
    """

    def __init__(self, module_alg, acting, table, order, label="action"):
        super().__init__(module_alg, acting, table, order, label)

    def act(self, f: Element, L: Element) -> Element:
        return self.apply(f, L)

    def act_words(self, fw, lw) -> Element:
        key = (fw, lw)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        if not lw:
            res = _unit_word(self.module_alg, self.order, fw)
        elif len(lw) == 1:
            res = self.act_word_gen(fw, lw[0])
        else:
            inner = self.act_words(fw, lw[:-1])
            g = lw[-1]
            N = self.order
            acc = {}
            for (w, k), c in inner._t.items():
                for (w2, k2), c2 in self.act_word_gen(w, g)._t.items():
                    if k + k2 <= N:
                        v = acc.get((w2, k + k2))
                        acc[(w2, k + k2)] = c * c2 if v is None else v + c * c2
            res = Element(self.module_alg, N, acc)
        self._words[key] = res
        return res

    def act_word_gen(self, fw, g) -> Element:
        key = (fw, g)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        A, N = self.module_alg, self.order
        if not fw:
            res = A.scalar(self._counit_of(g), N)
        elif len(fw) == 1:
            res = self._lookup(fw[0], g)
        else:
            res = A.zero(N)
            first, rest = fw[:1], fw[1:]
            for u, v, k, c in self._coproduct_terms(g):
                left = self.act_words(first, u)
                right = self.act_words(rest, v)
                res = res + (left * right).scale(_hk(c, k, N))
        self._gen[key] = res
        return res


class LeftAction(_Action):
    """``L |> f`` extended by ``L |> (f g) = (L_(1) |> f)(L_(2) |> g)`` and ``(L M) |> f = L |> (M |> f)``."""

    def __init__(self, module_alg, acting, table, order, label="left-action"):
        super().__init__(module_alg, acting, {(a, g): v for (g, a), v in table.items()}, order, label)

    def act(self, L: Element, f: Element) -> Element:
        return self.apply(f, L)

    def act_words(self, fw, lw) -> Element:
        key = (fw, lw)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        if not lw:
            res = _unit_word(self.module_alg, self.order, fw)
        elif len(lw) == 1:
            res = self.act_word_gen(fw, lw[0])
        else:
            inner = self.act_words(fw, lw[1:])
            N = self.order
            acc = {}
            for (w, k), c in inner._t.items():
                for (w2, k2), c2 in self.act_word_gen(w, lw[0])._t.items():
                    if k + k2 <= N:
                        v = acc.get((w2, k + k2))
                        acc[(w2, k + k2)] = c * c2 if v is None else v + c * c2
            res = Element(self.module_alg, N, acc)
        self._words[key] = res
        return res

    def act_word_gen(self, fw, g) -> Element:
        key = (fw, g)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        A, N = self.module_alg, self.order
        if not fw:
            res = A.scalar(self._counit_of(g), N)
        elif len(fw) == 1:
            res = self._lookup(fw[0], g)
        else:
            res = A.zero(N)
            first, rest = fw[:1], fw[1:]
            for u, v, k, c in self._coproduct_terms(g):
                res = res + (self.act_words(first, u) * self.act_words(rest, v)).scale(_hk(c, k, N))
        self._gen[key] = res
        return res


def _hk(c, k, N):
    return DeformationSeries.from_sparse({k: c}, N)


def act(action: RightAction, f: Element, L: Element) -> Element:
    return action.act(f, L)


def verify_module_algebra(action: RightAction, degree=2, *, samples=3, seed=0) -> Report:
    """Relations of H and A are respected, the Leibniz rule holds on samples, unit laws hold."""
    rep = Report(f"module:{action.label}")
    A, H, N = action.module_alg, action.acting.alg, action.order
    rng = random.Random(seed)
    left = isinstance(action, LeftAction)
    fgens = [(g.name, A.gen(g.sort_key, N)) for g in A.generators]
    fsamples = fgens + [
        (f"random#{i}", random_element(A, N, rng, degree=degree)) for i in range(samples)
    ]

    def seq(f, *gs):
        # sequential action by single generators, never normal-ordering the H-word
        for g in (reversed(gs) if left else gs):
            f = action.apply(f, H.gen(g, N))
        return f

    # (i) H-relations
    for rule in H.rules():
        value = Element(H, N, rule.value_terms())
        gl, gh = H.generators[rule.low].name, H.generators[rule.high].name
        for fname, f in fsamples:
            res = seq(f, rule.low, rule.high) - seq(f, rule.high, rule.low) - action.apply(f, value)
            rep.check("module:H-relation", res, f"{gl},{gh};{fname}")

    # (ii) A-relations: act on high*low computed through the coproduct split
    for rule in A.rules():
        value = Element(A, N, rule.value_terms())
        al, ah = A.generators[rule.low].name, A.generators[rule.high].name
        for g in H.generators:
            lo = _leibniz(action, A.gen(rule.low, N), A.gen(rule.high, N), g.sort_key)
            hi = _leibniz(action, A.gen(rule.high, N), A.gen(rule.low, N), g.sort_key)
            res = lo - hi - action.apply(value, H.gen(g.sort_key, N))
            rep.check("module:A-relation", res, f"{al},{ah};{g.name}")

    # Leibniz rule on random products
    for i in range(samples):
        f = random_element(A, N, rng, degree=degree)
        g = random_element(A, N, rng, degree=degree)
        for hg in H.generators:
            res = action.apply(f * g, H.gen(hg.sort_key, N)) - _leibniz(action, f, g, hg.sort_key)
            rep.check("module:leibniz", res, f"random#{i};{hg.name}")

    # unit laws
    for hg in H.generators:
        try:
            expected = A.scalar(action._counit_of(hg.sort_key), N)
        except ConfigurationError as exc:
            rep.skip("module:unit", hg.name, str(exc))
            continue
        rep.check("module:unit", action.apply(A.one(N), H.gen(hg.sort_key, N)) - expected, f"1;{hg.name}")
    for fname, f in fsamples:
        rep.check("module:unit", action.apply(f, H.one(N)) - f, f"{fname};1")
    return rep


def _leibniz(action, f, g, hgen):
    """``(f <| L_(1)) (g <| L_(2))`` for L a generator of H."""
    H, N = action.acting.alg, action.order
    out = action.module_alg.zero(N)
    for u, v, k, c in action._coproduct_terms(hgen):
        Lu = Element(H, N, {(u, 0): ONE})
        Lv = Element(H, N, {(v, 0): ONE})
        out = out + (action.apply(f, Lu) * action.apply(g, Lv)).scale(_hk(c, k, N))
    return out


# -- coactions ------------------------------------------------------------------------

TRIVIAL = "trivial"
BICROSS_B = "bicross_B"


class LeftCoaction:
    """``beta: H -> A (x) H`` given on generators.

    ``extension="trivial"`` gives ``beta(L) = 1 (x) L``; ``"bicross_B"`` extends
    to products by ``beta(LM) = (L^(-1) <| M_(1)) M_(2)^(-1) (x) L^(0) M_(2)^(0)``.
    """

    def __init__(self, coacting, comodule, table=None, order=None, extension=TRIVIAL, action=None, label="beta"):
        if extension not in (TRIVIAL, BICROSS_B):
            raise InputError(f"unknown coaction extension {extension!r}")
        self.coacting = coacting
        self.comodule = comodule
        self.extension = extension
        self.action = action
        self.label = label
        A, H = coacting.alg, comodule.alg
        self.order = order if order is not None else coacting.order
        self.target = tensor_presentation([A, H])
        N = self.order
        if extension == BICROSS_B and action is None:
            raise ConfigurationError(f"{label}: extension bicross_B requires a right action")
        self.table = {}
        if extension == BICROSS_B:
            for g in H.generators:
                if g.name in (table or {}):
                    v = table[g.name]
                elif g.sort_key in (table or {}):
                    v = table[g.sort_key]
                else:
                    raise ConfigurationError(f"{label}: no coaction value for {g.name}")
                self.table[g.sort_key] = _as_element(v, self.target, N)
        elif table:
            for key, v in table.items():
                gi = key if isinstance(key, int) else H.index(key)
                self.table[gi] = _as_element(v, self.target, N)
        self._cache = {(): self.target.one(N)}

    def _trivial(self, w):
        return self.target.embed(Element(self.comodule.alg, self.order, {(w, 0): ONE}), 1)

    def coact_word(self, w) -> Element:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        if self.extension == TRIVIAL:
            res = self._trivial(w)
        elif len(w) == 1:
            res = self.table[w[0]]
        else:
            res = self.product_rule(self.coact_word(w[:-1]), w[-1])
        self._cache[w] = res
        return res

    def product_rule(self, beta_L: Element, g) -> Element:
        """Condition (B) with M a generator: ``(L^(-1) <| M_(1)) M_(2)^(-1) (x) L^(0) M_(2)^(0)``."""
        A, H, N = self.coacting.alg, self.comodule.alg, self.order
        T = self.target
        d = self.comodule.coproduct.images[g]
        out = T.zero(N)
        for (dw, kd), cd in d._t.items():
            u, v = d.parent.split(dw)
            bv = self.coact_word(v)
            Mu = Element(H, N, {(u, 0): ONE})
            for (lw, kl), cl in beta_L._t.items():
                if kd + kl > N:
                    continue
                a, b = T.split(lw)
                left = self.action.apply(Element(A, N, {(a, 0): ONE}), Mu)
                x = tensor_elements(left, Element(H, N, {(b, 0): ONE})) * bv
                out = out + x.scale(_hk(cd * cl, kd + kl, N))
        return out

    def product_formula(self, L: Element, M: Element) -> Element:
        """Condition (B) for arbitrary elements L, M of H."""
        A, H, N = self.coacting.alg, self.comodule.alg, self.order
        T = self.target
        bL = self.coact(L)
        dM = self.comodule.coproduct(M)
        out = T.zero(N)
        for (dw, kd), cd in dM._t.items():
            u, v = dM.parent.split(dw)
            bv = self.coact_word(v)
            Mu = Element(H, N, {(u, 0): ONE})
            for (lw, kl), cl in bL._t.items():
                if kd + kl > N:
                    continue
                a, b = T.split(lw)
                left = self.action.apply(Element(A, N, {(a, 0): ONE}), Mu)
                x = tensor_elements(left, Element(H, N, {(b, 0): ONE})) * bv
                out = out + x.scale(_hk(cd * cl, kd + kl, N))
        return out

    def coact(self, L: Element) -> Element:
        if L.parent is not self.comodule.alg:
            raise InputError(f"{self.label}: {L.parent.label} is not the comodule")
        N = self.order
        out = {}
        for (w, k), c in L._t.items():
            for (w2, k2), c2 in self.coact_word(w)._t.items():
                kk = k + k2
                if kk <= N:
                    v = out.get((w2, kk))
                    out[(w2, kk)] = c * c2 if v is None else v + c * c2
        return Element(self.target, N, out)

    __call__ = coact


def coact(beta: LeftCoaction, L: Element) -> Element:
    return beta.coact(L)


def verify_comodule_coalgebra(beta: LeftCoaction, degree=2, *, samples=2, seed=0) -> Report:
    """Coassociativity and counit law of the coaction plus the comodule-coalgebra conditions."""
    rep = Report(f"comodule:{beta.label}")
    A, H, N = beta.coacting.alg, beta.comodule.alg, beta.order
    dA = beta.coacting.coproduct
    dH = beta.comodule.coproduct
    epsA = beta.coacting.counit
    epsH = getattr(beta.comodule, "counit", None)
    rng = random.Random(seed)
    subjects = [(g.name, H.gen(g.sort_key, N)) for g in H.generators]
    subjects += [(f"random#{i}", random_element(H, N, rng, degree=degree)) for i in range(samples)]

    rep.check("comodule:unit", beta.coact(H.one(N)) - tensor_elements(A.one(N), H.one(N)), "1")
    for name, L in subjects:
        b = beta.coact(L)
        lhs = apply_slots(b, [None, beta.coact])
        rhs = apply_slots(b, [dA, None])
        rep.check("comodule:coassoc", lhs - rhs, name)
        if epsA is None:
            rep.skip("comodule:counit", name, "coacting bialgebra has no counit")
        else:
            rep.check("comodule:counit", _collapse(apply_slots(b, [epsA, None]), H) - L, name)
        if epsH is None:
            rep.skip("comodule:eps_H", name, "comodule coalgebra has no counit (non-counital mode)")
        else:
            l17 = _collapse(apply_slots(b, [None, epsH]), A)
            r17 = A.scalar(epsH(L).scalar_part(), N)
            rep.check("comodule:eps_H", l17 - r17, name)
        l18 = apply_slots(b, [None, dH])
        dl = dH(L)
        r18 = regroup(apply_slots(dl, [beta.coact, beta.coact]), [(0, 2), (1,), (3,)])
        rep.check("comodule:coalgebra", l18 - r18, name)
    if epsA is None or epsH is None:
        log.info("comodule checks for %s skipped counit conditions (non-counital mode)", beta.label)
    return rep


def _collapse(x: Element, target: Presentation) -> Element:
    """Drop ground-field slots from a tensor element (``k (x) H == H``)."""
    factors = slot_factors(x.parent)
    keep = [i for i, f in enumerate(factors) if f is not GROUND]
    if len(keep) != 1 or factors[keep[0]] is not target:
        raise ConfigurationError("cannot collapse tensor element onto a single slot")
    if x.parent is target:
        return x
    out = {}
    for (w, k), c in x._t.items():
        parts = x.parent.split(w)
        out[(parts[keep[0]], k)] = c
    return Element(target, x.order, out)
