"""Bialgebra bundles, axiom checkers, and the counit/antipode solvers."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field

from .errors import ConfigurationError
from .morphism import ANTIMULTIPLICATIVE, AlgebraMorphism, verify_morphism
from .ncpoly import (
    GROUND,
    Element,
    Presentation,
    RewriteRule,
    apply_slots,
    flip,
    random_element,
    regroup,
    slot_factors,
    tensor_presentation,
)
from .report import Report
from .scalars import ONE, ZERO, DeformationSeries, Scalar, as_scalar

log = logging.getLogger(__name__)

__all__ = [
    "BialgebraStructure",
    "ObstructionCertificate",
    "CounitSolution",
    "AntipodeFailure",
    "check_coassociativity",
    "check_counit_axiom",
    "check_antipode_axiom",
    "check_cocommutativity",
    "solve_counit",
    "solve_antipode",
    "require_verified",
]


@dataclass
class BialgebraStructure:
    """An algebra with coproduct and optional counit and antipode."""

    alg: Presentation
    coproduct: AlgebraMorphism
    counit: AlgebraMorphism | None = None
    antipode: AlgebraMorphism | None = None
    label: str = ""
    notes: list = field(default_factory=list)
    checklist: dict = field(default_factory=dict)
    report: Report | None = None

    def __post_init__(self):
        if not self.label:
            self.label = self.alg.label
        if self.coproduct.domain is not self.alg:
            raise ConfigurationError("coproduct domain must be the bundle's algebra")

    @property
    def order(self):
        return self.coproduct.order

    @property
    def counital(self):
        return self.counit is not None

    @property
    def hopf(self):
        return self.antipode is not None

    def square(self):
        return tensor_presentation([self.alg, self.alg])

    def cube(self):
        return tensor_presentation([self.alg, self.alg, self.alg])

    def render(self) -> str:
        """Full canonical dump: generators, relations, coproduct, counit, antipode."""
        p = self.alg
        lines = [f"bialgebra {self.label} order={self.order}"]
        lines.append("generators " + " ".join(p.names))
        for r in p.rules():
            if r.remainder:
                lines.append("relation " + p.relation_text(r, self.order))
        lines.extend("coproduct " + s for s in _render_images(self.coproduct, "D"))
        if self.counit is None:
            lines.append("counit absent")
        else:
            lines.extend("counit " + s for s in _render_images(self.counit, "eps"))
        if self.antipode is None:
            lines.append("antipode absent")
        else:
            lines.extend("antipode " + s for s in _render_images(self.antipode, "S"))
        for n in self.notes:
            lines.append("note " + n)
        return "\n".join(lines)


def _render_images(m, name):
    return [f"{name}({g.name}) = {im.render()}" for g, im in zip(m.domain.generators, m.images)]


def require_verified(m: AlgebraMorphism):
    if not m.verified:
        rep = verify_morphism(m)
        if not rep.passed:
            raise ConfigurationError(
                f"{m.label} is not an algebra morphism; first residual: {rep.failures[0].render()}"
            )


def _collapse(x: Element, keep: int) -> Element:
    factors = slot_factors(x.parent)
    target = factors[keep]
    out = {}
    for (w, k), c in x._t.items():
        parts = x.parent.split(w)
        key = (parts[keep], k)
        v = out.get(key)
        out[key] = c if v is None else v + c
    return Element(target, x.order, out)


def _sample_words(B, extra_degree, samples, seed):
    rng = random.Random(seed)
    return [
        (f"random#{i}", random_element(B.alg, B.order, rng, degree=extra_degree))
        for i in range(samples if extra_degree > 0 else 0)
    ]


def check_coassociativity(B: BialgebraStructure, extra_degree=2, *, samples=2, seed=0) -> Report:
    require_verified(B.coproduct)
    rep = Report(f"coassoc:{B.label}")
    D = B.coproduct
    subjects = [(g.name, B.alg.gen(g.sort_key, B.order)) for g in B.alg.generators]
    subjects += _sample_words(B, extra_degree, samples, seed)
    for name, x in subjects:
        dx = D(x)
        lhs = apply_slots(dx, [D, None])
        rhs = apply_slots(dx, [None, D])
        rep.check("coassoc", lhs - rhs, name)
    return rep


def check_counit_axiom(B: BialgebraStructure) -> Report:
    rep = Report(f"counit:{B.label}")
    if B.counit is None:
        for g in B.alg.generators:
            rep.skip("counit", g.name, "no counit (non-counital bialgebra)")
        log.info("counit axiom skipped for %s: non-counital", B.label)
        return rep
    require_verified(B.coproduct)
    require_verified(B.counit)
    for g in B.alg.generators:
        x = B.alg.gen(g.sort_key, B.order)
        dx = B.coproduct(x)
        left = _collapse(apply_slots(dx, [B.counit, None]), 1)
        right = _collapse(apply_slots(dx, [None, B.counit]), 0)
        rep.check("counit:left", left - x, g.name)
        rep.check("counit:right", right - x, g.name)
    return rep


def convolution(B, f, g, x):
    """``mul (f (x) g) Delta(x)`` with ``None`` meaning the identity."""
    return regroup(apply_slots(B.coproduct(x), [f, g]), [(0, 1)])


def check_antipode_axiom(B: BialgebraStructure, extra_degree=2, *, samples=2, seed=0) -> Report:
    if B.counit is None:
        raise ConfigurationError(f"antipode axiom for {B.label} needs a counit")
    if B.antipode is None:
        raise ConfigurationError(f"{B.label} has no antipode")
    require_verified(B.coproduct)
    rep = Report(f"antipode:{B.label}")
    S = B.antipode
    subjects = [(g.name, B.alg.gen(g.sort_key, B.order)) for g in B.alg.generators]
    subjects += _sample_words(B, extra_degree, samples, seed)
    for name, x in subjects:
        unit = B.alg.scalar(B.counit(x).scalar_part(), B.order)
        rep.check("antipode:left", convolution(B, S, None, x) - unit, name)
        rep.check("antipode:right", convolution(B, None, S, x) - unit, name)
    return rep


def check_cocommutativity(B: BialgebraStructure) -> Report:
    """PASS records on every generator iff ``flip . Delta == Delta``."""
    require_verified(B.coproduct)
    rep = Report(f"cocommutative:{B.label}")
    for g in B.alg.generators:
        d = B.coproduct.images[g.sort_key]
        rep.check("cocommutative", flip(d) - d, g.name)
    return rep


# -- counit solver -------------------------------------------------------------------


class _Poly(dict):
    """Polynomial over Gaussian rationals: ``{monomial (sorted var tuple): Scalar}``."""

    def add(self, mono, c):
        v = self.get(mono)
        v = c if v is None else v + c
        if v:
            self[mono] = v
        else:
            self.pop(mono, None)

    def degree(self):
        return max((len(m) for m in self), default=0)

    def constant(self):
        return self.get((), ZERO)


def _pmul(a, b):
    out = _Poly()
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            out.add(tuple(sorted(m1 + m2)), c1 * c2)
    return out


def _series_mul(a, b, N):
    out = [_Poly() for _ in range(N + 1)]
    for i, pa in enumerate(a):
        if not pa:
            continue
        for j in range(N + 1 - i):
            if b[j]:
                for m, c in _pmul(pa, b[j]).items():
                    out[i + j].add(m, c)
    return out


@dataclass
class ObstructionCertificate:
    """Counit equations are inconsistent; the relation (or counit law) and the scalar contradiction."""

    presentation: Presentation
    relation: RewriteRule | None
    derived_equation: str
    order: int
    source: str = "relation"
    generator: str | None = None

    def relation_text(self):
        if self.relation is None:
            return None
        return self.presentation.relation_text(self.relation, self.order)

    def replay(self, values=None):
        """Evaluate both sides of the witness relation under counit values (default all zero).

        Returns ``(lhs, rhs)`` as series; a genuine obstruction has ``lhs != rhs``
        whatever values are supplied.
        """
        if self.relation is None:
            raise ConfigurationError("only relation obstructions can be replayed")
        p, N = self.presentation, self.order
        vals = {}
        for g in p.generators:
            v = (values or {}).get(g.name, 0)
            vals[g.sort_key] = v if isinstance(v, DeformationSeries) else DeformationSeries.constant(v, N)

        def eps(e: Element):
            acc = DeformationSeries([], N)
            for (w, k), c in e._t.items():
                term = DeformationSeries.from_sparse({k: c}, N)
                for x in w:
                    term = term * vals[x]
                acc = acc + term
            return acc

        lo, hi = self.relation.low, self.relation.high
        lhs = vals[lo] * vals[hi] - vals[hi] * vals[lo]
        rhs = eps(Element(p, N, self.relation.value_terms()))
        return lhs, rhs

    def render(self):
        where = self.relation_text() if self.relation is not None else f"{self.source} on {self.generator}"
        return f"obstruction relation={where} derived={self.derived_equation}"


@dataclass
class CounitSolution:
    values: dict  # generator name -> DeformationSeries
    morphism: AlgebraMorphism | None
    free: list = field(default_factory=list)
    note: str = "implementation-derived counit (solved order by order in h)"

    @property
    def determined(self):
        return not self.free


_NONLINEAR = object()


class _Eliminator:
    """Incremental Gauss-Jordan elimination over Gaussian rationals with row provenance."""

    def __init__(self):
        self.pivots = {}  # var -> linear poly expressing 0 = var + rest

    def reduce(self, poly):
        out = _Poly(poly)
        changed = True
        while changed:
            changed = False
            for mono in list(out):
                if len(mono) == 1 and mono[0] in self.pivots:
                    c = out.pop(mono)
                    for m2, c2 in self.pivots[mono[0]].items():
                        if m2 != mono:
                            out.add(m2, -(c * c2))
                    changed = True
                    break
        return out

    def add(self, poly):
        """Return None if absorbed, or the nonzero constant residue on inconsistency."""
        r = self.reduce(poly)
        if not r:
            return None
        if r.degree() > 1:
            return _NONLINEAR
        linear = sorted(m for m in r if len(m) == 1)
        if not linear:
            return r.constant()
        var = linear[0]
        inv = r[var].inverse()
        row = _Poly({m: c * inv for m, c in r.items()})
        for v, prow in list(self.pivots.items()):
            if var in prow:
                c = prow.pop(var)
                for m2, c2 in row.items():
                    if m2 != var:
                        prow.add(m2, -(c * c2))
        self.pivots[var[0]] = row
        return None

    def value(self, var):
        row = self.pivots.get(var)
        if row is None:
            return None
        if any(len(m) == 1 and m[0] != var for m in row):
            return None
        return -row.constant()


def _substitute(poly, known):
    out = _Poly()
    for mono, c in poly.items():
        coeff = c
        rest = []
        for v in mono:
            if v in known:
                coeff = coeff * known[v]
            else:
                rest.append(v)
        if coeff:
            out.add(tuple(rest), coeff)
    return out


def solve_counit(alg: Presentation, coproduct: AlgebraMorphism | None = None, order=None):
    """Solve for counit values order by order in h, or certify an obstruction.

    Relations are processed before counit laws so that a certificate names the
    first inconsistent relation.  Returns :class:`CounitSolution` or
    :class:`ObstructionCertificate`.
    """
    if coproduct is not None:
        require_verified(coproduct)
        order = coproduct.order
    if order is None:
        raise ConfigurationError("solve_counit needs a truncation order")
    N = order
    gens = alg.generators
    evals = {g.sort_key: [_Poly({((g.sort_key, k),): ONE}) for k in range(N + 1)] for g in gens}

    def eps_word(w):
        acc = [_Poly({(): ONE})] + [_Poly() for _ in range(N)]
        for x in w:
            acc = _series_mul(acc, evals[x], N)
        return acc

    def eps_elem(e):
        acc = [_Poly() for _ in range(N + 1)]
        for (w, k), c in e._t.items():
            ew = eps_word(w)
            for j in range(N + 1 - k):
                for m, c2 in ew[j].items():
                    acc[k + j].add(m, c * c2)
        return acc

    equations = []  # (source, payload, series of polys)
    for rule in alg.rules():
        if not rule.remainder:
            continue
        value = eps_elem(Element(alg, N, rule.value_terms()))
        # eps of a commutator in a commutative target vanishes: 0 = eps(value)
        equations.append(("relation", rule, value))
    if coproduct is not None:
        for g in gens:
            d = coproduct.images[g.sort_key]
            T = d.parent
            for side, keep in (("counit-right", 0), ("counit-left", 1)):
                grouped = {}
                for (w, k), c in d._t.items():
                    parts = T.split(w)
                    other = parts[1 - keep]
                    ew = eps_word(other)
                    series = grouped.setdefault(parts[keep], [_Poly() for _ in range(N + 1)])
                    for j in range(N + 1 - k):
                        for m, c2 in ew[j].items():
                            series[k + j].add(m, c * c2)
                target = grouped.setdefault((g.sort_key,), [_Poly() for _ in range(N + 1)])
                target[0].add((), -ONE)
                for word, series in sorted(grouped.items()):
                    equations.append((side, (g.name, word), series))

    known = {}
    free = []
    for k in range(N + 1):
        elim = _Eliminator()
        pending = [(src, payload, series[k]) for src, payload, series in equations]
        progress = True
        while pending and progress:
            progress = False
            nxt = []
            for src, payload, poly in pending:
                p = _substitute(poly, known)
                res = elim.add(p)
                if res is None:
                    progress = True
                    continue
                if res is _NONLINEAR:
                    nxt.append((src, payload, poly))
                    continue
                return _certificate(alg, N, src, payload, res, k)
            # fix fully determined variables and retry the nonlinear ones
            for v in list(elim.pivots):
                val = elim.value(v)
                if val is not None and v not in known:
                    known[v] = val
                    progress = True
            pending = nxt
        if pending:
            raise ConfigurationError(
                f"counit equations at order h^{k} stay nonlinear after elimination"
            )
        for g in gens:
            var = (g.sort_key, k)
            if var in known:
                continue
            val = elim.value(var)
            if val is None:
                free.append(f"eps({g.name})[h^{k}]")
                known[var] = ZERO
            else:
                known[var] = val
    values = {
        g.name: DeformationSeries([known[(g.sort_key, k)] for k in range(N + 1)], N) for g in gens
    }
    morphism = None
    if not free:
        morphism = AlgebraMorphism(
            alg, GROUND, {g.name: GROUND.scalar(values[g.name], N) for g in gens}, N, label="eps"
        )
        verify_morphism(morphism)
    return CounitSolution(values, morphism, free)


def _certificate(alg, N, src, payload, residue, k):
    const = residue if isinstance(residue, Scalar) else as_scalar(residue)
    if src == "relation":
        # the equation is eps(commutator) = eps(value), and eps(commutator) = 0
        rhs = DeformationSeries.from_sparse({k: const}, N)
        return ObstructionCertificate(alg, payload, f"0 = {rhs.render()}", N)
    gname, word = payload
    lhs = DeformationSeries.from_sparse({k: const}, N)
    return ObstructionCertificate(
        alg, None, f"{lhs.render()} = 0", N, source=src,
        generator=f"{gname} at {alg.render_word(word)}",
    )


# -- antipode solver -----------------------------------------------------------------------


@dataclass
class AntipodeFailure:
    order: int
    witness: str
    reason: str

    def render(self):
        return f"antipode failure at h^{self.order}: {self.reason} witness={self.witness}"


def solve_antipode(B: BialgebraStructure):
    """Antipode as the convolution inverse of the identity, computed order by order in h.

    Writes ``Delta(g) = c_g g (x) 1 + rest`` and iterates
    ``S(g) = c_g^{-1} (eps(g) - mul (S (x) id)(rest))``; each pass fixes one more
    power of h.  The result is verified with :func:`check_antipode_axiom`.
    """
    if B.counit is None:
        raise ConfigurationError(f"{B.label}: antipode needs a counit")
    require_verified(B.coproduct)
    A, N = B.alg, B.order
    T = B.square()
    lead = {}
    rest = {}
    for g in A.generators:
        d = B.coproduct.images[g.sort_key]
        cg = {}
        other = {}
        for (w, k), c in d._t.items():
            u, v = T.split(w)
            if u == (g.sort_key,) and v == ():
                cg[k] = c
            else:
                if k == 0 and u not in ((),) and u != (g.sort_key,):
                    return AntipodeFailure(0, d.render(), f"coproduct of {g.name} is not primitive at h^0")
                other[(w, k)] = c
        series = DeformationSeries.from_sparse(cg, N)
        if not series[0]:
            return AntipodeFailure(0, d.render(), f"leading coefficient of {g.name} (x) 1 is not invertible")
        lead[g.sort_key] = series.invert()
        rest[g.sort_key] = Element(T, N, other)
    eps = {g.sort_key: B.counit.images[g.sort_key].scalar_part() for g in A.generators}
    images = {g.sort_key: A.zero(N) for g in A.generators}
    S = None
    for _ in range(N + 2):
        S = AlgebraMorphism(A, A, images, N, ANTIMULTIPLICATIVE, label="S")
        new = {}
        for g in A.generators:
            i = g.sort_key
            conv = regroup(apply_slots(rest[i], [S, None]), [(0, 1)])
            new[i] = (A.scalar(eps[i], N) - conv) * lead[i]
        if new == images:
            break
        images = new
    else:
        return AntipodeFailure(N, "", "iteration did not stabilise")
    S = AlgebraMorphism(A, A, images, N, ANTIMULTIPLICATIVE, label="S")
    verify_morphism(S)
    trial = BialgebraStructure(A, B.coproduct, B.counit, S, label=B.label)
    rep = check_antipode_axiom(trial, extra_degree=0)
    if not rep.passed or not S.verified:
        bad = rep.failures[0] if rep.failures else None
        return AntipodeFailure(N, bad.witness if bad else "", "solved antipode fails the axiom check")
    return S
