"""Named presentations and one-call builders for every structure in the catalog."""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field

from .constructions import (
    BicrossData,
    ConstructionFailure,
    QuantumSpaceSpec,
    bicrossproduct,
    check_bicross_conditions,
    crossed_product,
    half_primitive_coproduct,
    primitive_coproduct,
)
from .errors import ConfigurationError, InputError
from .hopf import BialgebraStructure, check_coassociativity, solve_antipode, solve_counit
from .morphism import (
    AlgebraMorphism,
    LeftCoaction,
    RightAction,
    BICROSS_B,
    verify_comodule_coalgebra,
    verify_module_algebra,
    verify_morphism,
)
from .ncpoly import Element, Presentation, central_invert, central_sqrt, tensor_presentation
from .report import Report
from .scalars import I, ONE, DeformationSeries, as_scalar

log = logging.getLogger(__name__)

__all__ = [
    "ab",
    "translations",
    "weyl",
    "hl",
    "o13",
    "qspace",
    "lie_presentation",
    "catalog_presentation",
    "CATALOG_NAMES",
    "MetricConvention",
    "METRIC_CANDIDATES",
    "KappaData",
    "kappa_data",
    "kappa_translations",
    "build_kappa_poincare",
    "KappaSearchFailure",
    "duality_action",
    "build_weyl_noncounital",
    "build_hl_bicross",
    "build_lie_type_bicross",
    "LORENTZ_SIGN",
    "DEFAULT_METRIC",
    "CORRUPTIONS",
    "crossed_weyl",
    "crossed_hl",
    "parse_catalog_name",
]

# The right action P_k <| M_j = i eps_{jkl} P_l represents [M_i, M_j] = LORENTZ_SIGN * i eps_{ijk} M_k;
# the convention search in build_kappa_poincare confirms this value.
LORENTZ_SIGN = -1


def _levi(i, j, k):
    """Levi-Civita symbol on 1-based indices with eps_123 = +1."""
    if len({i, j, k}) < 3:
        return 0
    perm = [i, j, k]
    inv = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


# -- presentations -----------------------------------------------------------------------


def lie_presentation(label, names, brackets) -> Presentation:
    """Presentation from brackets ``{(a, b): {c: coeff}}`` meaning ``[a, b] = sum coeff * c``.

    Pairs may be given in either order; a value of ``1`` under the key ``""``
    (empty name) denotes the unit.
    """
    index = {n: i for i, n in enumerate(names)}
    rels = {}
    for (a, b), value in brackets.items():
        if a not in index or b not in index:
            raise InputError(f"unknown generator in bracket [{a},{b}]")
        if a == b:
            if any(as_scalar(c) for c in value.values()):
                raise InputError(f"[{a},{a}] must vanish")
            continue
        sign = 1
        if index[a] > index[b]:
            a, b, sign = b, a, -1
        # [low, high] = value  <=>  high*low -> low*high - value
        rem = {}
        for name, c in value.items():
            c = as_scalar(c) * sign
            if not c:
                continue
            word = () if name == "" else (name,)
            rem[word] = rem.get(word, 0) - c
        rem = {w: c for w, c in rem.items() if c}
        key = (b, a)
        if key in rels and rels[key] != rem:
            raise InputError(f"inconsistent brackets for [{a},{b}]")
        rels[key] = rem
    relations = [(hi, lo, rem) for (hi, lo), rem in rels.items() if rem]
    return Presentation(label, names, relations)


def ab(n: int, symbol="x", label=None) -> Presentation:
    """Polynomial algebra on ``symbol1 .. symboln``."""
    if n < 1:
        raise InputError("ab(n) needs n >= 1")
    if label is None:
        label = f"ab({n})" if symbol == "x" else f"ab_{symbol}({n})"
    return Presentation(label, [f"{symbol}{i}" for i in range(1, n + 1)])


def translations(n: int) -> Presentation:
    return ab(n, "P", f"T({n})")


def weyl(n: int) -> Presentation:
    """``[P_mu, x^nu] = delta_mu^nu``; momenta ordered before coordinates."""
    if n < 1:
        raise InputError("weyl(n) needs n >= 1")
    P = [f"P{i}" for i in range(1, n + 1)]
    X = [f"x{i}" for i in range(1, n + 1)]
    return lie_presentation(f"weyl({n})", P + X, {(P[i], X[i]): {"": 1} for i in range(n)})


def hl(n: int) -> Presentation:
    """Heisenberg-Lie: ``[P_mu, x^nu] = -i delta_mu^nu C`` with C central."""
    if n < 1:
        raise InputError("hl(n) needs n >= 1")
    P = [f"P{i}" for i in range(1, n + 1)]
    X = [f"x{i}" for i in range(1, n + 1)]
    return lie_presentation(f"hl({n})", P + X + ["C"], {(P[i], X[i]): {"C": -I} for i in range(n)})


def o13(sign=None, eps=1, label="o13") -> Presentation:
    """Lorentz algebra: ``[M_i,M_j] = s i e_ijk M_k``, ``[M_i,N_j] = s i e_ijk N_k``, ``[N_i,N_j] = -s i e_ijk M_k``.

    ``s = sign * eps``; the default sign is the one validated by the kappa-Poincare conditions.
    """
    s = (LORENTZ_SIGN if sign is None else sign) * eps
    M = {i: f"M{i}" for i in (1, 2, 3)}
    N = {i: f"N{i}" for i in (1, 2, 3)}
    br = {}
    for i, j in itertools.permutations((1, 2, 3), 2):
        if i > j:
            continue
        k = 6 - i - j
        e = _levi(i, j, k) * s
        br[(M[i], M[j])] = {M[k]: I * e}
        br[(N[i], N[j])] = {M[k]: -I * e}
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            if i == j:
                continue
            k = 6 - i - j
            br[(M[i], N[j])] = {N[k]: I * (_levi(i, j, k) * s)}
    return lie_presentation(label, [M[1], M[2], M[3], N[1], N[2], N[3]], br)


DEFAULT_QSPACE = {
    "constant": {(2, 1): 1},
    "linear": {(2, 1, 1): 1},
    "quadratic": {(2, 1, 1, 2): 1},
}


def qspace(n=2, constant=None, linear=None, quadratic=None, *, check=True) -> Presentation:
    """Quantum space; the default has all three theta tensors nonzero."""
    if constant is None and linear is None and quadratic is None:
        if n != 2:
            raise InputError("default quantum-space parameters are for n = 2")
        spec = QuantumSpaceSpec(2, **DEFAULT_QSPACE)
    else:
        spec = QuantumSpaceSpec(n, constant or {}, linear or {}, quadratic or {})
    return spec.presentation(f"qspace({n})", check=check)


CATALOG_NAMES = ("ab(n)", "weyl(n)", "hl(n)", "o13", "kappa-translations", "kappa-poincare",
                 "weyl-noncounital(n)", "qspace(...)")

_NAME = re.compile(r"^\s*([a-z0-9-]+)\s*(?:\((.*)\))?\s*$")


def parse_catalog_name(name: str):
    m = _NAME.match(name)
    if not m:
        raise InputError(f"malformed catalog name {name!r}")
    base, args = m.group(1), m.group(2)
    params = [a.strip() for a in args.split(",")] if args else []
    return base, [a for a in params if a]


def _int_param(base, params, default=None):
    if not params:
        if default is None:
            raise InputError(f"{base} needs a dimension parameter")
        return default
    if len(params) != 1 or not params[0].isdigit():
        raise InputError(f"{base} takes one natural-number parameter, got {params}")
    return int(params[0])


def catalog_presentation(name: str) -> Presentation:
    """``ab(n)``, ``weyl(n)``, ``hl(n)``, ``o13``, ``qspace`` / ``qspace(2)``, ``translations(n)``."""
    base, params = parse_catalog_name(name)
    if base == "ab":
        return ab(_int_param(base, params))
    if base == "translations":
        return translations(_int_param(base, params))
    if base == "weyl":
        return weyl(_int_param(base, params))
    if base == "hl":
        return hl(_int_param(base, params))
    if base == "o13":
        if params:
            raise InputError("o13 takes no parameters")
        return o13()
    if base == "qspace":
        return qspace(_int_param(base, params, 2))
    raise InputError(f"unknown catalog presentation {name!r}; known: {', '.join(CATALOG_NAMES)}")


# -- duality actions ---------------------------------------------------------------------------


def duality_action(n: int, order=0, *, literal=False, central=False):
    """Translations acting on coordinates by duality.

    The catalog table ``x^nu <| P_mu = -delta`` (``i delta C`` with the central
    element) reproduces ``weyl(n)`` (``hl(n)``) with identical relations; the
    literal table ``delta`` (``delta C``) gives the isomorph under ``P -> -P``
    (``P -> -i P``).  Returns ``(H, A, action)``.
    """
    H = primitive_coproduct(translations(n), order)
    X = [f"x{i}" for i in range(1, n + 1)]
    A = Presentation(f"ab({'x, C' if central else 'x'})", X + (["C"] if central else []))
    table = {}
    for nu in range(1, n + 1):
        for mu in range(1, n + 1):
            if mu != nu:
                val = 0
            elif central:
                val = A.gen("C", order) if literal else A.gen("C", order).scale(I)
            else:
                val = 1 if literal else -1
            table[(f"x{nu}", f"P{mu}")] = val
    if central:
        for mu in range(1, n + 1):
            table[("C", f"P{mu}")] = 0
    kind = "literal" if literal else "catalog"
    action = RightAction(A, H, table, order, label=f"duality({kind})")
    action.table_kind = kind
    return H, A, action


# -- metric conventions and kappa-Poincare data ----------------------------------------------


@dataclass(frozen=True)
class MetricConvention:
    signature: tuple

    def __post_init__(self):
        if len(self.signature) != 4 or any(s not in (1, -1) for s in self.signature):
            raise InputError("metric signature must be four entries of +1/-1")

    def sign(self, mu):
        """``eta^{mu mu}`` for 1-based mu, so that ``P^mu = sign(mu) P_mu``."""
        return self.signature[mu - 1]

    @property
    def name(self):
        return "(" + ",".join("+" if s > 0 else "-" for s in self.signature) + ")"


METRIC_CANDIDATES = (
    MetricConvention((1, 1, 1, -1)),
    MetricConvention((-1, -1, -1, 1)),
    MetricConvention((1, 1, 1, 1)),
)
DEFAULT_METRIC = METRIC_CANDIDATES[0]


@dataclass
class KappaData:
    order: int
    metric: MetricConvention
    lorentz_sign: int
    eps_sign: int
    Pi: Element
    Pi_inv: Element
    A: BialgebraStructure
    H: BialgebraStructure
    action: RightAction
    coaction: LeftCoaction
    corruptions: tuple = ()

    @property
    def convention(self):
        return f"metric={self.metric.name} lorentz={'+' if self.lorentz_sign > 0 else '-'} eps123={self.eps_sign:+d}"

    def bicross_data(self) -> BicrossData:
        return BicrossData(self.H, self.A, self.action, self.coaction, label="kappa-poincare")


CORRUPTIONS = ("coaction-sign", "beta-pi", "boost-action-sign")


def _kappa_translation_coproduct(P, T, metric, N):
    h = DeformationSeries.h(N)
    Pg = [None] + [P.gen(f"P{m}", N) for m in range(1, 5)]
    Psq = P.zero(N)
    for m in range(1, 5):
        Psq = Psq + (Pg[m] * Pg[m]).scale(metric.sign(m))
    Pi = Pg[4].scale(h) + central_sqrt(P.one(N) - Psq.scale(h * h))
    Pi_inv = central_invert(Pi)
    emb = T.embed
    images = {}
    for i in (1, 2, 3):
        images[f"P{i}"] = emb(Pg[i], 0) * emb(Pi, 1) + emb(Pg[i], 1)
    d4 = emb(Pg[4], 0) * emb(Pi, 1) + emb(Pi_inv, 0) * emb(Pg[4], 1)
    for m in (1, 2, 3):
        d4 = d4 + (emb(Pg[m] * Pi_inv, 0) * emb(Pg[m], 1)).scale(h * metric.sign(m))
    images["P4"] = d4
    return Pi, Pi_inv, images


def kappa_translations(order: int, metric: MetricConvention = DEFAULT_METRIC, *, antipode=True):
    """Translations with the deformed coproduct, solved counit and (optionally) antipode."""
    P = translations(4)
    T = tensor_presentation([P, P])
    Pi, Pi_inv, images = _kappa_translation_coproduct(P, T, metric, order)
    D = AlgebraMorphism(P, T, images, order, label="Delta_kappa")
    verify_morphism(D)
    sol = solve_counit(P, D)
    if getattr(sol, "morphism", None) is None:
        raise ConfigurationError("deformed translations: counit not determined")
    A = BialgebraStructure(P, D, sol.morphism, label="kappa-translations")
    A.notes.append("counit " + sol.note)
    if antipode:
        S = solve_antipode(A)
        if isinstance(S, AlgebraMorphism):
            A.antipode = S
            A.notes.append("antipode solved as convolution inverse (implementation-derived)")
        else:
            A.notes.append(S.render())
    A.Pi, A.Pi_inv = Pi, Pi_inv
    return A


def kappa_data(order: int, metric: MetricConvention = DEFAULT_METRIC, *, lorentz_sign=None, eps_sign=1,
               corruptions=(), antipode=True) -> KappaData:
    """Deformed translations, Lorentz algebra, classical action and the deformed coaction.

    ``corruptions`` deliberately breaks the data for negative controls:
    ``coaction-sign`` flips the epsilon term of the boost coaction, ``beta-pi``
    uses Pi instead of its inverse there, ``boost-action-sign`` flips P <| N.
    """
    if order < 0:
        raise InputError("order must be non-negative")
    for c in corruptions:
        if c not in CORRUPTIONS:
            raise InputError(f"unknown corruption {c!r}; known: {CORRUPTIONS}")
    s = LORENTZ_SIGN if lorentz_sign is None else lorentz_sign
    N = order
    A = kappa_translations(N, metric, antipode=antipode)
    P = A.alg
    Pi, Pi_inv = A.Pi, A.Pi_inv
    if Pi * Pi_inv != P.one(N):
        raise ConfigurationError("Pi is not invertible at this truncation")
    Hb = primitive_coproduct(o13(s, eps_sign), N)
    if isinstance(Hb, ConstructionFailure):
        raise ConfigurationError(Hb.render())
    H = Hb.alg
    e = eps_sign
    boost = -1 if "boost-action-sign" in corruptions else 1
    table = {}
    for j in (1, 2, 3):
        for k in (1, 2, 3):
            val = P.zero(N)
            for l in (1, 2, 3):
                c = _levi(j, k, l) * e
                if c:
                    val = val + P.gen(f"P{l}", N).scale(I * c)
            table[(f"P{k}", f"M{j}")] = val
            table[(f"P{k}", f"N{j}")] = P.gen("P4", N).scale(-I * boost) if j == k else 0
        table[("P4", f"M{j}")] = 0
        table[("P4", f"N{j}")] = P.gen(f"P{j}", N).scale(-I * boost)
    action = RightAction(P, Hb, table, N, label="classical action")
    h = DeformationSeries.h(N)
    T = tensor_presentation([P, H])
    shift = Pi if "beta-pi" in corruptions else Pi_inv
    csign = -1 if "coaction-sign" in corruptions else 1
    beta = {}
    for i in (1, 2, 3):
        beta[f"M{i}"] = T.embed(H.gen(f"M{i}", N), 1)
        val = T.embed(shift, 0) * T.embed(H.gen(f"N{i}", N), 1)
        for j in (1, 2, 3):
            for m in (1, 2, 3):
                c = _levi(i, j, m) * e * csign
                if c:
                    val = val - (T.embed(P.gen(f"P{j}", N) * shift, 0) * T.embed(H.gen(f"M{m}", N), 1)).scale(h * c)
        beta[f"N{i}"] = val
    coaction = LeftCoaction(A, Hb, beta, N, extension=BICROSS_B, action=action, label="beta_kappa")
    return KappaData(N, metric, s, e, Pi, Pi_inv, A, Hb, action, coaction, tuple(corruptions))


@dataclass
class KappaSearchFailure:
    """No convention candidate satisfied every check; one line per rejected candidate."""

    candidates: list = field(default_factory=list)

    passed = False

    def render(self):
        return "\n".join(["no kappa-Poincare convention passes"] + [f"  {c}: {w}" for c, w in self.candidates])


def _first_failure(rep: Report):
    f = rep.failures[0]
    return f"{f.id} witness={f.witness}"


def build_kappa_poincare(order: int, *, metrics=METRIC_CANDIDATES, lorentz_signs=(1, -1), eps_signs=(1, -1),
                         degree=2, samples=1, seed=0, corruptions=()):
    """Search conventions, check the bicross conditions, assemble the Hopf algebra.

    Candidates are tried in order (metric, then Lorentz sign, then global
    epsilon sign); the first passing one is used and every rejection is
    recorded in ``bundle.search``.
    """
    rejected = []
    for metric in metrics:
        A = kappa_translations(order, metric, antipode=False)
        coassoc = check_coassociativity(A, 0)
        if not coassoc.passed:
            rejected.append((f"metric={metric.name}", _first_failure(coassoc)))
            continue
        for s in lorentz_signs:
            for e in eps_signs:
                name = f"metric={metric.name} lorentz={'+' if s > 0 else '-'} eps123={e:+d}"
                kd = kappa_data(order, metric, lorentz_sign=s, eps_sign=e, corruptions=corruptions)
                mod = verify_module_algebra(kd.action, degree=degree, samples=samples, seed=seed)
                if not mod.passed:
                    rejected.append((name, _first_failure(mod)))
                    continue
                com = verify_comodule_coalgebra(kd.coaction, degree=degree, samples=samples, seed=seed)
                if not com.passed:
                    rejected.append((name, _first_failure(com)))
                    continue
                kd.action.verified = kd.coaction.verified = True
                data = kd.bicross_data()
                cond = check_bicross_conditions(data, degree, samples=samples, seed=seed, prechecks=False)
                cond.extend(mod).extend(com)
                if not cond.passed:
                    rejected.append((name, _first_failure(cond)))
                    continue
                B = bicrossproduct(data, degree=degree, samples=samples, seed=seed, conditions=cond)
                if isinstance(B, ConstructionFailure):
                    rejected.append((name, _first_failure(B.report)))
                    continue
                B.label = "kappa-poincare"
                B.notes.append(f"convention {name}")
                B.notes.extend(f"rejected {c}: {w}" for c, w in rejected)
                B.notes.extend(kd.A.notes)
                B.search = rejected
                B.kappa = kd
                return B
    return KappaSearchFailure(rejected)


# -- Weyl, Heisenberg-Lie and Lie-type bicrossproducts -------------------------------------


def build_weyl_noncounital(n: int, order=0):
    """Primitive translations acting on half-primitive coordinates, trivial coaction."""
    H, X, action = duality_action(n, order)
    A = half_primitive_coproduct(X, "left", order)
    beta = LeftCoaction(A, H, order=order, label="beta_trivial")
    data = BicrossData(H, A, action, beta, label=f"weyl-noncounital({n})")
    return bicrossproduct(data)


def build_hl_bicross(n: int, order=0, *, literal=False):
    """Heisenberg-Lie algebra as translations acting on (x, C) with the trivial coaction."""
    H, X, action = duality_action(n, order, literal=literal, central=True)
    A = primitive_coproduct(X, order)
    beta = LeftCoaction(A, H, order=order, label="beta_trivial")
    data = BicrossData(H, A, action, beta, label=f"hl({n})")
    return bicrossproduct(data)


def _bracket_fn(constants, names):
    """Bilinear bracket on coefficient dicts from structure constants ``{(i, j): {k: c}}``."""
    table = {}
    for (i, j), val in constants.items():
        v = {k: as_scalar(c) for k, c in val.items() if as_scalar(c)}
        table[(i, j)] = v
    for (i, j), v in list(table.items()):
        neg = {k: -c for k, c in v.items()}
        if (j, i) in table and table[(j, i)] != neg:
            raise InputError(f"structure constants not antisymmetric at ({i},{j})")
        table[(j, i)] = neg
        if i == j and v:
            raise InputError(f"[{names[i - 1]},{names[i - 1]}] must vanish")

    def br(x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in table.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    return br


def _add(*ds):
    out = {}
    for d in ds:
        for k, c in d.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def build_lie_type_bicross(g_constants, h_constants, action_constants, *, g_dim=None, h_dim=None,
                           g_symbol="g", h_symbol="k", order=0):
    """Lie-type action ``h_a <| g_i = c_{ia}^b h_b`` with trivial coaction and primitive coproducts.

    ``g_constants``/``h_constants``: ``{(i, j): {k: c}}`` (1-based); ``action_constants``:
    ``{(i, a): {b: c}}``.  Jacobi identities and the module conditions are
    checked first; a failure raises :class:`InputError` naming the witness triple.
    """
    gd = g_dim or max([k for key in g_constants for k in key] + [k for (i, _a) in action_constants for k in (i,)] + [1])
    hd = h_dim or max([k for key in h_constants for k in key] + [a for (_i, a) in action_constants] + [1])
    gnames = [f"{g_symbol}{i}" for i in range(1, gd + 1)]
    hnames = [f"{h_symbol}{a}" for a in range(1, hd + 1)]
    gbr = _bracket_fn(g_constants, gnames)
    hbr = _bracket_fn(h_constants, hnames)
    for names, br, dim in ((gnames, gbr, gd), (hnames, hbr, hd)):
        for a, b, c in itertools.combinations(range(1, dim + 1), 3):
            ea, eb, ec = {a: ONE}, {b: ONE}, {c: ONE}
            jac = _add(br(br(ea, eb), ec), br(br(eb, ec), ea), br(br(ec, ea), eb))
            if jac:
                raise InputError(f"Jacobi identity fails on ({names[a - 1]},{names[b - 1]},{names[c - 1]})")
    act = {key: {b: as_scalar(c) for b, c in v.items()} for key, v in action_constants.items()}

    def rho(x, i):
        out = {}
        for a, ca in x.items():
            for b, c in act.get((i, a), {}).items():
                out[b] = out.get(b, 0) + ca * c
        return {k: c for k, c in out.items() if c}

    def rho_elem(x, y):
        out = {}
        for i, ci in y.items():
            for b, c in rho(x, i).items():
                out[b] = out.get(b, 0) + ci * c
        return {k: c for k, c in out.items() if c}

    for a in range(1, hd + 1):
        for i, j in itertools.combinations(range(1, gd + 1), 2):
            ea = {a: ONE}
            lhs = _add(rho(rho(ea, i), j), {k: -c for k, c in rho(rho(ea, j), i).items()})
            rhs = rho_elem(ea, gbr({i: ONE}, {j: ONE}))
            if _add(lhs, {k: -c for k, c in rhs.items()}):
                raise InputError(f"action is not a representation on ({hnames[a - 1]},{gnames[i - 1]},{gnames[j - 1]})")
    for a, b in itertools.combinations(range(1, hd + 1), 2):
        for i in range(1, gd + 1):
            ea, eb = {a: ONE}, {b: ONE}
            lhs = rho(hbr(ea, eb), i)
            rhs = _add(hbr(rho(ea, i), eb), hbr(ea, rho(eb, i)))
            if _add(lhs, {k: -c for k, c in rhs.items()}):
                raise InputError(f"action is not by derivations on ({hnames[a - 1]},{hnames[b - 1]},{gnames[i - 1]})")

    def brackets(names, br, dim):
        out = {}
        for x, y in itertools.combinations(range(1, dim + 1), 2):
            v = br({x: ONE}, {y: ONE})
            if v:
                out[(names[x - 1], names[y - 1])] = {names[k - 1]: c for k, c in v.items()}
        return out

    G = lie_presentation("g", gnames, brackets(gnames, gbr, gd))
    Hh = lie_presentation("h", hnames, brackets(hnames, hbr, hd))
    Gb = primitive_coproduct(G, order)
    Hb = primitive_coproduct(Hh, order)
    table = {}
    for a in range(1, hd + 1):
        for i in range(1, gd + 1):
            v = Hh.zero(order)
            for b, c in act.get((i, a), {}).items():
                v = v + Hh.gen(hnames[b - 1], order).scale(c)
            table[(hnames[a - 1], gnames[i - 1])] = v
    action = RightAction(Hh, Gb, table, order, label="lie-action")
    beta = LeftCoaction(Hb, Gb, order=order, label="beta_trivial")
    return bicrossproduct(BicrossData(Gb, Hb, action, beta, label="lie-type"))


def crossed_weyl(n: int, order=0, *, literal=False):
    """``weyl(n)`` rebuilt as a crossed product from the duality action."""
    H, X, action = duality_action(n, order, literal=literal)
    return crossed_product(H, X, action, "right")


def crossed_hl(n: int, order=0, *, literal=False):
    H, X, action = duality_action(n, order, literal=literal, central=True)
    return crossed_product(H, X, action, "right")
