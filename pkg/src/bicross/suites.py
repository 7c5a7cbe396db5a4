"""Named verification suites for catalog objects and spec files."""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .catalog import (
    CATALOG_NAMES,
    KappaSearchFailure,
    build_hl_bicross,
    build_kappa_poincare,
    build_weyl_noncounital,
    catalog_presentation,
    crossed_hl,
    crossed_weyl,
    hl,
    kappa_translations,
    parse_catalog_name,
    weyl,
)
from .constructions import (
    ConfluenceError,
    ConstructionFailure,
    bicrossproduct,
    check_bicross_conditions,
    half_primitive_coproduct,
    half_primitive_image,
    primitive_coproduct,
    verify_crossed_product_matches,
)
from .errors import InputError
from .scalars import I
from .hopf import (
    BialgebraStructure,
    ObstructionCertificate,
    check_antipode_axiom,
    check_coassociativity,
    check_cocommutativity,
    check_counit_axiom,
    solve_counit,
)
from .morphism import verify_comodule_coalgebra, verify_module_algebra, verify_morphism
from .ncpoly import check_confluence, random_element
from .report import FAIL, PASS, Report
from .specfile import SpecFile, load_spec

__all__ = ["RunOptions", "run_suite", "suite_names", "resolve_target", "show"]


@dataclass(frozen=True)
class RunOptions:
    order: int = 3
    max_degree: int = 3
    seed: int = 0
    samples: int = 2
    confluence_samples: int = 200


# -- individual checks ---------------------------------------------------------------------


def confluence_check(p, opts: RunOptions) -> Report:
    rep = Report(f"confluence:{p.label}")
    cr = check_confluence(p, degree=max(opts.max_degree, 3), samples=opts.confluence_samples, seed=opts.seed,
                          order=min(opts.order, 2))
    if cr.confluent:
        rep.add("confluence", PASS, p.label)
    else:
        for f in cr.failures:
            rep.add("confluence", FAIL, p.label, f.render())
    return rep


def morphism_check(B, opts: RunOptions) -> Report:
    if isinstance(B, ConstructionFailure):
        return Report("morphism").extend(B.report)
    rep = verify_morphism(B.coproduct, "morphism:coproduct")
    if B.counit is not None:
        rep.extend(verify_morphism(B.counit, "morphism:counit"))
    if B.antipode is not None:
        rep.extend(verify_morphism(B.antipode, "morphism:antipode"))
    return rep


def _usable(B, rep):
    """Coproduct must be multiplicative before any axiom is evaluated."""
    if isinstance(B, ConstructionFailure):
        rep.extend(B.report)
        return False
    m = verify_morphism(B.coproduct, "morphism:coproduct")
    if not m.passed:
        rep.extend(m)
        return False
    return True


def coassoc_check(B, opts: RunOptions) -> Report:
    rep = Report("coassoc")
    if _usable(B, rep):
        rep.extend(check_coassociativity(B, opts.max_degree, samples=opts.samples, seed=opts.seed))
    return rep


def _certificate_record(rep, cert: ObstructionCertificate):
    gens = ""
    if cert.relation is not None:
        names = cert.presentation.names
        gens = f"{names[cert.relation.low]},{names[cert.relation.high]}"
    rep.add("counit:solve", FAIL, gens, cert.render())
    rep.notes.append("no counit exists: " + cert.render())


def counit_check(B, opts: RunOptions, alg=None, certificate=None) -> Report:
    rep = Report("counit")
    if certificate is not None:
        _certificate_record(rep, certificate)
        return rep
    if B is None or isinstance(B, ConstructionFailure):
        sol = solve_counit(alg, order=opts.order)
        if isinstance(sol, ObstructionCertificate):
            _certificate_record(rep, sol)
        else:
            rep.extend(B.report if B is not None else Report(""))
        return rep
    if _usable(B, rep):
        rep.extend(check_counit_axiom(B))
    return rep


def antipode_check(B, opts: RunOptions) -> Report:
    rep = Report("antipode")
    if not _usable(B, rep):
        return rep
    if B.counit is None:
        rep.skip("antipode", B.label, "no counit (non-counital bialgebra)")
    elif B.antipode is None:
        rep.add("antipode", FAIL, B.label, "no antipode found")
    else:
        rep.extend(check_antipode_axiom(B, opts.max_degree, samples=opts.samples, seed=opts.seed))
    return rep


def cocommutative_check(B, opts: RunOptions) -> Report:
    rep = Report("cocommutative")
    if _usable(B, rep):
        rep.extend(check_cocommutativity(B))
    return rep


def half_primitive_check(p, opts: RunOptions) -> Report:
    B = half_primitive_coproduct(p, "left", opts.order)
    rep = verify_morphism(B.coproduct, "morphism:half-primitive")
    rep.extend(check_coassociativity(B, opts.max_degree, samples=opts.samples, seed=opts.seed))
    rep.extend(check_counit_axiom(B))
    rng = random.Random(opts.seed)
    for i in range(opts.samples):
        e = random_element(p, opts.order, rng, degree=opts.max_degree)
        rep.check("half-primitive:image", B.coproduct(e) - half_primitive_image(e), f"random#{i}")
    return rep


def bundle_suite(B, opts: RunOptions) -> Report:
    """Attached construction report plus the structural axioms of a built bundle."""
    rep = Report("bundle")
    if isinstance(B, KappaSearchFailure):
        for cand, witness in B.candidates:
            rep.add("search", FAIL, cand, witness)
        return rep
    if isinstance(B, ConstructionFailure):
        return rep.extend(B.report)
    if B.report is not None:
        rep.extend(B.report)
    else:
        rep.extend(morphism_check(B, opts))
        rep.extend(check_coassociativity(B, opts.max_degree, samples=opts.samples, seed=opts.seed))
        rep.extend(check_counit_axiom(B))
        if B.counit is not None and B.antipode is not None:
            rep.extend(check_antipode_axiom(B, opts.max_degree, samples=opts.samples, seed=opts.seed))
    rep.notes.extend(B.notes)
    return rep


def crossed_match_check(builder, target, opts: RunOptions, bijection=None) -> Report:
    rep = Report("crossed")
    try:
        built = builder()
    except ConfluenceError as exc:
        rep.add("crossed:confluence", FAIL, "", str(exc))
        return rep
    rep.extend(verify_crossed_product_matches(built, target, opts.max_degree, bijection=bijection,
                                              order=opts.order, seed=opts.seed))
    kind = getattr(built.action, "table_kind", None)
    if kind:
        rep.notes.append(f"action table: {kind}")
    return rep


# -- targets ---------------------------------------------------------------------------------


class Target:
    """A named object with lazily built structures and its suites."""

    def __init__(self, label, suites, default="full"):
        self.label = label
        self.suites = suites
        self.default = default

    def run(self, suite, opts) -> Report:
        name = suite or self.default
        if name not in self.suites:
            raise InputError(f"unknown suite {name!r} for {self.label}; available: {', '.join(sorted(self.suites))}")
        rep = Report(f"{self.label}:{name}")
        for fn in self.suites[name]:
            rep.extend(fn(opts))
        return rep


def _lazy(fn):
    cache = {}

    def get(opts):
        key = (opts.order, opts.max_degree, opts.seed, opts.samples)
        if key not in cache:
            cache[key] = fn(opts)
        return cache[key]

    return get


def _primitive_target(label, p):
    bundle = _lazy(lambda o: primitive_coproduct(p, o.order))
    checks = {
        "confluence": lambda o: confluence_check(p, o),
        "morphism": lambda o: morphism_check(bundle(o), o),
        "coassoc": lambda o: coassoc_check(bundle(o), o),
        "counit": lambda o: counit_check(bundle(o), o, alg=p),
        "antipode": lambda o: antipode_check(bundle(o), o),
        "cocommutative": lambda o: cocommutative_check(bundle(o), o),
        "half-primitive": lambda o: half_primitive_check(p, o),
    }
    suites = {k: [v] for k, v in checks.items()}
    suites["full"] = [checks[k] for k in ("confluence", "morphism", "coassoc", "counit", "antipode")]
    return Target(label, suites), checks


def _noncounital_target(label, p):
    """Presentations that admit no primitive bialgebra: full suite is the half-primitive one."""
    target, checks = _primitive_target(label, p)
    target.suites["full"] = [checks["confluence"], checks["half-primitive"]]
    return target


def _catalog_target(name: str) -> Target:
    base, params = parse_catalog_name(name)
    if base == "kappa-translations":
        bundle = _lazy(lambda o: kappa_translations(o.order))
        suites = {
            "morphism": [lambda o: morphism_check(bundle(o), o)],
            "coassoc": [lambda o: coassoc_check(bundle(o), o)],
            "counit": [lambda o: counit_check(bundle(o), o)],
            "antipode": [lambda o: antipode_check(bundle(o), o)],
        }
        suites["full"] = [f for k in ("morphism", "coassoc", "counit", "antipode") for f in suites[k]]
        return Target(name, suites)
    if base == "kappa-poincare":
        built = _lazy(lambda o: build_kappa_poincare(o.order, degree=o.max_degree, samples=1, seed=o.seed))
        suites = {
            "bicross": [lambda o: bundle_suite(built(o), o)],
            "coassoc": [lambda o: coassoc_check(_bundle_or_failure(built(o)), o)],
            "counit": [lambda o: counit_check(_bundle_or_failure(built(o)), o)],
            "antipode": [lambda o: antipode_check(_bundle_or_failure(built(o)), o)],
            "cocommutative": [lambda o: cocommutative_check(_bundle_or_failure(built(o)), o)],
        }
        suites["full"] = suites["bicross"]
        return Target(name, suites)
    if base == "weyl-noncounital":
        n = _dimension(base, params)
        built = _lazy(lambda o: build_weyl_noncounital(n, o.order))
        suites = {
            "bicross": [lambda o: bundle_suite(built(o), o)],
            "coassoc": [lambda o: coassoc_check(built(o), o)],
            "counit": [lambda o: counit_check(built(o), o)],
            "cocommutative": [lambda o: cocommutative_check(built(o), o)],
        }
        suites["full"] = suites["bicross"]
        return Target(name, suites)
    p = catalog_presentation(name)
    if base in ("weyl", "qspace"):
        target = _noncounital_target(name, p)
        if base == "weyl":
            n = _dimension(base, params)
            target.suites["crossed"] = [lambda o: crossed_match_check(lambda: crossed_weyl(n, o.order), weyl(n), o)]
            # the literal table builds the isomorph under P -> -P
            flip = {f"P{i}": (f"P{i}", -1) for i in range(1, n + 1)}
            target.suites["crossed-literal"] = [lambda o: crossed_match_check(
                lambda: crossed_weyl(n, o.order, literal=True), weyl(n), o, flip)]
            target.suites["full"].append(target.suites["crossed"][0])
        return target
    target, _ = _primitive_target(name, p)
    if base == "hl":
        n = _dimension(base, params)
        built = _lazy(lambda o: build_hl_bicross(n, o.order))
        target.suites["bicross"] = [lambda o: bundle_suite(built(o), o)]
        target.suites["crossed"] = [lambda o: crossed_match_check(lambda: crossed_hl(n, o.order), hl(n), o)]
        # the literal table builds the isomorph under P -> -iP
        flip = {f"P{i}": (f"P{i}", -I) for i in range(1, n + 1)}
        target.suites["crossed-literal"] = [lambda o: crossed_match_check(
            lambda: crossed_hl(n, o.order, literal=True), hl(n), o, flip)]
        target.suites["full"] += target.suites["bicross"] + target.suites["crossed"]
    return target


def _dimension(base, params):
    if len(params) != 1 or not params[0].isdigit():
        raise InputError(f"{base} takes one natural-number parameter")
    return int(params[0])


def _bundle_or_failure(B):
    if isinstance(B, KappaSearchFailure):
        rep = Report("search")
        for cand, witness in B.candidates:
            rep.add("search", FAIL, cand, witness)
        return ConstructionFailure("convention search", rep)
    return B


# -- spec-file targets --------------------------------------------------------------------


def _spec_check(spec: SpecFile, kind, name, opts):
    if kind == "confluence":
        return confluence_check(spec.lookup("algebras", name), opts)
    if kind == "half-primitive":
        return half_primitive_check(spec.lookup("algebras", name), opts)
    if kind in ("morphism", "coassoc", "counit", "antipode", "cocommutative"):
        B = spec.lookup("bialgebras", name)
        if kind == "counit":
            return counit_check(B, opts, certificate=spec.obstructions.get(name))
        return {
            "morphism": morphism_check,
            "coassoc": coassoc_check,
            "antipode": antipode_check,
            "cocommutative": cocommutative_check,
        }[kind](B, opts)
    if kind == "module":
        return verify_module_algebra(spec.lookup("actions", name), opts.max_degree, samples=opts.samples,
                                     seed=opts.seed)
    if kind == "comodule":
        return verify_comodule_coalgebra(spec.lookup("coactions", name), opts.max_degree, samples=opts.samples,
                                         seed=opts.seed)
    if kind == "conditions":
        return check_bicross_conditions(spec.lookup("bicross", name), opts.max_degree, samples=opts.samples,
                                        seed=opts.seed)
    if kind == "bicross":
        data = spec.lookup("bicross", name)
        try:
            B = bicrossproduct(data, degree=opts.max_degree, samples=opts.samples, seed=opts.seed,
                               confluence_samples=opts.confluence_samples)
        except ConfluenceError as exc:
            rep = Report("bicross")
            rep.add("crossed:confluence", FAIL, name, str(exc))
            return rep
        return bundle_suite(B, opts)
    raise InputError(f"unknown check kind {kind!r}")


SPEC_CHECKS = ("confluence", "half-primitive", "morphism", "coassoc", "counit", "antipode", "cocommutative",
               "module", "comodule", "conditions", "bicross")


def _spec_target(path, order) -> Target:
    spec = load_spec(path, order=order)
    suites = {}
    for sname, checks in spec.suites.items():
        fns = []
        for kind, name in checks:
            if kind not in SPEC_CHECKS:
                raise InputError(f"suite {sname}: unknown check {kind!r}; known: {', '.join(SPEC_CHECKS)}")
            if name is None:
                raise InputError(f"suite {sname}: check {kind} needs a target")
            fns.append(lambda o, k=kind, n=name: _spec_check(spec, k, n, o))
        suites[sname] = fns
    if not suites:
        raise InputError(f"{path}: no suites defined")
    default = "full" if "full" in suites else sorted(suites)[0]
    t = Target(Path(path).name, suites, default)
    t.spec = spec
    return t


def _is_file(target: str):
    return target.endswith((".yaml", ".yml")) or Path(target).is_file()


def resolve_target(target: str, *, order=None) -> Target:
    if _is_file(target):
        return _spec_target(target, order)
    return _catalog_target(target)


def suite_names(target: str, *, order=None):
    return sorted(resolve_target(target, order=order).suites)


def run_suite(target: str, suite: str | None = None, opts: RunOptions | None = None, *, file_order=None) -> Report:
    """Resolve ``target`` (catalog name or YAML path) and run the named suite."""
    opts = opts or RunOptions()
    t = resolve_target(target, order=file_order)
    if getattr(t, "spec", None) is not None and file_order is None:
        opts = RunOptions(t.spec.order, opts.max_degree, opts.seed, opts.samples, opts.confluence_samples)
    return t.run(suite, opts)


def show(target: str, order=3) -> str:
    """Canonical text dump of a catalog object."""
    base, params = parse_catalog_name(target)
    if base == "kappa-poincare":
        B = build_kappa_poincare(order)
    elif base == "kappa-translations":
        B = kappa_translations(order)
    elif base == "weyl-noncounital":
        B = build_weyl_noncounital(_dimension(base, params), order)
    elif base == "hl":
        B = build_hl_bicross(_dimension(base, params), order)
    else:
        p = catalog_presentation(target)
        B = primitive_coproduct(p, order)
        if isinstance(B, ConstructionFailure):
            lines = [f"algebra {p.label}", "generators " + " ".join(p.names)]
            lines += ["relation " + p.relation_text(r, order) for r in p.rules() if r.remainder]
            lines.append("coproduct none: " + B.render().replace("\n", "; "))
            return "\n".join(lines)
    if isinstance(B, (ConstructionFailure, KappaSearchFailure)):
        raise InputError(B.render())
    assert isinstance(B, BialgebraStructure)
    return B.render()


def catalog_help():
    return ", ".join(CATALOG_NAMES)
