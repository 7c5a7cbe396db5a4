"""Declarative YAML spec files.

A spec file names algebras, bialgebras, actions, coactions and bicross data,
then lists suites of checks to run on them::

    order: 2
    algebras:
      X:
        generators: [x1, x2]
        relations:
          - "[x2, x1] = h"
      T:
        catalog: translations(2)
    definitions:
      Psq: {algebra: T, expr: "P1^2 + P2^2"}
    bialgebras:
      T:
        algebra: T
        coproduct: primitive          # or half-left, half-right, or a map of images
        counit: solve                 # or absent, or a map of images
        antipode: solve               # or absent, or a map of images
    actions:
      act:
        module: X
        acting: T
        table:
          "x1 <| P1": "-1"
    coactions:
      beta:
        coacting: X
        comodule: T
        extension: trivial            # or bicross, with a table of images
    bicross:
      K: {H: T, A: X, action: act, coaction: beta}
    suites:
      main:
        - coassoc: T
        - bicross: K

Relations ``[a, b] = value`` are converted to the solved rewrite form, so
``value`` must be a combination of normal-ordered words of length at most 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .catalog import catalog_presentation
from .constructions import BicrossData, half_primitive_coproduct
from .errors import ConfigurationError, InputError
from .hopf import BialgebraStructure, ObstructionCertificate, solve_antipode, solve_counit
from .morphism import (
    ANTIMULTIPLICATIVE,
    BICROSS_B,
    TRIVIAL,
    AlgebraMorphism,
    LeftCoaction,
    RightAction,
    verify_morphism,
)
from .ncpoly import GROUND, Presentation, RawTerms, tensor_presentation
from .parser import parse_expression

__all__ = ["SpecFile", "load_spec", "parse_spec", "parse_relation"]

_SECTIONS = ("order", "algebras", "definitions", "bialgebras", "actions", "coactions", "bicross", "suites")
_RELATION = re.compile(r"^\s*\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]\s*=(.*)$", re.S)
_ACTION_KEY = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*<\|\s*([A-Za-z_][A-Za-z0-9_]*)\s*$")


@dataclass
class SpecFile:
    order: int
    algebras: dict = field(default_factory=dict)
    definitions: dict = field(default_factory=dict)
    bialgebras: dict = field(default_factory=dict)
    actions: dict = field(default_factory=dict)
    coactions: dict = field(default_factory=dict)
    bicross: dict = field(default_factory=dict)
    suites: dict = field(default_factory=dict)
    obstructions: dict = field(default_factory=dict)
    source: str = "<spec>"

    def lookup(self, kind, name):
        table = getattr(self, kind)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise InputError(f"{self.source}: unknown {kind[:-1] if kind != 'bicross' else kind} {name!r} (known: {known})")
        return table[name]


def _mapping(value, what):
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise InputError(f"{what} must be a mapping")
    return value


def parse_relation(text: str, names, order=0):
    """``"[a, b] = value"`` to ``(high, low, RawTerms)`` for generators ``names`` in sort order."""
    m = _RELATION.match(str(text))
    if not m:
        raise InputError(f"relation {text!r} is not of the form [a, b] = value")
    a, b, rhs = m.group(1), m.group(2), m.group(3)
    for g in (a, b):
        if g not in names:
            raise InputError(f"relation {text!r}: unknown generator {g!r}")
    if a == b:
        raise InputError(f"relation {text!r}: a generator always commutes with itself")
    free = Presentation("free", names, commute_rest=False)
    try:
        value = parse_expression(rhs, free, order)
    except InputError as exc:
        raise InputError(f"relation {text!r}: {exc}") from None
    ia, ib = names.index(a), names.index(b)
    # [low, high] = v means high*low = low*high - v
    sign = -1 if ia < ib else 1
    rem = RawTerms({key: c * sign for key, c in value.raw_terms().items()})
    return (max(ia, ib), min(ia, ib), rem)


def _build_algebra(name, body, order):
    if isinstance(body, str):
        body = {"catalog": body}
    body = _mapping(body, f"algebra {name}")
    if "catalog" in body:
        return catalog_presentation(str(body["catalog"]))
    gens = body.get("generators")
    if not isinstance(gens, list) or not gens:
        raise InputError(f"algebra {name}: generators must be a non-empty list")
    names = [str(g) for g in gens]
    rels = [parse_relation(r, names, order) for r in body.get("relations") or []]
    return Presentation(str(body.get("label", name)), names, rels)


def _images(spec, mapping, domain, codomain, order, what):
    mapping = _mapping(mapping, what)
    unknown = set(map(str, mapping)) - set(domain.names)
    if unknown:
        raise InputError(f"{what}: unknown generators {sorted(unknown)}")
    images = {}
    for g in domain.names:
        if g not in mapping:
            raise InputError(f"{what}: no image for generator {g}")
        images[g] = parse_expression(str(mapping[g]), codomain, order, spec.definitions)
    return images


def _build_bialgebra(spec, name, body, order):
    body = _mapping(body, f"bialgebra {name}")
    alg = spec.lookup("algebras", str(body.get("algebra", name)))
    cop = body.get("coproduct", "primitive")
    T = tensor_presentation([alg, alg])
    if cop in ("half-left", "half-right"):
        B = half_primitive_coproduct(alg, cop.split("-")[1], order, label=name)
        if body.get("counit", "absent") != "absent" or body.get("antipode", "absent") != "absent":
            raise InputError(f"bialgebra {name}: half-primitive coproducts have no counit or antipode")
        return B
    if cop == "primitive":
        images = {g: T.embed(alg.gen(g, order), 0) + T.embed(alg.gen(g, order), 1) for g in alg.names}
    elif isinstance(cop, dict):
        images = _images(spec, cop, alg, T, order, f"coproduct of {name}")
    else:
        raise InputError(f"bialgebra {name}: coproduct must be primitive, half-left, half-right or a map")
    D = AlgebraMorphism(alg, T, images, order, label=f"Delta_{name}")
    B = BialgebraStructure(alg, D, label=name)
    counit = body.get("counit", "solve")
    if counit == "solve":
        if verify_morphism(D).passed:
            sol = solve_counit(alg, D)
        else:
            B.notes.append("coproduct is not an algebra morphism; counit solved from the relations alone")
            sol = solve_counit(alg, order=order)
        if isinstance(sol, ObstructionCertificate):
            spec.obstructions[name] = sol
            B.notes.append(sol.render())
        elif sol.morphism is not None and D.verified:
            B.counit = sol.morphism
            B.notes.append("counit " + sol.note)
    elif isinstance(counit, dict):
        B.counit = AlgebraMorphism(alg, GROUND, _images(spec, counit, alg, GROUND, order, f"counit of {name}"),
                                   order, label="eps")
    elif counit != "absent":
        raise InputError(f"bialgebra {name}: counit must be solve, absent or a map")
    anti = body.get("antipode", "solve" if B.counit is not None else "absent")
    if isinstance(anti, dict):
        B.antipode = AlgebraMorphism(alg, alg, _images(spec, anti, alg, alg, order, f"antipode of {name}"),
                                     order, ANTIMULTIPLICATIVE, label="S")
    elif anti == "solve":
        S = solve_antipode(B) if B.counit is not None else None
        if S is None:
            B.notes.append("antipode not solved: no counit")
        elif isinstance(S, AlgebraMorphism):
            B.antipode = S
        else:
            B.notes.append(S.render())
    elif anti != "absent":
        raise InputError(f"bialgebra {name}: antipode must be solve, absent or a map")
    return B


def _build_action(spec, name, body, order):
    body = _mapping(body, f"action {name}")
    X = spec.lookup("algebras", str(body.get("module")))
    H = spec.lookup("bialgebras", str(body.get("acting")))
    table = {(a, g): 0 for a in X.names for g in H.alg.names}
    for key, value in _mapping(body.get("table"), f"action {name} table").items():
        m = _ACTION_KEY.match(str(key))
        if not m:
            raise InputError(f"action {name}: table key {key!r} is not of the form 'a <| g'")
        a, g = m.groups()
        if a not in X or g not in H.alg:
            raise InputError(f"action {name}: unknown generator in {key!r}")
        table[(a, g)] = parse_expression(str(value), X, order, spec.definitions)
    return RightAction(X, H, table, order, label=name)


def _build_coaction(spec, name, body, order):
    body = _mapping(body, f"coaction {name}")
    A = spec.lookup("bialgebras", str(body.get("coacting")))
    H = spec.lookup("bialgebras", str(body.get("comodule")))
    ext = body.get("extension", "trivial")
    if ext == "trivial":
        return LeftCoaction(A, H, order=order, extension=TRIVIAL, label=name)
    if ext != "bicross":
        raise InputError(f"coaction {name}: extension must be trivial or bicross")
    act = spec.lookup("actions", str(body.get("action")))
    T = tensor_presentation([A.alg, H.alg])
    table = _images(spec, body.get("table"), H.alg, T, order, f"coaction {name}")
    return LeftCoaction(A, H, table, order, extension=BICROSS_B, action=act, label=name)


def _build_bicross(spec, name, body):
    body = _mapping(body, f"bicross {name}")
    try:
        return BicrossData(
            spec.lookup("bialgebras", str(body.get("H"))),
            spec.lookup("bialgebras", str(body.get("A"))),
            spec.lookup("actions", str(body.get("action"))),
            spec.lookup("coactions", str(body.get("coaction"))),
            label=name,
        )
    except ConfigurationError as exc:
        raise InputError(f"bicross {name}: {exc}") from None


def _parse_suites(raw):
    suites = {}
    for sname, checks in _mapping(raw, "suites").items():
        if not isinstance(checks, list):
            raise InputError(f"suite {sname}: expected a list of checks")
        out = []
        for item in checks:
            if isinstance(item, dict) and len(item) == 1:
                (kind, target), = item.items()
            elif isinstance(item, dict) and "check" in item:
                kind, target = item["check"], item.get("target")
            else:
                raise InputError(f"suite {sname}: malformed check entry {item!r}")
            out.append((str(kind), None if target is None else str(target)))
        suites[str(sname)] = out
    return suites


def parse_spec(text: str, *, order=None, source="<spec>") -> SpecFile:
    """Parse YAML spec text; ``order`` overrides the file's truncation order."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InputError(f"{source}: invalid YAML: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be a mapping")
    extra = set(data) - set(_SECTIONS)
    if extra:
        raise InputError(f"{source}: unknown sections {sorted(extra)}")
    N = data.get("order", 3) if order is None else order
    if not isinstance(N, int) or N < 0:
        raise InputError(f"{source}: order must be a non-negative integer")
    spec = SpecFile(N, source=source)
    for name, body in _mapping(data.get("algebras"), "algebras").items():
        spec.algebras[str(name)] = _build_algebra(str(name), body, N)
    for name, body in _mapping(data.get("definitions"), "definitions").items():
        body = _mapping(body, f"definition {name}")
        alg = spec.lookup("algebras", str(body.get("algebra")))
        spec.definitions[str(name)] = parse_expression(str(body.get("expr")), alg, N, spec.definitions)
    for name, body in _mapping(data.get("bialgebras"), "bialgebras").items():
        spec.bialgebras[str(name)] = _build_bialgebra(spec, str(name), body, N)
    for name, body in _mapping(data.get("actions"), "actions").items():
        spec.actions[str(name)] = _build_action(spec, str(name), body, N)
    for name, body in _mapping(data.get("coactions"), "coactions").items():
        spec.coactions[str(name)] = _build_coaction(spec, str(name), body, N)
    for name, body in _mapping(data.get("bicross"), "bicross").items():
        spec.bicross[str(name)] = _build_bicross(spec, str(name), body)
    spec.suites = _parse_suites(data.get("suites"))
    return spec


def load_spec(path, *, order=None) -> SpecFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text, order=order, source=str(p))
