"""Presented noncommutative algebras with PBW-style normal ordering.

Generators are totally ordered by ``sort_key``; a word is normal when its
letters are nondecreasing.  Each out-of-order adjacent pair ``g_a g_b``
(``a > b``) has a rule ``g_a g_b -> g_b g_a + remainder``.  Elements are
sparse maps ``(word, k) -> Scalar`` meaning ``coeff * h^k * word``; the
public view groups them into :class:`DeformationSeries` per word.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ConfigurationError, InputError, NotASquareRoot, NotInvertible, ResourceError
from .scalars import ONE, ZERO, DeformationSeries, Q, Scalar, as_scalar, render_series

__all__ = [
    "GeneratorSymbol",
    "RewriteRule",
    "Presentation",
    "TensorPresentation",
    "Element",
    "GROUND",
    "tensor_presentation",
    "tensor_elements",
    "normal_form",
    "algebra_mul",
    "check_confluence",
    "ConfluenceReport",
    "central_sqrt",
    "central_invert",
]

DEFAULT_STEP_BUDGET = 2_000_000


@dataclass(frozen=True)
class GeneratorSymbol:
    name: str
    sort_key: int
    index: int | None = None


@dataclass(frozen=True)
class RewriteRule:
    """``high * low -> low * high + remainder`` with ``high > low`` in sort order.

    Equivalently the relation ``[low, high] = -remainder``; :meth:`value_terms`
    returns the right-hand side of that commutator form.
    """

    high: int
    low: int
    remainder: tuple  # sorted ((word, k), Scalar) pairs, words normal

    @property
    def remainder_terms(self):
        return dict(self.remainder)

    def value_terms(self):
        return {key: -c for key, c in self.remainder}


class RawTerms(dict):
    """Internal ``{(word, k): Scalar}`` maps with generator indices."""


def _add_into(acc, key, c):
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


def _is_normal(word):
    return all(word[i] <= word[i + 1] for i in range(len(word) - 1))


def _coeff_items(coeff):
    """Expand a scalar-like or series coefficient into ``{k: Scalar}``."""
    if isinstance(coeff, DeformationSeries):
        return coeff.sparse()
    c = as_scalar(coeff)
    return {0: c} if c else {}


class Presentation:
    """A finitely presented algebra in solved (PBW) form."""

    def __init__(
        self,
        label,
        generators,
        relations=None,
        *,
        commute_rest=True,
        strict=True,
        step_budget=DEFAULT_STEP_BUDGET,
    ):
        self.label = label
        gens = []
        for pos, g in enumerate(generators):
            if isinstance(g, GeneratorSymbol):
                gens.append(GeneratorSymbol(g.name, pos, g.index))
            else:
                gens.append(GeneratorSymbol(str(g), pos, _trailing_index(str(g))))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate generator names in {label}: {names}")
        self.generators = tuple(gens)
        self._index = {g.name: g.sort_key for g in gens}
        self.strict = strict
        self.step_budget = step_budget
        self._rules: dict[tuple[int, int], list[RewriteRule]] = {}
        for rel in relations or ():
            high, low, rem = rel
            self._add_rule(high, low, rem)
        if commute_rest:
            n = len(gens)
            for a in range(n):
                for b in range(a):
                    self._rules.setdefault((a, b), [RewriteRule(a, b, ())])
        self._cache: dict[int, dict] = {}
        self._work = 0
        self._depth = 0

    # -- construction -------------------------------------------------------
    def _add_rule(self, high, low, remainder):
        a = high if isinstance(high, int) else self.index(high)
        b = low if isinstance(low, int) else self.index(low)
        if a <= b:
            raise InputError(
                f"relation {self.generators[a].name}*{self.generators[b].name} is not in "
                f"solved form: left side must be higher*lower in the generator order"
            )
        terms = {}
        if isinstance(remainder, RawTerms):
            items = [(w, DeformationSeries.from_sparse({k: c}, k)) for (w, k), c in remainder.items()]
        else:
            items = remainder.items() if isinstance(remainder, dict) else remainder
        for word, coeff in items:
            w = tuple(x if isinstance(x, int) else self.index(x) for x in word)
            if not _is_normal(w):
                raise InputError(
                    f"remainder word {self.render_word(w)} of relation "
                    f"{self.generators[a].name}*{self.generators[b].name} is not normal ordered"
                )
            if len(w) > 2:
                raise InputError("remainders may not increase word degree")
            for k, c in _coeff_items(coeff).items():
                _add_into(terms, (w, k), c)
        rule = RewriteRule(a, b, tuple(sorted(terms.items(), key=lambda kv: kv[0])))
        existing = self._rules.get((a, b))
        if existing:
            if self.strict:
                raise InputError(
                    f"duplicate rule for pair ({self.generators[a].name}, {self.generators[b].name})"
                )
            existing.append(rule)
        else:
            self._rules[(a, b)] = [rule]

    # -- lookup -------------------------------------------------------------
    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r} in {self.label}") from None

    def __contains__(self, name):
        return name in self._index

    @property
    def names(self):
        return [g.name for g in self.generators]

    @property
    def ngens(self):
        return len(self.generators)

    def rules(self):
        """All rules, sorted by (high, low)."""
        out = []
        for key in sorted(self._rules):
            out.extend(self._rules[key])
        return out

    def rule(self, high, low) -> RewriteRule:
        a = high if isinstance(high, int) else self.index(high)
        b = low if isinstance(low, int) else self.index(low)
        try:
            return self._rules[(a, b)][0]
        except KeyError:
            raise ConfigurationError(
                f"no rule for pair ({self.generators[a].name}, {self.generators[b].name})"
            ) from None

    def rules_for(self, a, b):
        return self._rules.get((a, b), [])

    def commutes(self, a, b) -> bool:
        if a == b:
            return True
        hi, lo = (a, b) if a > b else (b, a)
        rs = self._rules.get((hi, lo))
        return bool(rs) and all(not r.remainder for r in rs)

    def is_commutative(self):
        return all(not r.remainder for r in self.rules())

    def render_word(self, word) -> str:
        if not word:
            return "1"
        return "*".join(self.generators[i].name for i in word)

    def relation_text(self, rule: RewriteRule, order=None) -> str:
        low = self.generators[rule.low].name
        high = self.generators[rule.high].name
        value = Element(self, order if order is not None else _max_k(rule.remainder), rule.value_terms())
        return f"[{low},{high}] = {value.render()}"

    def __repr__(self):
        return f"Presentation({self.label!r}, {self.names})"

    # -- elements -----------------------------------------------------------
    def zero(self, order) -> Element:
        return Element(self, order, {})

    def one(self, order) -> Element:
        return Element(self, order, {((), 0): ONE})

    def scalar(self, value, order) -> Element:
        terms = {((), k): c for k, c in _coeff_items(value).items() if k <= order}
        return Element(self, order, terms)

    def gen(self, name, order) -> Element:
        i = name if isinstance(name, int) else self.index(name)
        return Element(self, order, {((i,), 0): ONE})

    def gens(self, order):
        return [self.gen(i, order) for i in range(self.ngens)]

    def monomial(self, word, order, coeff=1) -> Element:
        """Normal form of the product of letters in ``word`` (names or indices)."""
        w = tuple(x if isinstance(x, int) else self.index(x) for x in word)
        out = Element(self, order, self._mul_word((), w, order))
        if coeff != 1:
            out = out * coeff
        return out

    # -- rewriting kernel ---------------------------------------------------
    def _mul_word(self, u, v, N):
        """Normal form of ``u*v`` for normal words, as a term dict (truncated at N)."""
        if not v:
            return {(u, 0): ONE}
        if not u:
            if _is_normal(v):
                return {(v, 0): ONE}
        if self._depth == 0:
            self._work = 0
        self._depth += 1
        try:
            acc = {(u, 0): ONE}
            for g in v:
                nxt = {}
                for (w, k), c in acc.items():
                    for (w2, k2), c2 in self._mul_gen(w, g, N).items():
                        kk = k + k2
                        if kk <= N:
                            _add_into(nxt, (w2, kk), c * c2)
                acc = nxt
            return acc
        except RecursionError:
            raise ResourceError(
                f"rewriting recursion too deep in {self.label} while reducing "
                f"{self.render_word(u)} * {self.render_word(v)}",
                partial=(u, v),
            ) from None
        finally:
            self._depth -= 1

    def _mul_gen(self, u, g, N):
        cache = self._cache.get(N)
        if cache is None:
            cache = self._cache.setdefault(N, {})
        key = (u, g)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if not u or u[-1] <= g:
            res = {(u + (g,), 0): ONE}
        else:
            a = u[-1]
            head = u[:-1]
            rs = self._rules.get((a, g))
            if not rs:
                raise ConfigurationError(
                    f"no rule for pair ({self.generators[a].name}, {self.generators[g].name}) in {self.label}"
                )
            rule = rs[0]
            self._work += 1
            if self._work > self.step_budget:
                raise ResourceError(
                    f"rewriting budget of {self.step_budget} steps exceeded in {self.label}",
                    partial=(u, g),
                )
            res = {}
            for (w, k), c in self._mul_gen(head, g, N).items():
                for (w2, k2), c2 in self._mul_gen(w, a, N).items():
                    kk = k + k2
                    if kk <= N:
                        _add_into(res, (w2, kk), c * c2)
            for (r, k), c in rule.remainder:
                if k > N:
                    continue
                for (w2, k2), c2 in self._mul_word(head, r, N).items():
                    kk = k + k2
                    if kk <= N:
                        _add_into(res, (w2, kk), c * c2)
        cache[key] = res
        return res

    def clear_cache(self):
        self._cache.clear()


def _max_k(terms):
    return max((k for (_, k), _c in terms), default=0)


def _trailing_index(name):
    digits = ""
    for ch in reversed(name):
        if ch.isdigit():
            digits = ch + digits
        else:
            break
    return int(digits) if digits and digits != name else None


GROUND = Presentation("k", [])


class TensorPresentation(Presentation):
    """Tensor product of presentations; generators of slot ``s`` carry suffix ``_s``."""

    def __init__(self, factors):
        flat = []
        for f in factors:
            if isinstance(f, TensorPresentation):
                flat.extend(f.factors)
            else:
                flat.append(f)
        self.factors = tuple(flat)
        offsets = []
        gens = []
        off = 0
        for slot, f in enumerate(self.factors, start=1):
            offsets.append(off)
            gens.extend(f"{name}_{slot}" for name in f.names)
            off += f.ngens
        self.offsets = tuple(offsets)
        self._bounds = tuple(offsets[1:]) + (off,)
        rels = []
        for f, o in zip(self.factors, self.offsets):
            for r in f.rules():
                rem = RawTerms({(tuple(x + o for x in w), k): c for (w, k), c in r.remainder})
                rels.append((r.high + o, r.low + o, rem))
        label = " (x) ".join(f.label for f in self.factors)
        super().__init__(label, gens, rels, commute_rest=True, strict=True)
        self._slot_of = []
        for s, f in enumerate(self.factors):
            self._slot_of.extend([s] * f.ngens)

    @property
    def nslots(self):
        return len(self.factors)

    def split(self, word):
        """Split a normal word into per-slot local words."""
        out = []
        pos = 0
        n = len(word)
        for off, end in zip(self.offsets, self._bounds):
            start = pos
            while pos < n and word[pos] < end:
                pos += 1
            out.append(tuple(x - off for x in word[start:pos]))
        return tuple(out)

    def join(self, words):
        out = []
        for off, w in zip(self.offsets, words):
            out.extend(x + off for x in w)
        return tuple(out)

    def render_word(self, word):
        if _is_normal(word):
            parts = self.split(word)
            return "(" + " (x) ".join(f.render_word(w) for f, w in zip(self.factors, parts)) + ")"
        return super().render_word(word)

    def _mul_word(self, u, v, N):
        if not v:
            return {(u, 0): ONE}
        if not u:
            if _is_normal(v):
                return {(v, 0): ONE}
        if not (_is_normal(u) and _is_normal(v)):
            return super()._mul_word(u, v, N)
        us, vs = self.split(u), self.split(v)
        acc = {((), 0): ONE}
        for f, off, a, b in zip(self.factors, self.offsets, us, vs):
            prod = f._mul_word(a, b, N) if (a or b) else {((), 0): ONE}
            nxt = {}
            for (w, k), c in acc.items():
                for (w2, k2), c2 in prod.items():
                    kk = k + k2
                    if kk <= N:
                        _add_into(nxt, (w + tuple(x + off for x in w2), kk), c * c2)
            acc = nxt
        return acc

    def _mul_gen(self, u, g, N):
        if _is_normal(u):
            return self._mul_word(u, (g,), N)
        return super()._mul_gen(u, g, N)

    def embed(self, element, slot):
        """Place an element of ``factors[slot]`` (or a tensor block starting there) into this tensor."""
        p = element.parent
        span = p.factors if isinstance(p, TensorPresentation) else (p,)
        for j, f in enumerate(span):
            if self.factors[slot + j] is not f:
                raise ConfigurationError(f"cannot embed {p.label} at slot {slot} of {self.label}")
        off = self.offsets[slot]
        if isinstance(p, TensorPresentation):
            remap = []
            for s, f in enumerate(p.factors):
                delta = self.offsets[slot + s] - p.offsets[s]
                remap.extend([delta] * f.ngens)
            terms = {(tuple(x + remap[x] for x in w), k): c for (w, k), c in element._t.items()}
        else:
            terms = {(tuple(x + off for x in w), k): c for (w, k), c in element._t.items()}
        return Element(self, element.order, terms)


@lru_cache(maxsize=None)
def _tensor_cached(factors):
    return TensorPresentation(factors)


def tensor_presentation(factors) -> TensorPresentation:
    """Tensor product presentation (nested tensors are flattened and results memoized)."""
    flat = []
    for f in factors:
        if isinstance(f, TensorPresentation):
            flat.extend(f.factors)
        else:
            flat.append(f)
    return _tensor_cached(tuple(flat))


def tensor_elements(*elements) -> Element:
    """``e1 (x) e2 (x) ...`` in the (flattened) tensor of their parents."""
    if not elements:
        raise InputError("empty tensor product")
    order = elements[0].order
    for e in elements:
        if e.order != order:
            raise ConfigurationError("truncation order mismatch in tensor product")
    if len(elements) == 1:
        return elements[0]
    parent = tensor_presentation([e.parent for e in elements])
    acc = {((), 0): ONE}
    shift = 0
    for e in elements:
        nxt = {}
        for (w, k), c in acc.items():
            for (w2, k2), c2 in e._t.items():
                kk = k + k2
                if kk <= order:
                    _add_into(nxt, (w + tuple(x + shift for x in w2), kk), c * c2)
        acc = nxt
        shift += e.parent.ngens
    return Element(parent, order, acc)


class Element:
    """An immutable linear combination of normal words with series coefficients."""

    __slots__ = ("parent", "order", "_t")

    def __init__(self, parent: Presentation, order: int, terms=None):
        self.parent = parent
        self.order = order
        self._t = {key: c for key, c in (terms or {}).items() if c and key[1] <= order}

    # -- views --------------------------------------------------------------
    @property
    def terms(self):
        grouped = {}
        for (w, k), c in self._t.items():
            grouped.setdefault(w, {})[k] = c
        return {w: DeformationSeries.from_sparse(s, self.order) for w, s in sorted(grouped.items())}

    def raw_terms(self):
        return dict(self._t)

    def words(self):
        return sorted({w for (w, _k) in self._t})

    def coeff(self, word) -> DeformationSeries:
        w = tuple(x if isinstance(x, int) else self.parent.index(x) for x in word)
        return DeformationSeries.from_sparse(
            {k: c for (ww, k), c in self._t.items() if ww == w}, self.order
        )

    def scalar_part(self) -> DeformationSeries:
        return self.coeff(())

    def h_part(self, k) -> Element:
        """The coefficient of ``h^k`` as an element with no h-dependence."""
        return Element(self.parent, self.order, {(w, 0): c for (w, kk), c in self._t.items() if kk == k})

    def letters(self):
        return sorted({x for (w, _k) in self._t for x in w})

    def degree(self):
        return max((len(w) for (w, _k) in self._t), default=0)

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def truncate(self, order) -> Element:
        if order > self.order:
            raise ConfigurationError("cannot raise the truncation order of an element")
        return Element(self.parent, order, self._t)

    def with_order(self, order) -> Element:
        """Reinterpret at another truncation order (only safe for h-free constructions)."""
        return Element(self.parent, order, self._t)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if other.parent is not self.parent:
            raise InputError(f"presentation mismatch: {self.parent.label} vs {other.parent.label}")
        if other.order != self.order:
            raise ConfigurationError(f"truncation order mismatch: {self.order} vs {other.order}")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, DeformationSeries) and other.order != self.order:
            raise ConfigurationError(f"truncation order mismatch: {self.order} vs {other.order}")
        return self.parent.scalar(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._t)
        for key, c in other._t.items():
            _add_into(t, key, c)
        return Element(self.parent, self.order, t)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, self.order, {key: -c for key, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        t = dict(self._t)
        for key, c in other._t.items():
            _add_into(t, key, -c)
        return Element(self.parent, self.order, t)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, coeff) -> Element:
        items = _coeff_items(coeff)
        N = self.order
        t = {}
        for (w, k), c in self._t.items():
            for k2, c2 in items.items():
                if k + k2 <= N:
                    _add_into(t, (w, k + k2), c * c2)
        return Element(self.parent, N, t)

    def __mul__(self, other):
        if not isinstance(other, Element):
            if isinstance(other, DeformationSeries) and other.order != self.order:
                raise ConfigurationError(f"truncation order mismatch: {self.order} vs {other.order}")
            return self.scale(other)
        self._check(other)
        N = self.order
        mw = self.parent._mul_word
        out = {}
        for (u, k1), c1 in self._t.items():
            for (v, k2), c2 in other._t.items():
                k = k1 + k2
                if k > N:
                    continue
                c = c1 * c2
                if not u or not v:
                    _add_into(out, (u or v, k), c)
                    continue
                for (w, k3), c3 in mw(u, v, N).items():
                    kk = k + k3
                    if kk <= N:
                        _add_into(out, (w, kk), c * c3)
        return Element(self.parent, N, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Element):
            return self * central_invert(other)
        return self.scale(as_scalar(1) / as_scalar(other)) if not isinstance(other, DeformationSeries) else self.scale(other.invert())

    def __pow__(self, n):
        if n < 0:
            return central_invert(self) ** (-n)
        out = self.parent.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent is other.parent and self.order == other.order and self._t == other._t
        try:
            other = self._coerce(other)
        except (TypeError, ConfigurationError):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash((id(self.parent), self.order, frozenset(self._t.items())))

    # -- rendering ----------------------------------------------------------
    def render(self) -> str:
        grouped = {}
        for (w, k), c in self._t.items():
            grouped.setdefault(w, {})[k] = c
        if not grouped:
            return "0"
        tensor = isinstance(self.parent, TensorPresentation)
        parts = []
        for w in sorted(grouped):
            s = grouped[w]
            text = render_series(s)
            single = len(s) == 1
            ctext = text if single else f"({text})"
            wtext = self.parent.render_word(w)
            if not w and not tensor:
                term = ctext
            elif single and s.get(0) == ONE:
                term = wtext
            elif single and s.get(0) == -ONE:
                term = "-" + wtext
            else:
                term = f"{ctext} * {wtext}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __str__ = render

    def __repr__(self):
        return f"Element[{self.parent.label}, N={self.order}]({self.render()})"


# -- free functions mirroring the operation list -------------------------------


def normal_form(presentation: Presentation, raw, order) -> Element:
    """Normal form of a raw expression.

    ``raw`` is an :class:`Element` (returned unchanged) or an iterable of
    ``(coeff, word)`` pairs whose words may be arbitrary sequences of
    generator names or indices.
    """
    if isinstance(raw, Element):
        if raw.parent is not presentation:
            raise InputError("element belongs to another presentation")
        return raw
    out = presentation.zero(order)
    for coeff, word in raw:
        out = out + presentation.monomial(word, order, coeff)
    return out


def algebra_mul(a: Element, b: Element) -> Element:
    return a * b


# -- confluence diagnostics -----------------------------------------------------


@dataclass
class ConfluenceFailure:
    witness: str
    forms: list

    def render(self):
        return f"witness={self.witness} forms=" + " | ".join(self.forms)


@dataclass
class ConfluenceReport:
    label: str
    confluent: bool
    overlaps_checked: int = 0
    samples_checked: int = 0
    failures: list = field(default_factory=list)

    def render(self):
        status = "PASS" if self.confluent else "FAIL"
        lines = [
            f"CHECK confluence:{self.label} {status} overlaps={self.overlaps_checked} samples={self.samples_checked}"
        ]
        lines.extend("  " + f.render() for f in self.failures)
        return "\n".join(lines)


def _reduce_strategy(p: Presentation, state, order, choose, budget):
    """Reduce a raw term dict to normal form, one rule application at a time.

    ``choose(options)`` picks among a list of ``(key, position, rule)`` candidates.
    """
    steps = 0
    state = dict(state)
    while True:
        pending = sorted(key for key in state if not _is_normal(key[0]))
        if not pending:
            return Element(p, order, state)
        key = choose([("term", key) for key in pending])[1]
        w, k = key
        options = []
        for pos in range(len(w) - 1):
            if w[pos] > w[pos + 1]:
                for r in p.rules_for(w[pos], w[pos + 1]):
                    options.append((pos, r))
        if not options:
            raise ConfigurationError(f"no rule applies to {p.render_word(w)}")
        pos, rule = choose(options)
        c = state.pop(key)
        swapped = w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2 :]
        _add_into(state, (swapped, k), c)
        for (r, k2), c2 in rule.remainder:
            if k + k2 <= order:
                _add_into(state, (w[:pos] + r + w[pos + 2 :], k + k2), c * c2)
        steps += 1
        if steps > budget:
            raise ResourceError(f"reduction budget {budget} exceeded in {p.label}", partial=state)


def _leftmost(options):
    return options[0]


def check_confluence(
    p: Presentation, degree: int = 5, samples: int = 1000, *, seed: int = 0, order: int = 2, budget: int = 100_000
) -> ConfluenceReport:
    """Resolve every overlap ambiguity and fuzz random words under two random strategies."""
    if degree < 3:
        raise InputError("confluence degree must be at least 3")
    report = ConfluenceReport(p.label, True)
    n = p.ngens

    def explore(word):
        forms = {}
        w = tuple(word)
        start = {(w, 0): ONE}
        firsts = []
        for pos in range(len(w) - 1):
            if w[pos] > w[pos + 1]:
                for ri in range(len(p.rules_for(w[pos], w[pos + 1]))):
                    firsts.append((pos, ri))
        for pos, ri in firsts:
            rule = p.rules_for(w[pos], w[pos + 1])[ri]
            state = {}
            swapped = w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2 :]
            _add_into(state, (swapped, 0), ONE)
            for (r, k2), c2 in rule.remainder:
                if k2 <= order:
                    _add_into(state, (w[:pos] + r + w[pos + 2 :], k2), c2)
            nf = _reduce_strategy(p, state, order, _leftmost, budget)
            forms[nf.render()] = nf
        if not firsts:
            nf = Element(p, order, start)
            forms[nf.render()] = nf
        return forms

    # two-letter words carry ambiguities only when a pair has several rules
    for a in range(n):
        for b in range(a):
            if len(p.rules_for(a, b)) > 1:
                forms = explore((a, b))
                report.overlaps_checked += 1
                if len(forms) > 1:
                    report.confluent = False
                    report.failures.append(ConfluenceFailure(p.render_word((a, b)), sorted(forms)))
    for c, b, a in itertools.combinations(range(n - 1, -1, -1), 3):
        forms = explore((c, b, a))
        report.overlaps_checked += 1
        if len(forms) > 1:
            report.confluent = False
            report.failures.append(ConfluenceFailure(p.render_word((c, b, a)), sorted(forms)))

    rng1 = random.Random(seed)
    rng2 = random.Random(seed + 1)
    wrng = random.Random(seed + 2)
    for _ in range(samples if n else 0):
        length = wrng.randint(1, degree)
        word = tuple(wrng.randrange(n) for _ in range(length))
        start = {(word, 0): ONE}
        f1 = _reduce_strategy(p, start, order, rng1.choice, budget)
        f2 = _reduce_strategy(p, start, order, rng2.choice, budget)
        report.samples_checked += 1
        if f1 != f2:
            report.confluent = False
            report.failures.append(ConfluenceFailure(p.render_word(word), [f1.render(), f2.render()]))
        elif p.strict and f1 != p.monomial(word, order):
            report.confluent = False
            report.failures.append(
                ConfluenceFailure(p.render_word(word), [f1.render(), p.monomial(word, order).render()])
            )
    return report


# -- central series functions -----------------------------------------------------


def _check_central(e: Element, what):
    letters = e.letters()
    p = e.parent
    for a, b in itertools.combinations(letters, 2):
        if not p.commutes(a, b):
            raise InputError(
                f"{what} needs commuting letters; {p.generators[a].name} and "
                f"{p.generators[b].name} do not commute"
            )


def _split_unit(e: Element, what, exc):
    """Return (c0, u) with e = c0*1 + u and u divisible by h."""
    c0 = ZERO
    for (w, k), c in e._t.items():
        if k == 0:
            if w:
                raise exc(f"{what}: the h^0 part must be a scalar multiple of 1, got {e.h_part(0).render()}")
            c0 = c
    u = e - e.parent.scalar(c0, e.order)
    return c0, u


def central_sqrt(e: Element) -> Element:
    """Square root of ``1 + h*(...)`` by the binomial series, exact in R_N."""
    _check_central(e, "central_sqrt")
    c0, u = _split_unit(e, "central_sqrt", NotASquareRoot)
    if c0 != ONE:
        raise NotASquareRoot(f"central_sqrt needs constant term 1, got {c0.render()}")
    out = e.parent.one(e.order)
    power = e.parent.one(e.order)
    for k in range(1, e.order + 1):
        power = power * u
        if not power:
            break
        out = out + power * _binom_half(k)
    return out


def _binom_half(k):
    # binomial(1/2, k)
    num = Q(1)
    for j in range(k):
        num *= Q(1, 2) - j
    den = 1
    for j in range(2, k + 1):
        den *= j
    return Scalar(num / den)


def central_invert(e: Element) -> Element:
    """Inverse of an element with invertible scalar h^0 part, by the geometric series."""
    _check_central(e, "central_invert")
    c0, u = _split_unit(e, "central_invert", NotInvertible)
    if not c0:
        raise NotInvertible("central_invert needs a nonzero constant term", index=0)
    inv0 = c0.inverse()
    v = u * inv0  # e = c0 (1 + v)
    out = e.parent.one(e.order)
    power = e.parent.one(e.order)
    for _k in range(1, e.order + 1):
        power = power * (-v)
        if not power:
            break
        out = out + power
    return out * inv0



# -- Sweedler-style slot calculus ----------------------------------------------------


def slot_factors(parent):
    return parent.factors if isinstance(parent, TensorPresentation) else (parent,)


def _split(parent, word):
    return parent.split(word) if isinstance(parent, TensorPresentation) else (word,)


def apply_slots(x: Element, maps) -> Element:
    """Apply one linear map per tensor slot: ``(f1 (x) f2 (x) ...)(x)``.

    Each map takes an element of its slot's presentation (``None`` is the
    identity).  Results are tensored together and flattened.
    """
    factors = slot_factors(x.parent)
    if len(maps) != len(factors):
        raise ConfigurationError(f"{len(maps)} maps for {len(factors)} tensor slots")
    N = x.order
    caches = [dict() for _ in maps]
    out = {}
    target = None
    for (w, k), c in x._t.items():
        parts = _split(x.parent, w)
        images = []
        for i, (f, part) in enumerate(zip(factors, parts)):
            img = caches[i].get(part)
            if img is None:
                base = Element(f, N, {(part, 0): ONE})
                img = base if maps[i] is None else maps[i](base)
                caches[i][part] = img
            images.append(img)
        t = tensor_elements(*images)
        if target is None:
            target = t.parent
        elif t.parent is not target:
            raise ConfigurationError("slot maps produced inconsistent codomains")
        for (w2, k2), c2 in t._t.items():
            kk = k + k2
            if kk <= N:
                _add_into(out, (w2, kk), c * c2)
    if target is None:
        probe = [
            (m(Element(f, N, {((), 0): ONE})) if m is not None else Element(f, N, {((), 0): ONE}))
            for f, m in zip(factors, maps)
        ]
        target = tensor_elements(*probe).parent
    return Element(target, N, out)


def regroup(x: Element, groups) -> Element:
    """Multiply tensor slots together: ``groups`` lists, per output slot, the input slots to multiply in order.

    ``regroup(X, [(0, 2), (1,), (3,)])`` sends ``a (x) b (x) c (x) d`` to ``a*c (x) b (x) d``.
    """
    factors = slot_factors(x.parent)
    outs = []
    for g in groups:
        if not g:
            raise ConfigurationError("empty slot group")
        f0 = factors[g[0]]
        for s in g:
            if factors[s] is not f0:
                raise ConfigurationError(f"cannot multiply slots over {factors[s].label} and {f0.label}")
        outs.append(f0)
    N = x.order
    target = outs[0] if len(outs) == 1 else tensor_presentation(outs)
    cache = {}
    out = {}
    for (w, k), c in x._t.items():
        parts = _split(x.parent, w)
        key = tuple(tuple(parts[s] for s in g) for g in groups)
        prod = cache.get(key)
        if prod is None:
            pieces = []
            for f, ws in zip(outs, key):
                acc = {((), 0): ONE}
                for piece in ws:
                    nxt = {}
                    for (u, ka), ca in acc.items():
                        for (v, kb), cb in f._mul_word(u, piece, N).items():
                            if ka + kb <= N:
                                _add_into(nxt, (v, ka + kb), ca * cb)
                    acc = nxt
                pieces.append(Element(f, N, acc))
            prod = tensor_elements(*pieces)._t
            cache[key] = prod
        for (w2, k2), c2 in prod.items():
            kk = k + k2
            if kk <= N:
                _add_into(out, (w2, kk), c * c2)
    return Element(target, N, out)


def flip(x: Element) -> Element:
    """The tensor flip ``a (x) b -> b (x) a``."""
    return regroup(x, [(1,), (0,)])


def random_element(p: Presentation, order, rng, degree=3, nterms=3, coeff_range=3) -> Element:
    """A random h-free element with small integer coefficients, for sampled checks."""
    out = p.zero(order)
    if not p.ngens:
        return p.scalar(rng.randint(1, coeff_range), order)
    for _ in range(nterms):
        length = rng.randint(0, degree)
        word = tuple(rng.randrange(p.ngens) for _ in range(length))
        c = rng.randint(-coeff_range, coeff_range) or 1
        out = out + p.monomial(word, order, c)
    return out
