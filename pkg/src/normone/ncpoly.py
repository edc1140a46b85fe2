"""Sparse integer polynomials in noncommuting generators x[j] = sigma^j(x).

A polynomial is a map from words (tuples of generator indices) to nonzero
Python ints. The empty word is the unit. Values are immutable; every
operation returns a fresh ``Poly``.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import ContextMismatchError, ParameterError, ParseError

Word = tuple  # tuple[int, ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class GroupContext:
    """The cyclic group Z/p^n acting on the universal ring by index shift."""

    p: int
    n: int
    order: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ParameterError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n!r}")
        order = self.p**self.n
        if order > sys.maxsize:
            raise ParameterError(f"group order {self.p}^{self.n} exceeds index range")
        object.__setattr__(self, "order", order)


def word_key(w: Word):
    """Canonical total order on words: degree first, then lexicographic."""
    return (len(w), w)


def _merge_into(out: dict, terms: Mapping, coeff: int = 1) -> None:
    for w, c in terms.items():
        out[w] = out.get(w, 0) + coeff * c


def _prune(terms: dict) -> dict:
    return {w: c for w, c in terms.items() if c}


class Poly:
    """Element of the free ring Z<x[0], ..., x[p^n - 1]>."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: GroupContext, terms: Mapping | None = None):
        self.ctx = ctx
        clean = {}
        if terms:
            order = ctx.order
            for w, c in terms.items():
                w = tuple(w)
                for j in w:
                    if not (0 <= j < order):
                        raise ParameterError(f"generator index {j} outside [0, {order})")
                c = int(c)
                if c:
                    clean[w] = clean.get(w, 0) + c
            clean = _prune(clean)
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, ctx: GroupContext, terms: dict) -> "Poly":
        # terms already pruned and validated
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, ctx: GroupContext) -> "Poly":
        return cls._from_clean(ctx, {})

    @classmethod
    def one(cls, ctx: GroupContext) -> "Poly":
        return cls._from_clean(ctx, {(): 1})

    @classmethod
    def constant(cls, ctx: GroupContext, c: int) -> "Poly":
        return cls._from_clean(ctx, {(): int(c)} if c else {})

    @classmethod
    def gen(cls, ctx: GroupContext, j: int) -> "Poly":
        return cls(ctx, {(j % ctx.order,): 1})

    @classmethod
    def from_words(cls, ctx: GroupContext, pairs: Iterable) -> "Poly":
        """Build from ``(coeff, word)`` pairs, combining like terms."""
        out: dict = {}
        for c, w in pairs:
            w = tuple(w)
            out[w] = out.get(w, 0) + c
        return cls(ctx, out)

    # container protocol

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: Word) -> int:
        return self._terms.get(tuple(w), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(): 1}

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]))

    def as_dict(self) -> dict:
        return dict(self._terms)

    # arithmetic

    def _check(self, other: "Poly") -> None:
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly.constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        _merge_into(out, other._terms)
        return Poly._from_clean(self.ctx, _prune(out))

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_clean(self.ctx, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        _merge_into(out, other._terms, -1)
        return Poly._from_clean(self.ctx, _prune(out))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        rhs = list(other._terms.items())
        for w1, c1 in self._terms.items():
            for w2, c2 in rhs:
                w = w1 + w2
                out[w] = get(w, 0) + c1 * c2
        return Poly._from_clean(self.ctx, _prune(out))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ParameterError("negative power")
        result = Poly.one(self.ctx)
        for _ in range(e):
            result = result * self
        return result

    def scale(self, c: int) -> "Poly":
        c = int(c)
        if c == 0:
            return Poly.zero(self.ctx)
        return Poly._from_clean(self.ctx, {w: c * v for w, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(self.ctx, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly(p={self.ctx.p}, n={self.ctx.n}, {self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # serialization

    def to_dict(self) -> dict:
        return {
            "p": self.ctx.p,
            "n": self.ctx.n,
            "terms": [{"c": str(c), "w": list(w)} for w, c in self.sorted_terms()],
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc) -> "Poly":
        if not isinstance(doc, dict):
            raise ParseError("expected an object", "$")
        for key in ("p", "n", "terms"):
            if key not in doc:
                raise ParseError(f"missing key {key!r}", "$")
        p, n = doc["p"], doc["n"]
        if not isinstance(p, int) or not isinstance(n, int):
            raise ParseError("p and n must be integers", "$")
        try:
            ctx = GroupContext(p, n)
        except ParameterError as exc:
            raise ParseError(str(exc), "$") from exc
        if not isinstance(doc["terms"], list):
            raise ParseError("terms must be a list", "$.terms")
        out: dict = {}
        for i, t in enumerate(doc["terms"]):
            loc = f"$.terms[{i}]"
            if not isinstance(t, dict) or "c" not in t or "w" not in t:
                raise ParseError("term needs keys 'c' and 'w'", loc)
            try:
                c = int(t["c"])
            except (TypeError, ValueError) as exc:
                raise ParseError(f"bad coefficient {t['c']!r}", loc + ".c") from exc
            w = t["w"]
            if not isinstance(w, list) or not all(isinstance(j, int) and 0 <= j < ctx.order for j in w):
                raise ParseError(f"bad word {w!r}", loc + ".w")
            w = tuple(w)
            out[w] = out.get(w, 0) + c
        return cls(ctx, out)

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
        return cls.from_dict(doc)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (w, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [f"s{j}(x)" for j in w]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (w, c) in enumerate(self.sorted_terms()):
            mag = abs(c)
            body = _latex_word(w)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}{body}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def _latex_factor(j: int) -> str:
    if j == 0:
        return "x"
    if j == 1:
        return r"\sigma(x)"
    return rf"\sigma^{{{j}}}(x)"


def _latex_word(w: Word) -> str:
    out = []
    i = 0
    while i < len(w):
        run = 1
        while i + run < len(w) and w[i + run] == w[i]:
            run += 1
        f = _latex_factor(w[i])
        out.append(f if run == 1 else f"{f}^{{{run}}}")
        i += run
    return "".join(out)


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*?\s*s\d+\(x\)(?:\s*\*\s*s\d+\(x\))*)?\s*")
_GEN_RE = re.compile(r"s(\d+)\(x\)")


def parse_text(ctx: GroupContext, text: str) -> Poly:
    """Inverse of :meth:`Poly.to_text`."""
    text = text.strip()
    if text == "0":
        return Poly.zero(ctx)
    pos = 0
    out: dict = {}
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse term near {text[pos:pos + 20]!r}", f"offset {pos}")
        sign, num, gens = m.groups()
        if sign is None and not first:
            raise ParseError("missing + or - between terms", f"offset {pos}")
        if num is None and gens is None:
            raise ParseError("empty term", f"offset {pos}")
        c = int(num) if num is not None else 1
        if sign == "-":
            c = -c
        w = tuple(int(j) for j in _GEN_RE.findall(gens or ""))
        if gens and num is not None and not gens.lstrip().startswith("*"):
            raise ParseError("expected '*' after coefficient", f"offset {pos}")
        if any(j >= ctx.order for j in w):
            raise ParseError("generator index out of range", f"offset {pos}")
        out[w] = out.get(w, 0) + c
        pos = m.end()
        first = False
    return Poly(ctx, out)


def poly_add(P: Poly, Q: Poly) -> Poly:
    P._check(Q)
    return P + Q


def poly_mul(P: Poly, Q: Poly) -> Poly:
    P._check(Q)
    return P * Q


def poly_scale(c: int, P: Poly) -> Poly:
    return P.scale(c)
