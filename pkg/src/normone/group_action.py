"""Z[Z/p^n] acting on the universal ring through the index shift sigma(x[j]) = x[j+1]."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .errors import ContextMismatchError, ParameterError
from .ncpoly import GroupContext, Poly


def shift_terms(terms, e: int, order: int) -> dict:
    if e % order == 0:
        return dict(terms)
    return {tuple((j + e) % order for j in w): c for w, c in terms}


def shift(P: Poly, e: int) -> Poly:
    """Apply sigma^e, a ring automorphism: every letter j becomes j + e mod p^n."""
    order = P.ctx.order
    e %= order
    if e == 0:
        return P
    return Poly._from_clean(P.ctx, shift_terms(P.items(), e, order))


class Operator:
    """A formal integer combination of powers of sigma."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: GroupContext, coeffs: Mapping[int, int] | None = None):
        self.ctx = ctx
        acc: dict = {}
        for e, c in (coeffs or {}).items():
            e %= ctx.order
            acc[e] = acc.get(e, 0) + int(c)
        self.coeffs = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, {0: 1})

    @classmethod
    def power(cls, ctx, e: int, c: int = 1):
        """c * sigma^e; negative e means the inverse automorphism."""
        return cls(ctx, {e: c})

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Operator(self.ctx, {0: other})
        self._check(other)
        acc = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc[e] = acc.get(e, 0) + c
        return Operator(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self):
        return Operator(self.ctx, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Operator(self.ctx, {0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Composition (convolution in the group ring); ints scale."""
        if isinstance(other, int):
            return Operator(self.ctx, {e: other * c for e, c in self.coeffs.items()})
        self._check(other)
        acc: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = (e1 + e2) % self.ctx.order
                acc[e] = acc.get(e, 0) + c1 * c2
        return Operator(self.ctx, acc)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __call__(self, P: Poly) -> Poly:
        return apply_operator(self, P)

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, tuple(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "Operator(0)"
        body = " + ".join(f"{c}*s^{e}" for e, c in self.coeffs.items())
        return f"Operator({body})"

    def to_dict(self) -> dict:
        return {
            "p": self.ctx.p,
            "n": self.ctx.n,
            "op": [{"c": c, "e": e} for e, c in self.coeffs.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc) -> "Operator":
        ctx = GroupContext(doc["p"], doc["n"])
        return cls(ctx, {t["e"]: t["c"] for t in doc["op"]})


def apply_operator(A: Operator, P: Poly) -> Poly:
    if A.ctx != P.ctx:
        raise ContextMismatchError(f"context mismatch: {A.ctx} vs {P.ctx}")
    order = P.ctx.order
    acc: dict = {}
    get = acc.get
    items = list(P.items())
    for e, c in A.coeffs.items():
        for w, v in items:
            sw = tuple((j + e) % order for j in w) if e else w
            acc[sw] = get(sw, 0) + c * v
    return Poly._from_clean(P.ctx, {w: c for w, c in acc.items() if c})


@dataclass(frozen=True)
class SubgroupSpec:
    """The subgroup G_m of order p^m, generated by sigma^(p^(n-m))."""

    ctx: GroupContext
    m: int
    step: int = field(init=False)
    order: int = field(init=False)

    def __post_init__(self):
        if not (0 <= self.m <= self.ctx.n):
            raise ParameterError(f"subgroup exponent m={self.m} outside [0, {self.ctx.n}]")
        object.__setattr__(self, "step", self.ctx.p ** (self.ctx.n - self.m))
        object.__setattr__(self, "order", self.ctx.p**self.m)

    def exponents(self) -> range:
        return range(0, self.ctx.order, self.step)


def norm_op(H: SubgroupSpec) -> Operator:
    return Operator(H.ctx, {e: 1 for e in H.exponents()})


def partial_sum_op(ctx: GroupContext, d: int, count: int) -> Operator:
    """1 + sigma^d + ... + sigma^(d*(count-1)); the empty sum for count 0."""
    if count < 0:
        raise ParameterError("count must be >= 0")
    acc: dict = {}
    for l in range(count):
        e = (d * l) % ctx.order
        acc[e] = acc.get(e, 0) + 1
    return Operator(ctx, acc)
