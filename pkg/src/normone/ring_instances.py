"""Concrete rings R = Map(G, S) with the translation action, for numeric spot checks.

S is either the integers (``scalar``) or d x d integer matrices (``matrix``);
both are stored as object arrays of shape (p^n, d, d) so arithmetic stays in
Python ints. The base element f_x is drawn so that every E-coset sums to the
unit of S, i.e. N_E(f_x) = 1 holds in R.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatchError, ParameterError, ParseError
from .group_action import SubgroupSpec
from .ncpoly import GroupContext, Poly

DEFAULT_BOUND = 3


@dataclass(frozen=True)
class InstanceSpec:
    ctx: GroupContext
    kind: str
    dim: int
    seed: int
    values: np.ndarray  # f_x, shape (p^n, dim, dim), dtype object
    bound: int = DEFAULT_BOUND

    def unit(self) -> np.ndarray:
        eye = np.empty((self.ctx.order, self.dim, self.dim), dtype=object)
        eye[...] = 0
        for i in range(self.dim):
            eye[:, i, i] = 1
        return eye

    def translate(self, j: int) -> np.ndarray:
        """sigma^j(f_x): the value at sigma^s is f_x(sigma^(s+j))."""
        return np.roll(self.values, -j, axis=0)

    def to_dict(self) -> dict:
        vals = self.values.tolist()
        if self.kind == "scalar":
            vals = [v[0][0] for v in vals]
        return {"kind": self.kind, "dim": self.dim, "seed": self.seed, "bound": self.bound,
                "p": self.ctx.p, "n": self.ctx.n, "values": vals}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc) -> "InstanceSpec":
        try:
            ctx = GroupContext(doc["p"], doc["n"])
            kind, dim = doc["kind"], int(doc["dim"])
            raw = doc["values"]
            if kind == "scalar":
                raw = [[[v]] for v in raw]
            vals = np.array([[[int(e) for e in row] for row in mat] for mat in raw], dtype=object)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad instance document: {exc}", "$") from exc
        if vals.shape != (ctx.order, dim, dim):
            raise ParseError(f"values have shape {vals.shape}", "$.values")
        return cls(ctx, kind, dim, int(doc.get("seed", 0)), vals, int(doc.get("bound", DEFAULT_BOUND)))


def random_instance(ctx: GroupContext, kind: str = "scalar", seed: int = 0,
                    dim: int | None = None, bound: int = DEFAULT_BOUND) -> InstanceSpec:
    if kind == "scalar":
        dim = 1
    elif kind == "matrix":
        dim = 2 if dim is None else dim
        if dim < 1:
            raise ParameterError("matrix dimension must be >= 1")
    else:
        raise ParameterError(f"unknown instance kind {kind!r}")
    rng = np.random.default_rng(seed)
    order, p = ctx.order, ctx.p
    h = order // p
    vals = np.empty((order, dim, dim), dtype=object)
    eye = np.identity(dim, dtype=np.int64).astype(object)
    for j in range(h):
        acc = eye.copy()
        for i in range(p - 1):
            draw = rng.integers(-bound, bound + 1, size=(dim, dim)).astype(object)
            vals[j + i * h] = draw
            acc = acc - draw
        vals[j + (p - 1) * h] = acc
    return InstanceSpec(ctx, kind, dim, seed, vals, bound)


def _evaluate_words(P: Poly, unit: np.ndarray, gen_value) -> np.ndarray:
    gens = {}
    total = np.zeros_like(unit)
    # walk words in lex order so shared prefixes are multiplied once
    stack = [((), unit)]
    for w, c in sorted(P.items()):
        while len(stack) > 1 and stack[-1][0] != w[: len(stack[-1][0])]:
            stack.pop()
        prefix, val = stack[-1]
        for j in w[len(prefix):]:
            if j not in gens:
                gens[j] = gen_value(j)
            val = np.matmul(val, gens[j])
            prefix = prefix + (j,)
            stack.append((prefix, val))
        total = total + c * val
    return total


def evaluate(P: Poly, I: InstanceSpec) -> np.ndarray:
    """Image of P in Map(G, S): pointwise products, order of factors preserved."""
    if P.ctx != I.ctx:
        raise ContextMismatchError(f"context mismatch: {P.ctx} vs {I.ctx}")
    return _evaluate_words(P, I.unit(), I.translate)


def evaluate_chain(chain, I: InstanceSpec) -> np.ndarray:
    """Image of a chain's final element, step by step through the formal steps.

    Works without the explicit final polynomial: each step substitutes the
    translates of the previous value into the step's formal output.
    """
    if chain.ctx != I.ctx:
        raise ContextMismatchError(f"context mismatch: {chain.ctx} vs {I.ctx}")
    n = I.ctx.n
    current = I.values
    for st in chain.steps:
        stride = I.ctx.p ** (n - st.m)
        prev = current
        current = _evaluate_words(st.formal.x_out, I.unit(),
                                  lambda j, prev=prev: np.roll(prev, -j * stride, axis=0))
    return current


def orbit_sum(values: np.ndarray, H: SubgroupSpec) -> np.ndarray:
    acc = np.zeros_like(values)
    for e in H.exponents():
        acc = acc + np.roll(values, -e, axis=0)
    return acc


def check_numeric(P: Poly, I: InstanceSpec, H: SubgroupSpec) -> bool:
    """Does N_H(P) evaluate to the constant unit function?"""
    return is_unit_norm(evaluate(P, I), I, H)


def is_unit_norm(values: np.ndarray, I: InstanceSpec, H: SubgroupSpec) -> bool:
    return bool(np.array_equal(orbit_sum(values, H), I.unit()))


def noncommuting_witness(I: InstanceSpec):
    """A triple (i, j, s) with x[i](s) x[j](s) != x[j](s) x[i](s), or None."""
    order = I.ctx.order
    for s in range(order):
        for i in range(order):
            a = I.values[(s + i) % order]
            for j in range(i + 1, order):
                b = I.values[(s + j) % order]
                if not np.array_equal(a.dot(b), b.dot(a)):
                    return (i, j, s)
    return None
