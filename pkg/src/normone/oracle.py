"""Normal forms in the universal ring.

The universal ring is the free ring on x[0..p^n-1] modulo the shifted
relations sigma^j(N_H(x) - 1) = 0 for a subgroup H = G_h (h = 1 is the
elementary subgroup). Each relation is linear, so eliminating the largest
index of every H-coset leaves a free ring on the remaining generators and
normal forms are unique.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ParameterError
from .group_action import SubgroupSpec, apply_operator, norm_op
from .ncpoly import GroupContext, Poly, is_prime


class RelationSet:
    """Linear elimination rules for the relations N_{G_h}(x) = 1 and their shifts."""

    def __init__(self, ctx: GroupContext, h: int = 1):
        if not (1 <= h <= ctx.n):
            raise ParameterError(f"relation subgroup exponent h={h} outside [1, {ctx.n}]")
        self.ctx = ctx
        self.h = h
        self.coset_size = ctx.p**h
        self.step = ctx.p ** (ctx.n - h)
        self.first_eliminated = (self.coset_size - 1) * self.step
        # rules[j]: None for a surviving generator, else the replacement as
        # (word, sign) options: 1 - sum of the other coset members
        self.rules: list = [None] * ctx.order
        for j in range(self.step):
            others = [j + i * self.step for i in range(self.coset_size - 1)]
            elim = j + (self.coset_size - 1) * self.step
            self.rules[elim] = ((), 1), *(((o,), -1) for o in others)

    @property
    def eliminated(self) -> range:
        return range(self.first_eliminated, self.ctx.order)

    def replacement(self, j: int) -> Poly | None:
        rule = self.rules[j]
        if rule is None:
            return None
        return Poly(self.ctx, {w: s for w, s in rule})

    def __len__(self):
        return self.step

    def reduce_terms(self, items) -> dict:
        rules = self.rules
        out: dict = {}
        get = out.get
        for w, c in items:
            partial = None
            run: tuple = ()
            for j in w:
                opts = rules[j]
                if opts is None:
                    run += (j,)
                    continue
                if partial is None:
                    partial = {}
                    for t, s in opts:
                        u = run + t
                        partial[u] = partial.get(u, 0) + s * c
                else:
                    nxt: dict = {}
                    for u, v in partial.items():
                        u = u + run
                        for t, s in opts:
                            k = u + t
                            nxt[k] = nxt.get(k, 0) + s * v
                    partial = nxt
                run = ()
            if partial is None:
                out[w] = get(w, 0) + c
            else:
                for u, v in partial.items():
                    if v:
                        u = u + run
                        out[u] = get(u, 0) + v
        return {w: c for w, c in out.items() if c}

    def normal_form(self, P: Poly) -> Poly:
        if P.ctx != self.ctx:
            raise ParameterError("relation set and polynomial contexts differ")
        return Poly._from_clean(self.ctx, self.reduce_terms(P.items()))


@lru_cache(maxsize=None)
def relations(ctx: GroupContext, h: int = 1) -> RelationSet:
    return RelationSet(ctx, h)


def _rels(P: Poly, rels: RelationSet | None) -> RelationSet:
    return rels if rels is not None else relations(P.ctx, 1)


def normal_form(P: Poly, rels: RelationSet | None = None) -> Poly:
    """Rewrite P modulo the relations; defaults to the elementary-subgroup relations."""
    return _rels(P, rels).normal_form(P)


def norm_residual(P: Poly, H: SubgroupSpec, rels: RelationSet | None = None) -> Poly:
    """normal_form(N_H(P)) - 1; zero exactly when P is a norm-one element for H."""
    return normal_form(apply_operator(norm_op(H), P), rels) - 1


def is_norm_one(P: Poly, H: SubgroupSpec, rels: RelationSet | None = None) -> bool:
    return norm_residual(P, H, rels).is_zero()


def monomial_count(P: Poly, mode: str = "expanded", rels: RelationSet | None = None) -> int:
    if mode == "expanded":
        return len(P)
    if mode == "reduced":
        return len(normal_form(P, rels))
    raise ParameterError(f"unknown count mode {mode!r}")


def _check_step(p: int, m: int, k: int) -> None:
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if not (1 <= k and 2 * k <= m):
        raise ParameterError(f"need 1 <= k <= m/2, got m={m}, k={k}")


def step_bound(p: int, m: int, k: int) -> int:
    """Upper bound on the monomials of the lift-step element a, in the step's input."""
    _check_step(p, m, k)
    q = p ** (m - k)
    return q * (q - 1) * (p**k + 1) + 1


def unit_chain_bound(p: int, n: int) -> int:
    """Closed form of the per-step bounds summed over the unit schedule m = 2..n, k = 1."""
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    num = p * (p + 1) * (p ** (n - 1) - 1) * (p**n - 1)
    den = p * p - 1
    assert num % den == 0, "closed form must be integral"
    return num // den + n - 1
