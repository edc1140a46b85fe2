"""Replay of the lift-step argument inside the co-induced module B = Hom(Z[G_m], R).

An element of B is stored as its values on tau^0, ..., tau^(r-1), where
tau = sigma^(p^(n-m)) generates G_m and r = p^m. The group acts by
(tau^e phi)(tau^s) = phi(tau^(s+e)). Every identity is checked entrywise
in the universal ring, so a pass certifies it for all rings at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .construction import build_w, build_z
from .errors import ParameterError, PreconditionError
from .group_action import SubgroupSpec, shift
from .ncpoly import GroupContext, Poly
from .oracle import RelationSet, norm_residual, normal_form


@dataclass(frozen=True)
class BElem:
    ctx: GroupContext
    stride: int
    values: tuple

    def __post_init__(self):
        if len(self.values) * self.stride != self.ctx.order:
            raise ParameterError("B-element length does not match the subgroup order")

    @property
    def order(self) -> int:
        return len(self.values)

    def __getitem__(self, s: int) -> Poly:
        return self.values[s % self.order]

    def act(self, e: int) -> "BElem":
        r = self.order
        return BElem(self.ctx, self.stride, tuple(self.values[(s + e) % r] for s in range(r)))

    def apply(self, coeffs: dict) -> "BElem":
        """Apply sum_e coeffs[e] * tau^e."""
        r = self.order
        out = []
        for s in range(r):
            acc = Poly.zero(self.ctx)
            for e, c in coeffs.items():
                acc = acc + self.values[(s + e) % r].scale(c)
            out.append(acc)
        return BElem(self.ctx, self.stride, tuple(out))

    def _zip(self, other, f):
        if (self.ctx, self.stride) != (other.ctx, other.stride):
            raise ParameterError("B-elements over different subgroups")
        return BElem(self.ctx, self.stride, tuple(f(a, b) for a, b in zip(self.values, other.values)))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def scale(self, c: int) -> "BElem":
        return BElem(self.ctx, self.stride, tuple(v.scale(c) for v in self.values))


def embed(P: Poly, stride: int = 1) -> BElem:
    """phi_P with phi_P(tau^s) = tau^s(P)."""
    r = P.ctx.order // stride
    return BElem(P.ctx, stride, tuple(shift(P, s * stride) for s in range(r)))


def _check(ctx: GroupContext, m: int, k: int) -> None:
    if not (1 <= k and 2 * k <= m <= ctx.n):
        raise ParameterError(f"need 1 <= k <= m/2 and m <= n={ctx.n}, got m={m}, k={k}")


def make_phi(ctx: GroupContext, m: int, k: int) -> BElem:
    """Indicator of the subgroup of order p^(m-k) inside G_m."""
    _check(ctx, m, k)
    step = ctx.p**k
    one, zero = Poly.one(ctx), Poly.zero(ctx)
    vals = tuple(one if s % step == 0 else zero for s in range(ctx.p**m))
    return BElem(ctx, ctx.p ** (ctx.n - m), vals)


def make_psi(x: Poly, m: int, k: int) -> BElem:
    ctx = x.ctx
    _check(ctx, m, k)
    phi = make_phi(ctx, m, k)
    c = ctx.p ** (m - 2 * k)
    d = phi.stride
    vals = [Poly.zero(ctx)]
    for i in range(1, ctx.p**m):
        vals.append(vals[-1] - phi[i - 1] + shift(x, (i - 1) * d).scale(c))
    return BElem(ctx, d, tuple(vals))


@dataclass(frozen=True)
class IdentityCheck:
    eq: str
    ok: bool
    residual_terms: int

    def to_dict(self) -> dict:
        return {"eq": self.eq, "ok": self.ok, "residual_terms": self.residual_terms}


class ReplayReport(list):
    """List of :class:`IdentityCheck` with a conjunction helper."""

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self)

    def to_json(self, indent=None) -> str:
        return json.dumps([c.to_dict() for c in self], indent=indent)


# names of the replayed identities, in order
IDENTITIES = (
    "relative_norm_of_phi",     # N_{G/U}(phi) = phi_1
    "norm_of_phi",              # N_G(phi) = p^(m-k) phi_1
    "norm_kills_difference",    # N_G(phi - c phi_x) = 0
    "phi_decomposition",        # phi = (1 - tau)(psi) + c phi_x
    "psi_coboundary_is_z",      # (tau^(p^k) - 1)(psi) = phi_z
    "psi_minus_w_invariant",    # (tau^(p^k) - 1)(psi - phi_w) = 0
    "psi_invariant_mod_ring",   # (1 - tau^(p^k))(psi) lies in the image of embed
    "a_invariant_norm_one",     # phi_a = phi - (1 - tau)(psi - phi_w), N_{G/U}(a) = 1
)


def _residual(b: BElem, rels) -> int:
    return sum(len(normal_form(v, rels)) for v in b.values)


def check_identities(x: Poly, m: int, k: int, rels: RelationSet | None = None) -> ReplayReport:
    """Verify every identity of the lift step (m, k) for the input x."""
    ctx = x.ctx
    _check(ctx, m, k)
    res = norm_residual(x, SubgroupSpec(ctx, m - k), rels)
    if not res.is_zero():
        raise PreconditionError(
            f"x is not norm-one for the subgroup of order {ctx.p ** (m - k)}: residual {res.to_text()}",
            residual=res,
        )
    p = ctx.p
    c = p ** (m - 2 * k)
    q = p**k
    r = p**m

    phi = make_phi(ctx, m, k)
    d = phi.stride
    psi = make_psi(x, m, k)
    one = embed(Poly.one(ctx), d)
    phi_x = embed(x, d)
    z = build_z(x, m, k)
    w = build_w(x, z, m, k)
    a = x.scale(c) + w - shift(w, d)
    phi_w = embed(w, d)

    rel_norm = {j: 1 for j in range(q)}
    full_norm = {j: 1 for j in range(r)}
    one_minus_tau = {0: 1, 1: -1}
    big_minus_one = {q: 1, 0: -1}

    checks = []

    def record(name, residual):
        checks.append(IdentityCheck(name, residual == 0, residual))

    record(IDENTITIES[0], _residual(phi.apply(rel_norm) - one, rels))
    record(IDENTITIES[1], _residual(phi.apply(full_norm) - one.scale(p ** (m - k)), rels))
    record(IDENTITIES[2], _residual((phi - phi_x.scale(c)).apply(full_norm), rels))
    record(IDENTITIES[3], _residual(phi - (psi.apply(one_minus_tau) + phi_x.scale(c)), rels))
    record(IDENTITIES[4], _residual(psi.apply(big_minus_one) - embed(z, d), rels))
    record(IDENTITIES[5], _residual((psi - phi_w).apply(big_minus_one), rels))

    drift = psi.apply({0: 1, q: -1})
    record(IDENTITIES[6], _residual(drift - embed(drift[0], d), rels))

    lhs = embed(a, d) - (phi - (psi - phi_w).apply(one_minus_tau))
    rel_norm_a = sum((shift(a, j * d) for j in range(q)), Poly.zero(ctx)) - 1
    record(IDENTITIES[7], _residual(lhs, rels) + len(normal_form(rel_norm_a, rels)))

    return ReplayReport(checks)
