"""Lift steps from a norm-one element of a subgroup to one of a larger subgroup.

One step (m, k) turns X with N_{G_{m-k}}(X) = 1 into a*X with N_{G_m}(a*X) = 1,
where tau = sigma^(p^(n-m)) generates G_m and

    z = p^(m-2k) (1 + tau + ... + tau^(p^k - 1))(X) - 1
    w = sum_{i=1}^{p^(m-k)-1} (1 + tau^(p^k) + ... + tau^((i-1)p^k)) (X * tau^(-i p^k)(z))
    a = p^(m-2k) X + (1 - tau)(w)

Chaining steps from the elementary subgroup (where x[0] itself has norm one)
up to G_n gives an explicit norm-one element for the whole group.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import ParameterError, PreconditionError
from .group_action import SubgroupSpec, partial_sum_op, shift
from .ncpoly import GroupContext, Poly
from .oracle import RelationSet, norm_residual, relations

log = logging.getLogger(__name__)

Strategy = Union[str, Sequence[tuple]]

DEFAULT_EXPAND_LIMIT = 500_000


@dataclass(frozen=True)
class LiftStepResult:
    m: int
    k: int
    x_in: Poly
    z: Poly
    w: Poly
    a: Poly
    x_out: Poly


@dataclass(frozen=True)
class ChainStep:
    """One scheduled lift step.

    ``formal`` is the step computed on a free input y[0] in the context
    (p, m), where the hypothesis is N_U(y) = 1 for U of order p^(m-k); the
    explicit step is obtained from it by substituting y[j] -> tau^j(X_in).
    ``explicit`` is None when that expansion is too large to materialize.
    """

    m: int
    k: int
    formal: LiftStepResult
    explicit: Optional[LiftStepResult]
    formal_verified: Optional[bool] = None
    explicit_verified: Optional[bool] = None


@dataclass(frozen=True)
class ChainResult:
    ctx: GroupContext
    strategy: Strategy
    schedule: tuple
    steps: tuple = field(default_factory=tuple)
    final: Optional[Poly] = None

    @property
    def certified(self) -> bool:
        """True when every step's norm-one conclusion has been established exactly.

        A verified formal step transfers to the explicit one because the
        substitution y[j] -> tau^j(X_in) respects the step's relations as
        soon as X_in is itself norm-one for G_(m-k), which is the previous
        step's conclusion (or the defining relation, for x[0]).
        """
        for st in self.steps:
            if st.explicit_verified is False or st.formal_verified is False:
                return False
            if not (st.formal_verified or st.explicit_verified):
                return False
        return True


def _check_params(ctx: GroupContext, m: int, k: int) -> None:
    if not (1 <= k and 2 * k <= m <= ctx.n):
        raise ParameterError(f"need 1 <= k <= m/2 and m <= n={ctx.n}, got m={m}, k={k}")


def _tau(ctx: GroupContext, m: int) -> int:
    return ctx.p ** (ctx.n - m)


def _shifted_sum(acc: dict, items, e: int, order: int, coeff: int = 1) -> None:
    get = acc.get
    for w, c in items:
        if e:
            w = tuple((j + e) % order for j in w)
        acc[w] = get(w, 0) + coeff * c


def _finish(ctx, acc) -> Poly:
    return Poly._from_clean(ctx, {w: c for w, c in acc.items() if c})


def build_z(X: Poly, m: int, k: int) -> Poly:
    ctx = X.ctx
    _check_params(ctx, m, k)
    tau = _tau(ctx, m)
    c = ctx.p ** (m - 2 * k)
    acc: dict = {(): -1}
    items = list(X.items())
    for j in range(ctx.p**k):
        _shifted_sum(acc, items, j * tau, ctx.order, c)
    return _finish(ctx, acc)


def _coboundary_preimage(x: Poly, z: Poly, t: int, r: int) -> Poly:
    """sum_{i=1}^{r-1} (1 + t + ... + t^(i-1))(x * t^(-i)(z)), with t = sigma^t."""
    ctx = x.ctx
    order = ctx.order
    acc: dict = {}
    for i in range(1, r):
        inner = list((x * shift(z, -i * t)).items())
        for l in range(i):
            _shifted_sum(acc, inner, l * t, order)
    return _finish(ctx, acc)


def build_w(X: Poly, z: Poly, m: int, k: int) -> Poly:
    ctx = X.ctx
    _check_params(ctx, m, k)
    st = _tau(ctx, m) * ctx.p**k
    return _coboundary_preimage(X, z, st, ctx.p ** (m - k))


def _require_norm_one(X: Poly, H: SubgroupSpec, rels, what: str) -> None:
    res = norm_residual(X, H, rels)
    if not res.is_zero():
        raise PreconditionError(
            f"{what} is not norm-one for the subgroup of order {H.order}; "
            f"normal_form(N(X)) - 1 = {res.to_text()}",
            residual=res,
        )


def build_a(X: Poly, m: int, k: int, verify: bool = True,
            rels: RelationSet | None = None) -> LiftStepResult:
    """One lift step on an explicit input X (norm-one for G_(m-k))."""
    ctx = X.ctx
    _check_params(ctx, m, k)
    if verify:
        _require_norm_one(X, SubgroupSpec(ctx, m - k), rels, "input")
    tau = _tau(ctx, m)
    z = build_z(X, m, k)
    w = build_w(X, z, m, k)
    a = X.scale(ctx.p ** (m - 2 * k)) + w - shift(w, tau)
    return LiftStepResult(m=m, k=k, x_in=X, z=z, w=w, a=a, x_out=a * X)


def lemma1_decompose(x_witness: Poly, z: Poly, H: SubgroupSpec,
                     rels: RelationSet | None = None, check: bool = True) -> Poly:
    """Return w with (t - 1)(w) = z in the universal ring, t = sigma^(H.step).

    Requires N_H(x_witness) = 1 and N_H(z) = 0 modulo the relations.
    """
    if check:
        _require_norm_one(x_witness, H, rels, "witness")
        res = norm_residual(z, H, rels) + 1
        if not res.is_zero():
            raise PreconditionError(
                f"z is not killed by the norm; normal_form(N(z)) = {res.to_text()}",
                residual=res,
            )
    return _coboundary_preimage(x_witness, z, H.step, H.order)


@lru_cache(maxsize=None)
def formal_step(p: int, m: int, k: int) -> LiftStepResult:
    """The step (m, k) on the free input y[0] in context (p, m)."""
    ctx = GroupContext(p, m)
    return build_a(Poly.gen(ctx, 0), m, k, verify=False)


def formal_relations(p: int, m: int, k: int) -> RelationSet:
    return relations(GroupContext(p, m), m - k)


def verify_formal_step(p: int, m: int, k: int) -> bool:
    step = formal_step(p, m, k)
    ctx = step.x_out.ctx
    return norm_residual(step.x_out, SubgroupSpec(ctx, m), formal_relations(p, m, k)).is_zero()


def substitute(P: Poly, X: Poly, stride: int) -> Poly:
    """Image of P (in context (p, m)) under y[j] -> sigma^(j*stride)(X)."""
    ctx = X.ctx
    shifted: dict = {}
    prefix: dict = {(): {(): 1}}

    def value(word):
        got = prefix.get(word)
        if got is not None:
            return got
        head = value(word[:-1])
        j = word[-1]
        if j not in shifted:
            shifted[j] = list(shift(X, j * stride).items())
        out: dict = {}
        for u, c in head.items():
            for v, d in shifted[j]:
                key = u + v
                out[key] = out.get(key, 0) + c * d
        prefix[word] = out
        return out

    acc: dict = {}
    for word, c in sorted(P.items()):
        for u, v in value(word).items():
            acc[u] = acc.get(u, 0) + c * v
    return _finish(ctx, acc)


def expansion_estimate(P: Poly, X: Poly) -> int:
    """Number of products formed when substituting X into P (before cancellation)."""
    size = len(X)
    return sum(size ** len(w) for w in P.words())


def resolve_schedule(n: int, strategy: Strategy) -> list:
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if strategy == "unit":
        sched = [(m, 1) for m in range(2, n + 1)]
    elif strategy == "doubling":
        sched = []
        cur = 1
        while cur < n:
            nxt = min(2 * cur, n)
            sched.append((nxt, nxt - cur))
            cur = nxt
    elif isinstance(strategy, str):
        raise ParameterError(f"unknown strategy {strategy!r}")
    else:
        sched = [(int(m), int(k)) for m, k in strategy]
    cur = 1
    for m, k in sched:
        if not (1 <= k and 2 * k <= m):
            raise ParameterError(f"step (m={m}, k={k}) violates 1 <= k <= m/2")
        if m - k != cur:
            raise ParameterError(f"step (m={m}, k={k}) starts from exponent {m - k}, expected {cur}")
        cur = m
    if cur != n:
        raise ParameterError(f"schedule ends at exponent {cur}, expected {n}")
    return sched


def generate(p: int, n: int, strategy: Strategy = "doubling", verify: bool = True,
             expand_limit: int = DEFAULT_EXPAND_LIMIT) -> ChainResult:
    """Chain lift steps from x[0] (norm-one for the order-p subgroup) up to G.

    Each step is always computed formally. The explicit polynomial is
    materialized while the substitution stays under ``expand_limit``
    products; once a step is skipped, later steps are formal only.
    With ``verify`` every formal step and every materialized step is checked
    exactly in the corresponding universal ring.
    """
    ctx = GroupContext(p, n)
    sched = resolve_schedule(n, strategy)
    X: Optional[Poly] = Poly.gen(ctx, 0)
    steps = []
    for m, k in sched:
        formal = formal_step(p, m, k)
        formal_ok = verify_formal_step(p, m, k) if verify else None
        explicit = None
        explicit_ok = None
        if X is not None and expansion_estimate(formal.x_out, X) <= expand_limit:
            explicit = build_a(X, m, k, verify=False)
            if verify:
                explicit_ok = norm_residual(explicit.x_out, SubgroupSpec(ctx, m)).is_zero()
            X = explicit.x_out
        else:
            if X is not None:
                log.info("step (m=%d, k=%d): explicit expansion skipped (limit %d)", m, k, expand_limit)
            X = None
        steps.append(ChainStep(m, k, formal, explicit, formal_ok, explicit_ok))
    return ChainResult(ctx=ctx, strategy=strategy if isinstance(strategy, str) else tuple(sched),
                       schedule=tuple(sched), steps=tuple(steps), final=X)
