import pytest
from hypothesis import given, settings

from normone import (
    ParameterError,
    Poly,
    RelationSet,
    SubgroupSpec,
    is_norm_one,
    monomial_count,
    normal_form,
    step_bound,
    unit_chain_bound,
)
from normone.oracle import norm_residual, relations

import sympy_oracle
from conftest import CTX22, CTX23, CTX32, W, X, polys

KNOWN_P2 = [(1, [1, 0]), (-1, [1, 0, 0]), (1, [0, 2, 0]), (1, [0, 3, 0]), (-1, [1, 3, 0])]
KNOWN_P2_REDUCED = [(2, [0, 0]), (-1, [0, 0, 0]), (-1, [0, 1, 0]), (-1, [1, 0, 0]), (1, [1, 1, 0])]
SHORT_P2 = [(1, [0, 1, 0]), (1, [0, 1]), (-1, [0, 0, 1])]


def test_relation_set_shape():
    for ctx in (CTX22, CTX32, CTX23):
        R = RelationSet(ctx)
        assert len(R) == ctx.order // ctx.p
        assert list(R.eliminated) == list(range((ctx.p - 1) * ctx.order // ctx.p, ctx.order))
        for j in R.eliminated:
            rhs = R.replacement(j)
            assert all(i < R.first_eliminated for w in rhs.words() for i in w)


def test_relation_rule_examples():
    assert normal_form(X(CTX22, 2)) == 1 - X(CTX22, 0)
    assert normal_form(X(CTX22, 0) + X(CTX22, 2)) == Poly.one(CTX22)
    assert normal_form(X(CTX32, 7)) == 1 - X(CTX32, 1) - X(CTX32, 4)


def test_known_p2_forms_agree():
    first = W(CTX22, *KNOWN_P2)
    second = W(CTX22, *KNOWN_P2_REDUCED)
    assert normal_form(first) == second
    assert normal_form(first - second).is_zero()


def test_is_norm_one_examples():
    for ctx in (CTX22, CTX32, CTX23):
        assert is_norm_one(X(ctx, 0), SubgroupSpec(ctx, 1))
    G = SubgroupSpec(CTX22, 2)
    assert is_norm_one(W(CTX22, *SHORT_P2), G)
    assert not is_norm_one(X(CTX22, 0), G)


def test_norm_of_generator_over_larger_group():
    # the residual is N_G(x) - 1 = p^k - 1 with p^k = [G : E]; cross-checked through sympy
    G = SubgroupSpec(CTX22, 2)
    full = sum((X(CTX22, j) for j in range(4)), Poly.zero(CTX22))
    assert sympy_oracle.reduce(full) == 2
    assert norm_residual(X(CTX22, 0), G) == Poly.constant(CTX22, 1)
    assert normal_form(full) == Poly.constant(CTX22, 2)
    assert normal_form(sum((X(CTX23, j) for j in range(8)), Poly.zero(CTX23))) == Poly.constant(CTX23, 4)


def test_monomial_count_examples():
    assert monomial_count(W(CTX22, *KNOWN_P2)) == 5
    assert monomial_count(Poly.one(CTX22)) == 1
    assert monomial_count(Poly.one(CTX22), "reduced") == 1
    assert monomial_count(W(CTX22, *KNOWN_P2), "reduced") == 5
    with pytest.raises(ParameterError):
        monomial_count(Poly.one(CTX22), "other")


def _step_bound_oracle(p, m, k):
    # independent arithmetic: p^(m-k)(p^(m-k) - 1)(p^k + 1) + 1 with explicit products
    q = 1
    for _ in range(m - k):
        q *= p
    r = 1
    for _ in range(k):
        r *= p
    return q * (q - 1) * (r + 1) + 1


def test_step_bound_values():
    assert step_bound(2, 2, 1) == 7
    assert step_bound(3, 2, 1) == 25
    assert step_bound(2, 4, 2) == 61
    for p in (2, 3, 5):
        for m in range(2, 7):
            for k in range(1, m // 2 + 1):
                assert step_bound(p, m, k) == _step_bound_oracle(p, m, k)


@pytest.mark.parametrize("args", [(2, 2, 2), (2, 3, 0), (4, 2, 1), (2, 1, 1)])
def test_step_bound_rejects(args):
    with pytest.raises(ParameterError):
        step_bound(*args)


def test_unit_chain_bound_values():
    assert unit_chain_bound(2, 2) == 7
    assert unit_chain_bound(2, 1) == 0
    assert unit_chain_bound(3, 2) == 25
    # the closed form is the sum of the unit-step bounds
    for p in (2, 3, 5, 7):
        for n in range(1, 8):
            assert unit_chain_bound(p, n) == sum(_step_bound_oracle(p, m, 1) for m in range(2, n + 1))
    with pytest.raises(ParameterError):
        unit_chain_bound(6, 2)
    with pytest.raises(ParameterError):
        unit_chain_bound(2, 0)


@settings(max_examples=150, deadline=None)
@given(polys(CTX32, max_degree=3, max_terms=4))
def test_normal_form_matches_sympy(P):
    assert sympy_oracle.to_sympy(normal_form(P)) == sympy_oracle.reduce(P)


@settings(max_examples=80, deadline=None)
@given(polys(CTX23, max_degree=3, max_terms=4))
def test_normal_form_matches_sympy_larger_relations(P):
    R = relations(CTX23, 2)
    assert sympy_oracle.to_sympy(normal_form(P, R)) == sympy_oracle.reduce(P, h=2)


@settings(max_examples=200, deadline=None)
@given(polys(CTX23))
def test_normal_form_idempotent(P):
    N = normal_form(P)
    assert normal_form(N) == N
    assert all(j < 4 for w in N.words() for j in w)


@settings(max_examples=200, deadline=None)
@given(polys(CTX32, max_degree=3), polys(CTX32, max_degree=3))
def test_normal_form_is_homomorphism(P, Q):
    assert normal_form(P * Q) == normal_form(normal_form(P) * normal_form(Q))
    assert normal_form(P + Q) == normal_form(P) + normal_form(Q)


@pytest.mark.parametrize("ctx", [CTX22, CTX32, CTX23])
def test_relations_and_consequences_vanish(ctx):
    h = ctx.order // ctx.p
    for j in range(ctx.order):
        coset = sum((X(ctx, (j + i * h) % ctx.order) for i in range(ctx.p)), Poly.zero(ctx))
        assert normal_form(coset) == Poly.one(ctx)


@settings(max_examples=100, deadline=None)
@given(polys(CTX22, max_degree=2, max_terms=3), polys(CTX22, max_degree=2, max_terms=3))
def test_ideal_elements_reduce_to_zero(A, B):
    # A * sigma^j(N_E(x) - 1) * B lies in the ideal
    rel = X(CTX22, 1) + X(CTX22, 3) - 1
    assert normal_form(A * rel * B).is_zero()
