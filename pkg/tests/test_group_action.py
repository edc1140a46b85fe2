import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normone import Operator, SubgroupSpec, apply_operator, norm_op, partial_sum_op, shift
from normone import ContextMismatchError, ParameterError, Poly

from conftest import CTX22, CTX23, CTX32, W, X, polys


def op(ctx, coeffs):
    return Operator(ctx, coeffs)


def test_shift_examples():
    assert shift(X(CTX22, 0), 1) == X(CTX22, 1)
    P = W(CTX22, (2, [0, 3]), (-1, []))
    assert shift(P, 0) == P
    assert shift(X(CTX22, 3), 1) == X(CTX22, 0)
    assert shift(P, -1) == W(CTX22, (2, [3, 2]), (-1, []))


def test_apply_operator_examples():
    assert apply_operator(op(CTX22, {0: 1, 1: -1}), X(CTX22, 0)) == X(CTX22, 0) - X(CTX22, 1)
    full = op(CTX22, {0: 1, 1: 1, 2: 1, 3: 1})
    assert apply_operator(full, X(CTX22, 0)) == sum((X(CTX22, j) for j in range(4)), Poly.zero(CTX22))
    assert apply_operator(op(CTX22, {0: 1, 1: -1}), Poly.one(CTX22)).is_zero()


def test_norm_op_examples():
    assert norm_op(SubgroupSpec(CTX22, 1)) == op(CTX22, {0: 1, 2: 1})
    assert norm_op(SubgroupSpec(CTX22, 2)) == op(CTX22, {0: 1, 1: 1, 2: 1, 3: 1})
    assert norm_op(SubgroupSpec(CTX32, 1)) == op(CTX32, {0: 1, 3: 1, 6: 1})
    assert norm_op(SubgroupSpec(CTX32, 0)) == Operator.identity(CTX32)


def test_partial_sum_examples():
    assert partial_sum_op(CTX22, 2, 1) == Operator.identity(CTX22)
    assert partial_sum_op(CTX22, 2, 2) == op(CTX22, {0: 1, 2: 1})
    assert partial_sum_op(CTX32, 3, 2) == op(CTX32, {0: 1, 3: 1})
    assert partial_sum_op(CTX32, 3, 0) == Operator(CTX32)
    # wraps around and accumulates multiplicity
    assert partial_sum_op(CTX22, 2, 3) == op(CTX22, {0: 2, 2: 1})
    with pytest.raises(ParameterError):
        partial_sum_op(CTX22, 1, -1)


def test_subgroup_spec():
    H = SubgroupSpec(CTX23, 1)
    assert (H.step, H.order) == (4, 2)
    for m in range(4):
        H = SubgroupSpec(CTX23, m)
        assert H.step * H.order == CTX23.order
    with pytest.raises(ParameterError):
        SubgroupSpec(CTX23, 4)


def test_negative_exponents_reduced():
    assert Operator.power(CTX22, -2).coeffs == {2: 1}
    assert Operator.power(CTX32, -3).coeffs == {6: 1}


def test_operator_algebra():
    s = Operator.power(CTX22, 1)
    one_minus = 1 - s
    rel_norm = partial_sum_op(CTX22, 1, 2)
    # (1 + s)(1 - s) = 1 - s^2
    assert rel_norm * one_minus == op(CTX22, {0: 1, 2: -1})
    assert (s * s * s * s) == Operator.identity(CTX22)
    with pytest.raises(ContextMismatchError):
        s * Operator.identity(CTX32)
    assert Operator.from_dict(rel_norm.to_dict()) == rel_norm


@given(polys(CTX23), st.integers(-20, 20), st.integers(-20, 20))
def test_shift_composes(P, a, b):
    assert shift(shift(P, a), b) == shift(P, (a + b) % 8)


@given(polys(CTX32, max_degree=3), polys(CTX32, max_degree=3), st.integers(0, 8))
def test_shift_is_automorphism(P, Q, e):
    assert shift(P * Q, e) == shift(P, e) * shift(Q, e)
    assert shift(P + Q, e) == shift(P, e) + shift(Q, e)


@settings(deadline=None)
@given(polys(CTX23), st.integers(0, 3))
def test_norm_is_invariant(P, m):
    H = SubgroupSpec(CTX23, m)
    N = apply_operator(norm_op(H), P)
    assert shift(N, H.step) == N


@pytest.mark.parametrize("ctx", [CTX22, CTX32, CTX23])
def test_full_norm_is_full_partial_sum(ctx):
    assert norm_op(SubgroupSpec(ctx, ctx.n)) == partial_sum_op(ctx, 1, ctx.order)


@given(polys(CTX22, max_degree=3), st.dictionaries(st.integers(0, 3), st.integers(-3, 3), max_size=3),
       st.dictionaries(st.integers(0, 3), st.integers(-3, 3), max_size=3))
def test_operator_product_is_composition(P, a, b):
    A, B = Operator(CTX22, a), Operator(CTX22, b)
    assert apply_operator(A * B, P) == A(B(P))
    assert apply_operator(A + B, P) == A(P) + B(P)
