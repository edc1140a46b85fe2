import json

import numpy as np
import pytest

from normone import ContextMismatchError, ParameterError, Poly, SubgroupSpec, generate
from normone.oracle import normal_form
from normone.ring_instances import (
    InstanceSpec,
    check_numeric,
    evaluate,
    evaluate_chain,
    noncommuting_witness,
    random_instance,
)

from conftest import CTX22, CTX23, CTX32, W, X


def scalar_instance(ctx, values):
    vals = np.array([[[v]] for v in values], dtype=object)
    return InstanceSpec(ctx, "scalar", 1, 0, vals)


def coset_sums(I):
    h = I.ctx.order // I.ctx.p
    return [sum((I.values[j + i * h] for i in range(I.ctx.p)), np.zeros((I.dim, I.dim), dtype=object))
            for j in range(h)]


@pytest.mark.parametrize("ctx", [CTX22, CTX32, CTX23])
@pytest.mark.parametrize("kind,dim", [("scalar", 1), ("matrix", 2), ("matrix", 3)])
def test_coset_constraint(ctx, kind, dim):
    for seed in range(5):
        I = random_instance(ctx, kind, seed, dim=dim)
        for s in coset_sums(I):
            assert np.array_equal(s, np.identity(I.dim, dtype=object))


def test_scalar_layout_p2():
    I = random_instance(CTX22, "scalar", 11)
    v0, v1 = I.values[0, 0, 0], I.values[1, 0, 0]
    assert [I.values[j, 0, 0] for j in range(4)] == [v0, v1, 1 - v0, 1 - v1]
    assert all(-3 <= v <= 3 for v in (v0, v1))


def test_determinism_and_json():
    a = random_instance(CTX32, "matrix", 42, dim=2)
    b = random_instance(CTX32, "matrix", 42, dim=2)
    assert np.array_equal(a.values, b.values)
    c = InstanceSpec.from_dict(json.loads(a.to_json()))
    assert np.array_equal(c.values, a.values) and c.seed == 42
    s = random_instance(CTX22, "scalar", 3)
    assert InstanceSpec.from_dict(s.to_dict()).values.tolist() == s.values.tolist()


def test_bad_kind():
    with pytest.raises(ParameterError):
        random_instance(CTX22, "float", 0)
    with pytest.raises(ParameterError):
        random_instance(CTX22, "matrix", 0, dim=0)


def test_evaluate_unit_and_norm_relation():
    I = random_instance(CTX32, "matrix", 1, dim=2)
    assert np.array_equal(evaluate(Poly.one(CTX32), I), I.unit())
    rel = X(CTX32, 0) + X(CTX32, 3) + X(CTX32, 6)
    assert np.array_equal(evaluate(rel, I), I.unit())


def test_evaluate_generator_translate():
    I = random_instance(CTX22, "matrix", 2, dim=2)
    got = evaluate(X(CTX22, 1), I)
    for s in range(4):
        assert np.array_equal(got[s], I.values[(s + 1) % 4])


def test_evaluate_preserves_order():
    I = random_instance(CTX22, "matrix", 0, dim=2)
    i, j, s = noncommuting_witness(I)
    xy = evaluate(X(CTX22, i) * X(CTX22, j), I)
    yx = evaluate(X(CTX22, j) * X(CTX22, i), I)
    assert not np.array_equal(xy[s], yx[s])
    assert np.array_equal(xy[s], I.values[(s + i) % 4].dot(I.values[(s + j) % 4]))


def test_indicator_instance():
    # f_x = (1, 1, 0, 0): N_G(final) is constant 1, N_G(x) is constant 2
    I = scalar_instance(CTX22, [1, 1, 0, 0])
    G = SubgroupSpec(CTX22, 2)
    final = generate(2, 2, "unit").final
    assert check_numeric(final, I, G)
    assert not check_numeric(X(CTX22, 0), I, G)
    values = evaluate(X(CTX22, 0), I)
    total = sum(np.roll(values, -e, axis=0) for e in range(4))
    assert all(total[s, 0, 0] == 2 for s in range(4))


def test_check_numeric_base_case():
    for seed in range(5):
        I = random_instance(CTX23, "matrix", seed, dim=2)
        assert check_numeric(X(CTX23, 0), I, SubgroupSpec(CTX23, 1))


def test_generated_element_p3_matrix():
    final = generate(3, 2, "unit").final
    I = random_instance(CTX32, "matrix", 5, dim=2)
    assert check_numeric(final, I, SubgroupSpec(CTX32, 2))


def test_chain_evaluation_matches_explicit():
    chain = generate(2, 3, "unit")
    for seed in range(3):
        I = random_instance(CTX23, "matrix", seed, dim=2)
        assert np.array_equal(evaluate_chain(chain, I), evaluate(chain.final, I))


def test_oracle_numeric_agreement():
    # equal normal forms give equal values on every instance
    rng = np.random.default_rng(0)
    rel = X(CTX32, 1) + X(CTX32, 4) + X(CTX32, 7) - 1
    for _ in range(10):
        words = [tuple(rng.integers(0, 9, size=rng.integers(0, 3))) for _ in range(3)]
        A = Poly(CTX32, {w: int(rng.integers(-3, 4)) for w in words})
        B = Poly(CTX32, {w[::-1]: 1 for w in words})
        P = A
        Q = A + B * rel * A
        assert normal_form(P) == normal_form(Q)
        I = random_instance(CTX32, "matrix", int(rng.integers(0, 1000)), dim=2)
        assert np.array_equal(evaluate(P, I), evaluate(Q, I))


def test_context_mismatch():
    with pytest.raises(ContextMismatchError):
        evaluate(X(CTX22, 0), random_instance(CTX32, "scalar", 0))
