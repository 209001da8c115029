"""Degree-bound arithmetic and the inversion decision procedure."""

import random

import pytest

from freeinv import (
    ArityMismatch,
    FreePoly,
    inverse_degree_bound,
    invert,
    iterate_split,
    pmid_bound,
    pmid_f,
    verify_inverse,
)
from freeinv.inverter import (
    OUTCOME_INDETERMINATE,
    OUTCOME_NOT_INJECTIVE,
    REASON_DEGREE_EXCEEDED,
    REASON_JACOBIAN_NOT_POLY_INVERTIBLE,
)

from corpus import (
    IDENTITY2,
    INVERTIBLE_CORPUS,
    LINEAR2,
    NILPOTENT,
    P_CLASSIC,
    P_ONEVAR,
    P_SIMPLE,
    P_THREE,
    P_TWISTED,
    Q_SIMPLE,
    Q_THREE,
    Q_TWISTED,
)
from tame import random_tame_pair

x1 = FreePoly.letter("x", 1)
x2 = FreePoly.letter("x", 2)


def test_pmid_f_values():
    assert [pmid_f(n) for n in range(1, 6)] == [1, 8, 216, 13824, 1728000]
    # recursion matches the closed form (n!)^3
    import math

    for n in range(1, 7):
        assert pmid_f(n) == math.factorial(n) ** 3


def test_pmid_bound_values():
    assert pmid_bound(2, 2).bound == 144
    assert pmid_bound(1, 0).bound == 0
    assert pmid_bound(3, 1).bound == 27 * 216


def test_inverse_degree_bound_values():
    assert inverse_degree_bound(2, 3) == 145
    assert inverse_degree_bound(1, 2) == 4
    assert inverse_degree_bound(2, 1) == 1
    with pytest.raises(ValueError):
        inverse_degree_bound(2, 0)


def test_invert_simple():
    out = invert(P_SIMPLE)
    assert out.is_inverse and out.q == Q_SIMPLE


def test_invert_twisted():
    out = invert(P_TWISTED)
    assert out.is_inverse and out.q == Q_TWISTED


def test_invert_three_var():
    out = invert(P_THREE)
    assert out.is_inverse and out.q == Q_THREE


def test_invert_identity():
    out = invert(IDENTITY2)
    assert out.is_inverse and out.iterations == 1 and out.q == IDENTITY2


def test_invert_linear():
    out = invert(LINEAR2)
    assert out.is_inverse
    assert verify_inverse(LINEAR2, out.q)
    assert max(int(c.degree()) for c in out.q) == 1


def test_invert_classic_rigorous():
    out = invert(P_CLASSIC)
    assert out.outcome == OUTCOME_NOT_INJECTIVE
    assert out.reason == REASON_DEGREE_EXCEEDED
    assert out.bound_B == 145
    assert out.iterations == 74  # head degree 2k-1 first exceeds 145 at k = 74
    assert out.iterations <= out.bound_B


def test_invert_classic_clipped_is_indeterminate():
    out = invert(P_CLASSIC, cap=20)
    assert out.outcome == OUTCOME_INDETERMINATE


def test_invert_one_var_jacobian_gate():
    out = invert(P_ONEVAR)
    assert out.outcome == OUTCOME_NOT_INJECTIVE
    assert out.reason == REASON_JACOBIAN_NOT_POLY_INVERTIBLE


def test_invert_singular_linear_part():
    # both components share the same linear part: J(0) singular
    p = (x1 + x2 + x1**2, x1 + x2)
    out = invert(p)
    assert out.outcome == OUTCOME_NOT_INJECTIVE
    assert out.reason == "singular-jacobian-constant"


def test_invert_restores_constants():
    shift = (FreePoly.scalar(2), FreePoly.scalar(-3))
    p = tuple(c + s for c, s in zip(P_SIMPLE, shift))
    out = invert(p)
    assert out.is_inverse
    assert verify_inverse(p, out.q)


def test_invert_budget_indeterminate():
    out = invert(NILPOTENT, cap=16, max_terms=5000)
    assert out.outcome == OUTCOME_INDETERMINATE


def test_invert_arity_mismatch():
    with pytest.raises(ArityMismatch):
        invert((x1, FreePoly.letter("x", 3)))
    with pytest.raises(ArityMismatch):
        invert((FreePoly.letter("y", 1),))


def test_verify_inverse_examples():
    assert verify_inverse(P_TWISTED, Q_TWISTED)
    p = (x1, x2 + x1**2)
    assert not verify_inverse(p, p)  # p o p doubles the x1^2 term
    assert verify_inverse(IDENTITY2, IDENTITY2)


def test_invert_outcome_soundness_on_corpus():
    for p, q_true in INVERTIBLE_CORPUS:
        out = invert(p)
        assert out.is_inverse
        assert verify_inverse(p, out.q)
        assert out.q == q_true
        bound = inverse_degree_bound(len(p), max(int(c.degree()) for c in p))
        assert max(int(c.degree()) for c in out.q) <= bound


def test_monotone_head_degrees():
    from freeinv import auxiliary_inverse, jacobian_extract, poly_matrix_inverse

    _, J = jacobian_extract(P_CLASSIC)
    system = auxiliary_inverse(P_CLASSIC, poly_matrix_inverse(J, 144))
    degs = [int(iterate_split(system, k, 40).head_degree()) for k in range(1, 9)]
    assert degs == sorted(degs)


def test_tame_closure_smoke():
    rng = random.Random(11)
    for _ in range(8):
        p, q_true = random_tame_pair(rng)
        out = invert(p, cap=48)
        assert out.is_inverse, (p, out.outcome, out.reason)
        assert verify_inverse(p, out.q)
        assert out.q == q_true
