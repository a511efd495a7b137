import numpy as np
import pytest

from squareprop import corpus
from squareprop.algebra import (AlgebraMismatch, AssociativityViolation,
                                NotAnIdeal, NotUnital, find_unit,
                                is_invertible, left_regular_matrix,
                                make_algebra, mul, quotient,
                                subspace_is_two_sided_ideal, unitize)


def test_complexes_accepted_with_unit():
    C = corpus.complexes()
    assert C.is_unital
    assert np.allclose(C.unit, [1.0, 0.0])


def test_quaternions_accepted():
    corpus.quaternions()


def test_associativity_violation_reported():
    # e1 e1 = e2, e2 e1 = e1: (e1 e1) e1 = e1 but e1 (e1 e1) = e1 e2 = 0
    with pytest.raises(AssociativityViolation):
        make_algebra(2, ["a", "b"], {(0, 0, 1): 1.0, (1, 0, 0): 1.0})


def test_mul_examples():
    rr = corpus.builtin("rr")
    assert np.allclose(mul(rr.element([2, 3]), rr.element([5, 7])).coords,
                       [10, 21])
    C = corpus.complexes()
    assert np.allclose(mul(C.element([0, 1]), C.element([0, 1])).coords,
                       [-1, 0])
    m2 = corpus.m2_reals()
    e12, e21 = m2.basis_element(1), m2.basis_element(2)
    assert np.allclose(mul(e12, e21).coords, [1, 0, 0, 0])


def test_mul_mismatch():
    rr = corpus.builtin("rr")
    with pytest.raises(AlgebraMismatch):
        mul(rr.element([1, 0]), corpus.complexes().element([1, 0]))


def test_left_regular_matrix_examples():
    C = corpus.complexes()
    assert np.allclose(left_regular_matrix(C.unit_element()), np.eye(2))
    assert np.allclose(left_regular_matrix(C.element([0, 1])),
                       [[0, -1], [1, 0]])
    rr = corpus.builtin("rr")
    assert np.allclose(left_regular_matrix(rr.element([2, 3])),
                       np.diag([2.0, 3.0]))


def test_left_regular_is_homomorphism():
    rng = np.random.default_rng(3)
    for name in ("rr", "rrc", "quaternions", "m2_reals", "hc"):
        A = corpus.builtin(name)
        for _ in range(50):
            a = A.element(rng.standard_normal(A.dim))
            b = A.element(rng.standard_normal(A.dim))
            lhs = left_regular_matrix(mul(a, b))
            rhs = left_regular_matrix(a) @ left_regular_matrix(b)
            scale = (1 + np.abs(a.coords).max()) * (1 + np.abs(b.coords).max())
            assert np.abs(lhs - rhs).max() <= 1e-10 * scale


def test_is_invertible():
    rr = corpus.builtin("rr")
    assert is_invertible(rr.element([2, 3]))
    assert not is_invertible(rr.element([0, 3]))
    m2 = corpus.m2_reals()
    assert not is_invertible(m2.basis_element(1))  # nilpotent E12


def test_is_invertible_needs_unit():
    A = corpus.nonunital_with_ideal()
    with pytest.raises(NotUnital):
        is_invertible(A.element([1, 1, 1]))


def test_find_unit():
    assert np.allclose(find_unit(corpus.quaternions()), [1, 0, 0, 0])
    null = make_algebra(1, ["n"], {})  # one-dim null product
    assert find_unit(null) is None


def test_unitize_null_line():
    null = make_algebra(1, ["n"], {})
    up = unitize(null)
    assert up.dim == 2
    e, b = up.basis_element(0), up.basis_element(1)
    assert np.allclose(mul(e, e).coords, e.coords)
    assert np.allclose(mul(e, b).coords, b.coords)
    assert np.allclose(mul(b, b).coords, 0)
    assert np.allclose(find_unit(up), up.unit)


def test_unitize_recovers_unit_for_all_builtins():
    for name in corpus.builtin_names():
        up = unitize(corpus.builtin(name))
        assert np.allclose(find_unit(up), up.unit, atol=1e-12)


def test_ideal_checks():
    rr = corpus.builtin("rr")
    assert subspace_is_two_sided_ideal(rr, [[0, 1]])
    assert subspace_is_two_sided_ideal(rr, np.eye(2))
    m2 = corpus.m2_reals()
    assert not subspace_is_two_sided_ideal(m2, [[0, 1, 0, 0]])  # span{E12}


def test_quotient_rr_mod_second_coord():
    rr = corpus.builtin("rr")
    qm = quotient(rr, [[0, 1]])
    assert qm.algebra.dim == 1
    assert qm.algebra.is_unital
    # induced table is e*e = e, i.e. the quotient is R
    assert np.allclose(qm.algebra.table, np.ones((1, 1, 1)))


def test_quotient_by_zero_is_identity():
    rrc = corpus.builtin("rrc")
    qm = quotient(rrc, np.zeros((0, 4)))
    assert qm.algebra is rrc
    assert np.allclose(qm.projection, np.eye(4))


def test_quotient_componentwise():
    rrc = corpus.builtin("rrc")  # R + R + C, C in coords 2, 3
    qm = quotient(rrc, np.eye(4)[2:])
    assert qm.algebra.dim == 2
    rng = np.random.default_rng(0)
    for _ in range(100):
        a = rrc.element(rng.standard_normal(4))
        b = rrc.element(rng.standard_normal(4))
        lhs = qm.project(mul(a, b)).coords
        rhs = mul(qm.project(a), qm.project(b)).coords
        assert np.abs(lhs - rhs).max() <= 1e-10


def test_quotient_requires_ideal():
    m2 = corpus.m2_reals()
    with pytest.raises(NotAnIdeal):
        quotient(m2, [[0, 1, 0, 0]])


def test_corpus_constructors():
    assert corpus.direct_sum([corpus.reals(), corpus.complexes()]).dim == 3
    h2 = corpus.function_algebra_H(2)
    assert h2.dim == 8 and h2.is_unital
    m2 = corpus.m2_reals()
    assert np.allclose(m2.unit, [1, 0, 0, 1])


def test_unit_residuals_tight():
    for name in corpus.builtin_names():
        A = corpus.builtin(name)
        if not A.is_unital:
            continue
        for j in range(A.dim):
            ej = np.eye(A.dim)[j]
            assert np.abs(A.mul_coords(A.unit, ej) - ej).max() <= 1e-12
            assert np.abs(A.mul_coords(ej, A.unit) - ej).max() <= 1e-12
