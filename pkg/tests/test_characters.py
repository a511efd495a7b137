import numpy as np
import pytest

from squareprop import corpus
from squareprop.characters import (EmptyCharacterSet, character_residual,
                                   check_prop31, find_characters,
                                   full_spectrum_match, j_evaluate,
                                   nonexistence_explanation, sampled_sup_norm)
from squareprop.quaternion import qnorm
from squareprop.spectral import spectral_radius


def test_residual_examples():
    rr = corpus.builtin("rr")
    proj = np.zeros((2, 4))
    proj[0, 0] = 1.0
    assert character_residual(rr, proj) == 0.0
    H = corpus.quaternions()
    assert character_residual(H, np.eye(4)) == 0.0
    bad = np.zeros((2, 4))
    bad[:, 0] = 1.0  # x(e1) = x(e2) = 1 but e1 e2 = 0
    assert character_residual(rr, bad) >= 1.0 / 3.0


def test_find_characters_rr():
    rr = corpus.builtin("rr")
    chars = find_characters(rr, restarts=50, seed=1)
    assert len(chars) == 2
    firsts = sorted(round(float(c.images[0, 0])) for c in chars)
    assert firsts == [0, 1]  # the two coordinate projections
    for c in chars:
        assert c.residual <= 1e-11


def test_find_characters_h_conjugations():
    H = corpus.quaternions()
    chars = find_characters(H, restarts=50, seed=1)
    assert len(chars) >= 5
    rng = np.random.default_rng(0)
    for c in chars:
        assert c.residual <= 1e-11
        for _ in range(20):
            a = H.element(rng.standard_normal(4))
            # conjugation characters are isometric
            assert qnorm(c(a)) == pytest.approx(np.linalg.norm(a.coords),
                                                rel=1e-9)


def test_find_characters_m2_empty():
    m2 = corpus.m2_reals()
    assert find_characters(m2, restarts=100, seed=0) == []
    note = nonexistence_explanation(m2)
    assert note is not None and "E12" in note


def test_find_characters_deterministic():
    hc = corpus.builtin("hc")
    a = find_characters(hc, restarts=20, seed=9)
    b = find_characters(hc, restarts=20, seed=9)
    assert len(a) == len(b)
    for x, y in zip(a, b):
        assert np.array_equal(x.images, y.images)


def test_j_evaluate_examples():
    rr = corpus.builtin("rr")
    chars = corpus.known_characters(rr)
    vals = j_evaluate(rr.element([2, 3]), chars)
    assert sorted(q.w for q in vals) == [2.0, 3.0]
    unit_vals = j_evaluate(rr.unit_element(), chars)
    assert all(qnorm(q) == pytest.approx(1.0) and q.w == pytest.approx(1.0)
               for q in unit_vals)
    zero_vals = j_evaluate(rr.zero(), chars)
    assert all(qnorm(q) == 0.0 for q in zero_vals)


def test_sampled_sup_norm():
    rr = corpus.builtin("rr")
    chars = corpus.known_characters(rr)
    assert sampled_sup_norm(rr.element([2, -3]), chars) == 3.0
    assert sampled_sup_norm(rr.zero(), chars) == 0.0
    with pytest.raises(EmptyCharacterSet):
        sampled_sup_norm(rr.element([1, 1]), [])


def test_prop31_rr():
    rr = corpus.builtin("rr")
    chars = corpus.known_characters(rr)
    res = check_prop31(rr.element([2, 3]), chars)
    assert res.forward_ok and res.spectrum_inclusion_ok
    assert full_spectrum_match(rr.element([2, 3]), chars)
    # witnessed non-invertibility: the first projection vanishes at (0, 3)
    vals = j_evaluate(rr.element([0, 3]), chars)
    assert min(qnorm(q) for q in vals) <= 1e-12


def test_prop31_quaternions():
    H = corpus.quaternions()
    chars = find_characters(H, restarts=30, seed=2)
    a = H.element([1, 1, 1, 1])
    res = check_prop31(a, chars)
    assert res.forward_ok and res.spectrum_inclusion_ok
    assert full_spectrum_match(a, chars)


def test_spectral_bound_for_characters():
    rng = np.random.default_rng(6)
    for name in ("rr", "rrc", "quaternions", "hc"):
        A = corpus.builtin(name)
        chars = corpus.known_characters(A)
        for _ in range(30):
            a = A.element(rng.standard_normal(A.dim))
            r = spectral_radius(a)
            for q in j_evaluate(a, chars):
                assert qnorm(q) <= r + 1e-8


def test_known_characters_are_exact():
    for name in ("rr", "rrc", "quaternions", "hc", "h2"):
        A = corpus.builtin(name)
        for c in corpus.known_characters(A):
            assert c.residual <= 1e-14


def test_sup_norm_matches_spectral_radius_on_products():
    rng = np.random.default_rng(8)
    for name in ("rr", "rrc", "hc", "h2"):
        A = corpus.builtin(name)
        chars = find_characters(A, restarts=50, seed=3)
        assert chars
        for _ in range(30):
            a = A.element(rng.standard_normal(A.dim))
            r = spectral_radius(a)
            assert abs(sampled_sup_norm(a, chars) - r) <= 1e-6 * (1.0 + r)
