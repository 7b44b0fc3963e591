from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rhodes import exact
from rhodes.exact import QQ, galois_field


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_galois_field_axioms(q):
    F = galois_field(q)
    els = F.elements
    for a in els:
        assert a + F.zero == a and a * F.one == a
        assert a + (-a) == F.zero
        if a:
            assert a * (F.one / a) == F.one
        for b in els:
            assert a * b == b * a and a + b == b + a
            for c in els:
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c
    # characteristic and multiplicative group order
    assert sum([F.one] * F.char, F.zero) == F.zero
    for a in els[1:]:
        assert a ** (q - 1) == F.one


def test_prime_power_rejects():
    assert exact.prime_power(12) is None
    assert exact.prime_power(8) == (2, 3)
    with pytest.raises(ValueError):
        galois_field(6)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
def test_left_nullspace_rational(rows):
    M = exact.convert(rows, QQ)
    null = exact.left_nullspace(M, QQ)
    for v in null:
        assert all(x == 0 for x in exact.vecmat(v, M))
    assert len(null) + exact.rank(M) == len(M)
    assert exact.rank(M) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_mod3(rows):
    F = galois_field(3)
    M = exact.convert(rows, F)
    if exact.rank(M) < 3:
        with pytest.raises(ZeroDivisionError):
            exact.inverse(M, F)
        return
    Minv = exact.inverse(M, F)
    assert exact.matmul(M, Minv) == exact.identity(3, F)


def _sympy_factors_mod(coeffs, p):
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    return sorted(len(g.all_coeffs()) - 1 for g, _ in poly.factor_list()[1])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=2, max_size=6))
def test_factor_finite_matches_sympy(p, coeffs):
    coeffs = [c % p for c in coeffs[:-1]] + [1]
    F = galois_field(p)
    ours = exact.factor_polynomial(exact.convert([coeffs], F)[0], F)
    assert sorted(len(g) - 1 for g in ours) == _sympy_factors_mod(coeffs, p)
    for g in ours:
        _, r = exact.poly_divmod(exact.convert([coeffs], F)[0], g, F)
        assert not any(r)


def test_factor_over_f4_splits_cyclotomic():
    F = galois_field(4)
    facs = exact.factor_polynomial([F.one, F.one, F.one], F)
    assert [len(g) for g in facs] == [2, 2]
    F2 = galois_field(2)
    assert exact.factor_polynomial([F2(1), F2(1), F2(1)], F2) == [[1, 1, 1]]


def test_factor_rational():
    facs = exact.factor_polynomial([Fraction(-1), Fraction(0), Fraction(1)], QQ)
    assert sorted(tuple(g) for g in facs) == [(-1, 1), (1, 1)]
    assert len(exact.factor_polynomial([Fraction(1), Fraction(1), Fraction(1)], QQ)) == 1


def test_minimal_polynomial_of_swap():
    swap = exact.convert([[0, 1], [1, 0]], QQ)
    assert exact.minimal_polynomial(swap, QQ) == [-1, 0, 1]
    assert exact.minimal_polynomial(exact.identity(3, QQ), QQ) == [-1, 1]


def test_spin_and_subspace():
    F = galois_field(2)
    swap = exact.convert([[0, 1], [1, 0]], F)
    W = exact.spin([[F.one, F.one]], [swap], F, 2)
    assert len(W) == 1
    W = exact.spin([[F.one, F.zero]], [swap], F, 2)
    assert len(W) == 2


def test_json_roundtrip():
    F = galois_field(4)
    for a in F.elements:
        assert F.from_json(F.to_json(a)) == a
    assert QQ.to_json(Fraction(-3, 4)) == "-3/4"
    assert QQ.from_json("-3/4") == Fraction(-3, 4)
