import math

import numpy as np
import pytest

from hkl.errors import (NotDivisible, NotNonnegative, NullInput,
                        OddCircleMultiplicity, PoleHit)
from hkl.factor import (BlaschkeProduct, blaschke_eval, blaschke_mul_poly,
                        divisors, fejer_riesz, inner_outer)
from hkl.polycore import (Poly, TrigPoly, poly_mul, roots,
                          trig_from_modulus_squared)

CIRCLE = np.exp(2j * np.pi * np.arange(512) / 512)


def _max_err(p, q):
    m = max(p.degree, q.degree) + 1
    return max(abs(p.coeff(k) - q.coeff(k)) for k in range(m))


# ---------------------------------------------------------------------------
# inner_outer
# ---------------------------------------------------------------------------

def test_inner_outer_pure_shift():
    fac = inner_outer(Poly((0, 1)))
    assert fac.inner.m0 == 1 and not fac.inner.zeros
    assert fac.inner.lam == 1
    assert fac.outer.coeffs == (1 + 0j,)


def test_inner_outer_disk_zero():
    p = poly_mul(Poly((-0.5, 1)), Poly((1, -0.5)))
    fac = inner_outer(p)
    assert fac.inner.m0 == 0
    assert len(fac.inner.zeros) == 1
    a, m = fac.inner.zeros[0]
    assert m == 1 and abs(a - 0.5) < 1e-10
    # outer should be (1 - z/2)^2
    expected = poly_mul(Poly((1, -0.5)), Poly((1, -0.5)))
    assert _max_err(fac.outer, expected) < 1e-12


def test_inner_outer_already_outer():
    fac = inner_outer(Poly((1, 1)))
    assert fac.inner.is_trivial and fac.inner.lam == 1
    assert fac.outer.coeffs == (1 + 0j, 1 + 0j)


def test_inner_outer_null():
    with pytest.raises(NullInput):
        inner_outer(Poly())


def test_inner_outer_reconstructs_on_grid():
    rng = np.random.default_rng(2)
    for _ in range(25):
        deg = int(rng.integers(1, 13))
        p = Poly((rng.standard_normal() + 1j * rng.standard_normal(),))
        for _ in range(deg):
            a = rng.uniform(0.1, 1.9) * np.exp(2j * np.pi * rng.uniform())
            p = poly_mul(p, Poly((-a, 1)))
        fac = inner_outer(p)
        recon = blaschke_eval(fac.inner, CIRCLE) * fac.outer(CIRCLE)
        assert np.abs(recon - p(CIRCLE)).max() <= 1e-9 * max(
            1.0, np.abs(p(CIRCLE)).max())
        # the outer part carries the boundary modulus
        assert np.abs(np.abs(fac.outer(CIRCLE)) - np.abs(p(CIRCLE))).max() \
            <= 1e-9 * max(1.0, np.abs(p(CIRCLE)).max())
        assert fac.outer.coeff(0).imag == pytest.approx(0.0, abs=1e-12)
        assert fac.outer.coeff(0).real > 0


# ---------------------------------------------------------------------------
# fejer_riesz
# ---------------------------------------------------------------------------

def test_fejer_constant():
    assert fejer_riesz(TrigPoly(0, (1.0,))).coeffs == (1 + 0j,)


def test_fejer_one_plus_z():
    f = fejer_riesz(TrigPoly(1, (2.0, 1.0)))
    assert _max_err(f, Poly((1, 1))) < 1e-10


def test_fejer_keeps_outside_root():
    # |1 - z/2|^2 = 5/4 - z/2 - conj(z)/2; the lift's pair is {1/2, 2}
    f = fejer_riesz(TrigPoly(1, (1.25, -0.5)))
    assert _max_err(f, Poly((1, -0.5))) < 1e-10


def test_fejer_rejects_sign_change():
    with pytest.raises((NotNonnegative, OddCircleMultiplicity)):
        fejer_riesz(TrigPoly(1, (0.0, 0.5)))


def test_fejer_null():
    with pytest.raises(NullInput):
        fejer_riesz(TrigPoly(0, (0j,)))


def test_fejer_round_trip_random():
    from conftest import random_outer_poly
    rng = np.random.default_rng(10)
    for _ in range(40):
        deg = int(rng.integers(1, 17))
        circ = int(rng.integers(0, min(deg, 3) + 1))
        f = random_outer_poly(rng, deg, circ)
        g = trig_from_modulus_squared(f)
        back = fejer_riesz(g)
        scale = max(abs(c) for c in f.coeffs)
        assert _max_err(back, f) <= 1e-7 * scale


def test_fejer_output_is_outer():
    from conftest import random_outer_poly
    rng = np.random.default_rng(14)
    for _ in range(15):
        f = random_outer_poly(rng, int(rng.integers(1, 13)), 1)
        back = fejer_riesz(trig_from_modulus_squared(f))
        for r in roots(back):
            assert abs(r.location) >= 1.0 - 1e-9


# ---------------------------------------------------------------------------
# blaschke products
# ---------------------------------------------------------------------------

def test_blaschke_eval_shift():
    b = BlaschkeProduct(1, (), 1.0)
    assert blaschke_eval(b, 1j) == pytest.approx(1j)


def test_blaschke_eval_fixed_points():
    b = BlaschkeProduct(0, ((0.5, 1),), 1.0)
    assert blaschke_eval(b, 1.0) == pytest.approx(1.0)
    assert blaschke_eval(b, -1.0) == pytest.approx(-1.0)


def test_blaschke_pole():
    b = BlaschkeProduct(0, ((0.5, 1),), 1.0)
    with pytest.raises(PoleHit):
        blaschke_eval(b, 2.0)


def test_blaschke_unimodular_on_circle():
    b = BlaschkeProduct(2, ((0.3 + 0.4j, 2), (-0.5, 1)), 1j)
    vals = blaschke_eval(b, CIRCLE)
    assert np.abs(np.abs(vals) - 1.0).max() < 1e-10


def test_blaschke_rejects_outside_zero():
    with pytest.raises(ValueError):
        BlaschkeProduct(0, ((1.2, 1),), 1.0)
    with pytest.raises(ValueError):
        BlaschkeProduct(0, ((0.5, 1),), 2.0)


def test_divisors_trivial():
    assert [d.degree for d in divisors(BlaschkeProduct())] == [0]


def test_divisors_single_zero():
    ds = divisors(BlaschkeProduct(0, ((0.5, 1),), 1.0))
    assert len(ds) == 2
    assert {d.degree for d in ds} == {0, 1}


def test_divisors_count():
    ds = divisors(BlaschkeProduct(1, ((0.5, 2),), 1.0))
    assert len(ds) == 6  # (1+1) * (2+1)
    assert all(d.lam == 1 for d in ds)


def test_divisors_count_general():
    b = BlaschkeProduct(2, ((0.5, 2), (0.1 - 0.3j, 3)), -1.0)
    assert len(divisors(b)) == 3 * 3 * 4


# ---------------------------------------------------------------------------
# blaschke_mul_poly
# ---------------------------------------------------------------------------

def test_blaschke_mul_swaps_root():
    f = Poly((1, -0.5))
    j = BlaschkeProduct(0, ((0.5, 1),), 1.0)
    assert _max_err(blaschke_mul_poly(f, j), Poly((-0.5, 1))) < 1e-12


def test_blaschke_mul_trivial():
    f = Poly((1, 2j, 3))
    assert blaschke_mul_poly(f, BlaschkeProduct()).coeffs == f.coeffs


def test_blaschke_mul_not_divisible():
    with pytest.raises(NotDivisible):
        blaschke_mul_poly(Poly((1, 1)), BlaschkeProduct(0, ((0.5, 1),), 1.0))


def test_blaschke_mul_preserves_modulus():
    f = poly_mul(Poly((1, -0.5)), Poly((2, 1)))
    j = BlaschkeProduct(1, ((0.5, 1),), 1j)
    prod = blaschke_mul_poly(f, j)
    assert np.abs(np.abs(prod(CIRCLE)) - np.abs(f(CIRCLE))).max() < 1e-9


def test_phase_convention_makes_factorization_unique():
    # the same polynomial rotated by a unimodular constant gives the same
    # outer part; only lambda moves
    p = poly_mul(Poly((-0.4, 1)), Poly((1, 0.7)))
    fac1 = inner_outer(p)
    fac2 = inner_outer(p.scaled(np.exp(0.8j)))
    assert _max_err(fac1.outer, fac2.outer) < 1e-12
    assert fac2.inner.lam == pytest.approx(fac1.inner.lam * np.exp(0.8j))
