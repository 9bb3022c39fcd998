"""Inner-outer factorization, spectral factorization, Blaschke algebra.

For a polynomial the inner factor is a finite Blaschke product over its
zeros in the open unit disk (powers of z included) and the outer factor is
what remains after each disk zero a is traded for the reflected factor
(1 - conj(a) z).  Phase convention throughout: the outer part takes a real
positive value at 0 and all phase lives in the Blaschke product's unimodular
constant, which turns "unique up to a unimodular constant" into plain
equality in tests.

The spectral factorization (``fejer_riesz``) is root-based on purpose: the
root picture is what certificates are made of, and it handles zeros on the
circle, which the cepstral method in :mod:`hkl.numeric` cannot.  The two
paths cross-validate each other on strictly positive inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import (NotDivisible, NotNonnegative, NullInput,
                     OddCircleMultiplicity, PairingFailure, PoleHit)
from .polycore import (EPS_CIRCLE, ORIGIN_TOL, Poly, Region, TrigPoly, lift,
                       nonneg_check, refine_circle_angle, roots,
                       synthetic_divide)

PAIR_TOL = 1e-6      # relative tolerance for matching reflected zero pairs
TOL_DIVIDE = 1e-9    # relative remainder bound for Blaschke-denominator division
POLE_TOL = 1e-12


@dataclass(frozen=True)
class BlaschkeProduct:
    """lambda * z**m0 * prod ((z - a) / (1 - conj(a) z))**mult.

    Zeros satisfy 0 < |a| <= 1 - EPS_CIRCLE and |lambda| = 1; the boundary
    modulus is therefore 1 everywhere on the circle.
    """

    m0: int = 0
    zeros: tuple = ()   # ((a, multiplicity), ...)
    lam: complex = 1.0 + 0j

    def __post_init__(self):
        if self.m0 < 0:
            raise ValueError("m0 must be nonnegative")
        lam = complex(self.lam)
        if abs(abs(lam) - 1.0) > 1e-12:
            raise ValueError("lambda must be unimodular")
        zs = []
        for a, m in self.zeros:
            a = complex(a)
            m = int(m)
            if m < 1:
                raise ValueError("zero multiplicities must be positive")
            if not 0 < abs(a) <= 1.0 - EPS_CIRCLE:
                raise ValueError("Blaschke zeros must lie strictly inside the disk")
            zs.append((a, m))
        zs.sort(key=lambda t: (t[0].real, t[0].imag))
        object.__setattr__(self, "zeros", tuple(zs))
        object.__setattr__(self, "lam", lam)

    @property
    def degree(self) -> int:
        return self.m0 + sum(m for _, m in self.zeros)

    @property
    def is_trivial(self) -> bool:
        return self.m0 == 0 and not self.zeros

    def numerator(self) -> Poly:
        num = Poly((self.lam,)).shifted(self.m0)
        for a, m in self.zeros:
            for _ in range(m):
                num = num * Poly((-a, 1))
        return num

    def denominator(self) -> Poly:
        den = Poly((1.0,))
        for a, m in self.zeros:
            for _ in range(m):
                den = den * Poly((1, -a.conjugate()))
        return den

    def __call__(self, zeta):
        return blaschke_eval(self, zeta)


def blaschke_eval(b: BlaschkeProduct, zeta):
    """Evaluate at a point or ndarray; raises PoleHit at reflected zeros."""
    z = np.asarray(zeta, dtype=complex)
    out = b.lam * z ** b.m0
    for a, m in b.zeros:
        den = 1.0 - a.conjugate() * z
        if np.any(np.abs(den) < POLE_TOL):
            raise PoleHit(f"evaluation at a pole of the factor with zero {a}")
        out = out * ((z - a) / den) ** m
    if np.ndim(zeta) == 0:
        return complex(out)
    return out


@dataclass(frozen=True)
class Factorization:
    inner: BlaschkeProduct
    outer: Poly


def inner_outer(p: Poly) -> Factorization:
    """Split p into a Blaschke product over its disk zeros and an outer part.

    Zeros on the circle stay in the outer part.  The outer part keeps p's
    coefficients as far as possible: each disk zero is divided out
    synthetically and the reflected factor is multiplied back in, rather
    than rebuilding the whole polynomial from computed roots.
    """
    if p.is_null:
        raise NullInput("cannot factor the zero polynomial")
    rs = roots(p)
    work = list(p.coeffs)
    m0 = 0
    inner_zeros = []
    for r in rs.inside:
        if abs(r.location) <= ORIGIN_TOL:
            m0 += r.multiplicity
            for _ in range(r.multiplicity):
                work = synthetic_divide(work, r.location)
            continue
        inner_zeros.append((r.location, r.multiplicity))
        a = r.location
        for _ in range(r.multiplicity):
            work = synthetic_divide(work, a)
            work = list(np.convolve(work, [1.0, -a.conjugate()]))

    value0 = work[0]
    if abs(value0) == 0:
        lam = 1.0 + 0j  # exhausted convention; cannot normalize a vanishing value
    else:
        lam = value0 / abs(value0)
    outer = Poly(work).scaled(1.0 / lam)
    inner = BlaschkeProduct(m0, tuple(inner_zeros), lam)
    return Factorization(inner, outer)


def fejer_riesz(g: TrigPoly) -> Poly:
    """The outer polynomial F with |F|^2 = g on the circle and F(0) > 0.

    Zeros of the lifted function come in pairs reflected across the circle;
    F keeps the representative outside (or on) the circle, takes half of
    each even circle multiplicity, and is scaled so the means match.
    On-circle zeros are projected to exactly unimodular locations.
    """
    if g.is_null:
        raise NullInput("the zero function has no spectral factor")
    cert = nonneg_check(g)
    if cert.odd_circle_roots:
        raise OddCircleMultiplicity(
            f"sign change at circle zero {cert.odd_circle_roots[0].location}")
    if not cert.nonnegative:
        raise NotNonnegative(
            f"min value {cert.min_value:.3e} at theta={cert.argmin_theta:.6f}")

    rs = roots(lift(g))
    inside = [r for r in rs.inside if abs(r.location) > ORIGIN_TOL]
    outside = list(rs.outside)

    # every inside zero must have its reflected partner outside
    for r in inside:
        mirror = 1.0 / r.location.conjugate()
        if not outside:
            raise PairingFailure(
                f"zero {r.location} has no reflected partner at all")
        match = min(outside, key=lambda s: abs(s.location - mirror))
        rel = abs(match.location - mirror) / max(1.0, abs(mirror))
        if rel > PAIR_TOL or match.multiplicity != r.multiplicity:
            raise PairingFailure(
                f"zero {r.location} has no reflected partner within {PAIR_TOL}")

    factors = Poly((1.0,))
    for r in outside:
        factors = factors * _power(Poly((-r.location, 1)), r.multiplicity)
    for r in rs.on_circle:
        if r.multiplicity % 2 == 1:
            raise OddCircleMultiplicity(
                f"circle zero {r.location} has odd multiplicity {r.multiplicity}")
        # the angle of a boundary zero is recovered from g itself, which is
        # far better conditioned than the lifted polynomial root
        theta = refine_circle_angle(g, float(np.angle(r.location)))
        zc = complex(np.exp(1j * theta))
        factors = factors * _power(Poly((-zc, 1)), r.multiplicity // 2)

    norm_sq = float(np.dot(factors.as_array(), np.conj(factors.as_array())).real)
    scale = math.sqrt(g.mean / norm_sq)
    value0 = factors.coeff(0) * scale
    phase = value0.conjugate() / abs(value0)
    return factors.scaled(scale * phase)


def _power(p: Poly, k: int) -> Poly:
    out = Poly((1.0,))
    for _ in range(k):
        out = out * p
    return out


def divisors(inner: BlaschkeProduct) -> list[BlaschkeProduct]:
    """All inner divisors of a finite Blaschke product, lambda = 1 for each.

    There are (m0 + 1) * prod(mult_i + 1) of them, including the trivial
    divisor and the full product; the order is deterministic.
    """
    ranges = [range(inner.m0 + 1)]
    ranges.extend(range(m + 1) for _, m in inner.zeros)
    out = []
    for combo in itertools.product(*ranges):
        zeros = tuple((a, k) for (a, _), k in zip(inner.zeros, combo[1:]) if k)
        out.append(BlaschkeProduct(combo[0], zeros, 1.0))
    return out


MIRROR_MATCH_TOL = 1e-5


def _newton_refine(coeffs: list[complex], start: complex) -> complex:
    c = np.asarray(coeffs, dtype=complex)
    dc = npp.polyder(c)
    r = start
    for _ in range(6):
        dv = npp.polyval(r, dc)
        if dv == 0:
            break
        step = npp.polyval(r, c) / dv
        if not (math.isfinite(step.real) and math.isfinite(step.imag)):
            break
        r = r - step
        if abs(step) <= 1e-15 * (1.0 + abs(r)):
            break
    return r


def blaschke_mul_poly(f: Poly, j: BlaschkeProduct, *,
                      tol_divide: float = TOL_DIVIDE) -> Poly:
    """The product f * j as a polynomial.

    Requires the denominator of j to divide f: each Blaschke zero of j must
    be mirrored by a zero of f at the reflected point 1/conj(a); otherwise
    the product is genuinely rational and NotDivisible is raised.  The
    division deflates f at its own refined root near each reflected point
    (never at the constructed point itself), which keeps the remainder at
    the residual level instead of amplifying the zero-location noise.
    """
    if f.is_null:
        return Poly()
    work = list(f.coeffs)
    constant = 1.0 + 0j
    for a, mult in j.zeros:
        target = 1.0 / a.conjugate()
        constant *= (-a.conjugate()) ** mult   # (1 - conj(a) z) = -conj(a)(z - 1/conj(a))
        for _ in range(mult):
            r = _newton_refine(work, target)
            if abs(r - target) > MIRROR_MATCH_TOL * max(1.0, abs(target)):
                raise NotDivisible(
                    f"no zero of the factor near the reflected point {target}")
            rem = abs(complex(npp.polyval(r, np.asarray(work))))
            # backward-error scale at the deflation point
            scale = float(npp.polyval(abs(r), np.abs(np.asarray(work))))
            if rem > tol_divide * scale:
                raise NotDivisible(
                    f"relative remainder {rem / scale:.3e} exceeds "
                    f"{tol_divide:.1e}")
            work = synthetic_divide(work, r)
    quo = Poly(work).scaled(1.0 / constant)
    return quo * j.numerator()
