import numpy as np
import pytest

from hkl.gen import random_boundary_modulus, random_kernel_element
from hkl.polycore import Poly, poly_mul


def random_outer_poly(rng, degree, circle=0, sep=0.1):
    """Outer polynomial with separated roots in [1.05, 2] plus circle roots.

    Separation counts reflections too, keeping the lifted modulus
    well-conditioned; the value at 0 is normalized real positive.
    """
    used = []
    p = Poly((1.0,))

    def admissible(a):
        pts = (a, 1.0 / a.conjugate())
        return all(abs(x - b) >= sep for x in pts for b in used)

    for _ in range(circle):
        while True:
            a = np.exp(2j * np.pi * rng.uniform())
            if admissible(a):
                break
        used.extend((a, 1.0 / a.conjugate()))
        p = poly_mul(p, Poly((-a, 1)))
    for _ in range(degree - circle):
        while True:
            a = rng.uniform(1.05, 2.0) * np.exp(2j * np.pi * rng.uniform())
            if admissible(a):
                break
        used.extend((a, 1.0 / a.conjugate()))
        p = poly_mul(p, Poly((-a, 1)))
    v0 = p.coeff(0)
    return p.scaled(v0.conjugate() / abs(v0))


def census_suite(count, seed, max_n=12):
    """Random census instances with ground-truth labels.

    Yields (g, n, census) where census = (inside, circle, outside, deficit);
    extremality ground truth is:  inside == outside == 0 and deficit == 0.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        kind = rng.choice(["extreme", "inside", "outside", "deficit", "mixed"])
        if kind == "extreme":
            census = (0, n, 0)
        elif kind == "inside":
            k = int(rng.integers(1, min(n, 3) + 1))
            census = (k, n - k, 0)
        elif kind == "outside":
            k = int(rng.integers(1, min(n, 3) + 1))
            census = (0, n - k, k)
        elif kind == "deficit":
            d = int(rng.integers(1, n + 1))
            circ = n - d
            census = (0, circ, 0)
        else:
            k_in = int(rng.integers(0, min(n, 2) + 1))
            k_out = int(rng.integers(0, min(n - k_in, 2) + 1))
            rest = n - k_in - k_out
            circ = int(rng.integers(0, rest + 1))
            census = (k_in, circ, k_out)
        g = random_boundary_modulus(n, *census, rng)
        out.append((g, n, census))
    return out


@pytest.fixture(scope="session")
def small_census_suite():
    return census_suite(80, seed=20240601)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(987)


def random_unit_element(n, census, seed):
    return random_kernel_element(n, *census, np.random.default_rng(seed))
