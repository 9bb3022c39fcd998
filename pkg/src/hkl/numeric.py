"""Grid/FFT engine: an independent numeric route to the same objects.

Works on uniform boundary samples, so it handles arbitrary sampled symbols,
not just the exact polynomial model.  The outer-function construction here
is the cepstral/Hilbert-transform one (exp of log-modulus plus i times its
harmonic conjugate); it needs strict positivity, which is exactly where the
root-based engine takes over.  Each path checks the other on the overlap.

Fourier convention: coefficient k is the k-th Fourier coefficient of the
sampled function (forward transform divided by N), with indices above N/2
standing for negative frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TooSmall
from .kernel import KernelElement
from .polycore import TrigPoly

W_FLOOR = 1e-8
DEFAULT_GRID = 4096


@dataclass(frozen=True)
class Grid:
    """Samples at the N-th roots of unity, N a power of two, N >= 4."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        n = len(v)
        if n < 4 or n & (n - 1):
            raise ValueError("sample count must be a power of two, at least 4")
        if not np.all(np.isfinite(v.view(float))):
            raise ValueError("samples must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def size(self) -> int:
        return len(self.values)

    @property
    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.size) / self.size

    @property
    def points(self) -> np.ndarray:
        return np.exp(1j * self.thetas)

    @classmethod
    def sample(cls, fn, size: int = DEFAULT_GRID) -> "Grid":
        z = np.exp(2j * np.pi * np.arange(size) / size)
        return cls(np.asarray(fn(z), dtype=complex))


def grid_fft(gr: Grid) -> np.ndarray:
    """Fourier coefficients of the samples: constant 1 maps to delta at 0."""
    return np.fft.fft(gr.values) / gr.size


def grid_ifft(coeffs: np.ndarray) -> Grid:
    return Grid(np.fft.ifft(np.asarray(coeffs, dtype=complex) *
                            len(coeffs)))


def harmonic_conjugate(gr: Grid) -> Grid:
    """Fourier multiplier -i sign(k), with the mean and the Nyquist bin zeroed.

    Zeroing Nyquist is the symmetric choice (sign(N/2) is ill-defined on a
    grid), so the identity H(H(u)) = -(u - mean u) holds only for inputs
    band-limited below N/2.
    """
    v = gr.values
    scale = max(1.0, float(np.abs(v).max()))
    if np.abs(v.imag).max() > 1e-12 * scale:
        raise ValueError("harmonic conjugation expects real samples")
    n = gr.size
    co = np.fft.fft(v.real) / n
    mult = np.zeros(n, dtype=complex)
    mult[1:n // 2] = -1j
    mult[n // 2 + 1:] = 1j
    out = np.fft.ifft(co * mult * n)
    return Grid(out.real.astype(complex))


def outer_from_modulus(w: Grid, *, floor: float = W_FLOOR) -> Grid:
    """The outer function with boundary modulus w: exp(log w + i H(log w)).

    Requires strictly positive samples (min >= floor); a modulus touching
    zero belongs to the exact engine, where circle zeros are data instead
    of log singularities.  The value at frequency zero is exp(mean log w),
    hence real positive, matching the exact engine's phase convention.
    """
    v = w.values
    scale = max(1.0, float(np.abs(v).max()))
    if np.abs(v.imag).max() > 1e-12 * scale:
        raise ValueError("modulus samples must be real")
    mn = float(v.real.min())
    if mn < floor:
        raise TooSmall(f"min sample {mn:.3e} below floor {floor:.1e}; "
                       "the log-modulus route is unreliable here")
    logw = Grid(np.log(v.real).astype(complex))
    conj = harmonic_conjugate(logw)
    return Grid(np.exp(logw.values.real + 1j * conj.values.real))


def analyticity_defect(gr: Grid) -> float:
    """Largest negative-frequency coefficient magnitude (Nyquist included).

    Zero for samples of an analytic polynomial of degree < N/2; content
    beyond the Nyquist frequency aliases and can hide, so the defect is a
    certificate only up to the usual band-limit caveat.
    """
    co = grid_fft(gr)
    return float(np.abs(co[gr.size // 2:]).max())


@dataclass(frozen=True)
class SymbolTest:
    defect: float
    tolerance: float
    verdict: bool


def symbol_condition_test(phi: Grid, g: Grid, *,
                          tol_factor: float = 1e-7) -> SymbolTest:
    """Sampled test that conj(z) conj(phi) g has no negative frequencies.

    This is the analyticity condition characterizing g as the modulus
    squared of a kernel element for the sampled symbol phi.  The tolerance
    scales with both sup norms.
    """
    if phi.size != g.size:
        raise ValueError("phi and g must be sampled on the same grid")
    gs = max(1.0, float(np.abs(g.values).max()))
    if np.abs(g.values.imag).max() > 1e-12 * gs:
        raise ValueError("g must be real-valued")
    if float(g.values.real.min()) < -1e-12 * gs:
        raise ValueError("g must be nonnegative")
    z = g.points
    prod = Grid(np.conj(z) * np.conj(phi.values) * g.values.real)
    defect = analyticity_defect(prod)
    tol = tol_factor * float(np.abs(g.values).max()) * \
        float(np.abs(phi.values).max())
    return SymbolTest(defect=defect, tolerance=tol, verdict=defect <= tol)


@dataclass(frozen=True)
class DominationEstimate:
    value: float
    divergent: bool
    estimates: tuple
    sizes: tuple


def domination_integral(x: KernelElement, g: TrigPoly, *, base: int = 16,
                        doublings: int = 3,
                        growth: float = 1.5) -> DominationEstimate:
    """Quadrature witness for the domination integral of |f| / sqrt(g).

    Midpoint sums at base, 2*base, ..., 2**doublings * base points;
    midpoints never land on the dyadic grid, so an integrable endpoint
    singularity inflates the estimate gradually instead of dividing by
    zero.  DIVERGENT when the estimate grows by the given factor across
    the doublings (or leaves the finite range); otherwise the Richardson
    update of the two finest estimates is reported.

    A borderline (logarithmically divergent) integrand gains only a fixed
    increment per doubling, so the growth test can resolve it only from a
    small base; the default is calibrated for that.  The exact
    multiplicity rule in :func:`hkl.geometry.rigidity_check` is
    authoritative; this flag is corroborating evidence only.
    """
    estimates = []
    sizes = []
    divergent = False
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(doublings + 1):
            m = base * 2 ** k
            theta = 2.0 * np.pi * (np.arange(m) + 0.5) / m
            fa = np.abs(x.f(np.exp(1j * theta)))
            gv = np.maximum(g.values(theta), 0.0)
            vals = np.where(fa == 0, 0.0, fa / np.sqrt(gv))
            est = float(np.mean(vals))
            if not math.isfinite(est):
                divergent = True
            estimates.append(est)
            sizes.append(m)
    first, last = estimates[0], estimates[-1]
    if not divergent and first > 0 and last / first >= growth:
        divergent = True
    if divergent:
        value = math.inf
    elif len(estimates) >= 2:
        value = estimates[-1] + (estimates[-1] - estimates[-2]) / 3.0
    else:
        value = estimates[-1]
    return DominationEstimate(value=value, divergent=divergent,
                              estimates=tuple(estimates), sizes=tuple(sizes))


def write_boundary_csv(path, gr: Grid) -> None:
    """Dump rows theta,re,im,abs for downstream plotting."""
    th = gr.thetas
    v = gr.values
    with open(path, "w", encoding="ascii") as fh:
        fh.write("theta,re,im,abs\n")
        for t, val in zip(th, v):
            fh.write(f"{t:.17g},{val.real:.17g},{val.imag:.17g},{abs(val):.17g}\n")
