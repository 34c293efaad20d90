"""Probability densities of eigenvector self-overlaps.

The finite-N GinUE joint density P_N(O, z) and the three limiting laws (GinUE
bulk, GinUE/GinOE edge, GinOE real-eigenvalue bulk).  Like the mean-value
formulas in :mod:`~ginibre_overlaps.theory`, the joint densities here are
per-matrix intensities: integrating P_N(O, z) over O returns the eigenvalue
density at z, and its first moment returns the mean self-overlap intensity.
The limiting laws are densities in the scaled overlap variable whose zeroth
moments are the limiting eigenvalue densities.

Scaled variables: t = O - 1, s = t/N (bulk), sigma = t/sqrt(N) (edge).
"""

import numpy as np
from scipy import integrate

from . import specfun, theory
from .errors import DomainError

__all__ = [
    "jpdf_ginue_finite",
    "finite_n_moment_integrals",
    "jpdf_limit_bulk_ginue",
    "jpdf_limit_edge_ginue",
    "jpdf_limit_realbulk_ginoe",
    "normalized_pdf",
    "realbulk_first_moment_partial",
]

_SQRT2 = np.sqrt(2.0)


def _q(n, a):
    return specfun.reg_gamma_q(float(n), a)


def _jpdf_coeffs(n, a):
    """Size-n polynomial coefficients of the finite-N GinUE joint density.

    All Gamma-function ratios are cancelled analytically so only regularized
    Q values remain; this keeps the density finite for any n where the raw
    products Gamma(n +- k, a) overflow.
    """
    def d1(m):
        return _q(m - 1, a) * _q(m + 1, a) - (m - 1) / m * _q(m, a) ** 2

    def d2(m):
        return _q(m - 1, a) * _q(m + 2, a) - (m - 1) / (m + 1) * _q(m, a) * _q(m + 1, a)

    c1 = (a * a * (n - 1) * d1(n - 1)
          + (n * (n - 1) - 2 * a * (n + a)) * n * d1(n)
          - a * n * (n - a) * d2(n - 1)
          + a * n * (n + 1) * d2(n))
    c2 = 2.0 * n * n * d1(n) - a * n * d2(n - 1)
    c3 = n * d1(n)
    return c1, c2, c3


def jpdf_ginue_finite(n, o, z):
    """Joint density P_n(O, z) of (eigenvalue at z, self-overlap O) in the GinUE.

    Supported on O > 1 with an (O-1)^{n-2} vanishing at the lower endpoint.
    Requires n >= 3.  Integrating over O gives
    :func:`~ginibre_overlaps.theory.density_ginue`; the first moment gives
    :func:`~ginibre_overlaps.theory.overlap_ginue`.
    """
    if n < 3:
        raise DomainError(f"jpdf_ginue_finite requires n >= 3, got {n}")
    oa = np.asarray(o, dtype=float)
    if np.any(oa <= 1.0):
        raise DomainError("jpdf_ginue_finite is supported on O > 1")
    a = float(np.real(np.conj(z) * z)) if np.ndim(z) == 0 else None
    if a is None:
        raise DomainError("z must be a scalar location")
    c1, c2, c3 = _jpdf_coeffs(int(n), a)
    body = np.exp(a / oa + (n - 2) * np.log1p(-1.0 / oa) - 3.0 * np.log(oa))
    val = body / np.pi * (c1 + a * c2 / oa + a * a * c3 / (oa * oa))
    return float(val) if np.ndim(o) == 0 else val


def finite_n_moment_integrals(n, z):
    """The three O-integrals behind the first moment of the finite-n joint density.

    I_k = Int_1^inf e^{a/O} (O-1)^{n-2} O^{-(n+k)} dO for k = 0, 1, 2 and
    a = |z|^2, in closed form via incomplete gamma functions (the lower
    incomplete gamma is used where the naive difference of upper ones would
    cancel catastrophically at small a).  Requires n >= 3 and z != 0.
    """
    if n < 3:
        raise DomainError(f"finite_n_moment_integrals requires n >= 3, got {n}")
    a = float(np.real(np.conj(z) * z))
    if a == 0.0:
        raise DomainError("finite_n_moment_integrals requires z != 0")
    n = int(n)

    def gamma_low(m):
        # Gamma(m) - Gamma(m, a) as the lower incomplete gamma: full relative
        # accuracy even when a << m and the difference is tiny.
        return specfun.reg_gamma_p(float(m), a) * np.exp(specfun.ln_gamma(float(m)))

    ea = np.exp(a)
    i1 = ea / a ** (n - 1) * gamma_low(n - 1)
    i2 = (a**n - ea * (n - a - 1) * gamma_low(n)) / ((n - 1) * a**n)
    gamma_n2 = np.exp(specfun.ln_gamma(float(n + 2)))
    i3 = (np.exp(specfun.ln_gamma(float(n - 1))) / (a ** (n + 1) * gamma_n2) * (
        (n + 2 - n * n) * a ** (n + 1) + (n + 1) * a ** (n + 2)
        + ea * (a * a - 2 * (n - 1) * a + n * (n - 1)) * (n + 1) * gamma_low(n + 1)))
    return float(i1), float(i2), float(i3)


def jpdf_limit_bulk_ginue(s, w):
    """Limiting bulk density of s = (O-1)/N at z = sqrt(N) w, |w| < 1.

    (1-|w|^2)^2 / (pi s^3) * e^{-(1-|w|^2)/s}; zero outside the unit disk.
    Integrates to 1/pi over s; first moment (1-|w|^2)/pi.  Heavy 1/s^3 tail.
    """
    sa = np.asarray(s, dtype=float)
    if np.any(sa <= 0.0):
        raise DomainError("jpdf_limit_bulk_ginue is supported on s > 0")
    c = 1.0 - np.real(np.conj(w) * w)
    if np.ndim(w) != 0:
        raise DomainError("w must be a scalar location")
    if c <= 0.0:
        out = np.zeros_like(sa)
        return float(out) if np.ndim(s) == 0 else out
    val = c * c / (np.pi * sa**3) * np.exp(-c / sa)
    return float(val) if np.ndim(s) == 0 else val


def jpdf_limit_edge_ginue(sigma, eta):
    """Limiting edge density of sigma = (O-1)/sqrt(N) at radial offset eta.

    Three-term closed form in Delta = 1 - 2 sigma eta; its zeroth moment is
    the limiting edge density erfc(sqrt(2) eta)/(2 pi) and its first moment
    the limiting edge overlap, which pins down the formula's internal
    argument as eta itself (verified by quadrature in the test suite).
    """
    sa = np.asarray(sigma, dtype=float)
    if np.any(sa <= 0.0):
        raise DomainError("jpdf_limit_edge_ginue is supported on sigma > 0")
    e = float(eta)
    delta_cap = 1.0 - 2.0 * sa * e
    ec = specfun.erfc(_SQRT2 * e)
    t1 = np.exp(-2.0 * e * e) / np.pi * (2.0 * sa**2 - delta_cap)
    t2 = -(4.0 * e * sa**2 - delta_cap * (2.0 * e + sa)) * ec / np.sqrt(2.0 * np.pi)
    t3 = np.exp(2.0 * e * e) / 2.0 * (delta_cap**2 - sa**2) * ec * ec
    val = (t1 + t2 + t3) * np.exp(-delta_cap**2 / (2.0 * sa**2)) / (2.0 * np.pi * sa**5)
    return float(val) if np.ndim(sigma) == 0 else val


def jpdf_limit_realbulk_ginoe(s, x):
    """Limiting bulk density of s = (O-1)/N for *real* GinOE eigenvalues at sqrt(N) x.

    (1-x^2) / (2 sqrt(2 pi)) * e^{-(1-x^2)/(2s)} / s^2 on |x| < 1.  The 1/s^2
    tail makes the first moment diverge logarithmically; see
    :func:`realbulk_first_moment_partial`.
    """
    sa = np.asarray(s, dtype=float)
    if np.any(sa <= 0.0):
        raise DomainError("jpdf_limit_realbulk_ginoe is supported on s > 0")
    x = float(x)
    c = 1.0 - x * x
    if c <= 0.0:
        out = np.zeros_like(sa)
        return float(out) if np.ndim(s) == 0 else out
    val = c / (2.0 * np.sqrt(2.0 * np.pi)) * np.exp(-0.5 * c / sa) / (sa * sa)
    return float(val) if np.ndim(s) == 0 else val


def normalized_pdf(kind, value, *, w=None, eta=None, x=None):
    """Limiting overlap density normalized by the matching eigenvalue density.

    kind='bulk_ginue'     : P(s, w)     / (1/pi)
    kind='edge_ginue'     : P(sigma, eta) / (erfc(sqrt(2) eta)/(2 pi))
    kind='realbulk_ginoe' : P(s, x)     / (1/sqrt(2 pi))

    Each integrates to 1 over its support, ready to overlay on normalized
    histograms of observed self-overlaps.
    """
    if kind == "bulk_ginue":
        if w is None:
            raise DomainError("bulk_ginue needs w")
        den = theory.density_limit("bulk", w=w, kind=theory.GINUE)
        if den == 0.0:
            raise DomainError("normalized_pdf: zero density at this w")
        return jpdf_limit_bulk_ginue(value, w) / den
    if kind == "edge_ginue":
        if eta is None:
            raise DomainError("edge_ginue needs eta")
        den = theory.density_limit("edge", eta=eta, kind=theory.GINUE)
        if den == 0.0:
            raise DomainError("normalized_pdf: zero density at this eta")
        return jpdf_limit_edge_ginue(value, eta) / den
    if kind == "realbulk_ginoe":
        if x is None:
            raise DomainError("realbulk_ginoe needs x")
        if not -1.0 < float(x) < 1.0:
            raise DomainError("normalized_pdf: zero real-axis density at this x")
        return jpdf_limit_realbulk_ginoe(value, x) * np.sqrt(2.0 * np.pi)
    raise DomainError(f"unknown normalized_pdf kind {kind!r}")


def realbulk_first_moment_partial(x, s_max):
    """Truncated first moment Int_0^{s_max} s P(s, x) ds of the real-bulk law.

    Grows like (1-x^2)/(2 sqrt(2 pi)) * ln(s_max) without bound: the mean
    self-overlap of real GinOE eigenvalues is divergent, and this exposes the
    divergence through an explicit truncation instead of a non-finite return.
    """
    x = float(x)
    s_max = float(s_max)
    if s_max <= 0.0:
        raise DomainError("realbulk_first_moment_partial requires s_max > 0")
    c = 1.0 - x * x
    if c <= 0.0:
        return 0.0
    val, _ = integrate.quad(lambda s: s * jpdf_limit_realbulk_ginoe(s, x),
                            0.0, s_max, limit=400)
    return float(val)
