"""Numerically stable scalar special functions used by every closed-form formula.

All routines accept scalars or numpy arrays and broadcast; domain violations
raise :class:`~ginibre_overlaps.errors.DomainError` if any element is invalid.
Everything here is pure and thread-safe.
"""

import numpy as np
from scipy import integrate
from scipy import special as _sp

from .errors import AccuracyError, DomainError

__all__ = [
    "ln_gamma",
    "reg_gamma_q",
    "reg_gamma_p",
    "erfc",
    "erfcx",
    "legendre_p",
    "ln_legendre_p",
    "integrate_semi_infinite",
]

# Default quadrature tolerances: chosen to dominate Monte Carlo statistical
# error by several orders of magnitude.
QUAD_ABS_TOL = 1e-12
QUAD_REL_TOL = 1e-10
QUAD_MAX_SUBDIVISIONS = 2000


def _maybe_scalar(x, like):
    return float(x) if np.isscalar(like) or np.ndim(like) == 0 else x


def ln_gamma(x):
    """Natural log of the Gamma function, ln Γ(x), for x > 0."""
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0.0):
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    return _maybe_scalar(_sp.gammaln(xa), x)


def reg_gamma_q(n, a):
    """Regularized upper incomplete gamma Q(n, a) = Γ(n, a) / Γ(n).

    Q is the tail probability of a Gamma(n) variate: Q(n, 0) = 1 and Q is
    non-increasing in a.  Requires n > 0 and a >= 0.
    """
    na = np.asarray(n, dtype=float)
    aa = np.asarray(a, dtype=float)
    if np.any(na <= 0.0):
        raise DomainError(f"reg_gamma_q requires n > 0, got n={n}")
    if np.any(aa < 0.0):
        raise DomainError(f"reg_gamma_q requires a >= 0, got a={a}")
    out = _sp.gammaincc(na, aa)
    return float(out) if (np.ndim(n) == 0 and np.ndim(a) == 0) else out


def reg_gamma_p(n, a):
    """Regularized lower incomplete gamma P(n, a) = 1 - Q(n, a).

    Computed directly (not as 1 - Q), so it keeps full relative accuracy when
    a << n and P is tiny; the closed-form overlap moment integrals need that.
    """
    na = np.asarray(n, dtype=float)
    aa = np.asarray(a, dtype=float)
    if np.any(na <= 0.0):
        raise DomainError(f"reg_gamma_p requires n > 0, got n={n}")
    if np.any(aa < 0.0):
        raise DomainError(f"reg_gamma_p requires a >= 0, got a={a}")
    out = _sp.gammainc(na, aa)
    return float(out) if (np.ndim(n) == 0 and np.ndim(a) == 0) else out


def erfc(x):
    """Complementary error function erfc(x) = 1 - erf(x)."""
    return _maybe_scalar(_sp.erfc(np.asarray(x, dtype=float)), x)


def erfcx(x):
    """Scaled complementary error function e^{x^2} erfc(x), for x >= 0.

    Never overflows; for large x it decays like 1/(x sqrt(pi)).  The formulas
    served here only ever need non-negative arguments (|y|, sqrt(2)|y|), so
    negative x is rejected rather than silently amplified.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0.0):
        raise DomainError(f"erfcx requires x >= 0, got {x}")
    return _maybe_scalar(_sp.erfcx(xa), x)


def legendre_p(n, t):
    """Legendre polynomial P_n(t) on t >= 1 by the three-term recurrence.

    P_0 = 1, P_1 = t, (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}.  On t >= 1
    all P_k are >= 1 and the recurrence is forward stable.  Values overflow
    double precision once n*arccosh(t) exceeds ~709; use
    :func:`ln_legendre_p` in that regime.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"legendre_p requires integer n >= 0, got {n}")
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 1.0):
        raise DomainError(f"legendre_p requires t >= 1, got {t}")
    n = int(n)
    if n == 0:
        return _maybe_scalar(np.ones_like(ta), t)
    p_prev = np.ones_like(ta)
    p = ta.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * ta * p - k * p_prev) / (k + 1)
    return _maybe_scalar(p, t)


def ln_legendre_p(n, t):
    """ln P_n(t) for t >= 1 via the recurrence with running rescaling.

    Stays finite for any n, t where the direct value would overflow.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"ln_legendre_p requires integer n >= 0, got {n}")
    ta = np.asarray(t, dtype=float)
    if np.any(ta < 1.0):
        raise DomainError(f"ln_legendre_p requires t >= 1, got {t}")
    n = int(n)
    if n == 0:
        return _maybe_scalar(np.zeros_like(ta), t)
    big = 1e280
    p_prev = np.ones_like(ta)
    p = ta.copy()
    shift = np.zeros_like(ta)
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * ta * p - k * p_prev) / (k + 1)
        over = p > big
        if np.any(over):
            p = np.where(over, p / big, p)
            p_prev = np.where(over, p_prev / big, p_prev)
            shift = np.where(over, shift + np.log(big), shift)
    return _maybe_scalar(np.log(p) + shift, t)


def integrate_semi_infinite(f, abs_tol=QUAD_ABS_TOL, rel_tol=QUAD_REL_TOL,
                            max_subdivisions=QUAD_MAX_SUBDIVISIONS):
    """Adaptive quadrature of f over [0, inf) for exponentially decaying f.

    Returns ``(value, error_estimate)``.  Raises
    :class:`~ginibre_overlaps.errors.AccuracyError` (carrying the best
    estimate) if the subdivision budget is exhausted or the estimated error
    exceeds the requested tolerance.
    """
    value, err, info, *rest = integrate.quad(
        f, 0.0, np.inf, epsabs=abs_tol, epsrel=rel_tol,
        limit=max_subdivisions, full_output=1)
    if rest:  # quadpack flagged non-convergence; rest[0] is its message
        raise AccuracyError(
            f"semi-infinite quadrature did not converge: {rest[0]}",
            estimate=value, error=err)
    if err > max(abs_tol, rel_tol * abs(value)):
        raise AccuracyError(
            f"semi-infinite quadrature error estimate {err:.3e} exceeds "
            f"tolerance (abs {abs_tol:.1e}, rel {rel_tol:.1e})",
            estimate=value, error=err)
    return value, err
