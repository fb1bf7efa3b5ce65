"""Gamma function, Jacobi polynomials, and the normalization constants.

Three constants govern the solver:

* ``coeff_c_ns``     -- normalization of the hypersingular principal-value
  definition of (-Delta)^s, used by the brute-force oracle.
* ``coeff_C_ns``     -- constant of the composition formula that rewrites
  (-Delta)^s as the classical Laplacian applied to a weakly singular
  volume potential (n >= 2).
* ``coeff_C_s_1d``   -- its one-dimensional counterpart, with a separate
  logarithmic branch at s = 1/2.

All functions are pure and safe for concurrent use.
"""

import math

import numpy as np

__all__ = [
    "gamma_fn",
    "jacobi_p",
    "coeff_c_ns",
    "coeff_C_ns",
    "coeff_C_s_1d",
    "validate_order",
    "HALF_BRANCH_TOL",
]

# Threshold below which |s - 1/2| selects the logarithmic branch in 1D.
# The generic branch contains Gamma(2s-1), which has a pole at s = 1/2.
HALF_BRANCH_TOL = 1e-12

# Lanczos approximation, g = 7, 9 terms.  Gives ~15 significant digits for
# real arguments; reflection extends it below 1/2.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def validate_order(s):
    """Check that the fractional order s lies in the open interval (0, 1)."""
    s = float(s)
    if not 0.0 < s < 1.0:
        raise ValueError(f"fractional order must satisfy 0 < s < 1, got {s}")
    return s


def gamma_fn(x):
    """Gamma function for real x, excluding the poles at 0, -1, -2, ...

    Uses the Lanczos series with reflection for x < 1/2; accurate to at
    least 13 significant digits on (0, 50).
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma_fn pole at non-positive integer x = {x}")
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def jacobi_p(k, alpha, beta, x):
    """Jacobi polynomial P_k^(alpha, beta)(x) by the three-term recurrence.

    ``x`` may be a scalar or an ndarray.  Requires alpha, beta > -1.
    """
    if k < 0 or k != int(k):
        raise ValueError(f"degree k must be a non-negative integer, got {k}")
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("jacobi_p requires alpha > -1 and beta > -1")
    k = int(k)
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if k == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p_cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0
    for m in range(2, k + 1):
        ab = alpha + beta
        c1 = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0)
        c2 = (2.0 * m + ab - 1.0) * (alpha**2 - beta**2)
        c3 = (2.0 * m + ab - 1.0) * (2.0 * m + ab) * (2.0 * m + ab - 2.0)
        c4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab)
        p_next = ((c2 + c3 * x) * p_cur - c4 * p_prev) / c1
        p_prev, p_cur = p_cur, p_next
    return p_cur if p_cur.ndim else float(p_cur)


def coeff_c_ns(n, s):
    """Normalization constant of the hypersingular definition of (-Delta)^s.

    c_{n,s} = 2^{2s} s Gamma(s + n/2) / (pi^{n/2} Gamma(1 - s)).
    """
    if n not in (1, 2):
        raise ValueError(f"unsupported dimension n = {n} (expected 1 or 2)")
    s = validate_order(s)
    return (
        4.0**s * s * gamma_fn(s + n / 2.0)
        / (math.pi ** (n / 2.0) * gamma_fn(1.0 - s))
    )


def coeff_C_ns(n, s):
    """Constant of the composition formula for n >= 2.

    C_{n,s} = -Gamma(s + n/2 - 1) Gamma(s) sin(pi s) / (4^{1-s} pi^{n/2+1}).
    Satisfies C_{n,s} = -c_{n,s} / (2s (2s + n - 2)), which the tests verify.
    """
    if n != 2:
        raise ValueError(f"unsupported dimension n = {n} (only n = 2 is implemented)")
    s = validate_order(s)
    return -(
        gamma_fn(s + n / 2.0 - 1.0) * gamma_fn(s) * math.sin(math.pi * s)
        / (4.0 ** (1.0 - s) * math.pi ** (n / 2.0 + 1.0))
    )


def coeff_C_s_1d(s):
    """1D composition constant: -Gamma(2s-1) sin(pi s) / pi, or 1/pi at s = 1/2.

    The logarithmic branch is selected when |s - 1/2| < HALF_BRANCH_TOL;
    the divergent part of the generic branch near s = 1/2 is a constant in
    x and is absorbed by the affine unknowns of the 1D equation.
    """
    s = validate_order(s)
    if abs(s - 0.5) < HALF_BRANCH_TOL:
        return 1.0 / math.pi
    return -gamma_fn(2.0 * s - 1.0) * math.sin(math.pi * s) / math.pi
