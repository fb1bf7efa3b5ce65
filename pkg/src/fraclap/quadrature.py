"""Singular and smooth quadrature rules.

Rule families provided here:

* ``kress_log_weights``   -- spectral trigonometric rule for 2*pi-periodic
  kernels with a log(4 sin^2((t - tau)/2)) singularity (boundary single
  layer).
* ``gauss_jacobi_nodes``  -- Gauss rules for (1-x)^alpha (1+x)^beta weights,
  the workhorse for every algebraic endpoint singularity (kernel power
  r^{1-2s}, boundary factor d^s).
* log-weight rules        -- moment-fitted rules for u^p log(u) weights on
  [0, 1], built from exact shifted-Legendre modified moments.
* ``singular_1d_weights`` -- product-integration matrix for the 1D kernel
  |x-y|^{1-2s} d^s(y) (log kernel at s = 1/2) against a Chebyshev basis,
  assembled from graded panels so every entry is accurate to ~1e-12.

The volumetric rules (polar patch + smooth far field on the global grid)
live in :mod:`fraclap.volume`; ``volumetric_singular_quad`` is re-exported
here since it is part of the quadrature surface.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .special import HALF_BRANCH_TOL, validate_order

__all__ = [
    "PeriodicLogRule",
    "RadialPowerRule",
    "QuadratureError",
    "kress_log_weights",
    "gauss_jacobi_nodes",
    "gauss_jacobi_01",
    "gauss_legendre_01",
    "log_power_rule_01",
    "radial_power_rule",
    "graded_breakpoints",
    "singular_1d_weights",
]


class QuadratureError(RuntimeError):
    """Raised when a rule cannot meet its accuracy contract."""


# ----------------------------------------------------------------------
# Gauss rules


@lru_cache(maxsize=256)
def _roots_jacobi_cached(n, alpha, beta):
    if alpha == 0.0 and beta == 0.0:
        x, w = roots_legendre(n)
    else:
        x, w = roots_jacobi(n, alpha, beta)
    return x, w


def gauss_jacobi_nodes(n, alpha, beta):
    """Nodes and weights on [-1, 1] for the weight (1-x)^alpha (1+x)^beta.

    Exact for polynomials of degree <= 2n - 1.
    """
    if alpha <= -1.0 or beta <= -1.0:
        raise ValueError("gauss_jacobi_nodes requires alpha, beta > -1")
    x, w = _roots_jacobi_cached(int(n), float(alpha), float(beta))
    return x.copy(), w.copy()


def gauss_jacobi_01(n, alpha, beta):
    """Rule on [0, 1] for the weight u^beta (1-u)^alpha.

    Returns (u, W) with sum W_i g(u_i) ~ int_0^1 u^beta (1-u)^alpha g(u) du.
    """
    x, w = gauss_jacobi_nodes(n, alpha, beta)
    u = 0.5 * (1.0 + x)
    W = w * 0.5 ** (alpha + beta + 1.0)
    return u, W


def gauss_legendre_01(n):
    x, w = _roots_jacobi_cached(int(n), 0.0, 0.0)
    return 0.5 * (1.0 + x), 0.5 * w


@dataclass(frozen=True)
class RadialPowerRule:
    """Rule exact for int_0^{r_max} r^exponent p(r) dr, p polynomial."""

    exponent: float
    r_max: float
    nodes: np.ndarray
    weights: np.ndarray


def radial_power_rule(n, exponent, r_max=1.0):
    """Gauss rule for the weight r^exponent on [0, r_max], exponent in (-1, 1]."""
    if not -1.0 < exponent <= 1.0:
        raise ValueError(f"radial exponent must lie in (-1, 1], got {exponent}")
    u, W = gauss_jacobi_01(n, 0.0, exponent)
    return RadialPowerRule(
        exponent=exponent,
        r_max=float(r_max),
        nodes=r_max * u,
        weights=W * r_max ** (exponent + 1.0),
    )


# ----------------------------------------------------------------------
# Moment-fitted log rules
#
# Exact modified moments of log(u) against shifted Legendre polynomials:
#   int_0^1 Pt_k(u) log(u) du = -1 (k = 0),  (-1)^{k+1} / (k (k+1))  (k >= 1).
# Moments of u^p log(u) follow from the recurrence
#   u Pt_k = (k+1)/(2(2k+1)) Pt_{k+1} + 1/2 Pt_k + k/(2(2k+1)) Pt_{k-1}.


def _shifted_legendre_log_moments(m):
    mom = np.empty(m)
    mom[0] = -1.0
    for k in range(1, m):
        mom[k] = (-1.0) ** (k + 1) / (k * (k + 1.0))
    return mom


def _lift_moments_by_u(mom):
    """Given moments of w(u) in the shifted Legendre basis, return moments of u*w(u)."""
    m = mom.size
    ext = np.zeros(m + 1)
    ext[: m] = mom
    out = np.zeros(m)
    for k in range(m):
        a = (k + 1.0) / (2.0 * (2.0 * k + 1.0))
        b = 0.5
        c = k / (2.0 * (2.0 * k + 1.0))
        out[k] = a * ext[k + 1] + b * ext[k]
        if k >= 1:
            out[k] += c * mom[k - 1]
    return out


def _shifted_legendre_vandermonde(u, m):
    V = np.empty((u.size, m))
    t = 2.0 * u - 1.0
    V[:, 0] = 1.0
    if m > 1:
        V[:, 1] = t
    for k in range(2, m):
        V[:, k] = ((2.0 * k - 1.0) * t * V[:, k - 1] - (k - 1.0) * V[:, k - 2]) / k
    return V


@lru_cache(maxsize=64)
def _log_power_rule_cached(n, p):
    u, _ = _roots_jacobi_cached(n, 0.0, 0.0)
    u = 0.5 * (1.0 + u)
    mom = _shifted_legendre_log_moments(n)
    for _ in range(p):
        mom = _lift_moments_by_u(mom)
    V = _shifted_legendre_vandermonde(u, n)
    w = np.linalg.solve(V.T, mom)
    return u, w


def log_power_rule_01(n, p=0):
    """Interpolatory rule on [0, 1] for the weight u^p log(u) (p = 0, 1, 2).

    Nodes are the n-point Gauss-Legendre nodes of [0, 1]; weights are
    moment-fitted so the rule is exact for polynomials of degree <= n - 1.
    """
    if p not in (0, 1, 2):
        raise ValueError("log_power_rule_01 supports p in {0, 1, 2}")
    u, w = _log_power_rule_cached(int(n), int(p))
    return u.copy(), w.copy()


# ----------------------------------------------------------------------
# Periodic logarithmic rule (boundary single layer)


@dataclass(frozen=True)
class PeriodicLogRule:
    """Quadrature for int_0^{2 pi} log(4 sin^2((t_i - tau)/2)) f(tau) d tau.

    ``weights[i, j]`` multiplies f(t_j) for the target t_i; exact for
    trigonometric polynomials of degree < n/2.
    """

    n: int
    weights: np.ndarray


def kress_log_weights(n):
    """Spectral weights for the periodic log kernel at n equispaced nodes.

    Built from the Fourier series log(4 sin^2(u/2)) = -2 sum_{m>=1} cos(mu)/m
    by exact integration of the trigonometric interpolant.
    """
    n = int(n)
    if n < 8 or n % 2 != 0:
        raise ValueError("kress_log_weights requires even n >= 8")
    lag = 2.0 * np.pi * np.arange(n) / n
    m = np.arange(1, n // 2)
    r = np.zeros(n)
    r -= (4.0 * np.pi / n) * (np.cos(np.outer(lag, m)) / m).sum(axis=1)
    r -= (2.0 * np.pi / n**2) * np.cos(0.5 * n * lag) * 2.0
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return PeriodicLogRule(n=n, weights=r[idx])


# ----------------------------------------------------------------------
# Graded panels


def graded_breakpoints(a, b, grade_a=0, grade_b=0):
    """Breakpoints of [a, b] with dyadic grading toward either endpoint.

    ``grade_a`` levels halve toward a (innermost width (b-a) 2^{-grade_a});
    similarly for b.  With no grading the interval is returned whole.
    """
    pts = [a, b]
    L = b - a
    for j in range(1, grade_a + 1):
        pts.append(a + L * 2.0 ** (-j))
    for j in range(1, grade_b + 1):
        pts.append(b - L * 2.0 ** (-j))
    return np.unique(np.asarray(pts))


def _panel_gauss(breaks, n):
    x, w = _roots_jacobi_cached(int(n), 0.0, 0.0)
    lo = breaks[:-1]
    hi = breaks[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


# ----------------------------------------------------------------------
# 1D product integration for the kernel K(x, y) d^s(y)


def _cheb_basis(y, m, a, b):
    t = (2.0 * y - a - b) / (b - a)
    B = np.empty((y.size, m))
    B[:, 0] = 1.0
    if m > 1:
        B[:, 1] = t
    for k in range(2, m):
        B[:, k] = 2.0 * t * B[:, k - 1] - B[:, k - 2]
    return B


def _side_rule(x, lo, hi, s, a, b, log_kernel, n_gauss, max_levels):
    """Nodes/weights for int_lo^hi K(x, y) d^s(y) g(y) dy on one side of x.

    One of lo, hi equals x (where the kernel is singular); the other is an
    interval endpoint, where d^s vanishes.  Returns (y, w) such that
    sum w g(y) with g smooth approximates the integral with the kernel and
    d^s folded in.  Graded panels keep every sub-integrand analytic with a
    uniformly bounded scale ratio.
    """
    L = hi - lo
    span = b - a
    if L <= 1e-14 * span:
        return np.empty(0), np.empty(0)
    at_x_end = "lo" if abs(lo - x) < 1e-14 * span else "hi"
    # grade toward x until the innermost panel is well separated from the
    # external d^s branch point (the interval endpoint on the other side of x)
    other = (x - a) if at_x_end == "lo" else (b - x)
    if other <= 1e-14 * span:
        other = L
    depth_x = 3
    if L > 0.25 * other:
        depth_x = min(max_levels, max(3, int(math.ceil(math.log2(L / (0.25 * other))))))
    depth_d = 3  # endpoint factor handled exactly by Jacobi; light grading suffices

    if at_x_end == "lo":
        breaks = graded_breakpoints(lo, hi, grade_a=depth_x, grade_b=depth_d)
        x_panel = (breaks[0], breaks[1])
        d_panel = (breaks[-2], breaks[-1])
        mids = breaks[1:-1]
    else:
        breaks = graded_breakpoints(lo, hi, grade_a=depth_d, grade_b=depth_x)
        x_panel = (breaks[-2], breaks[-1])
        d_panel = (breaks[0], breaks[1])
        mids = breaks[1:-1]

    ys = []
    ws = []

    def dfac(y):
        return ((y - a) * (b - y)) ** s

    # innermost panel at the kernel singularity: weight |y - x|^{1-2s} or log|y - x|
    w0 = x_panel[1] - x_panel[0]
    if log_kernel:
        u, wl = log_power_rule_01(n_gauss, 0)
        ug, wg = gauss_legendre_01(n_gauss)
        if at_x_end == "lo":
            y1 = x + w0 * u
            y2 = x + w0 * ug
        else:
            y1 = x - w0 * u
            y2 = x - w0 * ug
        # log|y - x| = log(u) + log(w0) on the panel
        ys.extend([y1, y2])
        ws.extend([w0 * wl * dfac(y1), w0 * math.log(w0) * wg * dfac(y2)])
    else:
        u, wj = gauss_jacobi_01(n_gauss, 0.0, 1.0 - 2.0 * s)
        if at_x_end == "lo":
            y1 = x + w0 * u
        else:
            y1 = x - w0 * u
        ys.append(y1)
        ws.append(w0 ** (2.0 - 2.0 * s) * wj * dfac(y1))

    # endpoint panel: weight (b - y)^s or (y - a)^s, remainder analytic
    wd = d_panel[1] - d_panel[0]
    u, wj = gauss_jacobi_01(n_gauss, 0.0, float(s))
    if at_x_end == "lo":  # endpoint is hi = b-side
        yd = d_panel[1] - wd * u
        rest = (yd - a) ** s * (np.log(np.abs(yd - x)) if log_kernel else np.abs(yd - x) ** (1.0 - 2.0 * s))
        ys.append(yd)
        ws.append(wd ** (1.0 + s) * wj * rest)
    else:
        yd = d_panel[0] + wd * u
        rest = (b - yd) ** s * (np.log(np.abs(yd - x)) if log_kernel else np.abs(yd - x) ** (1.0 - 2.0 * s))
        ys.append(yd)
        ws.append(wd ** (1.0 + s) * wj * rest)

    # middle panels: fully smooth integrand, plain Gauss
    if mids.size >= 2:
        yk, wk = _panel_gauss(mids, n_gauss)
        kern = np.log(np.abs(yk - x)) if log_kernel else np.abs(yk - x) ** (1.0 - 2.0 * s)
        ys.append(yk)
        ws.append(wk * kern * dfac(yk))

    return np.concatenate(ys), np.concatenate(ws)


def _endpoint_target_rule(x, s, a, b, log_kernel, n_gauss, max_levels):
    """Rule for a target exactly at an interval endpoint (merged exponents)."""
    span = b - a
    at_a = abs(x - a) < 1e-13 * span
    ys = []
    ws = []
    if log_kernel:
        # kernel log|y - x| with d^s = ((y-a)(b-y))^{1/2}; at the target
        # endpoint the combined local weight is u^{1/2} log(u)
        breaks = graded_breakpoints(a, b, grade_a=6 if at_a else 3, grade_b=3 if at_a else 6)
        mids = breaks[1:-1]
        w0 = (breaks[1] - breaks[0]) if at_a else (breaks[-1] - breaks[-2])
        # substitution y = end +- w0 v^2 turns u^{1/2} log u into v^2 (log w0 + 2 log v)
        v, wg = gauss_legendre_01(n_gauss)
        v2, wl2 = log_power_rule_01(n_gauss, 2)
        if at_a:
            ya = a + w0 * v**2
            yb = a + w0 * v2**2
            smooth = lambda y: (b - y) ** s  # noqa: E731
        else:
            ya = b - w0 * v**2
            yb = b - w0 * v2**2
            smooth = lambda y: (y - a) ** s  # noqa: E731
        ys.extend([ya, yb])
        ws.append(2.0 * w0**1.5 * math.log(w0) * wg * v**2 * smooth(ya))
        ws.append(4.0 * w0**1.5 * wl2 * smooth(yb))
        # panel at the far endpoint: weight (.)^s, log kernel smooth there
        wd = (breaks[-1] - breaks[-2]) if at_a else (breaks[1] - breaks[0])
        u, wj = gauss_jacobi_01(n_gauss, 0.0, float(s))
        if at_a:
            yd = b - wd * u
            ys.append(yd)
            ws.append(wd ** (1.0 + s) * wj * (yd - a) ** s * np.log(yd - x))
        else:
            yd = a + wd * u
            ys.append(yd)
            ws.append(wd ** (1.0 + s) * wj * (b - yd) ** s * np.log(x - yd))
        if mids.size >= 2:
            yk, wk = _panel_gauss(mids, n_gauss)
            ys.append(yk)
            ws.append(wk * np.log(np.abs(yk - x)) * ((yk - a) * (b - yk)) ** s)
    else:
        # merged weight at the target endpoint: |x-y|^{1-2s} d^s(y) equals
        # span^2 u^{1-s} (1-u)^s (in the unit variable) times nothing else,
        # so a single two-sided Gauss-Jacobi rule is exact
        u1, w1 = gauss_jacobi_01(2 * n_gauss, float(s), 1.0 - float(s))
        if at_a:
            y = a + span * u1
        else:
            y = b - span * u1
        ys.append(y)
        ws.append(span**2.0 * w1)
    return np.concatenate(ys), np.concatenate(ws)


def singular_1d_weights(targets, s, interval, basis_size, n_gauss=20, max_levels=48):
    """Product-integration matrix for the 1D weakly singular operator.

    Entry (i, j) approximates  int_a^b K(x_i, y) d^s(y) T_j(y) dy  where
    K = |x - y|^{1-2s} (log|x - y| at s = 1/2), d(y) = (y - a)(b - y), and
    T_j is the degree-j Chebyshev polynomial mapped to [a, b].
    """
    s = validate_order(s)
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    targets = np.atleast_1d(np.asarray(targets, dtype=float))
    if targets.min() < a - 1e-12 or targets.max() > b + 1e-12:
        raise ValueError("targets must lie in [a, b]")
    log_kernel = abs(s - 0.5) < HALF_BRANCH_TOL
    M = np.empty((targets.size, basis_size))
    span = b - a
    for i, x in enumerate(targets):
        if min(x - a, b - x) < 1e-13 * span:
            y, w = _endpoint_target_rule(x, s, a, b, log_kernel, n_gauss, max_levels)
        else:
            y1, w1 = _side_rule(x, a, x, s, a, b, log_kernel, n_gauss, max_levels)
            y2, w2 = _side_rule(x, x, b, s, a, b, log_kernel, n_gauss, max_levels)
            y = np.concatenate([y1, y2])
            w = np.concatenate([w1, w2])
        if not np.all(np.isfinite(w)):
            raise QuadratureError(f"non-finite 1D weights at target index {i} (x = {x})")
        M[i] = w @ _cheb_basis(y, basis_size, a, b)
    return M


def volumetric_singular_quad(domain, grid, target, s, kernel="riesz_power",
                             include_edge_weight=False, options=None):
    """Volumetric singular quadrature weights; see :mod:`fraclap.volume`."""
    from .volume import volumetric_singular_quad as _impl

    return _impl(domain, grid, target, s, kernel,
                 include_edge_weight=include_edge_weight, options=options)
