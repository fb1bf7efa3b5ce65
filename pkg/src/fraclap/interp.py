"""Polynomial and trigonometric interpolation helpers.

The volume grids carry nodal values; all quadrature and evaluation paths
move between node sets through the global interpolant: barycentric
Lagrange in the radial coordinate and the trigonometric interpolant in
the periodic coordinate.
"""

import numpy as np

__all__ = [
    "barycentric_weights",
    "barycentric_matrix",
    "trig_interp_matrix",
    "cheb_vandermonde",
]


def barycentric_weights(nodes):
    """Barycentric weights for Lagrange interpolation at arbitrary nodes.

    Computed by direct products with max-normalization; stable for the
    moderate node counts (<~ 150) used here.
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size
    w = np.ones(n)
    # scale differences to avoid under/overflow
    c = 4.0 / (x.max() - x.min())
    for i in range(n):
        d = (x[i] - x) * c
        d[i] = 1.0
        w[i] = 1.0 / np.prod(d)
    return w / np.abs(w).max()


def barycentric_matrix(nodes, weights, x_eval):
    """Matrix B with B[e, i] = ell_i(x_eval[e]) for the Lagrange basis ell_i."""
    x = np.asarray(nodes, dtype=float)
    xe = np.atleast_1d(np.asarray(x_eval, dtype=float))
    diff = xe[:, None] - x[None, :]
    hit = np.abs(diff) < 1e-300
    diff[hit] = 1.0
    ratio = weights[None, :] / diff
    B = ratio / ratio.sum(axis=1)[:, None]
    rows_hit = hit.any(axis=1)
    if rows_hit.any():
        B[rows_hit] = 0.0
        B[hit] = 1.0
    return B


def trig_interp_matrix(n, theta_eval, period=2.0 * np.pi):
    """Trigonometric interpolation from n equispaced samples (n even).

    Returns Q with Q[e, j] = K(theta_eval[e] - theta_j) where K is the
    standard interpolation kernel sin(n u / 2) / (n tan(u / 2)), exact for
    trigonometric polynomials of degree < n/2 (top cosine mode halved).
    """
    if n % 2 != 0:
        raise ValueError("trigonometric interpolation requires even n")
    te = np.atleast_1d(np.asarray(theta_eval, dtype=float)) * (2.0 * np.pi / period)
    tj = 2.0 * np.pi * np.arange(n) / n
    u = te[:, None] - tj[None, :]
    # kernel has removable singularities at u = 0 mod 2*pi
    su = np.sin(0.5 * u)
    near = np.abs(su) < 1e-14
    su_safe = np.where(near, 1.0, su)
    K = np.sin(0.5 * n * u) * np.cos(0.5 * u) / (n * su_safe)
    K[near] = np.cos(0.5 * n * u[near]) * np.cos(0.5 * u[near]) ** 2  # -> 1 at u = 0
    return K


def cheb_vandermonde(x01, m, lo=0.0, hi=1.0):
    """Chebyshev Vandermonde matrix T_k(t) for t mapping [lo, hi] -> [-1, 1]."""
    x = np.asarray(x01, dtype=float)
    t = (2.0 * x - lo - hi) / (hi - lo)
    V = np.empty((x.size, m))
    V[:, 0] = 1.0
    if m > 1:
        V[:, 1] = t
    for k in range(2, m):
        V[:, k] = 2.0 * t * V[:, k - 1] - V[:, k - 2]
    return V
