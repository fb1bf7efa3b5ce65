"""Domains: 1D intervals and smooth, possibly multiply connected 2D regions.

Each 2D domain supplies

* smooth closed boundary curves (outer first, then holes), with analytic
  normals and curvature,
* a closed-form boundary-vanishing function d (positive inside, zero on
  the boundary, smooth quotient with the true distance),
* a global polar-type reference map (rho, theta) -> Omega used by the
  volume grids, together with its Jacobian, the smooth part of d^s in
  reference coordinates, and the metric aspect ratio.

The reference radial coordinate runs over [rho_lo, rho_hi]: [0, 1] for the
disc and the kite (open at the center), [r_inner, r_outer] for the annulus.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

__all__ = [
    "BoundaryCurve",
    "CircleCurve",
    "FourierCurve",
    "BoundaryNodes",
    "boundary_nodes",
    "DomainGeometry",
    "Interval1D",
    "VolumeGrid",
    "make_disc",
    "make_kite",
    "make_annulus",
    "winding_contains",
    "GeometryError",
]

KITE_A = 1.3
KITE_B = 1.5


class GeometryError(RuntimeError):
    pass


# ----------------------------------------------------------------------
# Boundary curves


class BoundaryCurve:
    """Smooth closed curve with period 2*pi.

    ``orientation`` is "outer" for the outer boundary and "hole" for an
    interior boundary component; it fixes the sign of the normal so that
    the normal always points out of the domain.
    """

    period = 2.0 * math.pi
    orientation = "outer"

    def position(self, t):
        raise NotImplementedError

    def derivative(self, t):
        raise NotImplementedError

    def second_derivative(self, t):
        raise NotImplementedError

    def speed(self, t):
        return np.linalg.norm(self.derivative(t), axis=-1)

    def normal(self, t):
        """Unit normal pointing out of the domain."""
        d = self.derivative(t)
        n = np.stack([d[..., 1], -d[..., 0]], axis=-1)
        n /= np.linalg.norm(n, axis=-1, keepdims=True)
        if self.orientation == "hole":
            n = -n
        return n

    def curvature(self, t):
        d1 = self.derivative(t)
        d2 = self.second_derivative(t)
        sp = np.linalg.norm(d1, axis=-1)
        return (d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]) / sp**3

    def check_closed(self, tol=1e-14):
        for f in (self.position, self.derivative, self.second_derivative):
            gap = np.abs(f(np.array([0.0])) - f(np.array([2.0 * math.pi]))).max()
            scale = max(1.0, np.abs(f(np.array([0.0]))).max())
            if gap > tol * scale:
                raise GeometryError(f"curve not closed to {tol}: gap {gap}")


class CircleCurve(BoundaryCurve):
    def __init__(self, radius, center=(0.0, 0.0), orientation="outer"):
        if radius <= 0:
            raise GeometryError("circle radius must be positive")
        self.radius = float(radius)
        self.center = np.asarray(center, dtype=float)
        self.orientation = orientation

    def position(self, t):
        t = np.asarray(t, dtype=float)
        return self.center + self.radius * np.stack([np.cos(t), np.sin(t)], axis=-1)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        return self.radius * np.stack([-np.sin(t), np.cos(t)], axis=-1)

    def second_derivative(self, t):
        t = np.asarray(t, dtype=float)
        return self.radius * np.stack([-np.cos(t), -np.sin(t)], axis=-1)


class FourierCurve(BoundaryCurve):
    """Curve given by a truncated Fourier series of x(t) + i y(t)."""

    def __init__(self, coef, orientation="outer"):
        # coef indexed like numpy fft frequencies for the sampled series
        self.coef = np.asarray(coef, dtype=complex)
        self.orientation = orientation
        n = self.coef.size
        self._freq = np.fft.fftfreq(n, d=1.0 / n)  # integer wavenumbers

    @classmethod
    def from_samples(cls, values_xy, orientation="outer", drop_tol=1e-15):
        z = values_xy[:, 0] + 1j * values_xy[:, 1]
        c = np.fft.fft(z) / z.size
        c[np.abs(c) < drop_tol * np.abs(c).max()] = 0.0
        return cls(c, orientation=orientation)

    def _eval(self, t, order):
        t = np.asarray(t, dtype=float)
        nz = self.coef != 0.0
        k = self._freq[nz]
        coef = self.coef[nz] * (1j * k) ** order
        z = np.exp(1j * np.multiply.outer(t, k)) @ coef
        return np.stack([z.real, z.imag], axis=-1)

    def position(self, t):
        return self._eval(t, 0)

    def derivative(self, t):
        return self._eval(t, 1)

    def second_derivative(self, t):
        return self._eval(t, 2)


@dataclass(frozen=True)
class BoundaryNodes:
    t: np.ndarray
    position: np.ndarray
    normal: np.ndarray
    curvature: np.ndarray
    speed: np.ndarray


def boundary_nodes(curve, n):
    """Equispaced Nystroem nodes t_j = 2 pi j / n with analytic geometry data."""
    n = int(n)
    if n % 2 != 0 or n <= 0:
        raise GeometryError("boundary_nodes requires a positive even n")
    t = 2.0 * math.pi * np.arange(n) / n
    return BoundaryNodes(
        t=t,
        position=curve.position(t),
        normal=curve.normal(t),
        curvature=curve.curvature(t),
        speed=curve.speed(t),
    )


# ----------------------------------------------------------------------
# 1D interval


@dataclass(frozen=True)
class Interval1D:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise GeometryError(f"interval requires a < b, got ({self.a}, {self.b})")

    def d_eval(self, y):
        return (y - self.a) * (self.b - y)


# ----------------------------------------------------------------------
# 2D domains


class DomainGeometry:
    """Base for the polar-type mapped smooth domains."""

    kind = "base"

    def __init__(self, d_scale=1.0):
        if d_scale <= 0:
            raise GeometryError("d_scale must be positive")
        self.d_scale = float(d_scale)
        self.curves = []
        self.n_h = 0

    # --- boundary-vanishing function -----------------------------------
    def d_eval(self, xy):
        raise NotImplementedError

    def d_grad(self, xy):
        raise NotImplementedError

    def contains(self, xy):
        return self.d_eval(xy) > 0.0

    # --- reference map ---------------------------------------------------
    rho_lo = 0.0
    rho_hi = 1.0
    # which reference edges carry a factor of d (hole edge only for annulus)
    edge_weight_outer = True
    edge_weight_inner = False

    def ref_map(self, rho, theta):
        raise NotImplementedError

    def ref_inverse(self, xy):
        raise NotImplementedError

    def jac_radial(self, rho):
        raise NotImplementedError

    def jac_theta(self, theta):
        raise NotImplementedError

    def sigma(self, rho, theta, s):
        """Smooth factor with d^s = edge_weight(rho)^s * sigma in reference coords."""
        raise NotImplementedError

    def edge_weight(self, rho):
        w = np.ones_like(np.asarray(rho, dtype=float))
        if self.edge_weight_outer:
            w = w * (self.rho_hi - rho)
        if self.edge_weight_inner:
            w = w * (rho - self.rho_lo)
        return w

    def metric_aspect(self, rho, theta):
        raise NotImplementedError

    def metric_rad(self, rho, theta):
        """|d(map)/d rho|, the physical length of a unit reference radial step."""
        raise NotImplementedError

    def volume_point_data(self, rho, theta, s=None, include_edge=False):
        """Map, Jacobian and (optionally) the smooth d^s factor at point sets.

        Bundled so that domains with Fourier-represented boundaries evaluate
        their series once per point set.
        """
        xy = self.ref_map(rho, theta)
        jac = self.jac_radial(rho) * self.jac_theta(theta)
        sig = self.sigma(rho, theta, s) if include_edge else None
        return xy, jac, sig

    def boundary_distance(self, xy):
        """Distance to the boundary, with nearest curve index and parameter."""
        raise NotImplementedError

    def scale(self):
        """Characteristic linear size (used to cap patch radii)."""
        raise NotImplementedError

    def spec(self):
        raise NotImplementedError


class DiscDomain(DomainGeometry):
    kind = "disc"

    def __init__(self, radius, d_scale=1.0):
        super().__init__(d_scale)
        if radius <= 0:
            raise GeometryError("disc radius must be positive")
        self.radius = float(radius)
        self.curves = [CircleCurve(radius)]
        self.n_h = 0

    def d_eval(self, xy):
        xy = np.asarray(xy, dtype=float)
        return self.d_scale * (self.radius**2 - (xy**2).sum(axis=-1))

    def d_grad(self, xy):
        xy = np.asarray(xy, dtype=float)
        return -2.0 * self.d_scale * xy

    def ref_map(self, rho, theta):
        r = np.asarray(rho, dtype=float) * self.radius
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

    def ref_inverse(self, xy):
        xy = np.asarray(xy, dtype=float)
        rho = np.hypot(xy[..., 0], xy[..., 1]) / self.radius
        theta = np.mod(np.arctan2(xy[..., 1], xy[..., 0]), 2.0 * math.pi)
        return rho, theta

    def jac_radial(self, rho):
        return np.asarray(rho, dtype=float) * self.radius**2

    def jac_theta(self, theta):
        return np.ones_like(np.asarray(theta, dtype=float))

    def sigma(self, rho, theta, s):
        return (self.d_scale * self.radius**2 * (1.0 + np.asarray(rho, dtype=float))) ** s

    def metric_aspect(self, rho, theta):
        return np.maximum(np.asarray(rho, dtype=float), 1e-3)

    def metric_rad(self, rho, theta):
        return np.full_like(np.asarray(rho, dtype=float), self.radius)

    def boundary_distance(self, xy):
        xy = np.asarray(xy, dtype=float)
        r = np.hypot(xy[..., 0], xy[..., 1])
        t = np.mod(np.arctan2(xy[..., 1], xy[..., 0]), 2.0 * math.pi)
        return self.radius - r, np.zeros(np.shape(r), dtype=int), t

    def scale(self):
        return self.radius

    def spec(self):
        return {"type": "disc", "radius": self.radius, "d_scale": self.d_scale}


class AnnulusDomain(DomainGeometry):
    kind = "annulus"

    def __init__(self, r_inner, r_outer, d_scale=1.0):
        super().__init__(d_scale)
        if not 0.0 < r_inner < r_outer:
            raise GeometryError("annulus requires 0 < r_inner < r_outer")
        self.r_inner = float(r_inner)
        self.r_outer = float(r_outer)
        self.curves = [CircleCurve(r_outer), CircleCurve(r_inner, orientation="hole")]
        self.n_h = 1

    rho_lo = property(lambda self: self.r_inner)  # type: ignore[assignment]
    rho_hi = property(lambda self: self.r_outer)  # type: ignore[assignment]
    edge_weight_inner = True

    def d_eval(self, xy):
        xy = np.asarray(xy, dtype=float)
        r2 = (xy**2).sum(axis=-1)
        return self.d_scale * (self.r_outer**2 - r2) * (r2 - self.r_inner**2)

    def d_grad(self, xy):
        xy = np.asarray(xy, dtype=float)
        r2 = (xy**2).sum(axis=-1)[..., None]
        return self.d_scale * 2.0 * xy * (self.r_outer**2 + self.r_inner**2 - 2.0 * r2)

    def ref_map(self, rho, theta):
        r = np.asarray(rho, dtype=float)
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

    def ref_inverse(self, xy):
        xy = np.asarray(xy, dtype=float)
        rho = np.hypot(xy[..., 0], xy[..., 1])
        theta = np.mod(np.arctan2(xy[..., 1], xy[..., 0]), 2.0 * math.pi)
        return rho, theta

    def jac_radial(self, rho):
        return np.asarray(rho, dtype=float)

    def jac_theta(self, theta):
        return np.ones_like(np.asarray(theta, dtype=float))

    def sigma(self, rho, theta, s):
        r = np.asarray(rho, dtype=float)
        return (self.d_scale * (self.r_outer + r) * (r + self.r_inner)) ** s

    def metric_aspect(self, rho, theta):
        return np.asarray(rho, dtype=float)

    def metric_rad(self, rho, theta):
        return np.ones_like(np.asarray(rho, dtype=float))

    def boundary_distance(self, xy):
        xy = np.asarray(xy, dtype=float)
        r = np.hypot(xy[..., 0], xy[..., 1])
        t = np.mod(np.arctan2(xy[..., 1], xy[..., 0]), 2.0 * math.pi)
        d_out = self.r_outer - r
        d_in = r - self.r_inner
        idx = np.where(d_out <= d_in, 0, 1)
        return np.minimum(d_out, d_in), idx, t

    def scale(self):
        return self.r_outer

    def spec(self):
        return {
            "type": "annulus",
            "r_inner": self.r_inner,
            "r_outer": self.r_outer,
            "d_scale": self.d_scale,
        }


def kite_level_fn(xy):
    """Level function g with the kite domain equal to {g <= 1}."""
    xy = np.asarray(xy, dtype=float)
    x1 = xy[..., 0]
    x2 = xy[..., 1]
    u = x1 + KITE_A * (x2 / KITE_B) ** 2
    return u**2 + (x2 / KITE_B) ** 2


def kite_level_grad(xy):
    xy = np.asarray(xy, dtype=float)
    x1 = xy[..., 0]
    x2 = xy[..., 1]
    u = x1 + KITE_A * (x2 / KITE_B) ** 2
    gx = 2.0 * u
    gy = 2.0 * u * (2.0 * KITE_A * x2 / KITE_B**2) + 2.0 * x2 / KITE_B**2
    return np.stack([gx, gy], axis=-1)


class KiteDomain(DomainGeometry):
    kind = "kite"

    _N_BOUNDARY_SAMPLES = 1024  # R_b Fourier tail ~1e-14 (narrow analyticity strip)

    def __init__(self, d_scale=1.0):
        super().__init__(d_scale)
        theta = 2.0 * math.pi * np.arange(self._N_BOUNDARY_SAMPLES) / self._N_BOUNDARY_SAMPLES
        rb = self._solve_boundary_radius(theta)
        # real Fourier series of the star-shaped radius R_b(theta)
        c = np.fft.fft(rb) / rb.size
        c[np.abs(c) < 1e-15 * np.abs(c).max()] = 0.0
        self._rb_coef = c
        self._rb_freq = np.fft.fftfreq(c.size, d=1.0 / c.size)
        samples = rb[:, None] * np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        self.curves = [FourierCurve.from_samples(samples)]
        self.n_h = 0

    @staticmethod
    def _solve_boundary_radius(theta, tol=1e-15, max_iter=60):
        e = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        r = np.ones_like(theta)
        for _ in range(max_iter):
            xy = r[:, None] * e
            h = kite_level_fn(xy) - 1.0
            dh = (kite_level_grad(xy) * e).sum(axis=-1)
            step = h / dh
            r = r - step
            if np.abs(step).max() < tol:
                break
        else:
            raise GeometryError("kite boundary parametrization did not converge")
        return r

    def _rb(self, theta, order=0):
        theta = np.asarray(theta, dtype=float)
        nz = self._rb_coef != 0.0
        k = self._rb_freq[nz]
        coef = self._rb_coef[nz] * (1j * k) ** order
        z = np.exp(1j * np.multiply.outer(theta, k)) @ coef
        return z.real

    def d_eval(self, xy):
        return self.d_scale * (1.0 - kite_level_fn(xy))

    def d_grad(self, xy):
        return -self.d_scale * kite_level_grad(xy)

    def ref_map(self, rho, theta):
        rb = self._rb(theta)
        r = np.asarray(rho, dtype=float) * rb
        return np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

    def ref_inverse(self, xy):
        xy = np.asarray(xy, dtype=float)
        theta = np.mod(np.arctan2(xy[..., 1], xy[..., 0]), 2.0 * math.pi)
        rho = np.hypot(xy[..., 0], xy[..., 1]) / self._rb(theta)
        return rho, theta

    def jac_radial(self, rho):
        return np.asarray(rho, dtype=float)

    def jac_theta(self, theta):
        return self._rb(theta) ** 2

    def _ray_poly(self, theta):
        """Coefficients a2, a3, a4 of g(rho B(theta)) = a2 rho^2 + a3 rho^3 + a4 rho^4."""
        rb = self._rb(theta)
        b1 = rb * np.cos(theta)
        b2 = rb * np.sin(theta)
        ca = KITE_A / KITE_B**2
        cb = 1.0 / KITE_B**2
        a2 = b1**2 + cb * b2**2
        a3 = 2.0 * ca * b1 * b2**2
        a4 = ca**2 * b2**4
        return a2, a3, a4

    def sigma(self, rho, theta, s):
        # 1 - g(rho B) = (1 - rho) q(rho) with q from exact synthetic division,
        # stable arbitrarily close to the boundary
        rho = np.asarray(rho, dtype=float)
        a2, a3, a4 = self._ray_poly(theta)
        q = a4 * rho**3 + (a4 + a3) * rho**2 + (a4 + a3 + a2) * (rho + 1.0)
        return (self.d_scale * q) ** s

    def metric_aspect(self, rho, theta):
        rb = self._rb(theta)
        rbp = self._rb(theta, order=1)
        asp = np.asarray(rho, dtype=float) * np.sqrt(rb**2 + rbp**2) / rb
        return np.maximum(asp, 1e-3)

    def metric_rad(self, rho, theta):
        return self._rb(theta)

    def volume_point_data(self, rho, theta, s=None, include_edge=False):
        rho = np.asarray(rho, dtype=float)
        rb = self._rb(theta)
        r = rho * rb
        xy = np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)
        jac = rho * rb**2
        sig = None
        if include_edge:
            b1 = rb * np.cos(theta)
            b2 = rb * np.sin(theta)
            ca = KITE_A / KITE_B**2
            cb = 1.0 / KITE_B**2
            a2 = b1**2 + cb * b2**2
            a3 = 2.0 * ca * b1 * b2**2
            a4 = ca**2 * b2**4
            q = a4 * rho**3 + (a4 + a3) * rho**2 + (a4 + a3 + a2) * (rho + 1.0)
            sig = (self.d_scale * q) ** s
        return xy, jac, sig

    def boundary_distance(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        curve = self.curves[0]
        m = 1024
        ts = 2.0 * math.pi * np.arange(m) / m
        ps = curve.position(ts)
        d2 = ((xy[:, None, :] - ps[None, :, :]) ** 2).sum(axis=-1)
        t = ts[np.argmin(d2, axis=1)]
        for _ in range(4):  # Newton on (x - y(t)) . y'(t) = 0
            pos = curve.position(t)
            d1 = curve.derivative(t)
            d2v = curve.second_derivative(t)
            diff = xy - pos
            f = (diff * d1).sum(axis=-1)
            fp = (d2v * diff).sum(axis=-1) - (d1 * d1).sum(axis=-1)
            t = t - f / fp
        dist = np.linalg.norm(xy - curve.position(t), axis=-1)
        out = dist, np.zeros(xy.shape[0], dtype=int), np.mod(t, 2.0 * math.pi)
        return out

    def scale(self):
        return float(self._rb(np.linspace(0, 2 * math.pi, 64)).max())

    def spec(self):
        return {"type": "kite", "d_scale": self.d_scale}


def make_disc(radius, d_scale=1.0):
    """Disc of given radius centered at the origin, d = d_scale (R^2 - |x|^2)."""
    return DiscDomain(radius, d_scale)


def make_kite(d_scale=1.0):
    """Kite-shaped level-set domain {g <= 1}, d = d_scale (1 - g)."""
    return KiteDomain(d_scale)


def make_annulus(r_inner, r_outer, d_scale=1.0):
    """Annulus r_inner <= |x| <= r_outer, d = d_scale (ro^2 - |x|^2)(|x|^2 - ri^2)."""
    return AnnulusDomain(r_inner, r_outer, d_scale)


# ----------------------------------------------------------------------
# Volume grid


class VolumeGrid:
    """Tensor grid over the reference rectangle [rho_lo, rho_hi] x [0, 2 pi).

    Radial nodes are Gauss-Legendre (open at both ends, so the polar center
    and the boundary carry no node); angular nodes are equispaced.  The
    ``weights`` field integrates smooth functions over the domain with the
    map Jacobian absorbed (Gauss in rho x trapezoid in theta).
    """

    def __init__(self, domain, n_rho, n_theta):
        if n_theta % 2 != 0:
            raise GeometryError("n_theta must be even (trigonometric interpolation)")
        self.domain = domain
        self.n_rho = int(n_rho)
        self.n_theta = int(n_theta)
        x, w = roots_legendre(self.n_rho)
        lo, hi = domain.rho_lo, domain.rho_hi
        self.rho_nodes = lo + 0.5 * (hi - lo) * (1.0 + x)
        self.rho_gl_weights = 0.5 * (hi - lo) * w
        self.theta_nodes = 2.0 * math.pi * np.arange(self.n_theta) / self.n_theta
        self.d_theta = 2.0 * math.pi / self.n_theta

        R, T = np.meshgrid(self.rho_nodes, self.theta_nodes, indexing="ij")
        self.ref = np.stack([R.ravel(), T.ravel()], axis=-1)
        self.nodes = domain.ref_map(R, T).reshape(-1, 2)
        wr = self.rho_gl_weights * domain.jac_radial(self.rho_nodes)
        wt = self.d_theta * domain.jac_theta(self.theta_nodes)
        self.weights = np.outer(wr, wt).ravel()
        dist, _, _ = domain.boundary_distance(self.nodes)
        spacing = 2.0 * math.pi * domain.scale() / self.n_theta
        self.near_boundary_flag = dist < 5.0 * spacing

    @property
    def size(self):
        return self.n_rho * self.n_theta

    def flat_index(self, i, j):
        return i * self.n_theta + j

    def interpolate(self, values, rho, theta):
        """Evaluate the global interpolant of nodal values at arbitrary points."""
        from .interp import barycentric_matrix, barycentric_weights, trig_interp_matrix

        vals = np.asarray(values, dtype=float).reshape(self.n_rho, self.n_theta)
        if not hasattr(self, "_bary_w"):
            self._bary_w = barycentric_weights(self.rho_nodes)
        P = barycentric_matrix(self.rho_nodes, self._bary_w, np.atleast_1d(rho))
        Q = trig_interp_matrix(self.n_theta, np.atleast_1d(theta))
        return ((P @ vals) * Q).sum(axis=1)


# ----------------------------------------------------------------------
# Independent membership test (winding number of the discretized boundary)


def winding_contains(domain, points, n_samples=2048):
    """Membership by accumulated winding angle of all boundary curves."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    total = np.zeros(pts.shape[0])
    ts = 2.0 * math.pi * np.arange(n_samples) / n_samples
    for curve in domain.curves:
        ps = curve.position(ts)
        v = ps[None, :, :] - pts[:, None, :]
        ang = np.arctan2(v[:, :, 1], v[:, :, 0])
        dang = np.diff(ang, axis=1, append=ang[:, :1])
        dang = np.mod(dang + math.pi, 2.0 * math.pi) - math.pi
        wind = dang.sum(axis=1) / (2.0 * math.pi)
        if curve.orientation == "hole":
            # inside the hole the winding is 1; that point is outside Omega
            total += np.where(np.round(wind) != 0, -1.0, 0.0)
        else:
            total += np.where(np.round(wind) != 0, 1.0, 0.0)
    return total > 0.5
