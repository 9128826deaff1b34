"""Real spherical harmonics on the unit sphere S^2.

Conventions used throughout the package:

* Surface measure is the unnormalized one, ``|S^2| = 4*pi``, so the
  orthonormality relation reads ``integral(Y_{l,k} * Y_{l',k'} d omega) =
  delta``.  In particular ``Y_{0,1} = 1/sqrt(4*pi)``.
* The real basis is built from fully normalized associated Legendre
  functions with azimuthal factors ``sqrt(2)*cos(k*phi)`` and
  ``sqrt(2)*sin(k*phi)``.  Any L2-orthonormal real basis would do; every
  quantity the package reports is basis independent.
* Canonical ordering is degree-major, then k ascending: the flat position
  of (l, k) is ``l**2 + (k - 1)``.  Within degree l the order index k maps
  to azimuthal orders as k=1 -> m=0, k=2m -> cos(m*phi), k=2m+1 ->
  sin(m*phi).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

SPHERE_AREA = 4.0 * math.pi

__all__ = [
    "SPHERE_AREA",
    "HarmonicBasis",
    "sphere_point",
    "dim_harmonics",
    "lb_eigenvalue",
    "flat_index",
    "basis_indices",
    "legendre_normalized",
    "eval_basis",
    "eval_basis_block",
    "kernel_eval",
    "kernel_dot",
]


def sphere_point(v, tol=1e-12):
    """Validate and normalize a Cartesian 3-vector to a point on S^2.

    Parameters
    ----------
    v : array_like, shape (3,)
        Cartesian coordinates.
    tol : float
        Accepted deviation of ``norm(v)`` from 1.  Vectors outside the
        band are rejected rather than silently rescaled.

    Returns
    -------
    ndarray, shape (3,)
        The input normalized to unit length.
    """
    x = np.asarray(v, dtype=float)
    if x.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {x.shape}")
    r = float(np.linalg.norm(x))
    if r == 0.0 or abs(r - 1.0) > tol:
        raise ValueError(f"norm {r!r} deviates from 1 by more than {tol}")
    return x / r


def dim_harmonics(d, ell):
    """Dimension Z(d, ell) of the degree-ell harmonics on S^d.

    Z(d, ell) = (2*ell + d - 1) * Gamma(ell + d - 1) / (Gamma(d) * Gamma(ell + 1)),
    with Z(d, 0) = 1.  Evaluated in exact rational arithmetic; the result
    is always an integer.
    """
    if d < 2:
        raise ValueError(f"sphere dimension d must be >= 2, got {d}")
    if ell < 0:
        raise ValueError(f"degree ell must be >= 0, got {ell}")
    if ell == 0:
        return 1
    z = Fraction((2 * ell + d - 1) * math.factorial(ell + d - 2),
                 math.factorial(d - 1) * math.factorial(ell))
    assert z.denominator == 1
    return int(z)


def lb_eigenvalue(d, ell):
    """Laplace-Beltrami eigenvalue lambda_ell = ell*(ell + d - 1) on S^d."""
    if d < 2:
        raise ValueError(f"sphere dimension d must be >= 2, got {d}")
    if ell < 0:
        raise ValueError(f"degree ell must be >= 0, got {ell}")
    return ell * (ell + d - 1)


def flat_index(ell, k):
    """Flat position of (ell, k) in the canonical degree-major ordering."""
    if ell < 0 or not 1 <= k <= 2 * ell + 1:
        raise ValueError(f"invalid basis index (ell={ell}, k={k})")
    return ell * ell + (k - 1)


def basis_indices(n):
    """All (ell, k) pairs up to degree n in canonical order."""
    return [(ell, k) for ell in range(n + 1) for k in range(1, 2 * ell + 2)]


@dataclass(frozen=True)
class HarmonicBasis:
    """Ordered real orthonormal basis of P_n(S^d) (numerics: d = 2 only)."""

    n: int
    d: int = 2

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"degree n must be >= 0, got {self.n}")
        if self.d != 2:
            raise ValueError("basis evaluation is implemented for d = 2 only")

    @property
    def dim(self):
        return dim_harmonics(self.d + 1, self.n)

    def block(self, points):
        return eval_basis_block(self.n, points)


def legendre_normalized(ell, t):
    """Legendre polynomial P_ell(t), normalized so that P_ell(1) = 1.

    Standard three-term recurrence; `t` may be a scalar or an array with
    every entry in [-1, 1] (a slack of 1e-12 is tolerated and clipped).
    """
    if ell < 0:
        raise ValueError(f"degree ell must be >= 0, got {ell}")
    t_arr = np.asarray(t, dtype=float)
    if np.any(np.abs(t_arr) > 1.0 + 1e-12):
        bad = float(np.max(np.abs(t_arr)))
        raise ValueError(f"|t| = {bad} exceeds 1 + 1e-12")
    t_arr = np.clip(t_arr, -1.0, 1.0)
    p_prev = np.ones_like(t_arr)
    if ell == 0:
        return p_prev if t_arr.ndim else float(p_prev)
    p = t_arr.copy()
    for l in range(1, ell):
        p, p_prev = ((2 * l + 1) * t_arr * p - l * p_prev) / (l + 1), p
    return p if t_arr.ndim else float(p)


def eval_basis_block(n, points):
    """Evaluate all Y_{l,k}, l <= n, at many points.

    Parameters
    ----------
    n : int
        Maximum degree.
    points : array_like, shape (m, 3)
        Unit vectors.

    Returns
    -------
    ndarray, shape ((n+1)**2, m)
        Row ``l**2 + (k-1)`` holds Y_{l,k} at all points.
    """
    if n < 0:
        raise ValueError(f"degree n must be >= 0, got {n}")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError(f"expected points of shape (m, 3), got {pts.shape}")
    npts = pts.shape[0]
    t = np.clip(pts[:, 2], -1.0, 1.0)          # cos(theta)
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))  # sin(theta)
    phi = np.arctan2(pts[:, 1], pts[:, 0])

    B = np.empty(((n + 1) ** 2, npts))
    # q_{l,m}(t): associated Legendre normalized so that the resulting
    # basis is orthonormal over S^2 (integral of q^2 over [-1,1] equals
    # 1/(2*pi)).  Stable order-by-order recurrence:
    #   q_{0,0} = 1/sqrt(4*pi)
    #   q_{m,m} = sqrt((2m+1)/(2m)) * sin(theta) * q_{m-1,m-1}
    #   q_{m+1,m} = sqrt(2m+3) * cos(theta) * q_{m,m}
    #   q_{l,m} = a_{l,m} (cos(theta) q_{l-1,m} - b_{l,m} q_{l-2,m}),
    #     a_{l,m} = sqrt((4l^2-1)/(l^2-m^2)),
    #     b_{l,m} = sqrt(((l-1)^2 - m^2)/(4(l-1)^2 - 1)).
    qmm = np.full(npts, 1.0 / math.sqrt(SPHERE_AREA))
    for m in range(n + 1):
        if m > 0:
            qmm = qmm * s * math.sqrt((2 * m + 1) / (2.0 * m))
        if m > 0:
            az_cos = math.sqrt(2.0) * np.cos(m * phi)
            az_sin = math.sqrt(2.0) * np.sin(m * phi)
        q_prev2 = None
        q_prev = None
        for l in range(m, n + 1):
            if l == m:
                q = qmm
            elif l == m + 1:
                q = math.sqrt(2 * m + 3.0) * t * qmm
            else:
                a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
                b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
                q = a * (t * q_prev - b * q_prev2)
            if m == 0:
                B[l * l] = q
            else:
                B[l * l + 2 * m - 1] = q * az_cos
                B[l * l + 2 * m] = q * az_sin
            q_prev2, q_prev = q_prev, q
    return B


def eval_basis(n, x):
    """All Y_{l,k}(x) for one point, as a vector of length (n+1)**2."""
    return eval_basis_block(n, np.asarray(x, dtype=float)[None, :])[:, 0]


def kernel_dot(n, u):
    """Reproducing kernel of P_n(S^2) as a function of the inner product.

    G_n(x, y) = sum_{l<=n} (2l+1)/(4*pi) * P_l(x . y); `u` is x . y and may
    be an array.  O(n) via the Legendre recurrence (addition theorem),
    never the double sum over the basis.
    """
    if n < 0:
        raise ValueError(f"degree n must be >= 0, got {n}")
    u_arr = np.clip(np.asarray(u, dtype=float), -1.0, 1.0)
    p_prev = np.ones_like(u_arr)
    acc = p_prev / SPHERE_AREA
    if n == 0:
        return acc if u_arr.ndim else float(acc)
    p = u_arr.copy()
    acc = acc + 3.0 * p / SPHERE_AREA
    for l in range(1, n):
        p, p_prev = ((2 * l + 1) * u_arr * p - l * p_prev) / (l + 1), p
        acc = acc + (2 * (l + 1) + 1) * p / SPHERE_AREA
    return acc if u_arr.ndim else float(acc)


def kernel_eval(n, x, y):
    """G_n(x, y) for two points on S^2."""
    u = float(np.dot(np.asarray(x, dtype=float), np.asarray(y, dtype=float)))
    return kernel_dot(n, u)
