"""Quadrature node sets on S^2 and positive-weight rules built from them.

Four families: seeded uniform random points, centers of a recursive zonal
equal-area partition, point sets loaded from text files (Fekete, Coulomb
energy, spherical t-designs), and the Gauss-Legendre product rule that
serves as the exact reference rule.

All rules are normalized so that the weights sum to ``|S^2| = 4*pi``;
equal-weight rules use ``w_j = 4*pi/m``.
"""

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .harmonics import SPHERE_AREA

__all__ = [
    "QuadratureRule",
    "random_uniform",
    "equal_area",
    "load_pointset",
    "equal_weight_rule",
    "product_gauss_rule",
    "bundled_tdesigns",
    "bundled_tdesign_rule",
]

_PROVENANCES = ("random", "equal_area", "gauss_product", "loaded")


@dataclass
class QuadratureRule:
    """Positive-weight quadrature rule: nodes x_j on S^2 and weights w_j."""

    points: np.ndarray
    weights: np.ndarray
    provenance: str = "loaded"

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        if self.points.shape[0] != self.weights.shape[0]:
            raise ValueError(
                f"{self.points.shape[0]} points vs {self.weights.shape[0]} weights")
        if self.points.shape[0] < 1:
            raise ValueError("a rule needs at least one node")
        if self.points.shape[1] != 3:
            raise ValueError(f"points must be (m, 3), got {self.points.shape}")
        if not np.all(self.weights > 0):
            raise ValueError("all quadrature weights must be positive")
        if self.provenance not in _PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def m(self):
        return self.points.shape[0]

    @property
    def weight_sum(self):
        return float(np.sum(self.weights))


def random_uniform(m, seed):
    """m i.i.d. uniform points on S^2 from a seeded PCG64 stream.

    Mirrors the usual MATLAB recipe (elevation = asin(2u-1), azimuth =
    2*pi*u') in distribution: z uniform on [-1, 1], azimuth uniform on
    [0, 2*pi), drawn as two consecutive batches from one stream.
    """
    if m < 1:
        raise ValueError(f"need m >= 1 points, got {m}")
    rng = np.random.default_rng(seed)
    z = 2.0 * rng.random(m) - 1.0
    phi = 2.0 * math.pi * rng.random(m)
    s = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)


def _cap_colatitude(fraction):
    # colatitude of a spherical cap covering `fraction` of the total area:
    # area = 4*pi*sin^2(theta/2)  =>  theta = 2*asin(sqrt(fraction))
    return 2.0 * math.asin(math.sqrt(fraction))


def _circle_offset(n_top, n_bot):
    # standard zonal offset between consecutive collars: stagger the cells
    # of the lower collar relative to the upper one
    return (1.0 / n_bot - 1.0 / n_top) / 2.0 + \
        math.gcd(n_top, n_bot) / (2.0 * n_top * n_bot)


def equal_area(m):
    """Centers of an m-cell recursive zonal equal-area partition of S^2.

    The partition consists of two polar caps and a stack of collars, each
    collar split into equal-area zones; every cell has area 4*pi/m.  Cell
    centers: the poles for the caps, mid-colatitude with equispaced
    azimuths (offset collar to collar) for the zones.  Deterministic in m.
    """
    if m < 1:
        raise ValueError(f"need m >= 1 points, got {m}")
    if m == 1:
        return np.array([[0.0, 0.0, 1.0]])
    if m == 2:
        return np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])

    theta_cap = _cap_colatitude(1.0 / m)
    delta_ideal = math.sqrt(SPHERE_AREA / m)
    n_collars = max(1, round((math.pi - 2.0 * theta_cap) / delta_ideal))
    delta_fit = (math.pi - 2.0 * theta_cap) / n_collars

    # ideal (real) cell count of each collar, then a cumulative rounding
    # that preserves the total exactly
    ideal = np.empty(n_collars)
    for i in range(n_collars):
        top = theta_cap + i * delta_fit
        bot = theta_cap + (i + 1) * delta_fit
        ideal[i] = (math.sin(bot / 2.0) ** 2 - math.sin(top / 2.0) ** 2) * m
    cum = np.round(np.cumsum(ideal)).astype(int)
    counts = np.diff(np.concatenate([[0], cum]))
    counts[-1] += (m - 2) - counts.sum()
    assert counts.sum() == m - 2 and np.all(counts >= 1)

    # collar boundary colatitudes adjusted so that every cell area is
    # exactly 4*pi/m given the integer counts
    bounds = [theta_cap]
    running = 1
    for c in counts:
        running += int(c)
        bounds.append(_cap_colatitude(running / m))

    pts = [np.array([0.0, 0.0, 1.0])]
    offset = 0.0
    for i, c in enumerate(counts):
        colat = 0.5 * (bounds[i] + bounds[i + 1])
        if i > 0:
            offset += _circle_offset(int(counts[i - 1]), int(c))
            offset -= math.floor(offset)
        az = 2.0 * math.pi * ((np.arange(c) + 0.5) / c + offset)
        z = math.cos(colat)
        s = math.sin(colat)
        pts.append(np.stack([s * np.cos(az), s * np.sin(az),
                             np.full(int(c), z)], axis=-1))
    pts.append(np.array([0.0, 0.0, -1.0]))
    return np.vstack([p if p.ndim == 2 else p[None, :] for p in pts])


def load_pointset(path, expect_weights=False):
    """Load a point set from a whitespace-separated text file.

    Lines starting with '#' are ignored.  3 columns give points only; 4
    columns give points plus positive weights.  Rows must be unit vectors
    within 1e-6; they are renormalized to exact unit length.

    Returns ``(points, weights)`` with ``weights = None`` for 3-column
    files.  With ``expect_weights=True`` a 3-column file is an error.
    """
    points = []
    weights = []
    ncols = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) not in (3, 4):
                raise ValueError(
                    f"{path}: line {lineno}: expected 3 or 4 fields, got {len(fields)}")
            if ncols is None:
                ncols = len(fields)
            elif len(fields) != ncols:
                raise ValueError(
                    f"{path}: line {lineno}: inconsistent column count "
                    f"({len(fields)} vs {ncols})")
            try:
                vals = [float(f) for f in fields]
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: non-numeric field in {line!r}") from None
            v = np.array(vals[:3])
            r = float(np.linalg.norm(v))
            if abs(r - 1.0) > 1e-6:
                raise ValueError(
                    f"{path}: line {lineno}: point norm {r:.9f} deviates from 1 "
                    "by more than 1e-6")
            points.append(v / r)
            if ncols == 4:
                if vals[3] <= 0:
                    raise ValueError(
                        f"{path}: line {lineno}: non-positive weight {vals[3]!r}")
                weights.append(vals[3])
    if not points:
        raise ValueError(f"{path}: no data rows")
    if expect_weights and ncols == 3:
        raise ValueError(f"{path}: expected a 4-column file with weights")
    pts = np.array(points)
    return pts, (np.array(weights) if ncols == 4 else None)


def equal_weight_rule(points, provenance="random"):
    """Equal-weight rule w_j = 4*pi/m on the given points."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    m = pts.shape[0]
    if m < 1:
        raise ValueError("need at least one point")
    w = np.full(m, SPHERE_AREA / m)
    return QuadratureRule(pts, w, provenance)


def product_gauss_rule(N):
    """Gauss-Legendre x trapezoid product rule, exact to degree 2N-1.

    N Gauss-Legendre nodes in cos(theta) tensored with 2N equispaced
    azimuths; weights (2*pi/(2N)) * (GL weight).  Sum of weights is 4*pi.
    """
    if N < 1:
        raise ValueError(f"polar order N must be >= 1, got {N}")
    t, wt = np.polynomial.legendre.leggauss(N)
    naz = 2 * N
    phi = 2.0 * math.pi * np.arange(naz) / naz
    s = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    x = np.outer(s, np.cos(phi)).ravel()
    y = np.outer(s, np.sin(phi)).ravel()
    z = np.repeat(t, naz)
    w = np.repeat(wt, naz) * (2.0 * math.pi / naz)
    return QuadratureRule(np.stack([x, y, z], axis=-1), w, "gauss_product")


def bundled_tdesigns():
    """Strengths t of the spherical designs shipped with the package."""
    out = {}
    root = resources.files("sphyper").joinpath("data/tdesigns")
    for entry in root.iterdir():
        name = entry.name
        if name.startswith("design_t") and name.endswith(".txt"):
            t = int(name[len("design_t"):].split("_")[0])
            out[t] = entry
    return dict(sorted(out.items()))

def bundled_tdesign_rule(t):
    """Equal-weight rule on the bundled spherical t-design of strength t."""
    designs = bundled_tdesigns()
    if t not in designs:
        raise ValueError(
            f"no bundled design of strength {t}; available: {sorted(designs)}")
    with resources.as_file(designs[t]) as p:
        pts, w = load_pointset(p)
    assert w is None
    return equal_weight_rule(pts, provenance="loaded")
