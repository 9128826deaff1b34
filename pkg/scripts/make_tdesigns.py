"""Generate the bundled equal-weight cubature point sets.

Each bundled file holds a point set whose equal-weight rule (w_j = 4*pi/m)
integrates all spherical polynomials up to some degree t exactly.  Small
degrees come from classical symmetric configurations; larger degrees are
produced by numerically zeroing the equal-weight integration residuals of
every harmonic of degree 1..t.

Run from the repository root:

    python scripts/make_tdesigns.py

Output lands in src/sphyper/data/tdesigns/ as design_t{t}_m{m}.txt and is
shipped with the package.  Regeneration is deterministic (fixed seeds).
"""

import math
import sys
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from sphyper import equal_weight_rule, exactness_degree, eval_basis_block  # noqa: E402
from sphyper.harmonics import basis_indices  # noqa: E402

OUT_DIR = Path(__file__).resolve().parents[1] / "src" / "sphyper" / "data" / "tdesigns"


def classical_sets():
    """Symmetric configurations with known exactness degrees."""
    phi = (1 + math.sqrt(5)) / 2
    pair = np.array([[0, 0, 1.0], [0, 0, -1.0]])
    tetra = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)
    octa = np.vstack([np.eye(3), -np.eye(3)])
    ico = []
    for a, b in ((1, phi), (-1, phi), (1, -phi), (-1, -phi)):
        ico += [(0, a, b), (a, b, 0), (b, 0, a)]
    ico = np.array(ico) / math.sqrt(1 + phi**2)
    return [(1, pair), (2, tetra), (3, octa), (5, ico)]


def _legendre_pair(ell_max, u):
    """P_ell(u) and P_ell'(u) for ell = 0..ell_max, stacked along axis 0."""
    p = np.empty((ell_max + 1,) + u.shape)
    dp = np.empty_like(p)
    p[0], dp[0] = 1.0, 0.0
    if ell_max >= 1:
        p[1], dp[1] = u, 1.0
    for ell in range(1, ell_max):
        p[ell + 1] = ((2 * ell + 1) * u * p[ell] - ell * p[ell - 1]) / (ell + 1)
        dp[ell + 1] = dp[ell - 1] + (2 * ell + 1) * p[ell]
    return p, dp


def _even_rows(t):
    return [i for i, (ell, _) in enumerate(basis_indices(t)) if ell >= 2 and ell % 2 == 0]


def residual_energy(raw, t, h, rows):
    """Sum of squared equal-weight residuals over even degrees 2..t.

    The point set is the antipodal doubling {+y_i, -y_i} of h generators
    y_i = raw_i/|raw_i|; odd-degree residuals vanish identically, so the
    energy F = sum_{even ell<=t} sum_k (sum_i Y_{ell,k}(y_i))^2 vanishes
    exactly when the doubled set integrates every degree <= t harmonic to
    zero.  F is evaluated through basis-column sums (no cancellation between
    points, so it stays accurate near zero); its gradient uses the
    equivalent closed-form kernel sum_{i,j} K'(y_i . y_j) with
    K(u) = sum_{even ell} (2*ell+1)/(4*pi) * P_ell(u), whose absolute noise
    is negligible against the gradient scale down to F ~ 1e-17.
    """
    raw = raw.reshape(h, 3)
    norms = np.linalg.norm(raw, axis=1, keepdims=True)
    y = raw / norms
    c = eval_basis_block(t, y)[rows].sum(axis=1)
    f = float(c @ c)
    dots = np.clip(y @ y.T, -1.0, 1.0)
    _, dp = _legendre_pair(t, dots)
    dkern = np.zeros_like(dots)
    for ell in range(2, t + 1, 2):
        dkern += (2 * ell + 1) / (4 * math.pi) * dp[ell]
    g_y = 2.0 * dkern @ y
    g_raw = (g_y - (g_y * y).sum(axis=1, keepdims=True) * y) / norms
    return f, g_raw.ravel()


def optimize_design(t, m, seed, tol=1e-8, restarts=60):
    """Antipodally symmetric m-point set integrating degrees <= t exactly.

    The energy target puts every equal-weight residual a factor 4 below the
    exactness tolerance: residual = (8*pi/m) * sqrt(component of F).
    """
    assert m % 2 == 0
    h = m // 2
    rows = _even_rows(t)
    target = (0.25 * tol * m / (8 * math.pi)) ** 2
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(restarts):
        if attempt == 0 or best is None or attempt % 2 == 0:
            raw = rng.standard_normal((h, 3))
        else:
            raw = best.x.reshape(h, 3)
            raw = raw / np.linalg.norm(raw, axis=1, keepdims=True)
            raw = raw + 10.0 ** -(1 + attempt % 3) * rng.standard_normal(raw.shape)
        res = minimize(
            residual_energy,
            raw.ravel(),
            args=(t, h, rows),
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": 200000, "maxfun": 200000, "ftol": 0.0, "gtol": 1e-17},
        )
        if best is None or res.fun < best.fun:
            best = res
        if best.fun <= target:
            break
    if best.fun > target:
        raise RuntimeError(f"t={t}: residual energy {best.fun:.3e} above {target:.1e}")
    y = best.x.reshape(h, 3)
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    return np.vstack([y, -y]), best.fun


def write_design(t, points, note):
    m = len(points)
    rule = equal_weight_rule(points, "loaded")
    report = exactness_degree(rule, max_scan=t + 1)
    if report.degree < t:
        raise RuntimeError(f"t={t}: verified degree {report.degree} < {t}")
    resid = max(report.residuals[: t + 1])
    path = OUT_DIR / f"design_t{t}_m{m}.txt"
    header = (
        f"# {m}-point set; equal-weight rule integrates spherical polynomials\n"
        f"# of degree <= {t} exactly (max residual {resid:.3e} over degrees 0..{t}).\n"
        f"# {note}\n"
    )
    body = "\n".join(" ".join(f"{c:+.17e}" for c in p) for p in points)
    path.write_text(header + body + "\n")
    print(f"wrote {path.name}: verified degree >= {t}, max residual {resid:.3e}")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    notes = {
        1: "antipodal pair",
        2: "regular tetrahedron vertices",
        3: "regular octahedron vertices",
        5: "regular icosahedron vertices",
    }
    for t, pts in classical_sets():
        write_design(t, pts, notes[t])
    for t, m, seed in ((8, 48, 20240801), (20, 240, 20240802)):
        pts, energy = optimize_design(t, m, seed)
        write_design(t, pts, f"antipodal set from residual minimization (energy {energy:.3e}, seed {seed})")


if __name__ == "__main__":
    main()
