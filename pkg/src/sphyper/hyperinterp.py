"""Hyperinterpolants: discrete analogues of the L2 projection onto P_n.

The classical operator L_n, the unfettered variant U_n (rule only needs
the MZ property) and the QMC variant Q_n are the same formula

    coeffs[l,k] = sum_j w_j f(x_j) Y_{l,k}(x_j)

differing only in the quadrature rule supplied, so one implementation
serves all three.  Fitting never gates on eta; use `audited_fit` to
refuse rank-deficient rules up front.
"""

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import SPHERE_AREA, basis_indices, eval_basis_block, kernel_dot
from .quadrature import mz_constant, exactness_degree

__all__ = ["Hyperinterpolant", "fit", "audited_fit", "evaluate",
           "evaluate_block", "evaluate_kernel", "project_reference",
           "write_coeffs", "read_coeffs"]

_CHUNK = 20000


@dataclass(frozen=True)
class Hyperinterpolant:
    """Degree-n polynomial with coefficients in the canonical basis order."""

    n: int
    coeffs: np.ndarray
    rule_provenance: str = "loaded"
    eta_used: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        if self.coeffs.shape != ((self.n + 1) ** 2,):
            raise ValueError(
                f"degree {self.n} needs {(self.n + 1) ** 2} coefficients, "
                f"got shape {self.coeffs.shape}")

    def __call__(self, points):
        return evaluate_block(self, points)


def _samples(rule, f):
    y = f(rule.points) if callable(f) else np.asarray(f, dtype=float)
    if y.shape != (rule.m,):
        raise ValueError(f"expected {rule.m} sample values, got shape {y.shape}")
    return y


def fit(rule, f, n):
    """Hyperinterpolant of degree n: coeffs = B diag(w) y, chunked over points."""
    if n < 0:
        raise ValueError(f"degree n must be >= 0, got {n}")
    y = _samples(rule, f)
    wy = rule.weights * y
    coeffs = np.zeros((n + 1) ** 2)
    for lo in range(0, rule.m, _CHUNK):
        hi = min(lo + _CHUNK, rule.m)
        coeffs += eval_basis_block(n, rule.points[lo:hi]) @ wy[lo:hi]
    return Hyperinterpolant(n=n, coeffs=coeffs, rule_provenance=rule.provenance)


def audited_fit(rule, f, n):
    """fit() preceded by an MZ audit; refuses rules with eta >= 1.

    With a rank-deficient discrete Gram (eta >= 1) the stability and error
    theory is vacuous, so we fail loudly instead of degrading silently.
    """
    report = mz_constant(rule, n)
    if report.eta >= 1.0 or report.rank_deficient:
        raise ValueError(
            f"rule unusable at degree {n}: eta = {report.eta:.6g}, "
            f"lambda_min = {report.lambda_min:.3e} (rank deficient)")
    h = fit(rule, f, n)
    return Hyperinterpolant(n=h.n, coeffs=h.coeffs,
                            rule_provenance=h.rule_provenance,
                            eta_used=report.eta)


def evaluate_block(h, points):
    """Evaluate via the coefficient sum at many points; returns shape (m,)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = np.empty(pts.shape[0])
    for lo in range(0, pts.shape[0], _CHUNK):
        hi = min(lo + _CHUNK, pts.shape[0])
        out[lo:hi] = h.coeffs @ eval_basis_block(h.n, pts[lo:hi])
    return out


def evaluate(h, x):
    """Evaluate at a single point."""
    return float(evaluate_block(h, np.asarray(x, dtype=float)[None, :])[0])


def evaluate_kernel(rule, f, n, points):
    """Kernel-path evaluation sum_j w_j f(x_j) G_n(x, x_j) from raw samples.

    Same polynomial as evaluate(fit(rule, f, n), .) by rearranging the
    double sum through the addition theorem; kept as an independent code
    path for cross-checks.
    """
    y = _samples(rule, f)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    wy = rule.weights * y
    out = np.empty(pts.shape[0])
    for lo in range(0, pts.shape[0], 1000):
        hi = min(lo + 1000, pts.shape[0])
        u = pts[lo:hi] @ rule.points.T          # inner products, (chunk, m)
        out[lo:hi] = kernel_dot(n, u) @ wy
    return out


def project_reference(f, n, ref):
    """Reference L2 projection P_n f computed with a high-exactness rule.

    Stands in for the exact Fourier coefficients; refuses a reference rule
    whose measured exactness degree is below n + 1.
    """
    report = exactness_degree(ref, max_scan=n + 1)
    if report.degree < n + 1:
        raise ValueError(
            f"reference rule exactness {report.degree} < n + 1 = {n + 1}; "
            "refusing the degenerate projection")
    return fit(ref, f, n)


def write_coeffs(h, path):
    """Dump coefficients as CSV `ell,k,coeff` with 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("ell,k,coeff\n")
        for (ell, k), c in zip(basis_indices(h.n), h.coeffs):
            fh.write(f"{ell},{k},{c:.17g}\n")


def read_coeffs(path):
    """Read a coefficient CSV written by write_coeffs."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "ell,k,coeff":
            raise ValueError(f"{path}: unexpected header {header!r}")
        for line in fh:
            ell_s, k_s, c_s = line.strip().split(",")
            rows.append((int(ell_s), int(k_s), float(c_s)))
    n = rows[-1][0]
    coeffs = np.zeros((n + 1) ** 2)
    for ell, k, c in rows:
        coeffs[ell * ell + (k - 1)] = c
    return Hyperinterpolant(n=n, coeffs=coeffs)
