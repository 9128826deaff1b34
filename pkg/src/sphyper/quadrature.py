"""Rule application, measured exactness degree, and the MZ constant eta.

The Marcinkiewicz-Zygmund constant of a rule at degree n is the spectral
norm of G - I where G is the discrete Gram matrix of the orthonormal
basis under the rule: G = B diag(w) B^T with B the basis-value matrix.
For any coefficient vector a, sum_j w_j chi(x_j)^2 = a^T G a while
integral(chi^2) = a^T a, so the MZ ratio extremizes exactly at the
extreme eigenvalues of G.
"""

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import SPHERE_AREA, eval_basis_block

__all__ = ["MZReport", "ExactnessReport", "apply", "mz_constant",
           "exactness_degree", "RANK_TOL", "discrete_gram"]

# lambda_min at or below this marks the Gram as rank deficient (eta >= 1,
# hyperinterpolation theory vacuous)
RANK_TOL = 1e-10

# points per chunk when accumulating Gram / coefficient reductions, keeps
# the basis-value block below ~100 MB for dim up to a few hundred
_CHUNK = 20000


@dataclass(frozen=True)
class MZReport:
    n: int
    eta: float
    lambda_min: float
    lambda_max: float
    dim: int
    rank_deficient: bool


@dataclass(frozen=True)
class ExactnessReport:
    degree: int
    residuals: list
    tol: float


def apply(rule, f):
    """sum_j w_j f(x_j); `f` is a callable on (m, 3) arrays or a value array."""
    y = f(rule.points) if callable(f) else np.asarray(f, dtype=float)
    if y.shape != (rule.m,):
        raise ValueError(f"expected {rule.m} sample values, got shape {y.shape}")
    return float(np.dot(rule.weights, y))


def discrete_gram(rule, n):
    """Discrete Gram matrix G = B diag(w) B^T, accumulated in point chunks."""
    dim = (n + 1) ** 2
    G = np.zeros((dim, dim))
    for lo in range(0, rule.m, _CHUNK):
        hi = min(lo + _CHUNK, rule.m)
        B = eval_basis_block(n, rule.points[lo:hi])
        G += (B * rule.weights[lo:hi]) @ B.T
    return G


def mz_constant(rule, n):
    """MZ constant eta = ||G - I||_2 for the rule at degree n, as an MZReport."""
    if n < 0:
        raise ValueError(f"degree n must be >= 0, got {n}")
    G = discrete_gram(rule, n)
    dim = G.shape[0]
    if dim <= 2000:
        try:
            lam = np.linalg.eigvalsh(G)
        except np.linalg.LinAlgError as exc:
            raise RuntimeError(f"eigensolver failed on the {dim}x{dim} Gram: {exc}")
        lam_min, lam_max = float(lam[0]), float(lam[-1])
    else:
        from scipy.sparse.linalg import eigsh
        try:
            lam_max = float(eigsh(G, k=1, which="LA", return_eigenvectors=False)[0])
            lam_min = float(eigsh(G, k=1, which="SA", return_eigenvectors=False)[0])
        except Exception as exc:
            raise RuntimeError(f"Lanczos eigensolver failed on dim {dim}: {exc}")
    # Gram is PSD; scrub the tiny negative round-off an eigensolver may emit
    lam_min = max(lam_min, 0.0)
    eta = max(abs(lam_min - 1.0), abs(lam_max - 1.0))
    return MZReport(n=n, eta=eta, lambda_min=lam_min, lambda_max=lam_max,
                    dim=dim, rank_deficient=lam_min <= RANK_TOL)


def exactness_degree(rule, max_scan, tol=1e-8):
    """Largest consecutive degree the rule integrates exactly.

    Degree l passes iff max_k |apply(rule, Y_{l,k}) - sqrt(4*pi)*delta_{l0}|
    <= tol (the l=0 target is integral(Y_{0,1}) = sqrt(4*pi)).  Scans l =
    0..max_scan and stops at the first failure; a rule that cannot even
    integrate constants gets degree -1.
    """
    if max_scan < 0:
        raise ValueError(f"max_scan must be >= 0, got {max_scan}")
    # one basis evaluation up to max_scan covers every degree of the scan
    integrals = np.zeros((max_scan + 1) ** 2)
    for lo in range(0, rule.m, _CHUNK):
        hi = min(lo + _CHUNK, rule.m)
        B = eval_basis_block(max_scan, rule.points[lo:hi])
        integrals += B @ rule.weights[lo:hi]
    integrals[0] -= math.sqrt(SPHERE_AREA)

    residuals = []
    degree = -1
    for ell in range(max_scan + 1):
        block = integrals[ell * ell:(ell + 1) * (ell + 1)]
        r = float(np.max(np.abs(block)))
        residuals.append(r)
        if r <= tol and degree == ell - 1:
            degree = ell
    return ExactnessReport(degree=degree, residuals=residuals, tol=tol)
