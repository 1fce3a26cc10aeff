"""Dense symmetric eigenproblems and the partial eigenvalue-sum objective.

The objective maximized throughout the package is

    pi_n(sqrt(D) A sqrt(D)) = sum of the n largest eigenvalues,

for a sign matrix ``A`` and a weight vector ``D`` on the probability simplex.
Spectra are always returned sorted nonincreasing, with multiplicities kept.
"""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError, ConvergenceError, DomainError, SpectralGapError

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
GAP_TOL = 1e-8


def as_symmetric(M) -> np.ndarray:
    """Return ``M`` as a float array, raising if it is not square and symmetric."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ArgumentError(f"expected a nonempty square matrix, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise ArgumentError("matrix is not symmetric")
    return M


def _off_norm(a: np.ndarray) -> float:
    # summed directly: ||a||^2 - ||diag||^2 cancels down to sqrt(eps) * ||a||
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(M, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi eigensolver.

    Sweeps over all pairs (p, q), annihilating ``a[p, q]`` with a plane
    rotation, until the off-diagonal Frobenius norm is at most
    ``tol * ||M||_F``. Returns ``(values, vectors)`` with values unsorted and
    eigenvectors as columns.
    """
    a = np.array(M, dtype=float)
    d = a.shape[0]
    V = np.eye(d)
    scale = np.linalg.norm(a)
    if scale == 0.0 or d == 1:
        return np.diag(a).copy(), V

    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= tol * scale:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0 or abs(apq) <= 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                v_p = V[:, p].copy()
                v_q = V[:, q]
                V[:, p] = c * v_p - s * v_q
                V[:, q] = s * v_p + c * v_q
    else:
        off = _off_norm(a)
        if off > tol * scale:
            raise ConvergenceError(
                f"Jacobi did not reach off-norm {tol:.0e}*||M|| in {max_sweeps} sweeps"
            )
    return np.diag(a).copy(), V


def eigh(M, method: str = "jacobi"):
    """Eigen-decomposition sorted nonincreasing.

    ``method="jacobi"`` uses :func:`jacobi_eigh`; ``method="lapack"`` defers to
    ``numpy.linalg.eigh`` and is what the optimizers use in their inner loops.
    Ties keep the solver's order (stable sort).
    """
    M = as_symmetric(M)
    if method == "jacobi":
        w, V = jacobi_eigh(M)
    elif method == "lapack":
        w, V = np.linalg.eigh(M)
    else:
        raise ArgumentError(f"unknown eigensolver {method!r}")
    order = np.argsort(-w, kind="stable")
    return w[order], V[:, order]


def eigenvalues(M, method: str = "jacobi") -> np.ndarray:
    """All eigenvalues of a symmetric matrix, nonincreasing."""
    return eigh(M, method)[0]


def partial_sum(spectrum, n: int) -> float:
    """Sum of the first ``n`` entries of a nonincreasing spectrum."""
    spectrum = np.asarray(spectrum, dtype=float)
    if not 1 <= n <= spectrum.size:
        raise ArgumentError(f"n={n} outside 1..{spectrum.size}")
    return float(np.sum(spectrum[:n]))


def check_weights(D, d: int | None = None, tol: float = 1e-12) -> np.ndarray:
    D = np.asarray(D, dtype=float)
    if D.ndim != 1:
        raise ArgumentError("weights must be a vector")
    if d is not None and D.size != d:
        raise ArgumentError(f"weight vector has length {D.size}, matrix has order {d}")
    if np.any(D < 0) or abs(D.sum() - 1.0) > tol:
        raise DomainError("weights must be nonnegative and sum to 1")
    return D


def scaled_matrix(A, D) -> np.ndarray:
    """``sqrt(D) A sqrt(D)`` as a dense array."""
    s = np.sqrt(np.asarray(D, dtype=float))
    return s[:, None] * np.asarray(A, dtype=float) * s[None, :]


def weighted_spectrum(A, D, method: str = "lapack") -> np.ndarray:
    """Spectrum of ``sqrt(D) A sqrt(D)``, computed on the support of ``D``.

    Zero-weight rows and columns vanish, so they only contribute zero
    eigenvalues; these are padded back in before sorting.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    support = np.flatnonzero(D > 0)
    sub = scaled_matrix(A[np.ix_(support, support)], D[support])
    vals = eigenvalues(sub, method)
    padded = np.concatenate([vals, np.zeros(D.size - support.size)])
    return -np.sort(-padded, kind="stable")


def weighted_objective(A, D, n: int, method: str = "lapack") -> float:
    """pi_n(sqrt(D) A sqrt(D))."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ArgumentError("A must be square")
    D = check_weights(D, A.shape[0], tol=1e-9)
    return partial_sum(weighted_spectrum(A, D, method), n)


def objective_gradient(A, D, n: int, gap_tol: float = GAP_TOL) -> np.ndarray:
    """Gradient of ``D -> pi_n(sqrt(D) A sqrt(D))`` at an interior point.

    g_i = sum_{k<=n} lambda_k u_{k,i}^2 / d_i, with (lambda_k, u_k) the top
    eigenpairs of sqrt(D) A sqrt(D). Only defined when every weight is
    positive and lambda_n > lambda_{n+1} + gap_tol.
    """
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    d = A.shape[0]
    if D.size != d:
        raise ArgumentError(f"weight vector has length {D.size}, matrix has order {d}")
    if not 1 <= n <= d:
        raise ArgumentError(f"n={n} outside 1..{d}")
    if np.any(D <= 0):
        raise DomainError("gradient needs strictly positive weights")
    w, U = eigh(scaled_matrix(A, D), "lapack")
    if n < d and w[n - 1] - w[n] <= gap_tol:
        raise SpectralGapError(w[n - 1] - w[n], gap_tol)
    return (U[:, :n] ** 2 @ w[:n]) / D


def signature(A, tol: float | None = None) -> tuple[int, int, int]:
    """(n_plus, n_zero, n_minus) with eigenvalues within ``tol`` counted as zero."""
    vals = eigenvalues(A, "lapack")
    if tol is None:
        tol = 1e-9 * vals.size
    n_plus = int(np.sum(vals > tol))
    n_minus = int(np.sum(vals < -tol))
    return n_plus, vals.size - n_plus - n_minus, n_minus
