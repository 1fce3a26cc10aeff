"""Maximization of pi_n(sqrt(D) A sqrt(D)) over weights and over sign matrices.

The inner problem (weights on the simplex for a fixed sign matrix) is solved
by projected gradient ascent with backtracking and multistart. The outer
problem is either exhaustive over the census of switching classes or a
heuristic sign-flip local search.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import bounds
from .errors import ArgumentError, ProjConstError, ResourceBudgetError, SpectralGapError
from .families import (
    CANONICAL_MAX_ORDER,
    CENSUS_MAX_ORDER,
    a6,
    canonical_form,
    enumerate_two_graphs,
    kronecker_double,
    polygon_matrix,
)
from .spectra import eigh, scaled_matrix, signature, weighted_objective, weighted_spectrum
from .twograph import (
    as_sign_matrix,
    blow_up,
    complement,
    is_clique_free,
    orbits_from_group,
    stabilizer,
    two_graph_of,
)

ORBIT_GROUP_BUDGET = 20_000
TIE_TOL = 1e-9
ARMIJO = 1e-4


class CertificateError(ProjConstError, AssertionError):
    """A certificate failed one of its recomputation or bound checks."""


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 16
    step_tol: float = 1e-12
    value_tol: float = 1e-10
    max_iter: int = 5000
    gap_tol: float = 1e-8
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.starts < 1 or self.max_iter < 1 or self.jobs < 1:
            raise ArgumentError("starts, max_iter and jobs must be positive")
        if min(self.step_tol, self.value_tol, self.gap_tol) <= 0:
            raise ArgumentError("tolerances must be positive")


def default_jobs() -> int:
    return int(os.environ.get("PROJCONST_JOBS", "1"))


# ---------------------------------------------------------------------------
# weights


def project_simplex(y) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = 1} (sort-based water filling)."""
    y = np.asarray(y, dtype=float)
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - 1.0
    ks = np.arange(1, y.size + 1)
    rho = np.nonzero(u - css / ks > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(y - theta, 0.0)


def _ascent_gradient(A: np.ndarray, D: np.ndarray, n: int) -> np.ndarray:
    """Gradient of the objective, extended to zero weights by a one-sided limit.

    Positive weights use lambda_k u_{k,i}^2 / d_i. At d_i = 0 the first-order
    change of a nonzero eigenvalue lambda_k is (A sqrt(D) u_k)_i^2 / lambda_k,
    which is what is used there (only positive lambda_k contribute).
    """
    w, U = eigh(scaled_matrix(A, D), "lapack")
    w, U = w[:n], U[:, :n]
    g = np.empty(D.size)
    pos = D > 1e-300
    g[pos] = (U[pos] ** 2 @ w) / D[pos]
    if not np.all(pos):
        W = A[~pos] @ (np.sqrt(D)[:, None] * U)
        keep = w > 1e-12
        g[~pos] = (W[:, keep] ** 2) @ (1.0 / w[keep]) if np.any(keep) else 0.0
    return g


class AscentResult(NamedTuple):
    weights: np.ndarray
    value: float
    iterations: int
    trace: list


def ascend(A, n: int, D0, cfg: OptimizerConfig, orbits=None) -> AscentResult:
    """Projected gradient ascent on the simplex from ``D0``.

    With ``orbits`` the weights are tied: the variables are the masses of the
    orbits, spread evenly inside each orbit. Backtracking halves the step
    until the Armijo condition holds; the accepted values form a
    nondecreasing sequence (returned as ``trace``).
    """
    A = np.asarray(A, dtype=float)
    d = A.shape[0]
    if orbits is None:
        E = np.eye(d)
    else:
        E = np.zeros((d, len(orbits)))
        for o, block in enumerate(orbits):
            E[list(block), o] = 1.0 / len(block)
    x = np.linalg.lstsq(E, np.asarray(D0, dtype=float), rcond=None)[0]
    x = project_simplex(x)

    def f(z):
        return float(np.sum(weighted_spectrum(A, E @ z)[:n]))

    fx = f(x)
    trace = [fx]
    step = 1.0
    stalls = 0
    it = 0
    for it in range(1, cfg.max_iter + 1):
        g = E.T @ _ascent_gradient(A, E @ x, n)
        g = g - g.mean()
        accepted = False
        t = step
        while t > 1e-18:
            x_new = project_simplex(x + t * g)
            dx = x_new - x
            if np.max(np.abs(dx)) <= cfg.step_tol:
                break
            f_new = f(x_new)
            if f_new >= fx + ARMIJO * float(g @ dx) and f_new >= fx:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        gain = f_new - fx
        x, fx = x_new, f_new
        trace.append(fx)
        step = min(2.0 * t, 1e6)
        stalls = stalls + 1 if gain <= cfg.value_tol else 0
        if stalls >= 3:
            break
    return AscentResult(E @ x, fx, it, trace)


def stabilizer_orbits(A, budget: int = ORBIT_GROUP_BUDGET):
    """Orbits of Stab(A) on indices, or None when the group is too large to list."""
    A = as_sign_matrix(A)
    try:
        return orbits_from_group(stabilizer(A, max_order=None, max_group_size=budget), A.shape[0])
    except ResourceBudgetError:
        return None


def _orbit_average(D, orbits):
    out = np.array(D, dtype=float)
    for block in orbits:
        out[list(block)] = out[list(block)].mean()
    return out


def _start_points(d: int, orbits, cfg: OptimizerConfig):
    rng = np.random.default_rng(cfg.seed)
    uniform = np.full(d, 1.0 / d)
    symmetric = [uniform]
    if orbits is not None and len(orbits) > 1:
        bary = np.zeros(d)
        for block in orbits:
            bary[list(block)] = 1.0 / (len(orbits) * len(block))
        symmetric.append(bary)
    randoms = [rng.dirichlet(np.ones(d)) for _ in range(max(cfg.starts - len(symmetric), 0))]
    return symmetric, randoms


class WeightOptimum(NamedTuple):
    weights: np.ndarray
    value: float
    uniform_shortcut_used: bool
    orbits: list | None
    concave: bool


def optimize_weights(A, n: int, cfg: OptimizerConfig | None = None) -> WeightOptimum:
    """Full-detail version of :func:`maximize_weights`."""
    cfg = cfg or OptimizerConfig()
    A = as_sign_matrix(A)
    d = A.shape[0]
    if not 1 <= n <= d:
        raise ArgumentError(f"n={n} outside 1..{d}")
    uniform = np.full(d, 1.0 / d)
    if d == 1:
        return WeightOptimum(uniform, 1.0, False, [(0,)], True)

    orbits = stabilizer_orbits(A)
    n_plus, n_zero, _ = signature(A)
    concave = n_plus == n and n_zero == 0
    transitive = orbits is not None and len(orbits) == 1

    best_w = np.zeros(d)
    best_w[0] = 1.0
    best_v = 1.0  # any single vertex carries exactly one unit eigenvalue
    uniform_value = weighted_objective(A, uniform, n)
    if uniform_value > best_v + TIE_TOL:
        best_w, best_v = uniform, uniform_value

    symmetric, randoms = _start_points(d, orbits, cfg)
    tied = orbits if orbits is not None and len(orbits) < d else None
    for D0 in symmetric:
        if tied is not None:
            D0 = ascend(A, n, D0, cfg, orbits=tied).weights
        res = ascend(A, n, D0, cfg)
        if res.value > best_v + TIE_TOL:
            best_w, best_v = res.weights, res.value
    for D0 in randoms:
        res = ascend(A, n, D0, cfg)
        if res.value > best_v + TIE_TOL:
            best_w, best_v = res.weights, res.value

    if concave and orbits is not None:
        # concave and Stab(A)-invariant, so the orbit average is never worse
        sym = _orbit_average(best_w, orbits)
        sym_v = weighted_objective(A, sym, n)
        if sym_v >= best_v - TIE_TOL:
            best_w, best_v = sym, sym_v

    # odd order + transitive stabilizer forces a uniform maximizer whenever an
    # interior maximizer exists; the multistart above guards the boundary case
    shortcut = transitive and d % 2 == 1 and n > 1 and best_v <= uniform_value + TIE_TOL
    if shortcut:
        best_w, best_v = uniform, uniform_value
    return WeightOptimum(best_w, float(best_v), shortcut, orbits, concave)


def maximize_weights(A, n: int, cfg: OptimizerConfig | None = None):
    """Best weight vector found for ``A`` and its objective value."""
    res = optimize_weights(A, n, cfg)
    return res.weights, res.value


# ---------------------------------------------------------------------------
# sign patterns


def top_gram(M, n: int, gap_tol: float = 1e-8, strict: bool = True) -> np.ndarray:
    """Gram matrix U U^t of the top-n eigenvectors of a symmetric matrix."""
    w, U = eigh(M, "lapack")
    if strict and n < w.size and w[n - 1] - w[n] <= gap_tol:
        raise SpectralGapError(w[n - 1] - w[n], gap_tol)
    return U[:, :n] @ U[:, :n].T


def sign_mismatches(A, gram, gap_tol: float = 1e-8):
    """Pairs i < j with |gram_ij| > gap_tol whose sign disagrees with a_ij."""
    iu = np.triu_indices(A.shape[0], 1)
    g = gram[iu]
    bad = (np.abs(g) > gap_tol) & (np.sign(g) != A[iu])
    return list(zip(iu[0][bad].tolist(), iu[1][bad].tolist()))


def check_sign_optimality(A, n: int, weights=None, gap_tol: float = 1e-8) -> bool:
    """Whether a_ij = sgn<r_i, r_j> for the rows r_i of the top-n eigenvectors.

    Uses sqrt(D) A sqrt(D) when ``weights`` are given (row scaling by sqrt(d_i)
    does not change signs). Pairs with |<r_i, r_j>| <= gap_tol are skipped.
    Raises :class:`SpectralGapError` when lambda_n = lambda_{n+1}, since the
    rows then depend on the choice of eigenbasis.
    """
    A = as_sign_matrix(A)
    d = A.shape[0]
    if not 1 <= n <= d:
        raise ArgumentError(f"n={n} outside 1..{d}")
    D = np.full(d, 1.0 / d) if weights is None else np.asarray(weights, dtype=float)
    gram = top_gram(scaled_matrix(A, D), n, gap_tol)
    return not sign_mismatches(A, gram, gap_tol)


class LocalSearchResult(NamedTuple):
    matrix: np.ndarray
    value: float
    converged: bool
    trace: list


def sign_flip_local_search(A0, n: int, cfg: OptimizerConfig | None = None) -> LocalSearchResult:
    """Flip signs towards the sign pattern of the top-n Gram matrix.

    Each sweep flips every mismatched pair at once. Since
    tr(B U U^t) exceeds pi_n(A) by four times the sum of the flipped |<r_i, r_j>|,
    Ky Fan's inequality makes pi_n(B) >= tr(B U U^t) > pi_n(A), so values only
    go up. Uniform weights throughout; returned value is pi_n(A)/d.
    """
    cfg = cfg or OptimizerConfig()
    A = as_sign_matrix(A0).copy()
    d = A.shape[0]
    if not 1 <= n <= d:
        raise ArgumentError(f"n={n} outside 1..{d}")

    def value(M):
        return float(np.sum(eigh(M, "lapack")[0][:n])) / d

    current = value(A)
    trace = [current]
    for _ in range(cfg.max_iter):
        flips = sign_mismatches(A, top_gram(A, n, strict=False), cfg.gap_tol)
        if not flips:
            return LocalSearchResult(A, current, True, trace)
        B = A.copy()
        for i, j in flips:
            B[i, j] = B[j, i] = -A[i, j]
        new = value(B)
        if new < current + cfg.value_tol:
            return LocalSearchResult(A, current, True, trace)
        A, current = B, new
        trace.append(current)
    return LocalSearchResult(A, current, False, trace)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    n: int
    d: int
    matrix: np.ndarray
    weights: np.ndarray
    value: float
    spectrum: np.ndarray
    sign_optimal: bool
    orbit_symmetric: bool
    uniform_shortcut_used: bool
    mode: str = "direct"
    extra: dict = field(default_factory=dict)

    def recompute(self) -> float:
        return weighted_objective(self.matrix, self.weights, self.n)

    def failures(self, tol: float = 1e-10) -> list[str]:
        """Names of the checks this certificate fails (empty when valid)."""
        bad = []
        if abs(np.sum(self.weights) - 1.0) > 1e-12 or np.any(self.weights < 0):
            bad.append("weights")
        elif abs(self.recompute() - self.value) > tol:
            bad.append("value")
        if self.value > bounds.kll_upper(self.n, self.d) + 1e-9:
            bad.append("kll_upper")
        if self.value > bounds.kadets_snobar(self.n) + 1e-9:
            bad.append("kadets_snobar")
        if self.value < self.n / self.d - 1e-12:
            bad.append("trace_floor")
        return bad

    def verify(self, tol: float = 1e-10) -> None:
        bad = self.failures(tol)
        if bad:
            raise CertificateError(f"certificate fails: {', '.join(bad)}")


def _orbit_constant(D, orbits, tol: float = 1e-6) -> bool:
    if orbits is None:
        return False
    return all(np.ptp(D[list(block)]) <= tol for block in orbits)


def make_certificate(A, n: int, weights, mode: str = "direct",
                     uniform_shortcut_used: bool = False, orbits=None) -> Certificate:
    A = as_sign_matrix(A)
    d = A.shape[0]
    D = np.asarray(weights, dtype=float)
    D = D / D.sum()
    try:
        sign_ok = check_sign_optimality(A, n, D)
    except SpectralGapError:
        sign_ok = False
    if orbits is None:
        orbits = stabilizer_orbits(A)
    cert = Certificate(
        n=n,
        d=d,
        matrix=A,
        weights=D,
        value=weighted_objective(A, D, n),
        spectrum=weighted_spectrum(A, D),
        sign_optimal=sign_ok,
        orbit_symmetric=_orbit_constant(D, orbits),
        uniform_shortcut_used=uniform_shortcut_used,
        mode=mode,
    )
    cert.verify()
    return cert


def certify_matrix(A, n: int, cfg: OptimizerConfig | None = None, mode: str = "direct") -> Certificate:
    """Optimize the weights for ``A`` and wrap the result in a checked certificate."""
    res = optimize_weights(A, n, cfg)
    return make_certificate(A, n, res.weights, mode, res.uniform_shortcut_used, res.orbits)


# ---------------------------------------------------------------------------
# outer search


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(*item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*items)))


def _optimize_task(A, n, cfg):
    return optimize_weights(A, n, cfg)


def census_candidates(n: int, d: int, prune: bool = True) -> list[np.ndarray]:
    """Census representatives of order d, optionally only the K_{n+2}-free ones."""
    reps = enumerate_two_graphs(d)
    if prune:
        reps = [A for A in reps if is_clique_free(two_graph_of(A), n + 2)]
    return reps


def _pick_best(matrices, results):
    """Argmax of value; near-ties go to the smallest canonical form."""
    top = max(r.value for r in results)
    tied = [
        (canonical_form(A) if A.shape[0] <= CANONICAL_MAX_ORDER else "", k)
        for k, (A, r) in enumerate(zip(matrices, results))
        if r.value >= top - TIE_TOL
    ]
    return min(tied)[1]


def exhaustive_search(n: int, d: int, cfg: OptimizerConfig | None = None, prune: bool = True):
    """Optimize every census class; returns (matrices, optimizer results)."""
    cfg = cfg or OptimizerConfig()
    if not 1 <= n <= d:
        raise ArgumentError(f"need 1 <= n <= d, got n={n}, d={d}")
    if d > CENSUS_MAX_ORDER:
        raise ResourceBudgetError(f"exhaustive search limited to d <= {CENSUS_MAX_ORDER}")
    reps = census_candidates(n, d, prune)
    results = _map(_optimize_task, [(A, n, cfg) for A in reps], cfg.jobs)
    return reps, results


def family_seeds(d: int) -> list[np.ndarray]:
    """Sign matrices of order d built from the known families.

    Polygons, a6 and their Kronecker doubles, padded to order d by blowing up
    the last vertex, plus the complements of all of these.
    """
    base = [polygon_matrix(k) for k in range(1, (d - 1) // 2 + 1)]
    if d >= 6:
        base.append(a6())
    doubles = [kronecker_double(M) for M in base if 2 * M.shape[0] <= d]
    seeds = []
    for M in base + doubles:
        while M.shape[0] < d:
            M = blow_up(M, M.shape[0] - 1)
        seeds.append(M)
    seeds += [complement(M) for M in seeds]
    return seeds


def random_sign_matrix(d: int, rng) -> np.ndarray:
    upper = np.triu(rng.choice([-1, 1], size=(d, d)), 1)
    return upper + upper.T + np.eye(d, dtype=np.int64)


def heuristic_search(n: int, d: int, cfg: OptimizerConfig | None = None, keep: int = 4):
    """Sign-flip local search from random and family seeds, then weight optimization."""
    cfg = cfg or OptimizerConfig()
    if not 1 <= n <= d:
        raise ArgumentError(f"need 1 <= n <= d, got n={n}, d={d}")
    rng = np.random.default_rng(cfg.seed)
    seeds = family_seeds(d) + [random_sign_matrix(d, rng) for _ in range(cfg.starts)]
    local = [sign_flip_local_search(S, n, cfg) for S in seeds]
    local.sort(key=lambda r: -r.value)
    chosen, spectra = [], []
    for r in local:
        spec = np.round(eigh(r.matrix, "lapack")[0], 8)
        if any(np.array_equal(spec, s) for s in spectra):
            continue
        spectra.append(spec)
        chosen.append(r.matrix)
        if len(chosen) == keep:
            break
    results = _map(_optimize_task, [(A, n, cfg) for A in chosen], cfg.jobs)
    return chosen, results


def best_constant(n: int, d: int, cfg: OptimizerConfig | None = None,
                  mode: str = "exhaustive", prune: bool = True) -> Certificate:
    """Certified lower bound for the relative projection constant Pi(n, d).

    ``exhaustive`` optimizes the weights of every switching class of order d
    (restricted to K_{n+2}-free two-graphs when ``prune``) and is exact up to
    the weight optimizer; ``heuristic`` makes no exactness claim.
    """
    cfg = cfg or OptimizerConfig()
    if mode == "exhaustive":
        matrices, results = exhaustive_search(n, d, cfg, prune)
    elif mode == "heuristic":
        matrices, results = heuristic_search(n, d, cfg)
    else:
        raise ArgumentError(f"unknown mode {mode!r}")
    k = _pick_best(matrices, results)
    best = results[k]
    return make_certificate(
        matrices[k], n, best.weights, mode, best.uniform_shortcut_used, best.orbits
    )


def table(n_max: int, d_max: int, cfg: OptimizerConfig | None = None) -> dict:
    """Exhaustive values Pi(n, d) for 1 <= n <= min(n_max, d), d <= d_max."""
    cfg = cfg or OptimizerConfig()
    return {
        (n, d): best_constant(n, d, cfg).value
        for d in range(1, d_max + 1)
        for n in range(1, min(n_max, d) + 1)
    }


__all__ = [
    "Certificate",
    "OptimizerConfig",
    "best_constant",
    "certify_matrix",
    "check_sign_optimality",
    "maximize_weights",
    "optimize_weights",
    "sign_flip_local_search",
]
