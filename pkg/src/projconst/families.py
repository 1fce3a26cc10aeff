"""Explicit sign-matrix families and the small-order two-graph census."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .errors import ArgumentError, ResourceBudgetError
from .twograph import all_ones, as_sign_matrix, complement

CANONICAL_MAX_ORDER = 9
CENSUS_MAX_ORDER = 7
_CHUNK = 40_320


def polygon_matrix(n: int) -> np.ndarray:
    """R_{2n+1}, whose two-graph is that of the regular (2n+1)-gon.

    Block form [[1, j^t, -j^t], [j, J, J - 2L], [-j, J - 2L^t, J]] where J - 2L
    is -1 strictly below the diagonal and +1 elsewhere (L is the strictly
    lower triangular 0/1 matrix; with -1 entries the blocks would leave the
    sign alphabet).
    """
    if n < 1:
        raise ArgumentError("polygon_matrix needs n >= 1")
    J = np.ones((n, n), dtype=np.int64)
    L = np.tril(J, -1)
    j = np.ones((n, 1), dtype=np.int64)
    return np.block([
        [np.ones((1, 1), dtype=np.int64), j.T, -j.T],
        [j, J, J - 2 * L],
        [-j, J - 2 * L.T, J],
    ])


def a6() -> np.ndarray:
    """Pentagon plus an isolated vertex: the largest sporadic K4-free two-graph."""
    return np.array([
        [1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, -1, -1],
        [1, 1, 1, -1, 1, -1],
        [1, 1, -1, 1, -1, 1],
        [1, -1, 1, -1, 1, 1],
        [1, -1, -1, 1, 1, 1],
    ], dtype=np.int64)


def signature_42_representatives() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three order-6 sign matrices with four positive and two negative eigenvalues."""
    a1 = np.array([
        [1, -1, 1, 1, 1, 1],
        [-1, 1, 1, 1, 1, 1],
        [1, 1, 1, 1, 1, -1],
        [1, 1, 1, 1, -1, 1],
        [1, 1, 1, -1, 1, -1],
        [1, 1, -1, 1, -1, 1],
    ], dtype=np.int64)
    a2 = np.array([
        [1, 1, 1, 1, 1, 1],
        [1, 1, -1, 1, 1, 1],
        [1, -1, 1, 1, 1, 1],
        [1, 1, 1, 1, -1, -1],
        [1, 1, 1, -1, 1, -1],
        [1, 1, 1, -1, -1, 1],
    ], dtype=np.int64)
    a3 = all_ones(6)
    a3[np.arange(6), np.arange(6)[::-1]] = -1
    return a1, a2, a3


def kronecker_double(A) -> np.ndarray:
    """A (x) J_2: every entry replaced by a constant 2x2 block."""
    A = as_sign_matrix(A)
    return np.kron(A, np.ones((2, 2), dtype=np.int64))


@lru_cache(maxsize=None)
def _permutations(d: int) -> np.ndarray:
    return np.array(list(permutations(range(d))), dtype=np.intp)


@lru_cache(maxsize=None)
def _pair_weights(d: int):
    iu = np.triu_indices(d, 1)
    weights = np.left_shift(np.int64(1), np.arange(iu[0].size - 1, -1, -1, dtype=np.int64))
    return iu, weights


def _normalized_codes(A: np.ndarray) -> np.ndarray:
    """Integer codes of every relabeling of ``A``, switched so row 0 is all +1.

    The code of a matrix reads its upper triangle row-major, most significant
    bit first, with bit 1 for a -1 entry.
    """
    d = A.shape[0]
    iu, weights = _pair_weights(d)
    perms = _permutations(d)
    out = np.empty(perms.shape[0], dtype=np.int64)
    for start in range(0, perms.shape[0], _CHUNK):
        p = perms[start:start + _CHUNK]
        B = A[p[:, :, None], p[:, None, :]]
        s = B[:, 0, :]
        B = B * s[:, :, None] * s[:, None, :]
        out[start:start + p.shape[0]] = (B[:, iu[0], iu[1]] < 0).astype(np.int64) @ weights
    return out


def matrix_from_code(code: int, d: int) -> np.ndarray:
    iu, weights = _pair_weights(d)
    A = all_ones(d)
    neg = (int(code) & weights) != 0
    A[iu[0][neg], iu[1][neg]] = -1
    A[iu[1][neg], iu[0][neg]] = -1
    return A


def canonical_code(A) -> int:
    A = as_sign_matrix(A)
    if A.shape[0] > CANONICAL_MAX_ORDER:
        raise ResourceBudgetError(
            f"canonical form limited to order {CANONICAL_MAX_ORDER}, got {A.shape[0]}"
        )
    if A.shape[0] == 1:
        return 0
    return int(_normalized_codes(A).min())


def canonical_form(A) -> str:
    """Switching- and relabeling-invariant bit string.

    Minimum over all vertex orders of the upper-triangle encoding of the
    relabeled matrix switched to make vertex 0 isolated. Two sign matrices
    have the same form iff they are switching-isomorphic.
    """
    A = as_sign_matrix(A)
    width = A.shape[0] * (A.shape[0] - 1) // 2
    return format(canonical_code(A), f"0{width}b") if width else ""


def canonical_matrix(A) -> np.ndarray:
    A = as_sign_matrix(A)
    return matrix_from_code(canonical_code(A), A.shape[0])


def switching_isomorphic(A, B) -> bool:
    A, B = as_sign_matrix(A), as_sign_matrix(B)
    return A.shape == B.shape and canonical_code(A) == canonical_code(B)


def enumerate_two_graphs(d: int) -> list[np.ndarray]:
    """One canonical sign matrix per switching-isomorphism class of order ``d``.

    Every class has a representative whose vertex 0 is isolated, so only the
    2^C(d-1, 2) matrices with row 0 all +1 are visited. Canonicalizing a new
    seed marks all of its relabelings as seen, so each class costs one
    permutation sweep. Output is sorted by canonical form.
    """
    if not 1 <= d <= CENSUS_MAX_ORDER:
        raise ResourceBudgetError(f"census limited to orders 1..{CENSUS_MAX_ORDER}, got {d}")
    if d == 1:
        return [all_ones(1)]
    free_pairs = (d - 1) * (d - 2) // 2
    seen: set[int] = set()
    classes = []
    # seeds with row 0 all +1 occupy exactly the low free_pairs bits of the code
    for seed in range(1 << free_pairs):
        if seed in seen:
            continue
        codes = _normalized_codes(matrix_from_code(seed, d))
        seen.update(codes.tolist())
        classes.append(int(codes.min()))
    return [matrix_from_code(c, d) for c in sorted(classes)]


def principal_submatrices(A, min_size: int = 1):
    A = as_sign_matrix(A)
    d = A.shape[0]
    for size in range(min_size, d + 1):
        for idx in combinations(range(d), size):
            yield idx, A[np.ix_(idx, idx)]


def omega_members(max_order: int) -> list[np.ndarray]:
    """Polygons of order <= max_order and all principal submatrices of a6().

    De-duplicated up to switching-isomorphism; polygons are listed first and
    kept verbatim, sub-matrices of a6() are kept in first-seen form.
    """
    if max_order < 3:
        raise ArgumentError("omega_members needs max_order >= 3")
    members, keys = [], set()

    def add(M):
        key = (M.shape[0], canonical_code(M))
        if key not in keys:
            keys.add(key)
            members.append(M)

    n = 1
    while 2 * n + 1 <= max_order:
        R = polygon_matrix(n)
        if R.shape[0] <= CANONICAL_MAX_ORDER:
            add(R)
        else:
            members.append(R)
        n += 1
    for _, sub in principal_submatrices(a6()):
        add(sub)
    return members


def deletion_orbits(A) -> list[tuple[int, ...]]:
    """Group vertices whose vertex-deleted sub-two-graphs are switching-isomorphic.

    Independent cross-check of :func:`projconst.twograph.orbit_decomposition`.
    """
    A = as_sign_matrix(A)
    d = A.shape[0]
    blocks: dict[int, list[int]] = {}
    for k in range(d):
        keep = [i for i in range(d) if i != k]
        blocks.setdefault(canonical_code(A[np.ix_(keep, keep)]), []).append(k)
    return sorted(tuple(b) for b in blocks.values())


__all__ = [
    "a6",
    "canonical_form",
    "canonical_matrix",
    "complement",
    "deletion_orbits",
    "enumerate_two_graphs",
    "kronecker_double",
    "omega_members",
    "polygon_matrix",
    "signature_42_representatives",
    "switching_isomorphic",
]
