"""Sign matrices, Seidel switching, two-graphs and stabilizers.

A sign matrix is a symmetric integer array with unit diagonal and +-1
off-diagonal entries, i.e. identity plus a Seidel adjacency matrix. Vertices
are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from .errors import ArgumentError, ResourceBudgetError

STABILIZER_MAX_ORDER = 10
STABILIZER_MAX_GROUP = 100_000


def is_sign_matrix(A) -> bool:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        return False
    if not np.array_equal(A, A.T) or not np.all(np.diag(A) == 1):
        return False
    return bool(np.all(np.abs(A) == 1))


def as_sign_matrix(A) -> np.ndarray:
    """Validate and return ``A`` as an int64 sign matrix."""
    arr = np.asarray(A)
    if not is_sign_matrix(arr):
        raise ArgumentError("not a sign matrix (symmetric, unit diagonal, +-1 entries)")
    return arr.astype(np.int64)


def all_ones(d: int) -> np.ndarray:
    return np.ones((d, d), dtype=np.int64)


def sign_matrix_of_graph(G: nx.Graph) -> np.ndarray:
    """Identity plus the Seidel matrix of ``G``: -1 on edges, +1 elsewhere.

    Vertices are taken in sorted order.
    """
    nodes = sorted(G.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    A = all_ones(len(nodes))
    for u, v in G.edges:
        if u == v:
            raise ArgumentError("graphs with loops have no Seidel matrix")
        A[index[u], index[v]] = A[index[v], index[u]] = -1
    return A


def graph_of_sign_matrix(A) -> nx.Graph:
    A = as_sign_matrix(A)
    G = nx.Graph()
    G.add_nodes_from(range(A.shape[0]))
    G.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(A < 0, 1))))
    return G


def switch(A, subset) -> np.ndarray:
    """Seidel switching: negate a_ij whenever exactly one of i, j is in ``subset``."""
    A = as_sign_matrix(A)
    s = np.ones(A.shape[0], dtype=np.int64)
    s[list(subset)] = -1
    return A * np.outer(s, s)


def relabel(A, perm) -> np.ndarray:
    """Matrix with entries ``A[perm[i], perm[j]]``."""
    perm = np.asarray(perm)
    return np.asarray(A)[np.ix_(perm, perm)]


def complement(A) -> np.ndarray:
    """2*I - A: every off-diagonal sign flipped."""
    A = as_sign_matrix(A)
    return 2 * np.eye(A.shape[0], dtype=np.int64) - A


@dataclass(frozen=True)
class TwoGraph:
    """Vertex count plus the set of coherent triples (sorted 3-tuples)."""

    order: int
    triples: frozenset

    def __contains__(self, triple) -> bool:
        return tuple(sorted(triple)) in self.triples

    def satisfies_cocycle(self) -> bool:
        """Every 4-subset contains an even number of coherent triples."""
        for quad in combinations(range(self.order), 4):
            count = sum(t in self.triples for t in combinations(quad, 3))
            if count % 2:
                return False
        return True


def two_graph_of(A) -> TwoGraph:
    """Triples {i, j, k} with a_ij * a_jk * a_ik = -1."""
    A = as_sign_matrix(A)
    d = A.shape[0]
    triples = frozenset(
        (i, j, k)
        for i, j, k in combinations(range(d), 3)
        if A[i, j] * A[j, k] * A[i, k] < 0
    )
    return TwoGraph(d, triples)


def switching_equivalent(A, B) -> bool:
    A, B = as_sign_matrix(A), as_sign_matrix(B)
    if A.shape != B.shape:
        raise ArgumentError(f"orders differ: {A.shape[0]} vs {B.shape[0]}")
    return two_graph_of(A) == two_graph_of(B)


def is_clique_free(T: TwoGraph, m: int) -> bool:
    """True iff no m vertices have all of their triples coherent."""
    if m < 3:
        raise ArgumentError("clique size must be at least 3")
    d = T.order
    if m > d:
        return True
    coherent = T.triples

    def extend(chosen, start):
        if len(chosen) == m:
            return True
        for v in range(start, d - (m - len(chosen)) + 1):
            if all((a, b, v) in coherent for a, b in combinations(chosen, 2)):
                if extend(chosen + [v], v + 1):
                    return True
        return False

    return not extend([], 0)


def blow_up(A, i: int) -> np.ndarray:
    """Append a copy of vertex ``i``: the new last row duplicates row ``i``."""
    A = as_sign_matrix(A)
    d = A.shape[0]
    if not 0 <= i < d:
        raise ArgumentError(f"index {i} outside 0..{d - 1}")
    B = np.empty((d + 1, d + 1), dtype=np.int64)
    B[:d, :d] = A
    B[d, :d] = B[:d, d] = A[i]
    B[d, d] = 1
    return B


def blow_up_profile(A, multiplicities) -> np.ndarray:
    """Replace vertex j by a class of ``multiplicities[j]`` twins.

    Copies are appended at the end, vertex 0's copies first.
    """
    A = as_sign_matrix(A)
    multiplicities = list(multiplicities)
    if len(multiplicities) != A.shape[0]:
        raise ArgumentError("one multiplicity per vertex required")
    if any(m < 1 for m in multiplicities):
        raise ArgumentError("multiplicities must be positive")
    for j, m in enumerate(multiplicities):
        for _ in range(m - 1):
            A = blow_up(A, j)
    return A


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """Q = P_tau Diag(eps), acting by ``M -> Q M Q^t``.

    ``perm[i]`` is tau(i); ``(Q M Q^t)[i, j] = eps[tau(i)] eps[tau(j)] M[tau(i), tau(j)]``.
    """

    perm: tuple
    signs: tuple

    @property
    def order(self) -> int:
        return len(self.perm)

    def matrix(self) -> np.ndarray:
        d = self.order
        Q = np.zeros((d, d), dtype=np.int64)
        Q[np.arange(d), self.perm] = np.asarray(self.signs)[list(self.perm)]
        return Q

    @classmethod
    def from_matrix(cls, Q) -> SignedPermutation:
        Q = np.asarray(Q)
        perm = tuple(int(np.flatnonzero(row)[0]) for row in Q)
        signs = [0] * len(perm)
        for i, t in enumerate(perm):
            signs[t] = int(Q[i, t])
        return cls(perm, tuple(signs))

    def act(self, M) -> np.ndarray:
        Q = self.matrix()
        return Q @ np.asarray(M) @ Q.T

    def __matmul__(self, other: SignedPermutation) -> SignedPermutation:
        return SignedPermutation.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> SignedPermutation:
        return SignedPermutation.from_matrix(self.matrix().T)


def _link_graph(A: np.ndarray, v: int) -> nx.Graph:
    """Graph on the other vertices: i ~ j iff {v, i, j} is a coherent triple."""
    d = A.shape[0]
    G = nx.Graph()
    G.add_nodes_from(i for i in range(d) if i != v)
    G.add_edges_from(
        (i, j)
        for i, j in combinations(G.nodes, 2)
        if A[v, i] * A[v, j] * A[i, j] < 0
    )
    return G


def stabilizer(
    A,
    max_order: int | None = STABILIZER_MAX_ORDER,
    max_group_size: int = STABILIZER_MAX_GROUP,
) -> list[SignedPermutation]:
    """All signed permutations Q with Q A Q^t = A, sorted by (perm, signs).

    Fixing tau(0) = v and the sign of vertex v forces every other sign via
    eps[tau(i)] = a_{0i} a_{v tau(i)} eps[v]; the remaining condition is that
    tau maps coherent triples through 0 onto coherent triples through v (the
    other triples follow from the cocycle identity). That is an isomorphism
    between the two link graphs, enumerated with VF2. Each solution is
    verified and its negative -Q added.
    """
    A = as_sign_matrix(A)
    d = A.shape[0]
    if max_order is not None and d > max_order:
        raise ResourceBudgetError(f"stabilizer search limited to order {max_order}, got {d}")

    group = []
    link0 = _link_graph(A, 0)
    for v in range(d):
        matcher = nx.algorithms.isomorphism.GraphMatcher(link0, _link_graph(A, v))
        for phi in matcher.isomorphisms_iter():
            perm = [0] * d
            perm[0] = v
            for i, t in phi.items():
                perm[i] = t
            eps = [0] * d
            for i in range(d):
                eps[perm[i]] = int(A[0, i] * A[v, perm[i]])
            Q = SignedPermutation(tuple(perm), tuple(eps))
            if not np.array_equal(Q.act(A), A):
                raise AssertionError("link-graph isomorphism failed to lift")
            group.append(Q)
            group.append(SignedPermutation(Q.perm, tuple(-e for e in eps)))
            if len(group) > max_group_size:
                raise ResourceBudgetError(f"stabilizer exceeds {max_group_size} elements")
    group.sort()
    return group


def orbits_from_group(group, d: int) -> list[tuple[int, ...]]:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group:
        for k, t in enumerate(g.perm):
            parent[find(k)] = find(t)
    blocks = {}
    for k in range(d):
        blocks.setdefault(find(k), []).append(k)
    return sorted(tuple(b) for b in blocks.values())


def orbit_decomposition(A, **budget) -> list[tuple[int, ...]]:
    """Orbits of the index action of Stab(A), each sorted, blocks sorted."""
    A = as_sign_matrix(A)
    return orbits_from_group(stabilizer(A, **budget), A.shape[0])
