"""Laplacian spectra: exact multiplicity of eigenvalue ``n`` and a Jacobi eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundExceeded, NonConvergence, NotApplicable
from .graphs import Graph, bits, complement, dominating_mask, induced_subgraph, remove_isolated
from .metrics import is_connected

EIGEN_TOL = 1e-9
GROUP_TOL = 1e-6
DEFAULT_EIGEN_N = 1500


def laplacian(graph: Graph) -> np.ndarray:
    """Integer Laplacian ``D - A``."""
    n = graph.n
    L = np.zeros((n, n), dtype=np.int64)
    for v, a in enumerate(graph.adj):
        for u in bits(a):
            L[v, u] = -1
        L[v, v] = a.bit_count()
    return L


def bareiss_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Entries stay exact Python integers; every division is exact.
    """
    A = np.array(matrix, dtype=object)
    if A.ndim != 2 or A.size == 0:
        return 0
    rows, cols = A.shape
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if A[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        piv = A[r, c]
        if r + 1 < rows and c + 1 < cols:
            A[r + 1:, c + 1:] = (piv * A[r + 1:, c + 1:]
                                 - A[r + 1:, c:c + 1] * A[r:r + 1, c + 1:]) // prev
        A[r + 1:, c] = 0
        prev = piv
        r += 1
    return r


def integer_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free elimination with row-content removal.

    Each updated row ``piv*row - lead*pivot_row`` is divided by the gcd of
    its entries.  Scaling a row by a non-zero rational never changes the
    rank, and it keeps entries near the size of the input instead of
    growing linearly with the pivot count as plain Bareiss does.
    """
    A = np.array(matrix, dtype=object)
    if A.ndim != 2 or A.size == 0:
        return 0
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        below = np.flatnonzero(A[r + 1:, c] != 0) + r + 1
        if below.size and c + 1 < cols:
            B = A[r, c] * A[below, c + 1:] - A[below, c:c + 1] * A[r:r + 1, c + 1:]
            g = np.gcd.reduce(B, axis=1)
            g[g == 0] = 1
            A[below, c + 1:] = B // g[:, None]
        A[below, c] = 0
        r += 1
    return r


def multiplicity_of_eigenvalue_n(graph: Graph) -> int:
    """Exact multiplicity of ``n`` as a Laplacian eigenvalue: ``n - rank(L - nI)``."""
    n = graph.n
    if n == 0:
        return 0
    M = laplacian(graph) - n * np.eye(n, dtype=np.int64)
    return n - integer_rank(M)


def jacobi_eigenvalues(matrix, tol: float = EIGEN_TOL, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted descending.

    Rotations sweep ``(p, q)`` in row-major order; a pair is skipped when
    its entry is already below ``tol / (2n)``.  Stops once the off-diagonal
    Frobenius norm drops below ``tol``.
    """
    A = np.array(matrix, dtype=float)
    n = A.shape[0]
    if n == 0:
        return np.zeros(0)
    if not np.allclose(A, A.T):
        raise ValueError("matrix is not symmetric")
    skip = tol / (2 * n)
    off = 0.0
    offdiag = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps):
        # summed directly: total-minus-diagonal cancels away ~sqrt(eps)*|A|
        off = float(np.sqrt(np.square(A[offdiag]).sum()))
        if off < tol:
            return np.sort(np.diag(A))[::-1].copy()
        for p in range(n - 1):
            row = A[p]
            for q in np.flatnonzero(np.abs(row[p + 1:]) > skip) + p + 1:
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                app, aqq = A[p, p], A[q, q]
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                newp = c * colp - s * colq
                newq = s * colp + c * colq
                A[:, p] = newp
                A[:, q] = newq
                A[p, :] = newp
                A[q, :] = newq
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
    raise NonConvergence(off, max_sweeps)


def laplacian_spectrum(graph: Graph, tol: float = EIGEN_TOL, max_n: int = DEFAULT_EIGEN_N,
                       method: str = "jacobi") -> np.ndarray:
    """All Laplacian eigenvalues, descending.

    ``method="lapack"`` swaps in ``numpy.linalg.eigvalsh`` for large inputs.
    """
    if graph.n > max_n:
        raise BoundExceeded(f"eigensolver limited to {max_n} vertices, graph has {graph.n}")
    L = laplacian(graph)
    if method == "jacobi":
        return jacobi_eigenvalues(L, tol=tol)
    if method == "lapack":
        return np.sort(np.linalg.eigvalsh(L.astype(float)))[::-1]
    raise ValueError(f"unknown eigensolver {method!r}")


def multiplicity_near(values, target: float, tol: float = GROUP_TOL) -> int:
    return int(np.sum(np.abs(np.asarray(values) - target) < tol))


def spectral_radius_multiplicity(graph: Graph, method: str = "jacobi") -> int:
    """Multiplicity of the largest Laplacian eigenvalue.

    With a dominating vertex the spectral radius is exactly ``n`` and the
    integer rank path is used; otherwise eigenvalues are grouped within 1e-6.
    """
    if graph.n == 0:
        raise ValueError("empty graph has no spectrum")
    if dominating_mask(graph):
        return multiplicity_of_eigenvalue_n(graph)
    ev = laplacian_spectrum(graph, method=method)
    return multiplicity_near(ev, ev[0])


def complement_core(graph: Graph) -> Graph:
    """Complement with its isolated vertices removed."""
    return remove_isolated(complement(graph))


@dataclass(frozen=True)
class EtaCheck:
    hypotheses: bool
    equality: bool
    eta: int
    dom_count: int

    @property
    def consistent(self) -> bool:
        return self.hypotheses == self.equality

    def __iter__(self):
        return iter((self.hypotheses, self.equality, self.consistent))


def check_eta_theorem(graph: Graph, method: str = "jacobi") -> EtaCheck:
    """Test "spectral-radius multiplicity equals the number of dominating vertices"
    against its characterisation: non-complete, has a dominating vertex, and
    the complement minus isolated vertices is connected.
    """
    if graph.n < 3:
        raise NotApplicable("the characterisation needs at least 3 vertices")
    dom = dominating_mask(graph).bit_count()
    core = complement_core(graph)
    hyp = (not graph.is_complete()) and dom > 0 and is_connected(core)
    eta = spectral_radius_multiplicity(graph, method=method)
    return EtaCheck(hyp, eta == dom, eta, dom)


def check_join_relation(graph: Graph, method: str = "jacobi", tol: float = GROUP_TOL) -> bool:
    """With ``r`` dominating vertices: the top ``r`` eigenvalues equal ``n`` and
    the next one equals the spectral radius of the rest shifted by ``r``.
    """
    dom = dominating_mask(graph)
    r = dom.bit_count()
    n = graph.n
    if r == 0:
        raise NotApplicable("graph has no dominating vertex")
    if n == r:
        raise NotApplicable("graph is complete; no vertices outside the dominating set")
    rest = induced_subgraph(graph, [v for v in range(n) if not dom >> v & 1])
    ev = laplacian_spectrum(graph, method=method)
    ev_rest = laplacian_spectrum(rest, method=method)
    top_ok = bool(np.all(np.abs(ev[:r] - n) < tol))
    return top_ok and abs(ev[r] - (ev_rest[0] + r)) < tol


@dataclass
class SpectrumReport:
    n: int
    mult_of_n: int
    eigenvalues: np.ndarray = field(repr=False)
    eta_lambda1: int
    dom_count: int

    def as_dict(self, top: int = 10) -> dict:
        return {
            "n": self.n,
            "mult_of_n": self.mult_of_n,
            "eta_lambda1": self.eta_lambda1,
            "dom_count": self.dom_count,
            "top_eigenvalues": [round(float(x), 9) + 0.0 for x in self.eigenvalues[:top]],
        }


def spectrum_report(graph: Graph, max_n: int = DEFAULT_EIGEN_N, method: str = "jacobi") -> SpectrumReport:
    ev = laplacian_spectrum(graph, max_n=max_n, method=method)
    dom = dominating_mask(graph).bit_count()
    mult_n = multiplicity_of_eigenvalue_n(graph)
    eta = mult_n if dom else multiplicity_near(ev, ev[0])
    return SpectrumReport(graph.n, mult_n, ev, eta, dom)
