"""SVD-backed subspace algebra: kernels, images, intersections, comparisons.

All subspaces are represented by orthonormal column bases.  Rank decisions
use the standard relative rule: a singular value counts as zero when it is
at most ``rank_tol * sigma_max`` (or ``rank_tol`` itself when the matrix
vanishes), with ``rank_tol`` defaulting to ``max(shape) * machine eps``.
Column phases are normalized so repeated runs produce identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

ORTHONORMALITY_TOL = 1e-12
EQUALITY_TOL = 1e-8


def default_rank_tol(shape: tuple[int, int]) -> float:
    return max(shape) * np.finfo(float).eps


def _phase_fix(basis: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    fixed = basis.copy()
    for j in range(fixed.shape[1]):
        col = fixed[:, j]
        i = int(np.argmax(np.abs(col)))
        pivot = col[i]
        if abs(pivot) > 0:
            fixed[:, j] = col * (np.conj(pivot) / abs(pivot))
    return fixed


@dataclass(frozen=True)
class Subspace:
    """Orthonormal column basis of a linear subspace.

    ``stabilized`` is set by :func:`generalized_kernel` and records whether
    the kernel chain had stopped growing at the requested power.
    """

    basis: np.ndarray
    rank_tol: float
    stabilized: bool | None = None

    def __post_init__(self):
        basis = np.array(self.basis, dtype=complex)
        if basis.ndim != 2:
            raise DimensionMismatch("subspace basis must be a 2-d array")
        d, k = basis.shape
        if k > d:
            raise DimensionMismatch(f"basis has more columns ({k}) than ambient dim ({d})")
        if k > 0:
            gram_defect = np.linalg.norm(basis.conj().T @ basis - np.eye(k))
            if gram_defect > ORTHONORMALITY_TOL:
                raise DimensionMismatch(
                    f"basis columns are not orthonormal (defect {gram_defect:.3e})"
                )
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def ambient_dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def projector(self) -> np.ndarray:
        if self.dim == 0:
            return np.zeros((self.ambient_dim, self.ambient_dim), dtype=complex)
        return self.basis @ self.basis.conj().T

    def to_json_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "rank_tol": float(self.rank_tol),
            "basis": [
                [float(z.real), float(z.imag)] for z in self.basis.flatten(order="C")
            ],
        }


@dataclass(frozen=True)
class SubspaceComparison:
    """Verdict of a subspace equality test with its projector distance."""

    equal: bool
    distance: float
    dim_left: int
    dim_right: int


def kernel(matrix: np.ndarray, rank_tol: float | None = None) -> Subspace:
    """Orthonormal basis of the numerical null space of ``matrix``."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch("expected a 2-d array")
    d1, d2 = m.shape
    tol = default_rank_tol(m.shape) if rank_tol is None else float(rank_tol)
    if d1 == 0 or d2 == 0:
        return Subspace(np.eye(d2, dtype=complex), tol)
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    cutoff = tol * s[0] if s.size and s[0] > 0 else tol
    rank = int(np.sum(s > cutoff))
    return Subspace(_phase_fix(vh[rank:].conj().T), tol)


def image(matrix: np.ndarray, rank_tol: float | None = None) -> Subspace:
    """Orthonormal basis of the column space of ``matrix``."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch("expected a 2-d array")
    d1, d2 = m.shape
    tol = default_rank_tol(m.shape) if rank_tol is None else float(rank_tol)
    if d1 == 0 or d2 == 0:
        return Subspace(np.zeros((d1, 0), dtype=complex), tol)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    cutoff = tol * s[0] if s.size and s[0] > 0 else tol
    rank = int(np.sum(s > cutoff))
    return Subspace(_phase_fix(u[:, :rank]), tol)


def orthonormal_columns(matrix: np.ndarray, rank_tol: float | None = None) -> np.ndarray:
    """Column-space basis as a bare array (empty allowed)."""
    return image(matrix, rank_tol).basis


def generalized_kernel(
    matrix: np.ndarray, power: int, rank_tol: float | None = None
) -> Subspace:
    """Kernel of ``matrix ** power`` with a chain-stabilization check.

    The power is capped at the ambient dimension (no kernel can keep
    growing past it).  The returned subspace records whether
    ``ker(M^power) == ker(M^(power+1))`` held, i.e. whether the chain had
    stabilized at the requested power.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch("generalized kernels need a square matrix")
    if power < 1:
        raise DimensionMismatch("power must be a positive integer")
    power = min(power, m.shape[0]) if m.shape[0] > 0 else 1
    mp = np.linalg.matrix_power(m, power)
    ker_p = kernel(mp, rank_tol)
    ker_next = kernel(mp @ m, rank_tol)
    return Subspace(ker_p.basis, ker_p.rank_tol, stabilized=ker_next.dim == ker_p.dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Orthonormal basis of the intersection of two subspaces.

    A vector lies in both subspaces iff it is annihilated by both
    projector complements, so the intersection is the kernel of the
    stacked system ``[(I - P_a); (I - P_b)]``.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    d = a.ambient_dim
    eye = np.eye(d, dtype=complex)
    stacked = np.vstack([eye - a.projector(), eye - b.projector()])
    # small singular values of the stack measure the angle to both spaces;
    # members sit at rounding level, so floor the cutoff above svd noise
    return kernel(stacked, max(a.rank_tol, b.rank_tol, 1e-9))


def subspace_equal(a: Subspace, b: Subspace, tol: float = EQUALITY_TOL) -> SubspaceComparison:
    """Compare two subspaces by the Frobenius distance of their projectors."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    distance = float(np.linalg.norm(a.projector() - b.projector()))
    return SubspaceComparison(
        equal=(a.dim == b.dim and distance <= tol),
        distance=distance,
        dim_left=a.dim,
        dim_right=b.dim,
    )


def apply_map(matrix: np.ndarray, a: Subspace, rank_tol: float | None = None) -> Subspace:
    """Image of a subspace under a linear map, with a fresh rank decision."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch("expected a 2-d array")
    if m.shape[1] != a.ambient_dim:
        raise DimensionMismatch(
            f"map expects ambient dim {m.shape[1]}, subspace has {a.ambient_dim}"
        )
    # the input basis already carries rounding from whatever produced it, so
    # map images default to a looser relative tolerance than a bare SVD
    tol = 1e-12 if rank_tol is None else float(rank_tol)
    if a.dim == 0:
        return Subspace(np.zeros((m.shape[0], 0), dtype=complex), tol)
    product = m @ a.basis
    # rank is judged against the scale of the map, not of the product, so a
    # subspace the map annihilates comes back empty instead of noise-rank
    scale = float(np.linalg.norm(m, ord=2))
    if scale == 0.0 or float(np.linalg.norm(product, ord=2)) <= tol * scale:
        return Subspace(np.zeros((m.shape[0], 0), dtype=complex), tol)
    return image(product, tol)


def complement_within(inner: Subspace, outer: Subspace) -> Subspace:
    """Orthogonal complement of ``inner`` inside ``outer``.

    Parameterizes representatives of the set difference outer-minus-inner:
    adding anything from ``inner`` to these vectors stays in the
    difference, so one orthonormal slice is enough.
    """
    if inner.ambient_dim != outer.ambient_dim:
        raise DimensionMismatch(
            f"ambient dims differ: {inner.ambient_dim} vs {outer.ambient_dim}"
        )
    if outer.dim == 0:
        return Subspace(np.zeros((outer.ambient_dim, 0), dtype=complex), outer.rank_tol)
    residual = outer.basis - inner.projector() @ outer.basis
    # singular values here are sines of principal angles: directions not in
    # the inner space sit at 1, contained ones at rounding level
    return image(residual, max(inner.rank_tol, outer.rank_tol, 1e-8))
