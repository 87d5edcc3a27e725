"""Dense linear algebra for finite-dimensional quantum states.

States live on a tensor product of subsystems whose dimensions are carried
by a :class:`SystemShape`.  Subsystems are numbered from 1 and the first
factor is the most significant index, so for shape ``2x3`` the basis state
``|i, j>`` sits at row ``3 * i + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._kernels import partial_trace as _pt_kernel
from ._kernels import purity as _purity_kernel

HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_EIG_FLOOR = -1e-10
STATE_NORM_ATOL = 1e-12


class NotPositiveSemidefinite(ValueError):
    """Raised when a matrix required to be PSD has a significantly negative eigenvalue."""


def _as_complex_matrix(mat: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(mat, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class SystemShape:
    """Subsystem dimensions of a composite system.

    ``dims`` is ordered most-significant first; every entry must be at
    least 2 so each factor is a genuine quantum system.
    """

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise ValueError("a system needs at least one subsystem")
        if any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def parse(cls, text: str) -> SystemShape:
        """Parse a shape like ``"2x3x2"`` (case-insensitive separator)."""
        parts = text.lower().split("x")
        try:
            dims = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"malformed shape {text!r}") from exc
        return cls(dims)

    @property
    def num_subsystems(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def subsystems(self) -> range:
        """1-based subsystem labels, in tensor order."""
        return range(1, len(self.dims) + 1)

    def complement(self, keep: Sequence[int]) -> tuple[int, ...]:
        """Subsystem labels not in ``keep``, ascending."""
        kept = set(self.validate_labels(keep))
        return tuple(i for i in self.subsystems() if i not in kept)

    def validate_labels(self, labels: Iterable[int]) -> tuple[int, ...]:
        """Check 1-based subsystem labels for range and duplicates."""
        out = tuple(int(i) for i in labels)
        seen: set[int] = set()
        for i in out:
            if not 1 <= i <= len(self.dims):
                raise ValueError(f"subsystem label {i} outside 1..{len(self.dims)}")
            if i in seen:
                raise ValueError(f"duplicate subsystem label {i}")
            seen.add(i)
        return out

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density operator on a shaped Hilbert space.

    Construction enforces Hermiticity, unit trace, and positive
    semidefiniteness up to tight numerical slack; the stored array is
    marked read-only so cached observables can alias it safely.
    """

    matrix: np.ndarray
    shape: SystemShape
    _eigenvalues: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        mat = _as_complex_matrix(self.matrix)
        if mat.shape[0] != self.shape.total_dim:
            raise ValueError(
                f"matrix dimension {mat.shape[0]} does not match shape {self.shape}"
            )
        herm_defect = np.max(np.abs(mat - mat.conj().T)) if mat.size else 0.0
        if herm_defect > HERMITICITY_ATOL:
            raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
        tr = mat.trace()
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {tr:.12g} is not 1")
        mat = 0.5 * (mat + mat.conj().T)
        eigs = np.linalg.eigvalsh(mat)
        if eigs[0] < PSD_EIG_FLOOR:
            raise NotPositiveSemidefinite(
                f"minimum eigenvalue {eigs[0]:.3e} below {PSD_EIG_FLOOR:.0e}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "_eigenvalues", eigs)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Ascending real spectrum, computed once at validation."""
        return self._eigenvalues.copy()

    def purity(self) -> float:
        return float(_purity_kernel(self.matrix))


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector on a shaped Hilbert space."""

    vector: np.ndarray
    shape: SystemShape

    def __post_init__(self) -> None:
        vec = np.ascontiguousarray(self.vector, dtype=np.complex128)
        if vec.ndim != 1:
            raise ValueError(f"state vector must be 1-d, got shape {vec.shape}")
        if vec.shape[0] != self.shape.total_dim:
            raise ValueError(
                f"vector dimension {vec.shape[0]} does not match shape {self.shape}"
            )
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > STATE_NORM_ATOL:
            raise ValueError(f"state vector norm {norm:.12g} is not 1")
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    def density_matrix(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.vector, self.vector.conj()), self.shape)


def kron(*mats: np.ndarray) -> np.ndarray:
    """Tensor product of one or more matrices, left factor most significant."""
    if not mats:
        raise ValueError("kron of no factors")
    out = np.asarray(mats[0], dtype=np.complex128)
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def partial_trace(state: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduced state on the 1-based subsystems ``keep`` (order-insensitive)."""
    labels = sorted(state.shape.validate_labels(keep))
    if not labels:
        raise ValueError("must keep at least one subsystem")
    keep0 = tuple(i - 1 for i in labels)
    reduced = _pt_kernel(state.matrix, state.shape.dims, keep0)
    sub = SystemShape(tuple(state.shape.dims[i] for i in keep0))
    return DensityMatrix(reduced, sub)


def eig_hermitian(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a (numerically) Hermitian matrix.

    Symmetrizes first, so callers may pass matrices with roundoff-level
    asymmetry.  Returns ascending eigenvalues and the matching
    column-eigenvector matrix.
    """
    arr = _as_complex_matrix(mat)
    arr = 0.5 * (arr + arr.conj().T)
    vals, vecs = np.linalg.eigh(arr)
    return vals, vecs


def sqrt_psd(mat: np.ndarray) -> np.ndarray:
    """Principal square root of a PSD matrix.

    Eigenvalues in ``[PSD_EIG_FLOOR, 0)`` are clamped to zero; anything
    further below raises :class:`NotPositiveSemidefinite`.
    """
    vals, vecs = eig_hermitian(mat)
    if vals[0] < PSD_EIG_FLOOR:
        raise NotPositiveSemidefinite(
            f"minimum eigenvalue {vals[0]:.3e} below {PSD_EIG_FLOOR:.0e}"
        )
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def haar_random_pure(shape: SystemShape, rng: np.random.Generator) -> PureState:
    """Haar-distributed pure state, via a normalized complex Gaussian vector."""
    d = shape.total_dim
    vec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    vec /= np.linalg.norm(vec)
    return PureState(vec, shape)
