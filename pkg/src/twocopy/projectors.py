"""Swap operators, exchange projectors, and two-copy observables.

Operators here act on the doubled space: two copies of the full system,
ordered as (copy 1 of the full system) tensor (copy 2 of the full system).
A block swap exchanges a chosen subset of subsystems between the copies;
its symmetric and antisymmetric halves generate every observable exported
by this module.  Block swaps over disjoint or nested subsets commute, so
the bound observables are assembled as plain matrix products directly in
this layout.  :func:`layout_permutation` converts to the per-subsystem
pairing (both copies of subsystem 1, then both copies of subsystem 2,
and so on) for anyone who wants to write operators pair by pair; the two
constructions agree and the test suite checks them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .linalg import HERMITICITY_ATOL, PSD_EIG_FLOOR, SystemShape

PROJECTOR_ATOL = 1e-12

OBSERVABLE_LABELS = ("K1", "K2", "V1", "V2", "K", "V", "A", "custom")
_PSD_LABELS = frozenset({"K1", "K2", "K", "A"})


def _place_values(dims: tuple[int, ...]) -> np.ndarray:
    """Mixed-radix place value of each digit, most significant first."""
    pv = np.ones(len(dims), dtype=np.int64)
    for i in range(len(dims) - 2, -1, -1):
        pv[i] = pv[i + 1] * dims[i + 1]
    return pv


def swap_permutation(shape: SystemShape, block: Sequence[int]) -> np.ndarray:
    """Index permutation of the block swap on the doubled space.

    Returns ``perm`` with ``W |c> = |perm[c]>``; the permutation is an
    involution.  ``block`` holds 1-based subsystem labels.
    """
    labels = shape.validate_labels(block)
    if not labels:
        raise ValueError("block must be nonempty")
    dims = shape.dims
    d_full = shape.total_dim
    pv = _place_values(dims)
    idx = np.arange(d_full * d_full, dtype=np.int64)
    x, y = idx // d_full, idx % d_full
    bx = np.zeros_like(x)
    by = np.zeros_like(y)
    for label in labels:
        i = label - 1
        bx += ((x // pv[i]) % dims[i]) * pv[i]
        by += ((y // pv[i]) % dims[i]) * pv[i]
    return (x - bx + by) * d_full + (y - by + bx)


def swap_operator(shape: SystemShape, block: Sequence[int]) -> np.ndarray:
    """Permutation matrix exchanging the ``block`` subsystems between copies."""
    perm = swap_permutation(shape, block)
    d2 = perm.shape[0]
    mat = np.zeros((d2, d2), dtype=np.complex128)
    mat[perm, np.arange(d2)] = 1.0
    return mat


def antisym_projector(shape: SystemShape, block: Sequence[int]) -> np.ndarray:
    """Projector onto the block-exchange antisymmetric subspace, (1 - W)/2."""
    w = swap_operator(shape, block)
    return 0.5 * (np.eye(w.shape[0], dtype=np.complex128) - w)


def sym_projector(shape: SystemShape, block: Sequence[int]) -> np.ndarray:
    """Projector onto the block-exchange symmetric subspace, (1 + W)/2."""
    w = swap_operator(shape, block)
    return 0.5 * (np.eye(w.shape[0], dtype=np.complex128) + w)


def layout_permutation(shape: SystemShape) -> np.ndarray:
    """Matrix taking copy-major coordinates to subsystem-pair coordinates.

    With ``T`` the result, an operator ``O`` written on the pair layout
    (copy 1 and copy 2 of subsystem 1, then of subsystem 2, ...) becomes
    ``T.T @ O @ T`` on the copy-major layout used everywhere else here.
    """
    dims = shape.dims
    d_full = shape.total_dim
    pv = _place_values(dims)
    pair_pv = pv.astype(np.int64) ** 2
    idx = np.arange(d_full * d_full, dtype=np.int64)
    x, y = idx // d_full, idx % d_full
    paired = np.zeros_like(idx)
    for i, d in enumerate(dims):
        paired += (((x // pv[i]) % d) * d + ((y // pv[i]) % d)) * pair_pv[i]
    mat = np.zeros((idx.size, idx.size), dtype=np.complex128)
    mat[paired, idx] = 1.0
    return mat


@dataclass(frozen=True, eq=False)
class TwoCopyObservable:
    """Hermitian operator on two copies of a system, tagged by its role.

    ``shape`` describes ONE copy; the matrix is D^2 x D^2.  Labels K1, K2,
    K and A must be positive semidefinite, which is enforced here.
    """

    label: str
    matrix: np.ndarray
    shape: SystemShape

    def __post_init__(self) -> None:
        if self.label not in OBSERVABLE_LABELS:
            raise ValueError(f"unknown observable label {self.label!r}")
        mat = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        d2 = self.shape.total_dim ** 2
        if mat.shape != (d2, d2):
            raise ValueError(f"expected {d2}x{d2} matrix, got {mat.shape}")
        if not np.all(np.isfinite(mat.view(np.float64))):
            raise ValueError("observable has non-finite entries")
        defect = np.max(np.abs(mat - mat.conj().T))
        if defect > HERMITICITY_ATOL:
            raise ValueError(f"observable not Hermitian (defect {defect:.3e})")
        if self.label in _PSD_LABELS:
            low = float(np.linalg.eigvalsh(mat)[0])
            if low < PSD_EIG_FLOOR:
                raise ValueError(
                    f"label {self.label} must be PSD, min eigenvalue {low:.3e}"
                )
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    def expectation_on_pair(self, rho: np.ndarray) -> float:
        """Tr[(rho tensor rho) O] for a single-copy density matrix."""
        from ._kernels import two_copy_expect

        return float(two_copy_expect(rho, self.matrix))


@lru_cache(maxsize=None)
def bipartite_observables(shape: SystemShape) -> Mapping[str, TwoCopyObservable]:
    """The five two-copy bound observables of a bipartite system.

    K1 and K2 measure twice the mixedness of each one-sided reduction and
    bound the squared concurrence from above; V1 and V2 subtract the global
    mixedness and bound it from below; A is four times the product of both
    local antisymmetric projectors and reproduces the squared pure-state
    concurrence.
    """
    if shape.num_subsystems != 2:
        raise ValueError(f"need exactly 2 subsystems, got shape {shape}")
    pm1 = antisym_projector(shape, (1,))
    pm2 = antisym_projector(shape, (2,))
    pp1 = sym_projector(shape, (1,))
    pp2 = sym_projector(shape, (2,))
    mats = {
        "K1": 4.0 * pm1,
        "K2": 4.0 * pm2,
        "V1": 4.0 * (pm1 - pp1) @ pm2,
        "V2": 4.0 * pm1 @ (pm2 - pp2),
        "A": 4.0 * pm1 @ pm2,
    }
    return {lab: TwoCopyObservable(lab, m, shape) for lab, m in mats.items()}


@lru_cache(maxsize=None)
def multipartite_observables(shape: SystemShape) -> Mapping[str, TwoCopyObservable]:
    """The upper (K) and lower (V) bound observables for N >= 2 parties.

    Both combine the globally symmetric and antisymmetric projectors with
    the product of all local symmetric projectors; they differ only in the
    sign of the global antisymmetric term, so K - V is proportional to the
    global antisymmetric projector.
    """
    n = shape.num_subsystems
    if n < 2:
        raise ValueError(f"need at least 2 subsystems, got shape {shape}")
    full = tuple(shape.subsystems())
    glob_plus = sym_projector(shape, full)
    glob_minus = antisym_projector(shape, full)
    local_plus = sym_projector(shape, (1,))
    for i in range(2, n + 1):
        local_plus = local_plus @ sym_projector(shape, (i,))
    coeff = 1.0 - 2.0 ** (1 - n)
    mats = {
        "K": 4.0 * (glob_plus - local_plus + coeff * glob_minus),
        "V": 4.0 * (glob_plus - local_plus - coeff * glob_minus),
    }
    return {lab: TwoCopyObservable(lab, m, shape) for lab, m in mats.items()}
