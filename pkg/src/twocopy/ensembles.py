"""Random-state ensembles and the batch bound-scatter simulation.

Controlled-purity states are isotropic mixtures of a Haar-random pure
state with white noise; the mixing weight is solved in closed form so
every sample hits the target purity exactly rather than by rejection.
Each sample draws its generator from a child seed derived from (seed,
index), which makes batches deterministic under any worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import wootters_concurrence
from ._kernels import reduced_purity as _red_purity_kernel
from .linalg import DensityMatrix, SystemShape, haar_random_pure

PURITY_CONSTRUCTION_ATOL = 1e-10


@dataclass(frozen=True)
class EnsembleSpec:
    """One batch: shape, exact target purity, sample count, and master seed."""

    shape: SystemShape
    target_purity: float
    samples: int
    seed: int

    def __post_init__(self) -> None:
        d = self.shape.total_dim
        if not 1.0 / d < self.target_purity <= 1.0:
            raise ValueError(
                f"target purity {self.target_purity} outside (1/{d}, 1]"
            )
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class SampleRow:
    """One scatter point: purity, both bounds, their gap, and qubit-pair extras."""

    index: int
    purity: float
    lower: float
    upper: float
    offset: float
    wootters_c_sq: float | None = None


def solve_mixing_weight(total_dim: int, target_purity: float) -> float:
    """Weight making an isotropic mixture hit the target purity exactly.

    A pure state with weight p over noise 1/D has purity
    p^2 (1 - 1/D) + 1/D regardless of the pure state, so inverting for p
    needs only D and the target.
    """
    d = total_dim
    if not 1.0 / d <= target_purity <= 1.0:
        raise ValueError(f"target purity {target_purity} outside [1/{d}, 1]")
    return float(np.sqrt((d * target_purity - 1.0) / (d - 1.0)))


def random_mixed_with_purity(
    shape: SystemShape, target_purity: float, rng: np.random.Generator
) -> DensityMatrix:
    """Haar-random pure state mixed isotropically to an exact purity."""
    d = shape.total_dim
    p = solve_mixing_weight(d, target_purity)
    psi = haar_random_pure(shape, rng).vector
    mat = p * np.outer(psi, psi.conj())
    mat[np.diag_indices(d)] += (1.0 - p) / d
    return DensityMatrix(mat, shape)


def random_mixed(
    shape: SystemShape, rng: np.random.Generator, rank: int | None = None
) -> DensityMatrix:
    """Generic random mixed state from a complex Gaussian factor.

    Drawing the rank uniformly (the default) spreads samples across the
    whole purity range, which is what the inequality batteries need; a
    fixed rank gives the trace-normalized Wishart ensemble of that rank.
    """
    d = shape.total_dim
    if rank is None:
        rank = int(rng.integers(1, d + 1))
    if not 1 <= rank <= d:
        raise ValueError(f"rank {rank} outside 1..{d}")
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    mat = g @ g.conj().T
    mat /= mat.trace().real
    return DensityMatrix(mat, shape)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent child generator for one sample, stable in (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _bipartite_row(index: int, rho: DensityMatrix, two_qubit: bool) -> SampleRow:
    dims = rho.shape.dims
    mu = rho.purity()
    a = float(_red_purity_kernel(rho.matrix, dims, (0,)))
    b = float(_red_purity_kernel(rho.matrix, dims, (1,)))
    upper = 2.0 - a - b
    lower = 2.0 * mu - a - b
    return SampleRow(
        index=index,
        purity=mu,
        lower=lower,
        upper=upper,
        offset=upper - lower,
        wootters_c_sq=wootters_concurrence(rho) ** 2 if two_qubit else None,
    )


def _multipartite_row(index: int, rho: DensityMatrix) -> SampleRow:
    dims = rho.shape.dims
    n = len(dims)
    mu = rho.purity()
    total = 0.0
    for mask in range(1, 2**n - 1):
        keep = tuple(i for i in range(n) if mask >> i & 1)
        total += float(_red_purity_kernel(rho.matrix, dims, keep))
    upper = 2.0 ** (2 - n) * ((2**n - 2) - total)
    lower = upper - 4.0 * (1.0 - 2.0 ** (1 - n)) * (1.0 - mu)
    return SampleRow(
        index=index,
        purity=mu,
        lower=lower,
        upper=upper,
        offset=upper - lower,
    )


def simulate_batch(spec: EnsembleSpec, workers: int = 1) -> list[SampleRow]:
    """Scatter rows for one ensemble; deterministic for any worker count.

    Bipartite rows carry the mean of both bound pairs (the natural scatter
    axes); qubit pairs additionally carry the exact squared concurrence.
    """
    if workers < 1:
        raise ValueError("workers must be positive")
    bipartite = spec.shape.num_subsystems == 2
    two_qubit = spec.shape.dims == (2, 2)

    def one(index: int) -> SampleRow:
        rng = sample_rng(spec.seed, index)
        rho = random_mixed_with_purity(spec.shape, spec.target_purity, rng)
        if bipartite:
            return _bipartite_row(index, rho, two_qubit)
        return _multipartite_row(index, rho)

    indices = range(spec.samples)
    if workers == 1:
        return [one(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, indices))
