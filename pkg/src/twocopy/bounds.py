"""Squared-concurrence bounds, two-qubit exact values, and entropy verdicts.

Every bound here is an expectation value of a fixed observable on two
copies of the state, so each one reduces to a linear combination of the
global purity and reduced purities.  Both routes are implemented: the
purity formulas do the work, and the literal two-copy expectations are
evaluated alongside them as a cross-check (on by default, skipped in the
batch sampler where speed matters).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Sequence

import numpy as np

from . import projectors
from ._kernels import reduced_purity as _red_purity_kernel
from .linalg import (
    DensityMatrix,
    NotPositiveSemidefinite,
    PureState,
    eig_hermitian,
    kron,
    sqrt_psd,
)

CROSS_CHECK_ATOL = 1e-9
ENTROPY_SLACK = 1e-9
WOOTTERS_EIG_FLOOR = -1e-10
WOOTTERS_RANK_RTOL = 1e-12

_SIGMA_YY = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    dtype=np.complex128,
)


def reduced_purity(rho: DensityMatrix, block: Sequence[int]) -> float:
    """Purity of the reduction onto the 1-based subsystems ``block``."""
    labels = sorted(rho.shape.validate_labels(block))
    if not labels:
        raise ValueError("block must be nonempty")
    keep0 = tuple(i - 1 for i in labels)
    return float(_red_purity_kernel(rho.matrix, rho.shape.dims, keep0))


def all_reduced_purities(rho: DensityMatrix) -> dict[tuple[int, ...], float]:
    """Purities of every proper nonempty reduction, keyed by subsystem labels."""
    n = rho.shape.num_subsystems
    labels = tuple(rho.shape.subsystems())
    out: dict[tuple[int, ...], float] = {}
    for size in range(1, n):
        for block in combinations(labels, size):
            out[block] = reduced_purity(rho, block)
    return out


def two_copy_expectation(
    rho: DensityMatrix, obs: projectors.TwoCopyObservable
) -> float:
    """Literal Tr[(rho tensor rho) O]."""
    return obs.expectation_on_pair(rho.matrix)


def _check_pair(label: str, formula: float, literal: float) -> None:
    if abs(formula - literal) > CROSS_CHECK_ATOL:
        raise ArithmeticError(
            f"{label}: purity formula {formula:.15g} vs literal expectation "
            f"{literal:.15g} disagree beyond {CROSS_CHECK_ATOL:.0e}"
        )


def pure_concurrence_bipartite(psi: PureState) -> float:
    """Concurrence of a bipartite pure state from one-sided mixedness."""
    if psi.shape.num_subsystems != 2:
        raise ValueError(f"need exactly 2 subsystems, got shape {psi.shape}")
    rho = psi.density_matrix()
    c_sq = 2.0 * (1.0 - reduced_purity(rho, (1,)))
    return float(np.sqrt(max(c_sq, 0.0)))


def pure_concurrence_multipartite(psi: PureState) -> float:
    """Multipartite pure-state concurrence from all proper reductions."""
    n = psi.shape.num_subsystems
    if n < 2:
        raise ValueError(f"need at least 2 subsystems, got shape {psi.shape}")
    rho = psi.density_matrix()
    total = sum(all_reduced_purities(rho).values())
    c_sq = 2.0 ** (2 - n) * ((2**n - 2) - total)
    return float(np.sqrt(max(c_sq, 0.0)))


@dataclass(frozen=True)
class TwoQubitExtras:
    """Exact two-qubit quantities: Wootters concurrence and the tighter upper bound."""

    wootters_c: float
    wootters_c_sq: float
    tighter_upper: float

    def to_dict(self) -> dict[str, float]:
        return {
            "wootters_c": self.wootters_c,
            "wootters_c_sq": self.wootters_c_sq,
            "tighter_upper": self.tighter_upper,
        }


@dataclass(frozen=True)
class EntropyChecks:
    """Linear-entropy inequality verdicts for a bipartite state."""

    triangle_holds: tuple[bool, bool]
    subadditivity_holds: bool
    inverter_trace: float
    inverter_nonneg: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "triangle_holds": list(self.triangle_holds),
            "subadditivity_holds": self.subadditivity_holds,
            "inverter_trace": self.inverter_trace,
            "inverter_nonneg": self.inverter_nonneg,
        }


@dataclass(frozen=True)
class BoundsReport:
    """Everything measurable about one state's squared concurrence.

    ``lower`` and ``upper`` map observable labels to values; bipartite
    reports also carry their mean under the key ``"mean"`` since neither
    side is canonically preferred.  ``offset`` is the common gap
    upper - lower, a function of global purity alone.
    """

    dims: tuple[int, ...]
    purity: float
    reduced_purities: dict[tuple[int, ...], float]
    lower: dict[str, float]
    upper: dict[str, float]
    offset: float
    two_qubit: TwoQubitExtras | None = None
    entropy: EntropyChecks | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "dims": list(self.dims),
            "purity": self.purity,
            "reduced_purities": {
                ",".join(str(i) for i in block): val
                for block, val in self.reduced_purities.items()
            },
            "lower": dict(self.lower),
            "upper": dict(self.upper),
            "offset": self.offset,
        }
        if self.two_qubit is not None:
            out["two_qubit"] = self.two_qubit.to_dict()
        if self.entropy is not None:
            out["entropy"] = self.entropy.to_dict()
        return out


def bipartite_bounds(rho: DensityMatrix, cross_check: bool = True) -> BoundsReport:
    """Upper and lower squared-concurrence bounds of a bipartite state.

    Includes entropy verdicts, and the exact Wootters values when the
    state is a pair of qubits.
    """
    if rho.shape.num_subsystems != 2:
        raise ValueError(f"need exactly 2 subsystems, got shape {rho.shape}")
    mu = rho.purity()
    red = all_reduced_purities(rho)
    a, b = red[(1,)], red[(2,)]
    upper = {"K1": 2.0 * (1.0 - a), "K2": 2.0 * (1.0 - b)}
    lower = {"V1": 2.0 * (mu - a), "V2": 2.0 * (mu - b)}
    if cross_check:
        obs = projectors.bipartite_observables(rho.shape)
        for lab, val in [*upper.items(), *lower.items()]:
            _check_pair(lab, val, two_copy_expectation(rho, obs[lab]))
    upper["mean"] = 0.5 * (upper["K1"] + upper["K2"])
    lower["mean"] = 0.5 * (lower["V1"] + lower["V2"])
    extras = None
    if rho.shape.dims == (2, 2):
        c = wootters_concurrence(rho)
        extras = TwoQubitExtras(
            wootters_c=c,
            wootters_c_sq=c * c,
            tighter_upper=tighter_upper_two_qubit(rho, cross_check=cross_check),
        )
    return BoundsReport(
        dims=rho.shape.dims,
        purity=mu,
        reduced_purities=red,
        lower=lower,
        upper=upper,
        offset=upper["mean"] - lower["mean"],
        two_qubit=extras,
        entropy=entropy_checks(rho),
    )


def multipartite_bounds(rho: DensityMatrix, cross_check: bool = True) -> BoundsReport:
    """Upper and lower bounds on the multipartite squared concurrence."""
    n = rho.shape.num_subsystems
    if n < 2:
        raise ValueError(f"need at least 2 subsystems, got shape {rho.shape}")
    mu = rho.purity()
    red = all_reduced_purities(rho)
    k_val = 2.0 ** (2 - n) * ((2**n - 2) - sum(red.values()))
    v_val = k_val - 4.0 * (1.0 - 2.0 ** (1 - n)) * (1.0 - mu)
    if cross_check:
        obs = projectors.multipartite_observables(rho.shape)
        _check_pair("K", k_val, two_copy_expectation(rho, obs["K"]))
        _check_pair("V", v_val, two_copy_expectation(rho, obs["V"]))
    return BoundsReport(
        dims=rho.shape.dims,
        purity=mu,
        reduced_purities=red,
        lower={"V": v_val},
        upper={"K": k_val},
        offset=k_val - v_val,
    )


def bounds_report(rho: DensityMatrix, cross_check: bool = True) -> BoundsReport:
    """Full report for a state: bipartite shapes get the richer variant."""
    if rho.shape.num_subsystems == 2:
        return bipartite_bounds(rho, cross_check=cross_check)
    return multipartite_bounds(rho, cross_check=cross_check)


def universal_inverter(rho: DensityMatrix) -> np.ndarray:
    """The inverted companion state used by the entropy inequalities.

    For a bipartite state: identity minus both one-sided reductions
    (each tensored with the other side's identity) plus the state itself.
    PSD for every physical input.
    """
    if rho.shape.num_subsystems != 2:
        raise ValueError(f"need exactly 2 subsystems, got shape {rho.shape}")
    d1, d2 = rho.shape.dims
    red1 = _reduction_matrix(rho, (1,))
    red2 = _reduction_matrix(rho, (2,))
    eye1, eye2 = np.eye(d1), np.eye(d2)
    return (
        kron(eye1, eye2)
        - kron(red1, eye2)
        - kron(eye1, red2)
        + rho.matrix
    )


def _reduction_matrix(rho: DensityMatrix, block: tuple[int, ...]) -> np.ndarray:
    from .linalg import partial_trace

    return partial_trace(rho, block).matrix


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.shape.dims != (2, 2):
        raise ValueError(f"need a 2x2 system, got shape {rho.shape}")


def tilde_two_qubit(rho: DensityMatrix) -> np.ndarray:
    """Spin-flipped two-qubit state; coincides with the universal inverter."""
    _require_two_qubits(rho)
    return _SIGMA_YY @ rho.matrix.conj() @ _SIGMA_YY


def wootters_concurrence(rho: DensityMatrix) -> float:
    """Exact two-qubit mixed-state concurrence.

    Takes the Hermitian route: eigenvalues of sqrt(rho) * flipped * sqrt(rho),
    whose square roots in decreasing order give max(l1 - l2 - l3 - l4, 0).
    """
    _require_two_qubits(rho)
    root = sqrt_psd(rho.matrix)
    sandwich = root @ tilde_two_qubit(rho) @ root
    vals, _ = eig_hermitian(sandwich)
    if vals[0] < WOOTTERS_EIG_FLOOR:
        raise NotPositiveSemidefinite(
            f"sandwich eigenvalue {vals[0]:.3e} below {WOOTTERS_EIG_FLOOR:.0e}"
        )
    # Eigenvalues at roundoff scale relative to the top one are rank noise;
    # square roots would amplify them from ~1e-16 to ~1e-8 in the sum.
    floor = max(vals[-1], 0.0) * WOOTTERS_RANK_RTOL
    lam = np.sqrt(np.where(vals > floor, vals, 0.0))[::-1]
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def tighter_upper_two_qubit(rho: DensityMatrix, cross_check: bool = True) -> float:
    """Overlap of a two-qubit state with its spin flip.

    Sits between the squared Wootters concurrence and both K bounds, so it
    tightens the measurable upper bound for qubit pairs.
    """
    _require_two_qubits(rho)
    val = float(np.trace(rho.matrix @ tilde_two_qubit(rho)).real)
    if cross_check:
        obs = projectors.bipartite_observables(rho.shape)
        _check_pair("A", val, two_copy_expectation(rho, obs["A"]))
    return val


def linear_entropy(rho: DensityMatrix) -> float:
    """One minus the purity."""
    return 1.0 - rho.purity()


def entropy_checks(rho: DensityMatrix) -> EntropyChecks:
    """Verdicts of the linear-entropy inequalities for a bipartite state.

    Checks both triangle directions and subadditivity with absolute slack,
    and reports the trace of the inverted companion sandwiched between
    sqrt(rho) factors together with its sign verdict.
    """
    if rho.shape.num_subsystems != 2:
        raise ValueError(f"need exactly 2 subsystems, got shape {rho.shape}")
    e_full = linear_entropy(rho)
    e_1 = 1.0 - reduced_purity(rho, (1,))
    e_2 = 1.0 - reduced_purity(rho, (2,))
    root = sqrt_psd(rho.matrix)
    inv_trace = float(np.trace(root @ universal_inverter(rho) @ root).real)
    return EntropyChecks(
        triangle_holds=(
            e_full - (e_1 - e_2) >= -ENTROPY_SLACK,
            e_full - (e_2 - e_1) >= -ENTROPY_SLACK,
        ),
        subadditivity_holds=e_1 + e_2 - e_full >= -ENTROPY_SLACK,
        inverter_trace=inv_trace,
        inverter_nonneg=inv_trace >= -ENTROPY_SLACK,
    )
