"""Numerical verification batteries behind the ``verify`` CLI command.

Each suite returns a list of failures (empty means pass) so callers can
print diagnostics and choose exit codes.  Structural checks compare
matrices entrywise at 1e-12; statistical batteries run over seeded random
states so failures are reproducible from the reported context.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from . import bounds, projectors
from .ensembles import random_mixed, random_mixed_with_purity, sample_rng
from .linalg import DensityMatrix, SystemShape, haar_random_pure

ENTRYWISE_ATOL = 1e-12
EXPECTATION_ATOL = 1e-9
SWAP_TRICK_ATOL = 1e-10
INVERTER_EIG_FLOOR = -1e-9


@dataclass(frozen=True)
class CheckFailure:
    """One failed check with enough context to reproduce it."""

    check: str
    context: str
    observed: float
    expected: float
    tolerance: float

    def __str__(self) -> str:
        return (
            f"{self.check} [{self.context}]: observed {self.observed:.12g}, "
            f"expected {self.expected:.12g}, tolerance {self.tolerance:.1e}"
        )


class _Collector:
    def __init__(self) -> None:
        self.failures: list[CheckFailure] = []

    def close(
        self, check: str, context: str, observed: float, expected: float, tol: float
    ) -> None:
        if not abs(observed - expected) <= tol:
            self.failures.append(
                CheckFailure(check, context, float(observed), float(expected), tol)
            )

    def true(self, check: str, context: str, condition: bool, tol: float) -> None:
        if not condition:
            self.failures.append(CheckFailure(check, context, 0.0, 1.0, tol))

    def entrywise(
        self, check: str, context: str, got: np.ndarray, want: np.ndarray
    ) -> None:
        dev = float(np.max(np.abs(got - want))) if got.size else 0.0
        self.close(check, context, dev, 0.0, ENTRYWISE_ATOL)


def _all_blocks(shape: SystemShape) -> list[tuple[int, ...]]:
    labels = tuple(shape.subsystems())
    out: list[tuple[int, ...]] = []
    for size in range(1, len(labels) + 1):
        out.extend(combinations(labels, size))
    return out


def basis_sum_projectors(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Exchange projectors for one subsystem pair built from basis sums.

    Sums (|jk> -+ |kj>)(<jk| -+ <kj|)/4 over all ordered basis pairs;
    independent of the swap-matrix route, so the two get cross-checked.
    """
    minus = np.zeros((d * d, d * d), dtype=np.complex128)
    plus = np.zeros((d * d, d * d), dtype=np.complex128)
    for j in range(d):
        for k in range(d):
            jk = np.zeros(d * d, dtype=np.complex128)
            jk[j * d + k] = 1.0
            kj = np.zeros(d * d, dtype=np.complex128)
            kj[k * d + j] = 1.0
            anti = jk - kj
            sym = jk + kj
            minus += 0.25 * np.outer(anti, anti.conj())
            plus += 0.25 * np.outer(sym, sym.conj())
    return minus, plus


def _random_states(shape: SystemShape, samples: int, seed: int):
    for i in range(samples):
        yield i, random_mixed(shape, sample_rng(seed, i))


def _spread_mixed_states(shape: SystemShape, samples: int, seed: int):
    """Genuinely mixed states covering the whole purity range.

    Alternates rank >= 2 Wishart draws with isotropic mixtures at a
    uniform purity target, so the batteries see both generic spectra and
    near-pure and near-maximally-mixed regimes.
    """
    d = shape.total_dim
    for i in range(samples):
        rng = sample_rng(seed, i)
        if i % 2 == 0:
            yield i, random_mixed(shape, rng, rank=int(rng.integers(2, d + 1)))
        else:
            mu = 1.0 / d + (1.0 - 1.0 / d) * (1.0 - rng.random())
            yield i, random_mixed_with_purity(shape, mu, rng)


def run_projector_suite(
    shape: SystemShape, samples: int = 200, seed: int = 0
) -> list[CheckFailure]:
    """Projector algebra, basis-sum cross-check, global decomposition,
    bipartition sum identities, and the swap trick on random states."""
    col = _Collector()
    d2 = shape.total_dim ** 2
    eye = np.eye(d2, dtype=np.complex128)
    for block in _all_blocks(shape):
        ctx = f"shape {shape} block {block}"
        w = projectors.swap_operator(shape, block)
        col.entrywise("swap-hermitian", ctx, w, w.conj().T)
        col.entrywise("swap-involution", ctx, w @ w, eye)
        pm = projectors.antisym_projector(shape, block)
        pp = projectors.sym_projector(shape, block)
        col.entrywise("projector-idempotent-minus", ctx, pm @ pm, pm)
        col.entrywise("projector-idempotent-plus", ctx, pp @ pp, pp)
        col.entrywise("projector-orthogonal", ctx, pm @ pp, np.zeros_like(pm))
        col.entrywise("projector-complete", ctx, pm + pp, eye)

    for d in sorted(set(shape.dims)):
        ctx = f"local dim {d}"
        single = SystemShape((d,))
        minus_ref, plus_ref = basis_sum_projectors(d)
        col.entrywise(
            "basis-sum-antisym", ctx, projectors.antisym_projector(single, (1,)), minus_ref
        )
        col.entrywise(
            "basis-sum-sym", ctx, projectors.sym_projector(single, (1,)), plus_ref
        )

    n = shape.num_subsystems
    if n >= 2:
        ctx = f"shape {shape}"
        full = tuple(shape.subsystems())
        glob_plus = projectors.sym_projector(shape, full)
        glob_minus = projectors.antisym_projector(shape, full)
        col.entrywise("global-complete", ctx, glob_plus + glob_minus, eye)

        local = {
            (i, s): (projectors.sym_projector(shape, (i,)) if s == 0
                     else projectors.antisym_projector(shape, (i,)))
            for i in full
            for s in (0, 1)
        }
        even = np.zeros_like(eye)
        odd = np.zeros_like(eye)
        for signs in product((0, 1), repeat=n):
            term = local[(1, signs[0])].copy()
            for i in range(2, n + 1):
                term = term @ local[(i, signs[i - 1])]
            if sum(signs) % 2 == 0:
                even += term
            else:
                odd += term
        col.entrywise("global-even-sum", ctx, even, glob_plus)
        col.entrywise("global-odd-sum", ctx, odd, glob_minus)

        # Unordered bipartitions: proper blocks containing subsystem 1.
        lhs_minus = np.zeros_like(eye)
        lhs_mixed = np.zeros_like(eye)
        for mask in range(2 ** (n - 1) - 1):
            block = tuple(i + 1 for i in range(n) if (mask << 1 | 1) >> i & 1)
            rest = shape.complement(block)
            pm_b = projectors.antisym_projector(shape, block)
            pm_r = projectors.antisym_projector(shape, rest)
            pp_b = projectors.sym_projector(shape, block)
            pp_r = projectors.sym_projector(shape, rest)
            lhs_minus += pm_b @ pm_r
            lhs_mixed += pm_b @ pp_r + pp_b @ pm_r
        prod_plus = local[(1, 0)].copy()
        for i in range(2, n + 1):
            prod_plus = prod_plus @ local[(i, 0)]
        col.entrywise(
            "bipartition-antisym-sum", ctx, lhs_minus,
            2.0 ** (n - 2) * (glob_plus - prod_plus),
        )
        col.entrywise(
            "bipartition-mixed-sum", ctx, lhs_mixed,
            (2.0 ** (n - 1) - 1.0) * glob_minus,
        )

    swaps = {
        block: projectors.swap_operator(shape, block)
        for block in _all_blocks(shape)
    }
    from ._kernels import two_copy_expect

    for i, rho in _random_states(shape, samples, seed):
        for block, w in swaps.items():
            got = float(two_copy_expect(rho.matrix, w))
            want = (
                rho.purity()
                if len(block) == n
                else bounds.reduced_purity(rho, block)
            )
            col.close(
                "swap-trick",
                f"shape {shape} block {block} sample {i} seed {seed}",
                got,
                want,
                SWAP_TRICK_ATOL,
            )
    return col.failures


def _expected_by_label(rho: DensityMatrix) -> dict[str, float]:
    """Purity-formula value of every observable defined for the state's shape."""
    n = rho.shape.num_subsystems
    mu = rho.purity()
    red = bounds.all_reduced_purities(rho)
    total = sum(red.values())
    out = {
        "K": 2.0 ** (2 - n) * ((2**n - 2) - total),
    }
    out["V"] = out["K"] - 4.0 * (1.0 - 2.0 ** (1 - n)) * (1.0 - mu)
    if n == 2:
        a, b = red[(1,)], red[(2,)]
        out.update(
            K1=2.0 * (1.0 - a),
            K2=2.0 * (1.0 - b),
            V1=2.0 * (mu - a),
            V2=2.0 * (mu - b),
            A=1.0 + mu - a - b,
        )
    return out


def _all_observables(shape: SystemShape) -> dict[str, projectors.TwoCopyObservable]:
    obs = dict(projectors.multipartite_observables(shape))
    if shape.num_subsystems == 2:
        obs.update(projectors.bipartite_observables(shape))
    return obs


def run_identity_suite(
    shape: SystemShape, samples: int = 200, seed: int = 0
) -> list[CheckFailure]:
    """Operator identities, expectation/purity duality, and pure-state collapse."""
    n = shape.num_subsystems
    if n < 2:
        raise ValueError(f"identity suite needs at least 2 subsystems, got {shape}")
    col = _Collector()
    ctx = f"shape {shape}"
    obs = _all_observables(shape)

    if n == 2:
        d1, d2 = shape.dims
        w_full = projectors.swap_operator(shape, (1, 2))
        gap = 2.0 * (np.eye(w_full.shape[0]) - w_full)
        col.entrywise(
            "upper-lower-gap-1", ctx, obs["K1"].matrix - obs["V1"].matrix, gap
        )
        col.entrywise(
            "upper-lower-gap-2", ctx, obs["K2"].matrix - obs["V2"].matrix, gap
        )
        w1 = projectors.swap_operator(shape, (1,))
        w2 = projectors.swap_operator(shape, (2,))
        col.entrywise(
            "pure-observable-expansion", ctx, obs["A"].matrix,
            np.eye(w_full.shape[0]) - w1 - w2 + w_full,
        )
        col.close(
            "upper-1-trace", ctx,
            float(obs["K1"].matrix.trace().real),
            4.0 * (d1 * (d1 - 1) // 2) * d2 * d2,
            ENTRYWISE_ATOL * w_full.shape[0],
        )

    for i, rho in _random_states(shape, samples, seed):
        sctx = f"shape {shape} sample {i} seed {seed}"
        expected = _expected_by_label(rho)
        for label, ob in obs.items():
            col.close(
                f"duality-{label}", sctx,
                bounds.two_copy_expectation(rho, ob),
                expected[label],
                EXPECTATION_ATOL,
            )
        if n == 2:
            col.close(
                "multipartite-matches-pair-mean", sctx,
                expected["K"],
                0.5 * (expected["K1"] + expected["K2"]),
                ENTRYWISE_ATOL,
            )

    for i in range(samples):
        sctx = f"shape {shape} pure sample {i} seed {seed}"
        psi = haar_random_pure(shape, sample_rng(seed, samples + i))
        rho = psi.density_matrix()
        if n == 2:
            report = bounds.bipartite_bounds(rho, cross_check=False)
            c_sq = bounds.pure_concurrence_bipartite(psi) ** 2
            col.close("pure-collapse-upper-1", sctx, report.upper["K1"], c_sq, EXPECTATION_ATOL)
            col.close("pure-collapse-lower-1", sctx, report.lower["V1"], c_sq, EXPECTATION_ATOL)
            col.close("pure-collapse-upper-2", sctx, report.upper["K2"], c_sq, EXPECTATION_ATOL)
            col.close("pure-collapse-lower-2", sctx, report.lower["V2"], c_sq, EXPECTATION_ATOL)
        else:
            report = bounds.multipartite_bounds(rho, cross_check=False)
            c_sq = bounds.pure_concurrence_multipartite(psi) ** 2
            col.close("pure-collapse-upper", sctx, report.upper["K"], c_sq, EXPECTATION_ATOL)
            col.close("pure-collapse-lower", sctx, report.lower["V"], c_sq, EXPECTATION_ATOL)
    return col.failures


def run_inequality_suite(
    shape: SystemShape, samples: int = 200, seed: int = 0
) -> list[CheckFailure]:
    """Bound ordering, offset laws, and the two-qubit chain on random states."""
    n = shape.num_subsystems
    if n < 2:
        raise ValueError(f"inequality suite needs at least 2 subsystems, got {shape}")
    col = _Collector()
    two_qubit = shape.dims == (2, 2)
    for i, rho in _spread_mixed_states(shape, samples, seed):
        sctx = f"shape {shape} sample {i} seed {seed}"
        mu = rho.purity()
        if n == 2:
            report = bounds.bipartite_bounds(rho, cross_check=False)
            k1, k2 = report.upper["K1"], report.upper["K2"]
            v1, v2 = report.lower["V1"], report.lower["V2"]
            gap = 2.0 * (1.0 - mu)
            col.close("offset-law-1", sctx, k1 - v1, gap, EXPECTATION_ATOL)
            col.close("offset-law-2", sctx, k2 - v2, gap, EXPECTATION_ATOL)
            col.true("order-within-pair-1", sctx, k1 >= v1 - EXPECTATION_ATOL, EXPECTATION_ATOL)
            col.true("order-within-pair-2", sctx, k2 >= v2 - EXPECTATION_ATOL, EXPECTATION_ATOL)
            col.true("order-across-pairs-12", sctx, k1 >= v2 - EXPECTATION_ATOL, EXPECTATION_ATOL)
            col.true("order-across-pairs-21", sctx, k2 >= v1 - EXPECTATION_ATOL, EXPECTATION_ATOL)
            col.true("upper-nonnegative", sctx, min(k1, k2) >= -EXPECTATION_ATOL, EXPECTATION_ATOL)
            # Each side's bound is capped by its own local dimension.
            cap1 = 2.0 * (1.0 - 1.0 / shape.dims[0])
            cap2 = 2.0 * (1.0 - 1.0 / shape.dims[1])
            col.true("upper-capped-1", sctx, k1 <= cap1 + EXPECTATION_ATOL, EXPECTATION_ATOL)
            col.true("upper-capped-2", sctx, k2 <= cap2 + EXPECTATION_ATOL, EXPECTATION_ATOL)
            if two_qubit:
                c_sq = report.two_qubit.wootters_c_sq
                tight = report.two_qubit.tighter_upper
                col.true("chain-lower-1", sctx, v1 <= c_sq + EXPECTATION_ATOL, EXPECTATION_ATOL)
                col.true("chain-lower-2", sctx, v2 <= c_sq + EXPECTATION_ATOL, EXPECTATION_ATOL)
                col.true("chain-middle", sctx, c_sq <= tight + EXPECTATION_ATOL, EXPECTATION_ATOL)
                col.true(
                    "chain-tight-under-upper", sctx,
                    tight <= min(k1, k2) + EXPECTATION_ATOL, EXPECTATION_ATOL,
                )
        else:
            report = bounds.multipartite_bounds(rho, cross_check=False)
            gap = 4.0 * (1.0 - 2.0 ** (1 - n)) * (1.0 - mu)
            col.close(
                "offset-law", sctx,
                report.upper["K"] - report.lower["V"], gap, EXPECTATION_ATOL,
            )
            col.true(
                "order-within-pair", sctx,
                report.upper["K"] >= report.lower["V"] - EXPECTATION_ATOL,
                EXPECTATION_ATOL,
            )
    return col.failures


def run_entropy_suite(
    shape: SystemShape, samples: int = 200, seed: int = 0
) -> list[CheckFailure]:
    """Linear-entropy triangle and subadditivity plus inverter positivity."""
    if shape.num_subsystems != 2:
        raise ValueError(f"entropy suite needs a bipartite shape, got {shape}")
    col = _Collector()
    for i, rho in _random_states(shape, samples, seed):
        sctx = f"shape {shape} sample {i} seed {seed}"
        checks = bounds.entropy_checks(rho)
        col.true("entropy-triangle-ab", sctx, checks.triangle_holds[0], bounds.ENTROPY_SLACK)
        col.true("entropy-triangle-ba", sctx, checks.triangle_holds[1], bounds.ENTROPY_SLACK)
        col.true("entropy-subadditivity", sctx, checks.subadditivity_holds, bounds.ENTROPY_SLACK)
        col.true("inverter-trace-sign", sctx, checks.inverter_nonneg, bounds.ENTROPY_SLACK)
        low = float(np.linalg.eigvalsh(bounds.universal_inverter(rho))[0])
        col.true(
            "inverter-psd", sctx, low >= INVERTER_EIG_FLOOR, -INVERTER_EIG_FLOOR
        )
    return col.failures


def run_all(
    shape: SystemShape, samples: int = 200, seed: int = 0
) -> list[CheckFailure]:
    failures = run_projector_suite(shape, samples, seed)
    failures += run_identity_suite(shape, samples, seed)
    failures += run_inequality_suite(shape, samples, seed)
    if shape.num_subsystems == 2:
        failures += run_entropy_suite(shape, samples, seed)
    return failures


SUITES = {
    "projectors": run_projector_suite,
    "identities": run_identity_suite,
    "inequalities": run_inequality_suite,
    "entropy": run_entropy_suite,
    "all": run_all,
}
