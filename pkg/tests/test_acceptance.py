"""Acceptance battery: ten numbered criteria, one printed verdict line each.

Each test prints ``criterion N: PASS/FAIL (detail)`` even under captured
output, then asserts.  Tolerances are part of the contract; do not relax
them.
"""

import numpy as np
import pytest

from twocopy import cli
from twocopy.bounds import (
    bipartite_bounds,
    multipartite_bounds,
    pure_concurrence_bipartite,
    pure_concurrence_multipartite,
    tighter_upper_two_qubit,
    tilde_two_qubit,
    two_copy_expectation,
    wootters_concurrence,
)
from twocopy.ensembles import (
    EnsembleSpec,
    random_mixed,
    sample_rng,
    simulate_batch,
)
from twocopy.linalg import DensityMatrix, SystemShape, haar_random_pure
from twocopy.projectors import (
    antisym_projector,
    bipartite_observables,
    sym_projector,
)
from twocopy.states import QUBIT_PAIR, bell, ghz, max_entangled, w_state, werner
from twocopy.verify import (
    basis_sum_projectors,
    run_entropy_suite,
    run_identity_suite,
    run_inequality_suite,
)

from oracles import charpoly_wootters, random_density

PURITY_GRID = [0.98, 0.88, 0.78]


def _verdict(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_01_bipartite_offset_law(capsys):
    shape = SystemShape((3, 3))
    worst = 0.0
    for target in PURITY_GRID:
        want = 2.0 * (1.0 - target)
        spec = EnsembleSpec(shape, target, 1000, seed=101)
        for row in simulate_batch(spec, workers=4):
            worst = max(worst, abs(row.offset - want))
    _verdict(capsys, 1, worst <= 1e-9, f"max offset deviation {worst:.3e}")


def test_criterion_02_multipartite_offset_law(capsys):
    shape = SystemShape((2, 2, 2))
    worst = 0.0
    for target in PURITY_GRID:
        want = 3.0 * (1.0 - target)
        spec = EnsembleSpec(shape, target, 1000, seed=102)
        for row in simulate_batch(spec, workers=4):
            worst = max(worst, abs(row.offset - want))
    _verdict(capsys, 2, worst <= 1e-9, f"max offset deviation {worst:.3e}")


def test_criterion_03_expectation_purity_duality(capsys):
    failures = []
    for dims in [(2, 2), (2, 3), (3, 3), (2, 2, 2)]:
        failures += run_identity_suite(SystemShape(dims), samples=200, seed=103)
    _verdict(
        capsys, 3, not failures,
        f"{len(failures)} failures over 4 shapes x 200 samples",
    )


def test_criterion_04_pure_state_collapse(capsys):
    worst = 0.0
    for dims in [(2, 2), (2, 3), (3, 3), (2, 2, 2)]:
        shape = SystemShape(dims)
        bipartite = shape.num_subsystems == 2
        for i in range(500):
            psi = haar_random_pure(shape, sample_rng(104, i))
            rho = psi.density_matrix()
            if bipartite:
                c_sq = pure_concurrence_bipartite(psi) ** 2
                report = bipartite_bounds(rho, cross_check=False)
                vals = [report.upper["K1"], report.upper["K2"],
                        report.lower["V1"], report.lower["V2"]]
            else:
                c_sq = pure_concurrence_multipartite(psi) ** 2
                report = multipartite_bounds(rho, cross_check=False)
                vals = [report.upper["K"], report.lower["V"]]
            worst = max(worst, max(abs(v - c_sq) for v in vals))
    named_dev = max(
        abs(pure_concurrence_bipartite(bell()) ** 2 - 1.0),
        abs(pure_concurrence_bipartite(max_entangled(3)) ** 2 - 4.0 / 3.0),
        abs(pure_concurrence_multipartite(ghz(3)) ** 2 - 1.5),
        abs(pure_concurrence_multipartite(w_state(3)) ** 2 - 4.0 / 3.0),
    )
    ok = worst <= 1e-9 and named_dev <= 1e-10
    _verdict(
        capsys, 4, ok,
        f"max collapse deviation {worst:.3e}, named-state deviation {named_dev:.3e}",
    )


def test_criterion_05_two_qubit_chain(capsys):
    failures = run_inequality_suite(QUBIT_PAIR, samples=10_000, seed=105)
    report = bipartite_bounds(werner(0.8))
    chain = (
        report.lower["V1"],
        report.two_qubit.wootters_c_sq,
        report.two_qubit.tighter_upper,
        min(report.upper["K1"], report.upper["K2"]),
    )
    werner_dev = max(
        abs(got - want) for got, want in zip(chain, (0.46, 0.49, 0.73, 1.0))
    )
    ok = not failures and werner_dev <= 1e-9
    _verdict(
        capsys, 5, ok,
        f"{len(failures)} chain violations in 10^4, werner deviation {werner_dev:.3e}",
    )


def test_criterion_06_pure_observable_equals_flip_overlap(capsys):
    obs = bipartite_observables(QUBIT_PAIR)["A"]
    worst = 0.0
    for i in range(1000):
        rho = random_mixed(QUBIT_PAIR, sample_rng(106, i))
        literal = two_copy_expectation(rho, obs)
        overlap = float(np.trace(rho.matrix @ tilde_two_qubit(rho)).real)
        worst = max(worst, abs(literal - overlap))
    _verdict(capsys, 6, worst <= 1e-9, f"max deviation {worst:.3e}")


def test_criterion_07_projector_identity_suite(capsys):
    worst = 0.0
    for d in [2, 3, 4]:
        single = SystemShape((d,))
        minus_ref, plus_ref = basis_sum_projectors(d)
        worst = max(
            worst,
            float(np.max(np.abs(antisym_projector(single, (1,)) - minus_ref))),
            float(np.max(np.abs(sym_projector(single, (1,)) - plus_ref))),
        )
    shape = SystemShape((2, 2, 2))
    full = (1, 2, 3)
    glob_plus = sym_projector(shape, full)
    glob_minus = antisym_projector(shape, full)
    eye = np.eye(64)
    worst = max(worst, float(np.max(np.abs(glob_plus + glob_minus - eye))))
    prod_plus = (
        sym_projector(shape, (1,))
        @ sym_projector(shape, (2,))
        @ sym_projector(shape, (3,))
    )
    sum_minus = np.zeros_like(eye, dtype=np.complex128)
    sum_mixed = np.zeros_like(eye, dtype=np.complex128)
    for block in [(1,), (1, 2), (1, 3)]:  # unordered bipartitions
        rest = shape.complement(block)
        pm_b, pm_r = antisym_projector(shape, block), antisym_projector(shape, rest)
        pp_b, pp_r = sym_projector(shape, block), sym_projector(shape, rest)
        sum_minus += pm_b @ pm_r
        sum_mixed += pm_b @ pp_r + pp_b @ pm_r
    worst = max(
        worst,
        float(np.max(np.abs(sum_minus - 2.0 * (glob_plus - prod_plus)))),
        float(np.max(np.abs(sum_mixed - 3.0 * glob_minus))),
    )
    _verdict(capsys, 7, worst <= 1e-12, f"max entrywise deviation {worst:.3e}")


def test_criterion_08_entropy_suite(capsys):
    failures = []
    for dims in [(2, 2), (2, 3), (3, 3)]:
        failures += run_entropy_suite(SystemShape(dims), samples=10_000, seed=108)
    _verdict(
        capsys, 8, not failures,
        f"{len(failures)} violations over 3 shapes x 10^4 samples",
    )


def test_criterion_09_wootters_oracle_equivalence(capsys):
    worst = 0.0
    rng = np.random.default_rng(109)
    for _ in range(1000):
        rho = DensityMatrix(random_density(4, rng), QUBIT_PAIR)
        hermitian_route = wootters_concurrence(rho)
        oracle = charpoly_wootters(rho.matrix, tilde_two_qubit(rho))
        worst = max(worst, abs(hermitian_route - oracle))
    werner_dev = max(
        abs(wootters_concurrence(werner(p)) - max((3.0 * p - 1.0) / 2.0, 0.0))
        for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0]
    )
    ok = worst <= 1e-8 and werner_dev <= 1e-9
    _verdict(
        capsys, 9, ok,
        f"max oracle deviation {worst:.3e}, werner deviation {werner_dev:.3e}",
    )


def test_criterion_10_simulate_determinism(capsys, tmp_path):
    def run(name, workers):
        path = tmp_path / name
        rc = cli.main(
            [
                "simulate", "--dims", "2x2", "--purity", "0.9",
                "--samples", "200", "--seed", "4242",
                "--out", str(path), "--workers", str(workers),
            ]
        )
        assert rc == 0
        return path.read_bytes()

    runs = [run("a.csv", 1), run("b.csv", 1), run("c.csv", 4), run("d.csv", 8)]
    ok = all(r == runs[0] for r in runs[1:])
    _verdict(
        capsys, 10, ok,
        "identical CSV bytes across repeat runs and 1/4/8 workers",
    )


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
