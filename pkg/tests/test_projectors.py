"""Swap operators, exchange projectors, and the two-copy observables."""

import numpy as np
import pytest

from twocopy.linalg import DensityMatrix, SystemShape, partial_trace
from twocopy.projectors import (
    OBSERVABLE_LABELS,
    TwoCopyObservable,
    antisym_projector,
    bipartite_observables,
    layout_permutation,
    multipartite_observables,
    swap_operator,
    swap_permutation,
    sym_projector,
)
from twocopy.states import bell, maximally_mixed

from oracles import (
    doubled_expectation,
    interleave_permutation,
    paired_bipartite_observables,
    paired_multipartite_observables,
    random_density,
    to_copy_major,
)

ALGEBRA_SHAPES = [(2,), (3,), (4,), (2, 2), (2, 3), (2, 2, 2)]


def _blocks(n):
    """All nonempty subsystem subsets of an n-party system."""
    return [
        tuple(i + 1 for i in range(n) if mask >> i & 1)
        for mask in range(1, 2**n)
    ]


class TestSwapOperator:
    def test_single_qubit_swap_entries(self):
        w = swap_operator(SystemShape((2,)), (1,))
        want = np.zeros((4, 4))
        want[0, 0] = want[1, 2] = want[2, 1] = want[3, 3] = 1.0
        assert np.max(np.abs(w - want)) == 0.0

    def test_permutation_is_involution(self):
        for dims in ALGEBRA_SHAPES:
            shape = SystemShape(dims)
            for block in _blocks(len(dims)):
                perm = swap_permutation(shape, block)
                assert np.array_equal(perm[perm], np.arange(perm.size))

    @pytest.mark.parametrize("dims", ALGEBRA_SHAPES)
    def test_trace_counts_fixed_points(self, dims):
        # A block swap fixes D^2 / d_block^2 * d_block basis states.
        shape = SystemShape(dims)
        for block in _blocks(len(dims)):
            d_block = int(np.prod([dims[i - 1] for i in block]))
            w = swap_operator(shape, block)
            assert w.trace().real == pytest.approx(shape.total_dim**2 / d_block)

    def test_disjoint_blocks_compose(self):
        shape = SystemShape((2, 3, 2))
        w1 = swap_operator(shape, (1,))
        w23 = swap_operator(shape, (2, 3))
        w_full = swap_operator(shape, (1, 2, 3))
        assert np.max(np.abs(w1 @ w23 - w_full)) == 0.0
        assert np.max(np.abs(w23 @ w1 - w_full)) == 0.0

    def test_rejects_empty_block(self):
        with pytest.raises(ValueError):
            swap_operator(SystemShape((2, 2)), ())

    def test_swap_trick_reads_reduced_purity(self):
        rng = np.random.default_rng(21)
        for dims in [(2, 2), (2, 3), (2, 2, 2)]:
            shape = SystemShape(dims)
            rho = DensityMatrix(random_density(shape.total_dim, rng), shape)
            for block in _blocks(len(dims)):
                w = swap_operator(shape, block)
                via_swap = doubled_expectation(rho.matrix, w)
                if len(block) == len(dims):
                    direct = rho.purity()
                else:
                    direct = partial_trace(rho, block).purity()
                assert via_swap == pytest.approx(direct, abs=1e-10)


class TestProjectorAlgebra:
    @pytest.mark.parametrize("dims", ALGEBRA_SHAPES)
    def test_idempotent_orthogonal_complete(self, dims):
        shape = SystemShape(dims)
        eye = np.eye(shape.total_dim**2)
        for block in _blocks(len(dims)):
            minus = antisym_projector(shape, block)
            plus = sym_projector(shape, block)
            assert np.max(np.abs(minus @ minus - minus)) < 1e-12
            assert np.max(np.abs(plus @ plus - plus)) < 1e-12
            assert np.max(np.abs(plus @ minus)) < 1e-12
            assert np.max(np.abs(plus + minus - eye)) < 1e-12

    def test_exchange_subspace_dimensions(self):
        # A d-level pair splits into d(d-1)/2 antisymmetric and
        # d(d+1)/2 symmetric dimensions.
        for d in [2, 3, 4]:
            shape = SystemShape((d,))
            assert antisym_projector(shape, (1,)).trace().real == pytest.approx(
                d * (d - 1) / 2
            )
            assert sym_projector(shape, (1,)).trace().real == pytest.approx(
                d * (d + 1) / 2
            )

    def test_qubit_antisym_is_singlet_projector(self):
        vec = np.zeros(4, dtype=np.complex128)
        vec[1], vec[2] = 1 / np.sqrt(2), -1 / np.sqrt(2)
        want = np.outer(vec, vec.conj())
        got = antisym_projector(SystemShape((2,)), (1,))
        assert np.max(np.abs(got - want)) < 1e-12

    def test_antisym_from_basis_pair_sum(self):
        # Rank-one pieces (|jk> - |kj>)(<jk| - <kj|)/4 over ordered pairs
        # rebuild the antisymmetric projector.
        for d in [2, 3, 4]:
            shape = SystemShape((d,))
            acc = np.zeros((d * d, d * d), dtype=np.complex128)
            for j in range(d):
                for k in range(d):
                    if j == k:
                        continue
                    vec = np.zeros(d * d, dtype=np.complex128)
                    vec[j * d + k] += 1.0
                    vec[k * d + j] -= 1.0
                    acc += np.outer(vec, vec.conj()) / 4.0
            assert np.max(np.abs(acc - antisym_projector(shape, (1,)))) < 1e-12


class TestLayoutPermutation:
    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (2, 2, 2)])
    def test_matches_interleave_oracle(self, dims):
        shape = SystemShape(dims)
        t = layout_permutation(shape)
        d2 = shape.total_dim**2
        assert np.max(np.abs(t @ t.T - np.eye(d2))) == 0.0
        rng = np.random.default_rng(22)
        g = rng.standard_normal((d2, d2)) + 1j * rng.standard_normal((d2, d2))
        assert np.max(np.abs(t.T @ g @ t - to_copy_major(g, dims))) == 0.0

    def test_oracle_permutation_self_consistency(self):
        p = interleave_permutation((2, 3))
        assert sorted(p.tolist()) == list(range(36))


class TestTwoCopyObservable:
    def test_rejects_unknown_label(self):
        shape = SystemShape((2,))
        with pytest.raises(ValueError, match="label"):
            TwoCopyObservable("Q9", np.eye(4), shape)

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError, match="4x4"):
            TwoCopyObservable("custom", np.eye(3), SystemShape((2,)))

    def test_rejects_non_hermitian(self):
        mat = np.eye(4, dtype=np.complex128)
        mat[0, 1] = 1.0
        with pytest.raises(ValueError, match="Hermitian"):
            TwoCopyObservable("custom", mat, SystemShape((2,)))

    def test_upper_bound_labels_must_be_psd(self):
        shape = SystemShape((2, 2))
        lower = bipartite_observables(shape)["V1"]
        assert np.linalg.eigvalsh(lower.matrix)[0] < -0.5
        with pytest.raises(ValueError, match="PSD"):
            TwoCopyObservable("K1", lower.matrix, shape)

    def test_indefinite_ok_for_lower_bound_labels(self):
        shape = SystemShape((2, 2))
        mat = bipartite_observables(shape)["V1"].matrix
        obs = TwoCopyObservable("custom", mat, shape)
        assert obs.matrix.shape == (16, 16)

    def test_matrix_is_read_only(self):
        obs = TwoCopyObservable("custom", np.eye(4), SystemShape((2,)))
        with pytest.raises(ValueError):
            obs.matrix[0, 0] = 2.0

    def test_expectation_matches_doubled_oracle(self):
        rng = np.random.default_rng(23)
        for dims in [(2, 2), (2, 3), (2, 2, 2)]:
            shape = SystemShape(dims)
            rho = random_density(shape.total_dim, rng)
            table = (
                bipartite_observables(shape)
                if len(dims) == 2
                else multipartite_observables(shape)
            )
            for obs in table.values():
                want = doubled_expectation(rho, obs.matrix)
                assert obs.expectation_on_pair(rho) == pytest.approx(want, abs=1e-10)


class TestBipartiteObservables:
    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_matches_pairwise_layout_construction(self, dims):
        got = bipartite_observables(SystemShape(dims))
        want = paired_bipartite_observables(dims)
        assert set(got) == set(want)
        for lab, obs in got.items():
            assert np.max(np.abs(obs.matrix - want[lab])) < 1e-12

    def test_labels_and_caching(self):
        shape = SystemShape((2, 2))
        table = bipartite_observables(shape)
        assert set(table) == {"K1", "K2", "V1", "V2", "A"}
        assert all(lab in OBSERVABLE_LABELS for lab in table)
        assert bipartite_observables(SystemShape((2, 2))) is table

    def test_upper_observable_trace(self):
        # 4 * (antisym dim of side 1) * (full dim of side 2)^2.
        for dims in [(2, 2), (2, 3), (3, 3)]:
            table = bipartite_observables(SystemShape(dims))
            d1, d2 = dims
            want = 4 * (d1 * (d1 - 1) / 2) * d2**2
            assert table["K1"].matrix.trace().real == pytest.approx(want)

    def test_bell_state_expectations(self):
        rho = bell().density_matrix().matrix
        table = bipartite_observables(SystemShape((2, 2)))
        for lab in ("K1", "K2", "V1", "V2", "A"):
            assert table[lab].expectation_on_pair(rho) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed_expectations(self):
        shape = SystemShape((2, 2))
        rho = maximally_mixed(shape).matrix
        table = bipartite_observables(shape)
        assert table["K1"].expectation_on_pair(rho) == pytest.approx(1.0, abs=1e-12)
        assert table["K2"].expectation_on_pair(rho) == pytest.approx(1.0, abs=1e-12)
        assert table["V1"].expectation_on_pair(rho) == pytest.approx(-0.5, abs=1e-12)
        assert table["V2"].expectation_on_pair(rho) == pytest.approx(-0.5, abs=1e-12)
        assert table["A"].expectation_on_pair(rho) == pytest.approx(0.25, abs=1e-12)

    def test_rejects_wrong_party_count(self):
        with pytest.raises(ValueError):
            bipartite_observables(SystemShape((2, 2, 2)))


class TestMultipartiteObservables:
    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (2, 2, 2)])
    def test_matches_pairwise_layout_construction(self, dims):
        got = multipartite_observables(SystemShape(dims))
        want = paired_multipartite_observables(dims)
        for lab in ("K", "V"):
            assert np.max(np.abs(got[lab].matrix - want[lab])) < 1e-12

    def test_difference_is_global_antisym(self):
        shape = SystemShape((2, 2, 2))
        table = multipartite_observables(shape)
        diff = table["K"].matrix - table["V"].matrix
        coeff = 8.0 * (1.0 - 2.0 ** (1 - 3))
        want = coeff * antisym_projector(shape, (1, 2, 3))
        assert np.max(np.abs(diff - want)) < 1e-12

    def test_three_qubit_maximally_mixed_expectations(self):
        shape = SystemShape((2, 2, 2))
        rho = maximally_mixed(shape).matrix
        table = multipartite_observables(shape)
        assert table["K"].expectation_on_pair(rho) == pytest.approx(1.875, abs=1e-12)
        assert table["V"].expectation_on_pair(rho) == pytest.approx(-0.75, abs=1e-12)

    def test_rejects_single_party(self):
        with pytest.raises(ValueError):
            multipartite_observables(SystemShape((3,)))
