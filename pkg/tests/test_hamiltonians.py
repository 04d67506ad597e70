import numpy as np
import pytest

from scgates import (
    TWOPI,
    BasisIndex,
    DirectSystemSpec,
    IndirectSystemSpec,
    QubitSpec,
    build_direct_hamiltonian,
    build_indirect_hamiltonian,
    build_jx,
    computational_indices,
    hamiltonian_parts,
    ladder_diagonal,
)

QA = QubitSpec(freq=5.5, anharm=0.15, n_levels=3)
QB = QubitSpec(freq=5.5, anharm=0.10, n_levels=3)


def hermiticity_defect(h):
    return np.max(np.abs(h - h.conj().T))


class TestQubitSpec:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            QubitSpec(freq=-1.0, anharm=0.1)
        with pytest.raises(ValueError):
            QubitSpec(freq=5.0, anharm=-0.1)
        with pytest.raises(ValueError):
            QubitSpec(freq=5.0, anharm=0.1, n_levels=1)


class TestLadderDiagonal:
    def test_ground_state_is_exactly_zero(self):
        d = ladder_diagonal(QubitSpec(5.5, 0.1, 4))
        assert d[0, 0] == 0.0

    def test_second_level(self):
        # level 2 of a (5.5, 0.1) ladder: 2*5.5 - 0.1*2*1/2 = 10.9 GHz
        d = ladder_diagonal(QubitSpec(5.5, 0.1, 3))
        assert d[2, 2] == pytest.approx(TWOPI * 10.9, rel=1e-14)

    def test_third_level_of_four(self):
        # level 3: 3*5.5 - 0.1*3*2/2 = 16.5 - 0.3
        d = ladder_diagonal(QubitSpec(5.5, 0.1, 4))
        assert d[3, 3] == pytest.approx(TWOPI * 16.2, rel=1e-14)

    def test_is_diagonal(self):
        d = ladder_diagonal(QubitSpec(5.5, 0.1, 5))
        assert np.count_nonzero(d - np.diag(np.diag(d))) == 0


class TestBuildJx:
    def test_two_levels_is_pauli_x(self):
        assert np.array_equal(build_jx(2), np.array([[0.0, 1.0], [1.0, 0.0]]))

    def test_three_levels(self):
        jx = build_jx(3)
        assert jx[0, 1] == 1.0
        assert jx[1, 2] == pytest.approx(np.sqrt(2), rel=1e-15)

    def test_five_level_offdiagonals(self):
        jx = build_jx(5)
        off = np.array([jx[n - 1, n] for n in range(1, 5)])
        assert off == pytest.approx([1.0, np.sqrt(2), np.sqrt(3), 2.0], rel=1e-15)

    def test_symmetric(self):
        jx = build_jx(4)
        assert np.array_equal(jx, jx.T)

    def test_rejects_single_level(self):
        with pytest.raises(ValueError):
            build_jx(1)


class TestDirectHamiltonian:
    def test_uncoupled_eigenvalues_are_pairwise_sums(self):
        spec = DirectSystemSpec(QA, QB, g=0.0)
        h = build_direct_hamiltonian(spec)
        got = np.sort(np.linalg.eigvalsh(h))
        ea = np.diag(ladder_diagonal(QA))
        eb = np.diag(ladder_diagonal(QB))
        expected = np.sort(np.add.outer(ea, eb).ravel())
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_two_level_resonant_doublet_splitting(self):
        # the |01>,|10> block decouples by excitation parity; splitting is 2*(2*pi*g)
        q = QubitSpec(5.0, 0.0, 2)
        g = 0.003
        h = build_direct_hamiltonian(DirectSystemSpec(q, q, g))
        w = np.sort(np.linalg.eigvalsh(h))
        assert w[2] - w[1] == pytest.approx(2 * TWOPI * g, rel=1e-9)

    def test_dimension_and_hermiticity(self):
        spec = DirectSystemSpec(QA, QB, g=0.0152)
        h = build_direct_hamiltonian(spec)
        assert h.shape == (9, 9)
        assert hermiticity_defect(h) == 0.0

    def test_scale_moves_only_harmonic_part(self):
        spec = DirectSystemSpec(QA, QB, g=0.01)
        h1 = build_direct_hamiltonian(spec, 1.0)
        h2 = build_direct_hamiltonian(spec, 1.1)
        diff = np.diag(h2 - h1).real
        nb = np.arange(3)
        expected = np.kron(np.ones(3), TWOPI * 0.1 * QB.freq * nb)
        assert diff == pytest.approx(expected, rel=1e-12)
        # off-diagonal coupling untouched
        assert np.array_equal(h2 - np.diag(np.diag(h2)), h1 - np.diag(np.diag(h1)))

    def test_rejects_nonpositive_scale(self):
        spec = DirectSystemSpec(QA, QB, g=0.01)
        with pytest.raises(ValueError):
            build_direct_hamiltonian(spec, 0.0)

    def test_exchange_symmetry_under_qubit_swap(self):
        qa = QubitSpec(5.5, 0.15, 3)
        qb = QubitSpec(5.7, 0.10, 4)
        h = build_direct_hamiltonian(DirectSystemSpec(qa, qb, 0.02))
        h_swapped = build_direct_hamiltonian(DirectSystemSpec(qb, qa, 0.02))
        # permutation (n_a, n_b) -> (n_b, n_a)
        na, nb = 3, 4
        perm = np.zeros(na * nb, dtype=int)
        for a in range(na):
            for b in range(nb):
                perm[b * na + a] = a * nb + b
        assert np.array_equal(h_swapped, h[np.ix_(perm, perm)])

    def test_two_level_parity_commutes(self):
        q = QubitSpec(5.0, 0.0, 2)
        h = build_direct_hamiltonian(DirectSystemSpec(q, q, 0.01))
        parity = np.diag([1.0, -1.0, -1.0, 1.0])
        assert np.max(np.abs(parity @ h @ parity - h)) == 0.0


class TestIndirectHamiltonian:
    def test_uncoupled_eigenvalues(self):
        spec = IndirectSystemSpec(QA, QB, cavity_freq=6.9, g_qc=0.0, n_photons=4)
        h = build_indirect_hamiltonian(spec)
        got = np.sort(np.linalg.eigvalsh(h))
        ea = np.diag(ladder_diagonal(QA))
        eb = np.diag(ladder_diagonal(QB))
        ec = TWOPI * 6.9 * np.arange(4)
        expected = np.sort((ea[:, None, None] + eb[None, :, None] + ec[None, None, :]).ravel())
        assert got == pytest.approx(expected, rel=1e-12, abs=1e-9)

    def test_dimension_and_hermiticity(self):
        spec = IndirectSystemSpec(QubitSpec(8.2, 0.2, 3), QubitSpec(8.45, 0.25, 3), 6.9, 0.2, 5)
        h = build_indirect_hamiltonian(spec)
        assert h.shape == (45, 45)
        assert hermiticity_defect(h) == 0.0

    def test_vacuum_rabi_splitting(self):
        # resonant 2-level qubit A; qubit B parked far away so it is a spectator
        qa = QubitSpec(6.0, 0.0, 2)
        qb = QubitSpec(50.0, 0.0, 2)
        G = 0.001
        spec = IndirectSystemSpec(qa, qb, cavity_freq=6.0, g_qc=G, n_photons=4)
        w = np.linalg.eigvalsh(build_indirect_hamiltonian(spec))
        doublet = np.sort(w[np.argsort(np.abs(w - TWOPI * 6.0))[:2]])
        assert doublet[1] - doublet[0] == pytest.approx(2 * TWOPI * G, rel=1e-3)


class TestBasisBookkeeping:
    def test_flatten_direct(self):
        spec = DirectSystemSpec(QA, QB, 0.01)
        assert BasisIndex(1, 2).flatten(spec) == 5
        assert computational_indices(spec) == (0, 1, 3, 4)

    def test_flatten_indirect(self):
        spec = IndirectSystemSpec(QA, QB, 6.9, 0.1, n_photons=5)
        assert BasisIndex(1, 0, 2).flatten(spec) == 17
        assert computational_indices(spec) == (0, 5, 15, 20)

    def test_flatten_bounds(self):
        spec = DirectSystemSpec(QA, QB, 0.01)
        with pytest.raises(ValueError):
            BasisIndex(3, 0).flatten(spec)
        with pytest.raises(ValueError):
            BasisIndex(0, 0, 1).flatten(spec)


class TestHamiltonianParts:
    @pytest.mark.parametrize("scale", [0.35, 1.0, 1.1])
    def test_direct_split_matches_builder(self, scale):
        spec = DirectSystemSpec(QA, QB, 0.0152)
        h0, h1 = hamiltonian_parts(spec)
        assert h0 + scale * h1 == pytest.approx(
            build_direct_hamiltonian(spec, scale).real, rel=1e-14, abs=1e-12
        )

    def test_indirect_split_matches_builder(self):
        spec = IndirectSystemSpec(QubitSpec(8.2, 0.2, 3), QubitSpec(8.45, 0.25, 3), 6.9, 0.2, 4)
        h0, h1 = hamiltonian_parts(spec)
        assert h0 + 1.07 * h1 == pytest.approx(
            build_indirect_hamiltonian(spec, 1.07).real, rel=1e-14, abs=1e-12
        )
