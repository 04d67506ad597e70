"""Dense Hamiltonians for pairs of weakly anharmonic multilevel qubits.

Two wiring variants are covered: a direct (capacitive) qubit-qubit coupling,
and an indirect one where both qubits couple to a shared cavity mode.  No
rotating-wave approximation is applied anywhere in this module; the coupling
operators keep their full ladder structure, counter-rotating terms included.

Unit conventions, used consistently across the package:

* Every user-facing frequency (qubit, anharmonicity, cavity, coupling) is a
  linear frequency in GHz.
* Matrix elements are angular frequencies in rad/ns, i.e. linear inputs are
  multiplied by 2*pi exactly once, at construction time.  With hbar = 1 this
  makes time a plain number of nanoseconds.
* Product-basis ordering is qubit A outermost, qubit B next, cavity innermost:
  the flattened index of |n_a, n_b, n_c> is (n_a * N_B + n_b) * N_c + n_c.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWOPI = 2.0 * np.pi

__all__ = [
    "TWOPI",
    "QubitSpec",
    "DirectSystemSpec",
    "IndirectSystemSpec",
    "BasisIndex",
    "ladder_diagonal",
    "build_jx",
    "build_direct_hamiltonian",
    "build_indirect_hamiltonian",
    "hamiltonian_parts",
    "computational_indices",
]


@dataclass(frozen=True)
class QubitSpec:
    """One anharmonic ladder.

    Level ``n`` sits at ``n*freq - anharm*n*(n-1)/2`` in GHz, so a positive
    ``anharm`` pulls the higher transitions below the 0-1 transition.
    """

    freq: float
    anharm: float
    n_levels: int = 3

    def __post_init__(self):
        if self.freq <= 0:
            raise ValueError(f"qubit frequency must be positive, got {self.freq}")
        if self.anharm < 0:
            raise ValueError(f"anharmonicity must be non-negative, got {self.anharm}")
        if self.n_levels < 2:
            raise ValueError(f"a qubit needs at least two levels, got {self.n_levels}")


@dataclass(frozen=True)
class DirectSystemSpec:
    """Two qubits with a fixed transverse coupling of strength ``g`` (GHz)."""

    qubit_a: QubitSpec
    qubit_b: QubitSpec
    g: float

    def __post_init__(self):
        if self.g < 0:
            raise ValueError(f"coupling strength must be non-negative, got {self.g}")

    @property
    def dim(self) -> int:
        return self.qubit_a.n_levels * self.qubit_b.n_levels


@dataclass(frozen=True)
class IndirectSystemSpec:
    """Two qubits coupled through a shared cavity mode.

    Both qubits couple to the cavity with the same strength ``g_qc`` (GHz).
    ``n_photons`` is the cavity truncation dimension (Fock states 0 to
    ``n_photons - 1``); the default of 5 is ample for dispersive operation,
    where the cavity is only virtually populated (doubling it moves gate
    fidelities at the 1e-8 level for the parameter ranges swept here).
    """

    qubit_a: QubitSpec
    qubit_b: QubitSpec
    cavity_freq: float
    g_qc: float
    n_photons: int = 5

    def __post_init__(self):
        if self.cavity_freq <= 0:
            raise ValueError(f"cavity frequency must be positive, got {self.cavity_freq}")
        if self.g_qc < 0:
            raise ValueError(f"coupling strength must be non-negative, got {self.g_qc}")
        if self.n_photons < 2:
            raise ValueError(f"cavity truncation must be at least 2, got {self.n_photons}")

    @property
    def dim(self) -> int:
        return self.qubit_a.n_levels * self.qubit_b.n_levels * self.n_photons


@dataclass(frozen=True)
class BasisIndex:
    """Occupation numbers of one product-basis state; ``n_c`` is None for direct systems."""

    n_a: int
    n_b: int
    n_c: int | None = None

    def flatten(self, spec: DirectSystemSpec | IndirectSystemSpec) -> int:
        """Row/column index of this state in the matrices built from ``spec``."""
        nb = spec.qubit_b.n_levels
        if not 0 <= self.n_a < spec.qubit_a.n_levels:
            raise ValueError(f"n_a={self.n_a} outside qubit A ladder")
        if not 0 <= self.n_b < nb:
            raise ValueError(f"n_b={self.n_b} outside qubit B ladder")
        if isinstance(spec, IndirectSystemSpec):
            n_c = 0 if self.n_c is None else self.n_c
            if not 0 <= n_c < spec.n_photons:
                raise ValueError(f"n_c={n_c} outside cavity truncation")
            return (self.n_a * nb + self.n_b) * spec.n_photons + n_c
        if self.n_c is not None:
            raise ValueError("direct systems have no cavity index")
        return self.n_a * nb + self.n_b


def _level_energies(qubit: QubitSpec, freq_scale: float = 1.0) -> np.ndarray:
    """Angular ladder energies; ``freq_scale`` multiplies only the n*freq term."""
    n = np.arange(qubit.n_levels, dtype=float)
    return TWOPI * (n * qubit.freq * freq_scale - qubit.anharm * n * (n - 1) / 2.0)


def ladder_diagonal(qubit: QubitSpec) -> np.ndarray:
    """Diagonal ladder Hamiltonian of one qubit, rad/ns.

    Entry ``n`` equals ``2*pi*(n*freq - anharm*n*(n-1)/2)``; the ground-state
    entry is exactly zero.  Returned as a real (n_levels, n_levels) array.
    """
    return np.diag(_level_energies(qubit))


def build_jx(n_levels: int) -> np.ndarray:
    """Transverse ladder coupling operator with <n-1|Jx|n> = sqrt(n).

    Real symmetric and dimensionless; for two levels this is the Pauli X.
    """
    if n_levels < 2:
        raise ValueError(f"coupling operator needs at least two levels, got {n_levels}")
    jx = np.zeros((n_levels, n_levels))
    n = np.arange(1, n_levels)
    jx[n - 1, n] = np.sqrt(n)
    jx[n, n - 1] = np.sqrt(n)
    return jx


def build_direct_hamiltonian(spec: DirectSystemSpec, freq_scale_b: float = 1.0) -> np.ndarray:
    """Full Hamiltonian of a directly coupled pair, rad/ns.

    ``freq_scale_b`` multiplies qubit B's bare frequency term ``n*freq`` only;
    the anharmonicity is a junction property and stays fixed while the qubit
    is flux-tuned.  Scale 1.0 is the nominal operating point.
    """
    if freq_scale_b <= 0:
        raise ValueError(f"frequency scale must be positive, got {freq_scale_b}")
    na, nb = spec.qubit_a.n_levels, spec.qubit_b.n_levels
    h = (
        np.kron(np.diag(_level_energies(spec.qubit_a)), np.eye(nb))
        + np.kron(np.eye(na), np.diag(_level_energies(spec.qubit_b, freq_scale_b)))
        + TWOPI * spec.g * np.kron(build_jx(na), build_jx(nb))
    )
    return h.astype(complex)


def build_indirect_hamiltonian(spec: IndirectSystemSpec, freq_scale_b: float = 1.0) -> np.ndarray:
    """Full Hamiltonian of a cavity-coupled pair, rad/ns.

    The qubit-cavity coupling enters as (a + a^dag) Jx for each qubit, with
    both rotating and counter-rotating terms kept.
    """
    if freq_scale_b <= 0:
        raise ValueError(f"frequency scale must be positive, got {freq_scale_b}")
    na, nb, nc = spec.qubit_a.n_levels, spec.qubit_b.n_levels, spec.n_photons
    ia, ib, ic = np.eye(na), np.eye(nb), np.eye(nc)
    x_cav = build_jx(nc)  # a + a^dag has the same sqrt(n) off-diagonal structure
    h = (
        np.kron(np.kron(np.diag(_level_energies(spec.qubit_a)), ib), ic)
        + np.kron(np.kron(ia, np.diag(_level_energies(spec.qubit_b, freq_scale_b))), ic)
        + np.kron(np.kron(ia, ib), np.diag(TWOPI * spec.cavity_freq * np.arange(nc, dtype=float)))
        + TWOPI * spec.g_qc * np.kron(np.kron(build_jx(na), ib), x_cav)
        + TWOPI * spec.g_qc * np.kron(np.kron(ia, build_jx(nb)), x_cav)
    )
    return h.astype(complex)


def hamiltonian_parts(spec: DirectSystemSpec | IndirectSystemSpec) -> tuple[np.ndarray, np.ndarray]:
    """Split H(scale) = h0 + scale * h1, with h1 the scaled part of qubit B.

    Returns real float64 arrays (the Hamiltonians here are real symmetric),
    which keeps the time stepper on LAPACK's faster real path.  The identity
    ``h0 + s*h1 == build_*_hamiltonian(spec, s)`` holds exactly.
    """
    nb = spec.qubit_b.n_levels
    number_b = np.diag(np.arange(nb, dtype=float))
    if isinstance(spec, IndirectSystemSpec):
        h1 = np.kron(
            np.kron(np.eye(spec.qubit_a.n_levels), TWOPI * spec.qubit_b.freq * number_b),
            np.eye(spec.n_photons),
        )
        h0 = build_indirect_hamiltonian(spec, 1.0).real - h1
    else:
        h1 = np.kron(np.eye(spec.qubit_a.n_levels), TWOPI * spec.qubit_b.freq * number_b)
        h0 = build_direct_hamiltonian(spec, 1.0).real - h1
    return h0, h1


def computational_indices(spec: DirectSystemSpec | IndirectSystemSpec) -> tuple[int, int, int, int]:
    """Flattened indices of |00>, |01>, |10>, |11> (cavity in vacuum if present)."""
    n_c = 0 if isinstance(spec, IndirectSystemSpec) else None
    states = ((0, 0), (0, 1), (1, 0), (1, 1))
    i00, i01, i10, i11 = (BasisIndex(a, b, n_c).flatten(spec) for a, b in states)
    return i00, i01, i10, i11
