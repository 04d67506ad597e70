"""Walkthrough: a CZ gate through a cavity bus, and what the dispersive
reduction does and does not capture.

Two qubits sit far detuned above a 6.9 GHz cavity.  The cavity is never
populated with real photons; it mediates an effective qubit-qubit coupling
proportional to g_qc**2 / detuning.  With qubit B parked at
freq_a + anharm_b, the |11> state circulates through |02> and returns with a
pi phase: a CZ gate.

The script prints the effective couplings, runs the full-model gate, and then
compares the |02> population predicted by the reduced 9x9 model against the
full qubit-cavity-qubit evolution.
"""

import numpy as np

from scgates import (
    CZ,
    IndirectSystemSpec,
    QubitSpec,
    build_effective_hamiltonian,
    build_indirect_hamiltonian,
    computational_indices,
    effective_couplings,
    gate_time,
    run_gate,
)

spec = IndirectSystemSpec(
    qubit_a=QubitSpec(freq=8.2, anharm=0.20, n_levels=3),
    qubit_b=QubitSpec(freq=8.45, anharm=0.25, n_levels=3),
    cavity_freq=6.9,
    g_qc=0.199,
    n_photons=5,
)

c = effective_couplings(spec)
print("dispersive couplings (GHz):")
for name in ("g_eff_1", "g_eff_2", "g_eff_3", "g_eff_4"):
    print(f"  {name} = {getattr(c, name):.6f}")
print(f"  dressed qubit A 0-1 frequency: {c.dressed_freq_a1:.6f}")

t_g = gate_time(spec, CZ)
result = run_gate(spec, CZ)
print(f"\nCZ in {t_g:.2f} ns -> F = {result.fidelity:.4f}, leakage = {result.leakage:.2e}")


def population_02(h, spec_dim_labels, times):
    w, v = np.linalg.eigh(h)
    psi0 = np.zeros(h.shape[0], dtype=complex)
    psi0[spec_dim_labels[0]] = 1.0
    coeff = v.conj().T @ psi0
    amps = (v[spec_dim_labels[1], :] * np.exp(-1j * np.outer(times, w))) @ coeff
    return np.abs(amps) ** 2


times = np.linspace(0.0, 2 * t_g, 9)
i11 = computational_indices(spec)[3]
i02 = 2 * spec.n_photons
p_full = population_02(build_indirect_hamiltonian(spec), (i11, i02), times)
p_eff = population_02(build_effective_hamiltonian(spec), (4, 2), times)

print("\n t (ns)   P(|02>) full   P(|02>) effective")
for t, pf, pe in zip(times, p_full, p_eff):
    print(f" {t:6.2f}   {pf:11.4f}   {pe:15.4f}")
print(
    "\nat this operating coupling (g_qc/detuning = 0.15) the reduced model's"
    "\nexchange frequency is visibly off: the gate runs at the edge of the"
    "\ndispersive approximation, and counter-rotating cavity terms shift the"
    "\nfull dynamics.  Tighten g_qc/detuning and the two curves collapse."
)
