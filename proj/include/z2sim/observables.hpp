#pragma once

#include "z2sim/circuit.hpp"
#include "z2sim/exact.hpp"
#include "z2sim/lattice.hpp"
#include "z2sim/transform.hpp"

namespace z2sim {

// Z on one link of the full register (links 1-based on chains, 0-based on
// tori, following the layout). Link-Z observables keep their form in every
// frame; the matter-eliminated image is Z on the matching link qubit.
OperatorSum link_field(const LatticeLayout& lay, int link);

// Site occupation N = (1+σ^z)/2 on the full register.
OperatorSum charge_density(const LatticeLayout& lay, int site);

// Its closed matter-eliminated image: on the physical sector σ^z_s equals
// -(-1)^{q_s} times the star of s, so N_s becomes (1 ± Π_{star} Z)/2 on the
// link register. Matches the pipeline image of charge_density exactly.
OperatorSum charge_density_hat(const LatticeLayout& lay, int site);

// Gauge-invariant string between sites n and n+R of a chain:
//   i(-1)^R Z_{l(n-1)} σ⁺_n [Π_{m=n}^{n+R-2} Y_{l(m)}] X_{l(n+R-1)} σ⁻_{n+R}
// with the Z factor dropped at an open left edge. Periodic strings follow
// the shorter arc (ties broken toward increasing n): when the decreasing
// arc is shorter the operator is the daggered increasing-arc string from
// the far endpoint, so creation stays at site n. R=0 reduces to the charge
// density; a string leaving an open lattice throws.
OperatorSum mesonic_string(const LatticeLayout& lay, int site, int R);

// The string pushed through matter elimination (projectively; exact for
// physical-sector expectations).
OperatorSum mesonic_string_hat(const LatticeLayout& lay, int site, int R);

// Closed four-word display of that image with overall weight
// (i/4)(-1)^{R(2n+R-1)/2}, periodic chains. It reproduces the pipeline
// image for R ≥ 2; at R=1 neighbouring factors collide and the display
// degenerates, so the pipeline image is the reference.
OperatorSum mesonic_string_hat_display(const LatticeLayout& lay, int site, int R);

// Ancilla-based measurement of one Pauli word: H on the ancilla (appended
// as the last qubit), then one controlled factor per site. ⟨X⟩+i⟨Y⟩ on the
// ancilla equals ⟨word⟩ in the data state.
Circuit compile_string_measurement(const PauliTerm& word, int register_size);

// Simulated outcome of those circuits: the term's coefficient times the
// ancilla ⟨X⟩+i⟨Y⟩, summed over terms for an operator.
cplx run_hadamard_test(const PauliTerm& term, const Eigen::VectorXcd& psi);
cplx run_hadamard_test(const OperatorSum& a, const Eigen::VectorXcd& psi);

}  // namespace z2sim
