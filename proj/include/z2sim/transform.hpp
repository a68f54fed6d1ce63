#pragma once

#include "z2sim/circuit.hpp"
#include "z2sim/lattice.hpp"
#include "z2sim/model.hpp"

namespace z2sim {

// Gauge elimination for open chains: one parity-controlled link flip per
// link, flipping link n when Σ_{k≤n} (N_k + q_k) is odd. Conjugation makes
// the Hamiltonian commute with every link Z and carries the physical sector
// onto the all-links-|0⟩ block.
Circuit build_gauge_elimination(const LatticeLayout& lay);

// The link-vacuum block of a link-Z-commuting operator, re-indexed onto the
// L matter qubits. A term with X or Y on a link qubit throws.
OperatorSum project_link_vacuum(const OperatorSum& a, const LatticeLayout& lay);

// Matter elimination: one parity-controlled matter flip per site, with the
// control parity over the site's star and sign opposite the stagger.
Circuit build_matter_elimination(const LatticeLayout& lay);

// -(m/2) Σ_s Π_{l∈star(s)} Z_l, the sector-equivalent replacement of the
// staggered mass used ahead of matter elimination.
OperatorSum effective_mass(const LatticeLayout& lay, double m);

// ⟨matter all |1⟩| A |matter all |1⟩⟩, re-indexed onto the link register
// (link k becomes qubit k). With require_block_diagonal set, a matter X or Y
// factor throws; otherwise such terms have zero matrix element and drop.
OperatorSum project_out(const OperatorSum& a, const LatticeLayout& lay,
                        bool require_block_diagonal = true);

// Link-register qubits whose X/Y factors change sign under destaggering:
// even links on chains, links leaving the even sublattice on tori. Both
// demand even extents.
std::vector<int> destagger_qubits(const LatticeLayout& lay);
OperatorSum destagger(const OperatorSum& a, const LatticeLayout& lay);

struct PipelineStages {
    OperatorSum input;       // mass-substituted formulation, full register
    OperatorSum conjugated;  // after the elimination circuit
    OperatorSum projected;   // link register, still staggered
    OperatorSum hat;         // destaggered
};

struct DeriveResult {
    OperatorSum electric;      // h Z plus the bare (J/2) Y terms
    OperatorSum gauge_matter;  // dressed hop remainder
    OperatorSum mass;          // star products
    OperatorSum plaquette;
    Circuit u2{0};
    PipelineStages stages;
    OperatorSum hat() const;
};

// The full derivation from the hard-core bosonic formulation to the
// matter-eliminated frame, piece by piece; bare weight-one Y terms from the
// hop image are regrouped into the electric piece.
DeriveResult derive_matter_eliminated(const LatticeLayout& lay, const ModelParams& p);
DeriveResult derive_matter_eliminated(const LatticeLayout& lay, const ModelParams& p,
                                      const TermSpec& ts);

// 𝒱 ⟨matter all |1⟩| U₂ |ψ⟩: the matter-eliminated state matching a
// physical-sector state. Unit norm is preserved exactly on the sector.
Eigen::VectorXcd map_state_to_hat(const LatticeLayout& lay, const Eigen::VectorXcd& psi);

// An observable pushed through the same pipeline (projectively, so matter
// off-diagonal pieces drop; exact for sector-state expectations).
OperatorSum map_operator_to_hat(const LatticeLayout& lay, const OperatorSum& a);

}  // namespace z2sim
