#pragma once

#include <string>
#include <vector>

#include "z2sim/lattice.hpp"
#include "z2sim/pauli.hpp"

namespace z2sim {

struct ModelParams {
    double h = 1.0;  // electric field
    double J = 1.0;  // hopping
    double m = 0.0;  // staggered mass
    double b = 0.0;  // plaquette coupling (d=2 only)
};

// Reference formulation: staggered fermions under a Jordan-Wigner encoding
// ordered by site index, gauge links as X/Z qubits. All other builders must
// reproduce its physical-sector spectrum.
//
//   H = h Σ_l Z_l + b Σ_p X X X X + J Σ_<xy> (ψ†_x X_l ψ_y + h.c.)
//     + m Σ_s (-1)^{stagger} N_s,   N = (1+σ^z)/2.
OperatorSum build_fermionic(const LatticeLayout& lay, const ModelParams& p);

// One hopping term of the hard-core bosonic formulation on a torus:
// prefactor · σ⁺_{create} · (word on link qubits) · σ⁻_{annih}. Entries come
// in conjugate pairs, so summing them directly gives a Hermitian hop part.
struct TermSpecEntry {
    cplx prefactor;
    PauliTerm link_word;  // unit-coefficient word, link qubits only
    int create_site = 0;  // 0-based site indices
    int annih_site = 0;
};

struct TermSpec {
    std::vector<TermSpecEntry> entries;
};

// Star dressing of the Jordan-Wigner strings: every intermediate σ^z_k is
// replaced by -(-1)^{q_k} Π_{l∈star(k)} Z_l, which is an identity on the
// physical sector. The resulting words act on link qubits only.
TermSpec default_term_spec(const LatticeLayout& lay);

// One line per entry: "re im <axis tokens> create=<site> annih=<site>",
// axis tokens in global qubit ids; '#' starts a comment.
std::string term_spec_to_text(const TermSpec& ts, const LatticeLayout& lay);
TermSpec term_spec_from_text(const std::string& text, const LatticeLayout& lay);

// Throws std::runtime_error describing the first violated condition:
// words must be X on the hop link plus Z's on other links, entries must
// close under Hermitian conjugation, and the assembled hop part must
// commute with every Gauss generator.
void validate_term_spec(const TermSpec& ts, const LatticeLayout& lay);

// Hard-core bosonic formulation, same register as the fermionic one.
// Split by coupling so later transformations can treat the pieces
// independently.
struct H1Pieces {
    OperatorSum electric;   // h Σ Z_l
    OperatorSum hopping;    // J part
    OperatorSum mass;       // (m/2) Σ (-1)^{stagger} σ^z (+ constant)
    OperatorSum plaquette;  // b part (d=2)
    OperatorSum total() const;
};

// d=1 chains: hop n uses the single-link dressing
//   -iJ Z_{l(n-1)} σ⁺_n X_{l(n)} σ⁻_{n+1} + h.c.
// with the Z factor dropped at the open left edge.
H1Pieces build_hardcore_h1_pieces(const LatticeLayout& lay, const ModelParams& p);

// d=2 tori: hops come from a term spec (default_term_spec if omitted).
H1Pieces build_hardcore_h1_pieces(const LatticeLayout& lay, const ModelParams& p,
                                  const TermSpec& ts);

OperatorSum build_hardcore_h1(const LatticeLayout& lay, const ModelParams& p);

// Gauge-eliminated open-chain form on L matter qubits (site n -> qubit n-1):
//   Σ_{n<L} [ h s_n Z_1···Z_n - (J/2)(X_n X_{n+1} + Y_n Y_{n+1}) ]
//   + (m/2) Σ_n (-1)^n σ^z_n,   s_n = (-1)^{n(n+3)/2}.
OperatorSum build_gauge_eliminated_h0(int L, const ModelParams& p);

// Matter-eliminated closed form on the link register (hat qubit j is link
// j+1 for chains). Pieces follow the electric / gauge-matter / mass split
// whose exponentials have exact circuits.
struct HatPieces {
    OperatorSum electric;      // Σ (h Z + (J/2) Y)
    OperatorSum gauge_matter;  // (J/2) Σ Z Y Z (edge-truncated when open)
    OperatorSum mass;          // -(m/2) Σ S_x
    OperatorSum total() const;
};

HatPieces build_matter_eliminated_hat(int L, Boundary b, const ModelParams& p);

// Test hook: flips the sign of one gauge-matter term in the closed-form
// builder so consistency checks can prove they would catch such a defect.
void testing_set_gm_sign_flip(bool enabled);

}  // namespace z2sim
