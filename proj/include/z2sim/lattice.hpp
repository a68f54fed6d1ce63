#pragma once

#include <cstdint>
#include <vector>

#include "z2sim/pauli.hpp"

namespace z2sim {

enum class Boundary { Open, Periodic };

// Qubit layout for a d=1 chain or a d=2 torus of the gauge model.
//
// d=1: sites are 1..L; link n joins sites n and n+1 (link L wraps back to
// site 1 when periodic). Matter qubit for site n is n-1; link qubit for
// link l is L + l - 1. Open chains have L-1 links.
//
// d=2: sites are (x1, x2) with 0 <= xi < Li, both directions periodic.
// Site index s = x2*L1 + x1; the two links leaving s point along +x1 (dir 1)
// and +x2 (dir 2) and get link index 2s + (dir - 1). Matter qubit = s,
// link qubit = n_sites + link index.
struct LatticeLayout {
    int dim = 1;
    Boundary boundary = Boundary::Periodic;
    int L1 = 0;
    int L2 = 1;  // 1 for chains

    static LatticeLayout chain(int L, Boundary b);
    static LatticeLayout torus(int L1, int L2);

    int n_sites() const { return L1 * L2; }
    int n_links() const;
    int n_qubits() const { return n_sites() + n_links(); }

    // d=1 accessors; sites and links are 1-based as described above.
    int matter_qubit(int site) const;
    int link_qubit(int link) const;

    // d=2 accessors; coordinates are 0-based and wrap.
    int site_index(int x1, int x2) const;
    int link_index(int x1, int x2, int dir) const;
    int matter_qubit_2d(int x1, int x2) const;
    int link_qubit_2d(int x1, int x2, int dir) const;

    // Staggered charge q at a site: q=0 on even sublattice, q=1 on odd.
    // d=1 uses site parity n mod 2; d=2 uses (x1+x2) mod 2.
    int stagger(int site) const;

    // Link qubits touching a site (2 on a chain interior, 4 on a torus).
    std::vector<int> star_links(int site) const;
};

// Gauss-law generator at one site: e^{iπN_s} Π_{l∈star(s)} Z_l, which is
// -σ^z_s Π Z_l. The physical sector fixes its eigenvalue to e^{iπq_s}.
OperatorSum gauss_operator(const LatticeLayout& lay, int site);

// Computational basis states (bit patterns) on which every Gauss generator
// takes its staggered-charge eigenvalue. Sorted ascending.
std::vector<std::uint64_t> sector_basis(const LatticeLayout& lay);

// Basis states satisfying the constraints for an arbitrary charge pattern
// q[site] ∈ {0,1} indexed by 0-based site index.
std::vector<std::uint64_t> sector_basis_for_charges(const LatticeLayout& lay,
                                                    const std::vector<int>& charges);

// Diagonal projector onto the staggered physical sector.
OperatorSum sector_projector(const LatticeLayout& lay);

// Π_n σ^z_n over matter qubits only: fermion-number parity up to a fixed
// sign, conserved by every Hamiltonian built here.
OperatorSum global_parity_operator(const LatticeLayout& lay);

// Basis states of an n-qubit register whose bits over `qubits` have the
// given parity (0 = even number of set bits). Sorted ascending.
std::vector<std::uint64_t> parity_basis(int n_qubits, const std::vector<int>& qubits,
                                        int parity);

}  // namespace z2sim
