#pragma once

#include <string>
#include <vector>

#include "z2sim/circuit.hpp"
#include "z2sim/exact.hpp"
#include "z2sim/model.hpp"

namespace z2sim {

// One-step circuits for the matter-eliminated pieces on M link qubits. Every
// circuit reproduces its exponential exactly, not just to first order:
//   Ω_E  : one axis rotation per qubit,
//   Ω_m  : ZZ rotations (plus edge Z rotations when open),
//   Ω_GM : a CZ rung, a Y-rotation layer, and the same CZ rung again.
Circuit compile_omega_e(int M, Boundary b, const ModelParams& p, double eps);
Circuit compile_omega_m(int M, Boundary b, const ModelParams& p, double eps);
Circuit compile_omega_gm(int M, Boundary b, const ModelParams& p, double eps);

// Electric-string step for the gauge-eliminated open chain: the growing
// Z-strings share one CNOT ladder, telescoping to 3L-5 gates.
Circuit compile_omega_e0(int L, const ModelParams& p, double eps);

// Matrix-order labels, leftmost applied last. "gm,m,e" is the default.
std::vector<std::string> parse_ordering(const std::string& text);

Circuit compile_step(int M, Boundary b, const ModelParams& p, double eps,
                     const std::vector<std::string>& ordering = {"gm", "m", "e"});

// Diagonal-plus-rotation split whose four exponentials compose to the same
// step up to a global phase; the 1/ε coefficients make the diagonal factors
// ε-independent CZ rungs.
struct HybridPieces {
    OperatorSum h_z;    // (π/2ε)-scaled Z/ZZ rung
    OperatorSum h_y;    // (J/2) Σ Y
    OperatorSum hat_z;  // h_z plus the mass piece
    OperatorSum hat_e;  // electric piece
};

HybridPieces build_hybrid_pieces(int M, Boundary b, const ModelParams& p, double eps);

// (t²/2N)(J² + |Jh|) · n_links, from the uncancelled step commutator.
double trotter_error_bound(const ModelParams& p, int n_links, double t, int steps);

// Smallest N with bound ≤ delta.
long recommend_steps(const ModelParams& p, int n_links, double t, double delta);

// ‖e^{-iĤt} - step(t/N)^N‖₂, dense.
double measured_trotter_error(int L, Boundary b, const ModelParams& p, double t, int steps,
                              const std::vector<std::string>& ordering = {"gm", "m", "e"});

struct CommutatorAudit {
    OperatorSum gm_m;  // [Ĥ_GM, Ĥ_m]
    OperatorSum m_e;   // [Ĥ_m, Ĥ_E]
    OperatorSum gm_e;  // [Ĥ_GM, Ĥ_E]
    bool mass_terms_cancel = false;     // gm_m + m_e = 0 exactly
    bool displayed_forms_match = false; // closed forms reproduce the commutators
    double gm_e_norm = 0;
    double norm_bound = 0;  // (J² + |Jh|) L
};

// Periodic chains; the audit is symbolic except for the norm.
CommutatorAudit audit_commutators(int L, const ModelParams& p);

}  // namespace z2sim
