#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "z2sim/model.hpp"
#include "z2sim/pauli.hpp"

namespace z2sim {

// A|ψ⟩ without forming the dense matrix: O(terms · dim).
Eigen::VectorXcd apply_operator(const OperatorSum& a, const Eigen::VectorXcd& psi);

cplx expectation(const Eigen::VectorXcd& psi, const OperatorSum& a);

// Matrix of A on the span of the given computational basis states (usually a
// Gauss sector). Throws if A maps the span outside itself.
Eigen::MatrixXcd restricted_matrix(const OperatorSum& a,
                                   const std::vector<std::uint64_t>& basis);

struct EigenSystem {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // columns
};

EigenSystem eigensystem(const Eigen::MatrixXcd& h);

std::vector<double> spectrum_of(const Eigen::MatrixXcd& h);
std::vector<double> spectrum(const OperatorSum& a, int cap = kDenseCap);
std::vector<double> spectrum_restricted(const OperatorSum& a,
                                        const std::vector<std::uint64_t>& basis);

struct SpectrumReport {
    std::string frame;
    ModelParams params;
    std::vector<double> eigenvalues;
};

// One eigenvalue per row, ascending, with the frame and couplings echoed in
// comment lines. 17 significant digits.
std::string spectrum_report_csv(const SpectrumReport& rep);

// e^{-iHt} acting on a state / as a dense matrix, via diagonalization.
Eigen::VectorXcd evolve_exact(const OperatorSum& h, const Eigen::VectorXcd& psi0, double t,
                              int cap = kDenseCap);
Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& h, double t);

double spectral_norm(const Eigen::MatrixXcd& a);

// min over a global phase of ‖a - e^{iφ}b‖_2, aligned via tr(a†b).
double global_phase_aligned_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& a, std::uint64_t n);

// Largest pairwise gap between two sorted spectra (∞-norm); sizes must agree.
double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace z2sim
