#include "z2sim/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace z2sim {

Eigen::VectorXcd apply_operator(const OperatorSum& a, const Eigen::VectorXcd& psi) {
    const std::uint64_t dim = psi.size();
    if (dim != (std::uint64_t{1} << a.register_size()))
        throw std::invalid_argument("apply_operator: state size mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (const auto& t : a.terms())
        for (std::uint64_t b = 0; b < dim; ++b) {
            if (psi(b) == cplx(0)) continue;
            const BasisAction r = apply_to_basis(t, b);
            out(r.state) += r.amp * psi(b);  // amp already carries the coefficient
        }
    return out;
}

cplx expectation(const Eigen::VectorXcd& psi, const OperatorSum& a) {
    return psi.dot(apply_operator(a, psi));  // Eigen's dot conjugates the left side
}

Eigen::MatrixXcd restricted_matrix(const OperatorSum& a,
                                   const std::vector<std::uint64_t>& basis) {
    std::unordered_map<std::uint64_t, int> index;
    index.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);

    const int n = static_cast<int>(basis.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& t : a.terms())
        for (int j = 0; j < n; ++j) {
            const BasisAction r = apply_to_basis(t, basis[j]);
            auto it = index.find(r.state);
            if (it == index.end())
                throw std::runtime_error("restricted_matrix: operator leaves the subspace");
            m(it->second, j) += r.amp;
        }
    return m;
}

EigenSystem eigensystem(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> spectrum_of(const Eigen::MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    const auto& v = solver.eigenvalues();
    return std::vector<double>(v.data(), v.data() + v.size());
}

std::vector<double> spectrum(const OperatorSum& a, int cap) {
    return spectrum_of(to_dense(a, cap));
}

std::vector<double> spectrum_restricted(const OperatorSum& a,
                                        const std::vector<std::uint64_t>& basis) {
    return spectrum_of(restricted_matrix(a, basis));
}

std::string spectrum_report_csv(const SpectrumReport& rep) {
    std::ostringstream out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "# frame=%s\n# h=%.17g J=%.17g m=%.17g b=%.17g\n",
                  rep.frame.c_str(), rep.params.h, rep.params.J, rep.params.m, rep.params.b);
    out << buf << "index,eigenvalue\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", i, rep.eigenvalues[i]);
        out << buf;
    }
    return out.str();
}

Eigen::VectorXcd evolve_exact(const OperatorSum& h, const Eigen::VectorXcd& psi0, double t,
                              int cap) {
    const EigenSystem es = eigensystem(to_dense(h, cap));
    Eigen::VectorXcd coeffs = es.vectors.adjoint() * psi0;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs(k) *= std::exp(cplx(0, -es.values(k) * t));
    return es.vectors * coeffs;
}

Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& h, double t) {
    const EigenSystem es = eigensystem(h);
    Eigen::VectorXcd phases(es.values.size());
    for (Eigen::Index k = 0; k < es.values.size(); ++k)
        phases(k) = std::exp(cplx(0, -es.values(k) * t));
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

double spectral_norm(const Eigen::MatrixXcd& a) {
    if (a.rows() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

double global_phase_aligned_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const cplx tr = (a.adjoint() * b).trace();
    const cplx phase = std::abs(tr) > 1e-300 ? tr / std::abs(tr) : cplx(1.0);
    return spectral_norm(a - b / phase);
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& a, std::uint64_t n) {
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd base = a;
    while (n) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("spectrum_distance: spectra have different sizes");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace z2sim
