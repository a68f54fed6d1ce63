#include "z2sim/trotter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace z2sim {

Circuit compile_omega_e(int M, Boundary b, const ModelParams& p, double eps) {
    Circuit c(M);
    const double zc = p.h;
    const double yc = (b == Boundary::Open && M == 1) ? p.J : 0.5 * p.J;
    if (zc == 0.0 && yc == 0.0) return c;
    const double r = std::hypot(zc, yc);
    const double theta = std::atan2(yc, zc);
    for (int j = 0; j < M; ++j)
        c.add(make_gate(GateKind::RotAxisZY, {j}, 2 * r * eps, theta));
    return c;
}

Circuit compile_omega_m(int M, Boundary b, const ModelParams& p, double eps) {
    Circuit c(M);
    if (p.m == 0.0) return c;
    const double a = -eps * p.m;  // e^{-iε(-m/2)ZZ} per pair
    if (b == Boundary::Periodic) {
        for (int j = 0; j < M; ++j)
            c.add(make_gate(GateKind::RotZZ, {j, (j + 1) % M}, a));
    } else if (M == 1) {
        c.add(make_gate(GateKind::RotZ, {0}, 2 * a));  // mass piece is -m Z
    } else {
        c.add(make_gate(GateKind::RotZ, {0}, a));
        for (int j = 0; j + 1 < M; ++j) c.add(make_gate(GateKind::RotZZ, {j, j + 1}, a));
        c.add(make_gate(GateKind::RotZ, {M - 1}, a));
    }
    return c;
}

namespace {

void add_cz_rung(Circuit& c, int M, Boundary b) {
    const int pairs = b == Boundary::Periodic ? M : M - 1;
    for (int j = 0; j < pairs; ++j) c.add(make_gate(GateKind::CZ, {j, (j + 1) % M}));
}

}  // namespace

Circuit compile_omega_gm(int M, Boundary b, const ModelParams& p, double eps) {
    Circuit c(M);
    if (p.J == 0.0) return c;
    if (b == Boundary::Open && M == 1) return c;  // the lone Y lives in Ω_E
    // The CZ rung conjugates every Y_j into its Z-dressed neighbour form, so
    // the sandwich reproduces the exponential exactly.
    add_cz_rung(c, M, b);
    for (int j = 0; j < M; ++j) c.add(make_gate(GateKind::RotY, {j}, eps * p.J));
    add_cz_rung(c, M, b);
    return c;
}

Circuit compile_omega_e0(int L, const ModelParams& p, double eps) {
    if (L < 2) throw std::invalid_argument("chain needs at least 2 sites");
    Circuit c(L);
    if (p.h == 0.0) return c;
    auto v_gate = [&](int n) {  // e^{-iεh·s_n Z_0···Z_{n-1}} after the ladder
        const double sgn = ((n * (n + 3) / 2) % 2) ? -1.0 : 1.0;
        return make_gate(GateKind::RotZ, {n - 1}, 2 * eps * p.h * sgn);
    };
    // One shared CNOT ladder telescopes all L-1 string rotations: 3L-5 gates.
    for (int k = 1; k <= L - 2; ++k) c.add(make_gate(GateKind::CNot, {k - 1, k}));
    c.add(v_gate(L - 1));
    for (int k = L - 2; k >= 1; --k) {
        c.add(make_gate(GateKind::CNot, {k - 1, k}));
        c.add(v_gate(k));
    }
    return c;
}

std::vector<std::string> parse_ordering(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    std::vector<std::string> sorted = out;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<std::string>{"e", "gm", "m"})
        throw std::invalid_argument("ordering must be a permutation of gm,m,e");
    return out;
}

Circuit compile_step(int M, Boundary b, const ModelParams& p, double eps,
                     const std::vector<std::string>& ordering) {
    std::vector<std::string> sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<std::string>{"e", "gm", "m"})
        throw std::invalid_argument("ordering must be a permutation of gm,m,e");

    Circuit step(M);
    // Matrix order: the last listed factor acts first.
    for (auto it = ordering.rbegin(); it != ordering.rend(); ++it) {
        Circuit part = *it == "gm"  ? compile_omega_gm(M, b, p, eps)
                       : *it == "m" ? compile_omega_m(M, b, p, eps)
                                    : compile_omega_e(M, b, p, eps);
        for (auto& g : part.gates) step.add(std::move(g));
    }
    return step;
}

HybridPieces build_hybrid_pieces(int M, Boundary b, const ModelParams& p, double eps) {
    if (M < 2) throw std::invalid_argument("hybrid split needs at least 2 link qubits");
    if (eps == 0.0) throw std::invalid_argument("hybrid split needs a nonzero step");
    const int L = b == Boundary::Periodic ? M : M + 1;
    const HatPieces hat = build_matter_eliminated_hat(L, b, p);

    HybridPieces out{OperatorSum(M), OperatorSum(M), OperatorSum(M), OperatorSum(M)};
    const double zq = M_PI / (2 * eps), zp = M_PI / (4 * eps);
    if (b == Boundary::Periodic) {
        for (int j = 0; j < M; ++j) {
            out.h_z += OperatorSum::single(M, j, Axis::Z, zq);
            out.h_z += OperatorSum::single(M, j, Axis::Z, -zp) *
                       OperatorSum::single(M, (j + 1) % M, Axis::Z);
        }
    } else {
        out.h_z += OperatorSum::single(M, 0, Axis::Z, zp);
        out.h_z += OperatorSum::single(M, M - 1, Axis::Z, zp);
        for (int j = 1; j + 1 < M; ++j) out.h_z += OperatorSum::single(M, j, Axis::Z, zq);
        for (int j = 0; j + 1 < M; ++j)
            out.h_z += OperatorSum::single(M, j, Axis::Z, -zp) *
                       OperatorSum::single(M, j + 1, Axis::Z);
    }
    out.h_z = out.h_z.normalized();

    for (int j = 0; j < M; ++j) out.h_y += OperatorSum::single(M, j, Axis::Y, 0.5 * p.J);
    out.h_y = out.h_y.normalized();

    out.hat_z = (out.h_z + hat.mass).normalized();
    out.hat_e = hat.electric;
    return out;
}

double trotter_error_bound(const ModelParams& p, int n_links, double t, int steps) {
    if (steps < 1) throw std::invalid_argument("step count must be positive");
    return t * t / (2.0 * steps) * (p.J * p.J + std::abs(p.J * p.h)) * n_links;
}

long recommend_steps(const ModelParams& p, int n_links, double t, double delta) {
    if (delta <= 0) throw std::invalid_argument("error budget must be positive");
    const double num = t * t * (p.J * p.J + std::abs(p.J * p.h)) * n_links;
    if (num <= 0) return 1;
    return std::max(1L, static_cast<long>(std::ceil(num / (2.0 * delta))));
}

double measured_trotter_error(int L, Boundary b, const ModelParams& p, double t, int steps,
                              const std::vector<std::string>& ordering) {
    const int M = b == Boundary::Periodic ? L : L - 1;
    const Eigen::MatrixXcd exact = propagator(to_dense(build_matter_eliminated_hat(L, b, p).total()), t);
    const Eigen::MatrixXcd step = circuit_matrix(compile_step(M, b, p, t / steps, ordering));
    return spectral_norm(exact - matrix_power(step, static_cast<std::uint64_t>(steps)));
}

namespace {

bool near_zero(const OperatorSum& a, double atol) {
    const OperatorSum n = a.normalized();  // cancellation happens across terms
    for (const auto& t : n.terms())
        if (std::abs(t.coeff) > atol) return false;
    return true;
}

}  // namespace

CommutatorAudit audit_commutators(int L, const ModelParams& p) {
    if (L < 3) throw std::invalid_argument("commutator audit needs at least 3 links");
    const HatPieces hat = build_matter_eliminated_hat(L, Boundary::Periodic, p);
    CommutatorAudit out{commutator(hat.gauge_matter, hat.mass),
                        commutator(hat.mass, hat.electric),
                        commutator(hat.gauge_matter, hat.electric)};

    const double scale = std::max({1.0, std::abs(p.m * p.J), std::abs(p.h * p.J), p.J * p.J});
    out.mass_terms_cancel = near_zero(out.gm_m + out.m_e, 1e-13 * scale);

    const int M = L;
    auto single = [&](int j, Axis ax) { return OperatorSum::single(M, (j % M + M) % M, ax); };
    OperatorSum d_gm_m(M), d_gm_e(M);
    for (int n = 0; n < M; ++n) {
        d_gm_m += (single(n - 1, Axis::Z) * single(n, Axis::X) +
                   single(n, Axis::X) * single(n + 1, Axis::Z))
                      .scaled(cplx(0, -0.5 * p.m * p.J));
        d_gm_e += (single(n - 1, Axis::Z) * single(n, Axis::X) * single(n + 1, Axis::Z))
                      .scaled(cplx(0, p.h * p.J));
        d_gm_e += (single(n - 1, Axis::X) * single(n, Axis::Y) * single(n + 1, Axis::Z) +
                   single(n - 1, Axis::Z) * single(n, Axis::Y) * single(n + 1, Axis::X))
                      .scaled(cplx(0, -0.5 * p.J * p.J));
    }
    const OperatorSum d_m_e = d_gm_m.scaled(-1.0);
    out.displayed_forms_match = near_zero(out.gm_m - d_gm_m, 1e-12 * scale) &&
                                near_zero(out.m_e - d_m_e, 1e-12 * scale) &&
                                near_zero(out.gm_e - d_gm_e, 1e-12 * scale);

    out.gm_e_norm = operator_norm(out.gm_e).value;
    out.norm_bound = (p.J * p.J + std::abs(p.J * p.h)) * L;
    return out;
}

}  // namespace z2sim
