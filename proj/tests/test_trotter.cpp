#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "z2sim/trotter.hpp"

using namespace z2sim;

namespace {

ModelParams params(double h, double J, double m) {
    ModelParams p;
    p.h = h;
    p.J = J;
    p.m = m;
    return p;
}

Eigen::MatrixXcd exponential(const OperatorSum& a, double eps) {
    return propagator(to_dense(a), eps);
}

}  // namespace

TEST_CASE("one-step circuits reproduce their exponentials exactly") {
    const ModelParams p = params(0.9, 1.3, 0.7);
    for (auto b : {Boundary::Periodic, Boundary::Open}) {
        const int L = 6;
        const int M = b == Boundary::Periodic ? L : L - 1;
        const HatPieces hat = build_matter_eliminated_hat(L, b, p);
        for (double eps : {0.01, 0.1}) {
            CAPTURE(eps);
            CAPTURE(M);
            CHECK(spectral_norm(circuit_matrix(compile_omega_e(M, b, p, eps)) -
                                exponential(hat.electric, eps)) < 1e-12);
            CHECK(spectral_norm(circuit_matrix(compile_omega_m(M, b, p, eps)) -
                                exponential(hat.mass, eps)) < 1e-12);
            // The CZ rung squares away, leaving only conjugated Y rotations.
            CHECK(global_phase_aligned_diff(circuit_matrix(compile_omega_gm(M, b, p, eps)),
                                            exponential(hat.gauge_matter, eps)) < 1e-12);
        }
    }

    // Two-site open chain: the lone link folds everything into one rotation.
    const HatPieces tiny = build_matter_eliminated_hat(2, Boundary::Open, params(0.8, 1.1, 0.5));
    CHECK(spectral_norm(circuit_matrix(compile_omega_e(1, Boundary::Open, params(0.8, 1.1, 0.5), 0.1)) -
                        exponential(tiny.electric, 0.1)) < 1e-12);
    CHECK(spectral_norm(circuit_matrix(compile_omega_m(1, Boundary::Open, params(0.8, 1.1, 0.5), 0.1)) -
                        exponential(tiny.mass, 0.1)) < 1e-12);
    CHECK(compile_omega_gm(1, Boundary::Open, params(0.8, 1.1, 0.5), 0.1).gates.empty());
}

TEST_CASE("step assembly follows the requested ordering") {
    const ModelParams p = params(1.0, 0.8, 0.6);
    const int M = 4;
    const double eps = 0.07;
    const Eigen::MatrixXcd gm = circuit_matrix(compile_omega_gm(M, Boundary::Periodic, p, eps));
    const Eigen::MatrixXcd m = circuit_matrix(compile_omega_m(M, Boundary::Periodic, p, eps));
    const Eigen::MatrixXcd e = circuit_matrix(compile_omega_e(M, Boundary::Periodic, p, eps));

    const Eigen::MatrixXcd step = circuit_matrix(compile_step(M, Boundary::Periodic, p, eps));
    CHECK(spectral_norm(step - gm * m * e) < 1e-12);

    const auto flipped = compile_step(M, Boundary::Periodic, p, eps, {"e", "m", "gm"});
    CHECK(spectral_norm(circuit_matrix(flipped) - e * m * gm) < 1e-12);

    CHECK(parse_ordering("gm, m, e") == std::vector<std::string>{"gm", "m", "e"});
    CHECK(parse_ordering("E,GM,M") == std::vector<std::string>{"e", "gm", "m"});
    CHECK_THROWS(parse_ordering("gm,m"));
    CHECK_THROWS(parse_ordering("gm,m,e,e"));
    CHECK_THROWS(parse_ordering("gm,m,x"));
    CHECK_THROWS(compile_step(M, Boundary::Periodic, p, eps, {"gm", "gm", "e"}));
}

TEST_CASE("hybrid split composes to the digital step") {
    const ModelParams p = params(0.9, 1.2, 0.7);
    for (auto b : {Boundary::Periodic, Boundary::Open}) {
        const int L = 4;
        const int M = b == Boundary::Periodic ? L : L - 1;
        for (double eps : {0.05, 0.1}) {
            const HybridPieces hy = build_hybrid_pieces(M, b, p, eps);
            const Eigen::MatrixXcd seq = exponential(hy.h_z, eps) * exponential(hy.h_y, eps) *
                                         exponential(hy.hat_z, eps) * exponential(hy.hat_e, eps);
            const Eigen::MatrixXcd step =
                circuit_matrix(compile_step(M, b, p, eps));
            CAPTURE(eps);
            CAPTURE(M);
            CHECK(global_phase_aligned_diff(seq, step) < 1e-12);

            // The pure-Z piece is the CZ rung, up to phase.
            Circuit rung(M);
            const int pairs = b == Boundary::Periodic ? M : M - 1;
            for (int j = 0; j < pairs; ++j)
                rung.add(make_gate(GateKind::CZ, {j, (j + 1) % M}));
            CHECK(global_phase_aligned_diff(circuit_matrix(rung), exponential(hy.h_z, eps)) <
                  1e-12);
        }
    }

    // Without mass the two diagonal pieces coincide.
    const HybridPieces hy0 = build_hybrid_pieces(4, Boundary::Periodic, params(1, 1, 0), 0.1);
    CHECK((hy0.hat_z - hy0.h_z).normalized().term_count() == 0);

    CHECK_THROWS(build_hybrid_pieces(1, Boundary::Open, p, 0.1));
    CHECK_THROWS(build_hybrid_pieces(4, Boundary::Periodic, p, 0.0));
}

TEST_CASE("electric-string step telescopes through one ladder") {
    ModelParams p = params(1.1, 0, 0);
    for (int L : {2, 4, 6}) {
        CAPTURE(L);
        const Circuit c = compile_omega_e0(L, p, 0.08);
        CHECK(c.gates.size() == std::size_t(3 * L - 5));
        // With J=m=0 the gauge-eliminated chain is the electric string sum.
        const OperatorSum he = build_gauge_eliminated_h0(L, p);
        CHECK(spectral_norm(circuit_matrix(c) - exponential(he, 0.08)) < 1e-12);
    }
    for (int L : {10, 20, 40})
        CHECK(compile_omega_e0(L, p, 0.08).gates.size() == std::size_t(3 * L - 5));
    CHECK_THROWS(compile_omega_e0(1, p, 0.08));
}

TEST_CASE("error bound matches the measured error scaling") {
    const ModelParams p = params(1, 1, 1);
    const int L = 4;  // periodic: 4 links
    const double t = 1.0;

    double prev = 0.0;
    for (int steps : {16, 32, 64}) {
        const double err = measured_trotter_error(L, Boundary::Periodic, p, t, steps);
        const double bound = trotter_error_bound(p, L, t, steps);
        CAPTURE(steps);
        CHECK(err > 0.0);
        CHECK(err <= 3.0 * bound);
        if (prev > 0.0) {
            const double ratio = err / prev;  // first order: halves with 2x steps
            CHECK(ratio > 0.35);
            CHECK(ratio < 0.65);
        }
        prev = err;
    }

    // The bound is blind to the mass, by the commutator cancellation.
    CHECK(trotter_error_bound(params(1, 1, 0), 8, 1, 100) ==
          trotter_error_bound(params(1, 1, 5), 8, 1, 100));
    CHECK(trotter_error_bound(params(1, 0, 3), 8, 1, 100) == 0.0);
    CHECK(recommend_steps(params(1, 1, 1), 8, 1.0, 0.01) == 800);
    CHECK(recommend_steps(params(1, 0, 1), 8, 1.0, 0.01) == 1);
    CHECK_THROWS(trotter_error_bound(p, 4, 1.0, 0));
    CHECK_THROWS(recommend_steps(p, 4, 1.0, 0.0));
}

TEST_CASE("commutator audit confirms the cancellation and the norm budget") {
    const ModelParams p = params(0.9, 1.2, 0.7);
    for (int L : {4, 6}) {
        const CommutatorAudit audit = audit_commutators(L, p);
        CAPTURE(L);
        CHECK(audit.mass_terms_cancel);
        CHECK(audit.displayed_forms_match);
        CHECK(audit.gm_e_norm > 0.0);
        CHECK(audit.gm_e_norm <= audit.norm_bound);
    }
    CHECK_THROWS(audit_commutators(2, p));
}

TEST_CASE("step depth is flat in system size") {
    const ModelParams p = params(1, 1, 1);
    const int base = circuit_layer_count(compile_step(4, Boundary::Periodic, p, 0.1));
    CHECK(base > 0);
    for (int M : {8, 12})
        CHECK(circuit_layer_count(compile_step(M, Boundary::Periodic, p, 0.1)) == base);
    CHECK(circuit_layer_count(compile_omega_e(12, Boundary::Periodic, p, 0.1)) == 1);
}
