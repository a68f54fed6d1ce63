#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "z2sim/circuit.hpp"

using namespace z2sim;

namespace {

// Embed a gate into an n-qubit register column by column, straight from the
// definition: qubits[i] of the gate is local bit i.
Eigen::MatrixXcd embed(const Gate& g, int nq) {
    const Eigen::MatrixXcd m = gate_matrix(g);
    const int dim = 1 << nq;
    const int k = g.arity();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int b = 0; b < dim; ++b) {
        int local = 0;
        for (int i = 0; i < k; ++i) local |= ((b >> g.qubits[i]) & 1) << i;
        for (int out = 0; out < (1 << k); ++out) {
            int target = b;
            for (int i = 0; i < k; ++i) {
                target &= ~(1 << g.qubits[i]);
                target |= ((out >> i) & 1) << g.qubits[i];
            }
            full(target, b) += m(out, local);
        }
    }
    return full;
}

Eigen::VectorXcd random_state(std::mt19937& rng, int nq) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXcd psi(1 << nq);
    for (int i = 0; i < psi.size(); ++i) psi(i) = cplx(n(rng), n(rng));
    psi.normalize();
    return psi;
}

OperatorSum random_sum(std::mt19937& rng, int nq, int nterms) {
    std::uniform_int_distribution<int> ax(0, 3);
    std::uniform_real_distribution<double> re(-1.0, 1.0);
    OperatorSum a(nq);
    for (int t = 0; t < nterms; ++t) {
        PauliTerm term;
        term.coeff = cplx(re(rng), re(rng));
        for (int q = 0; q < nq; ++q) {
            const Axis axis = Axis(ax(rng));
            if (axis != Axis::I) term.axes[q] = axis;
        }
        a.add_term(term);
    }
    return a.normalized();
}

std::vector<Gate> sample_gates(std::mt19937& rng, int nq) {
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    std::uniform_int_distribution<int> qd(0, nq - 1);
    auto pick2 = [&] {
        int a = qd(rng), b = qd(rng);
        while (b == a) b = qd(rng);
        return std::vector<int>{a, b};
    };
    std::vector<Gate> gs;
    for (GateKind k : {GateKind::H, GateKind::PauliX, GateKind::PauliY, GateKind::PauliZ,
                       GateKind::S, GateKind::Sdg})
        gs.push_back(make_gate(k, {qd(rng)}));
    gs.push_back(make_gate(GateKind::RotZ, {qd(rng)}, ang(rng)));
    gs.push_back(make_gate(GateKind::RotY, {qd(rng)}, ang(rng)));
    gs.push_back(make_gate(GateKind::RotZZ, pick2(), ang(rng)));
    gs.push_back(make_gate(GateKind::RotAxisZY, {qd(rng)}, ang(rng), ang(rng)));
    gs.push_back(make_gate(GateKind::CNot, pick2()));
    gs.push_back(make_gate(GateKind::CZ, pick2()));
    gs.push_back(make_gate(GateKind::CY, pick2()));
    gs.push_back(make_gate(GateKind::ParityCtrlX, {0, 1, 2}, 0, 0, rng() & 1 ? 1 : -1));
    return gs;
}

}  // namespace

TEST_CASE("statevector kernel matches the dense gate for every kind") {
    std::mt19937 rng(11);
    const int nq = 4;
    for (int trial = 0; trial < 20; ++trial) {
        for (const Gate& g : sample_gates(rng, nq)) {
            Eigen::VectorXcd psi = random_state(rng, nq);
            const Eigen::VectorXcd want = embed(g, nq) * psi;
            apply_gate(g, psi);
            CAPTURE(gate_name(g.kind));
            CHECK((psi - want).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("rotation gates realize their closed forms") {
    const double a = 0.731;
    const cplx i1(0, 1);

    Eigen::MatrixXcd rz = gate_matrix(make_gate(GateKind::RotZ, {0}, a));
    CHECK(std::abs(rz(0, 0) - std::exp(-i1 * a / 2.0)) < 1e-15);
    CHECK(std::abs(rz(1, 1) - std::exp(i1 * a / 2.0)) < 1e-15);
    CHECK(std::abs(rz(0, 1)) == 0.0);

    // exp(-i a/2 (cos·Z + sin·Y)) = cos(a/2) - i sin(a/2)(cos·Z + sin·Y)
    const double th = 1.234;
    Eigen::MatrixXcd axis(2, 2);
    axis << std::cos(th), -i1 * std::sin(th), i1 * std::sin(th), -std::cos(th);
    Eigen::MatrixXcd want = std::cos(a / 2) * Eigen::MatrixXcd::Identity(2, 2) -
                            i1 * std::sin(a / 2) * axis;
    Eigen::MatrixXcd got = gate_matrix(make_gate(GateKind::RotAxisZY, {0}, a, th));
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-15);

    // RotAxisZY at theta=0 degenerates to RotZ.
    Eigen::MatrixXcd deg = gate_matrix(make_gate(GateKind::RotAxisZY, {0}, a, 0.0));
    CHECK((deg - rz).cwiseAbs().maxCoeff() < 1e-15);

    Eigen::MatrixXcd rzz = gate_matrix(make_gate(GateKind::RotZZ, {0, 1}, a));
    Eigen::VectorXcd diag(4);
    const cplx lo = std::exp(-i1 * a / 2.0), hi = std::exp(i1 * a / 2.0);
    diag << lo, hi, hi, lo;  // ZZ eigenvalue +1 on 00 and 11
    CHECK((rzz - Eigen::MatrixXcd(diag.asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("parity-controlled X is P+ X + P- in dense form") {
    for (int sign : {1, -1}) {
        const Gate g = make_gate(GateKind::ParityCtrlX, {0, 1, 2}, 0, 0, sign);
        const int nq = 3;
        Eigen::MatrixXcd m = embed(g, nq);
        // Direct construction: target 2, parity qubits {0,1}.
        Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(8, 8);
        for (int b = 0; b < 8; ++b) {
            const int par = ((b & 1) ^ ((b >> 1) & 1)) ? -1 : 1;  // ΠZ on {0,1}
            if (sign * par > 0)
                want(b ^ 4, b) = 1.0;  // P+ branch flips the target
            else
                want(b, b) = 1.0;
        }
        CHECK((m - want).cwiseAbs().maxCoeff() == 0.0);
        // Involution: applying twice is the identity.
        Eigen::MatrixXcd sq = m * m;
        CHECK((sq - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("circuit matrix, inverse, and composition agree") {
    std::mt19937 rng(23);
    const int nq = 4;
    for (int trial = 0; trial < 8; ++trial) {
        Circuit c(nq);
        auto pool = sample_gates(rng, nq);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::size_t i = 0; i < 6; ++i) c.add(pool[i]);

        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1 << nq, 1 << nq);
        for (const auto& g : c.gates) m = embed(g, nq) * m;
        CHECK((circuit_matrix(c) - m).cwiseAbs().maxCoeff() < 1e-12);

        const Eigen::MatrixXcd mi = circuit_matrix(inverse(c));
        CHECK((mi * m - Eigen::MatrixXcd::Identity(1 << nq, 1 << nq)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("heisenberg conjugation matches dense conjugation") {
    std::mt19937 rng(37);
    const int nq = 4;
    for (int trial = 0; trial < 6; ++trial) {
        Circuit c(nq);
        auto pool = sample_gates(rng, nq);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::size_t i = 0; i < 5; ++i) c.add(pool[i]);
        const OperatorSum a = random_sum(rng, nq, 6);

        const Eigen::MatrixXcd mc = circuit_matrix(c);
        const Eigen::MatrixXcd want = mc * to_dense(a) * mc.adjoint();
        const OperatorSum got = conjugate_by_gates(a, c);
        CHECK((to_dense(got) - want).cwiseAbs().maxCoeff() < 1e-11);
    }
}

TEST_CASE("clifford conjugation stays symbolically exact") {
    // H swaps X and Z; coefficients must come out as exact integers.
    Circuit h(1);
    h.add(make_gate(GateKind::H, {0}));
    auto hz = conjugate_by_gates(OperatorSum::single(1, 0, Axis::Z), h).normalized();
    REQUIRE(hz.term_count() == 1);
    CHECK(hz.terms()[0].axes.at(0) == Axis::X);
    CHECK(hz.terms()[0].coeff == cplx(1, 0));

    // S sends X to Y exactly.
    Circuit s(1);
    s.add(make_gate(GateKind::S, {0}));
    auto sx = conjugate_by_gates(OperatorSum::single(1, 0, Axis::X), s).normalized();
    REQUIRE(sx.term_count() == 1);
    CHECK(sx.terms()[0].axes.at(0) == Axis::Y);
    CHECK(sx.terms()[0].coeff == cplx(1, 0));

    // CNOT propagates control X onto the target and target Z onto the control.
    Circuit cx(2);
    cx.add(make_gate(GateKind::CNot, {0, 1}));
    auto xx = conjugate_by_gates(OperatorSum::single(2, 0, Axis::X), cx).normalized();
    REQUIRE(xx.term_count() == 1);
    CHECK(xx.terms()[0].coeff == cplx(1, 0));
    CHECK(xx.terms()[0].axes.at(0) == Axis::X);
    CHECK(xx.terms()[0].axes.at(1) == Axis::X);
    auto zz = conjugate_by_gates(OperatorSum::single(2, 1, Axis::Z), cx).normalized();
    REQUIRE(zz.term_count() == 1);
    CHECK(zz.terms()[0].coeff == cplx(1, 0));
    CHECK(zz.terms()[0].axes.at(0) == Axis::Z);
    CHECK(zz.terms()[0].axes.at(1) == Axis::Z);
}

TEST_CASE("parity-controlled X dresses the target Z with the parity string") {
    // V Z_t V = -sign · (ΠZ_parity) ⊗ Z_t, the identity the matter
    // elimination leans on.
    for (int sign : {1, -1}) {
        Circuit c(4);
        c.add(make_gate(GateKind::ParityCtrlX, {1, 2, 3}, 0, 0, sign));
        auto img = conjugate_by_gates(OperatorSum::single(4, 3, Axis::Z), c).normalized();
        REQUIRE(img.term_count() == 1);
        const auto& t = img.terms()[0];
        CHECK(t.coeff == cplx(-sign, 0));
        CHECK(t.axes.size() == 3);
        CHECK(t.axes.at(1) == Axis::Z);
        CHECK(t.axes.at(2) == Axis::Z);
        CHECK(t.axes.at(3) == Axis::Z);
    }
}

TEST_CASE("layer count groups commuting gates") {
    Circuit c(4);
    CHECK(circuit_layer_count(c) == 0);

    c.add(make_gate(GateKind::CZ, {0, 1}));
    c.add(make_gate(GateKind::CZ, {1, 2}));
    c.add(make_gate(GateKind::CZ, {2, 3}));
    // CZs commute even when they share qubits.
    CHECK(circuit_layer_count(c) == 1);

    c.add(make_gate(GateKind::H, {1}));
    CHECK(circuit_layer_count(c) == 2);

    Circuit d(2);
    d.add(make_gate(GateKind::PauliX, {0}));
    d.add(make_gate(GateKind::PauliX, {0}));
    CHECK(circuit_layer_count(d) == 1);
    d.add(make_gate(GateKind::PauliY, {0}));
    CHECK(circuit_layer_count(d) == 2);

    Circuit e(4);
    e.add(make_gate(GateKind::RotZZ, {0, 1}, 0.3));
    e.add(make_gate(GateKind::RotZZ, {2, 3}, 0.4));
    CHECK(circuit_layer_count(e) == 1);
}

TEST_CASE("gate list round-trips bit for bit") {
    std::mt19937 rng(53);
    Circuit c(5);
    for (const Gate& g : sample_gates(rng, 5)) c.add(g);
    c.gates[2].label = "edge term";

    const std::string text = to_gate_list(c);
    const Circuit back = parse_gate_list(text, 5);
    REQUIRE(back.size() == c.size());
    CHECK(to_gate_list(back) == text);
    CHECK((circuit_matrix(back) - circuit_matrix(c)).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS(parse_gate_list("warp q=0\n", 2));
    CHECK_THROWS(parse_gate_list("h q=7\n", 2));
}

TEST_CASE("qasm export expands the composite gates") {
    Circuit c(3);
    c.add(make_gate(GateKind::H, {0}));
    c.add(make_gate(GateKind::RotZZ, {0, 1}, 0.5));
    c.add(make_gate(GateKind::RotAxisZY, {2}, 0.25, 0.75));
    c.add(make_gate(GateKind::ParityCtrlX, {0, 1, 2}));
    const std::string q = to_qasm(c);
    CHECK(q.find("OPENQASM 2.0") != std::string::npos);
    CHECK(q.find("qelib1.inc") != std::string::npos);
    CHECK(q.find("qreg q[3]") != std::string::npos);
    CHECK(q.find("cx ") != std::string::npos);
    CHECK(q.find("rz(") != std::string::npos);
}

TEST_CASE("gate construction rejects malformed input") {
    CHECK_THROWS(make_gate(GateKind::CNot, {0}));
    CHECK_THROWS(make_gate(GateKind::H, {0, 1}));
    CHECK_THROWS(make_gate(GateKind::CZ, {2, 2}));
    CHECK_THROWS(make_gate(GateKind::ParityCtrlX, {0}));
    CHECK_THROWS(make_gate(GateKind::ParityCtrlX, {0, 1}, 0, 0, 3));
    Circuit c(2);
    CHECK_THROWS(c.add(make_gate(GateKind::H, {5})));
}
