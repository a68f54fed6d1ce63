#include "z2sim/observables.hpp"

#include <stdexcept>

namespace z2sim {

namespace {

// (X ± iY)/2 on one qubit.
OperatorSum ladder(int nq, int q, int sign) {
    OperatorSum a = OperatorSum::single(nq, q, Axis::X, 0.5);
    a += OperatorSum::single(nq, q, Axis::Y, cplx(0.0, 0.5 * sign));
    return a;
}

}  // namespace

OperatorSum link_field(const LatticeLayout& lay, int link) {
    return OperatorSum::single(lay.n_qubits(), lay.link_qubit(link), Axis::Z);
}

OperatorSum charge_density(const LatticeLayout& lay, int site) {
    const int nq = lay.n_qubits();
    OperatorSum a = OperatorSum::identity(nq, 0.5);
    a += OperatorSum::single(nq, lay.matter_qubit(site), Axis::Z, 0.5);
    return a;
}

OperatorSum charge_density_hat(const LatticeLayout& lay, int site) {
    const int M = lay.n_links();
    const double sign = lay.stagger(site) ? -1.0 : 1.0;
    PauliTerm star;
    star.coeff = -0.5 * sign;
    for (int lq : lay.star_links(site)) star.axes[lq - lay.n_sites()] = Axis::Z;
    OperatorSum a = OperatorSum::identity(M, 0.5);
    a.add_term(star);
    return a;
}

OperatorSum mesonic_string(const LatticeLayout& lay, int site, int R) {
    if (lay.dim != 1) throw std::invalid_argument("mesonic_string: chains only");
    const int L = lay.L1;
    if (site < 1 || site > L) throw std::invalid_argument("mesonic_string: site out of range");
    if (R < 0) throw std::invalid_argument("mesonic_string: negative length");
    if (R == 0) return charge_density(lay, site);

    const bool periodic = lay.boundary == Boundary::Periodic;
    if (periodic) {
        if (R >= L) throw std::invalid_argument("mesonic_string: string longer than the ring");
        if (L - R < R) return mesonic_string(lay, (site + R - 1) % L + 1, L - R).dagger();
    } else if (site + R > L) {
        throw std::invalid_argument("mesonic_string: string leaves the open lattice");
    }
    // Links along the increasing arc; 1-based with wrap.
    auto wrap_link = [&](int l) { return (l - 1 + L) % L + 1; };

    const int nq = lay.n_qubits();
    OperatorSum a = OperatorSum::identity(nq, cplx(0.0, (R % 2) ? -1.0 : 1.0));
    if (periodic || site > 1)
        a = a * OperatorSum::single(nq, lay.link_qubit(wrap_link(site - 1)), Axis::Z);
    a = a * ladder(nq, lay.matter_qubit(site), +1);
    for (int m = site; m <= site + R - 2; ++m)
        a = a * OperatorSum::single(nq, lay.link_qubit(wrap_link(m)), Axis::Y);
    a = a * OperatorSum::single(nq, lay.link_qubit(wrap_link(site + R - 1)), Axis::X);
    const int end_site = periodic ? (site + R - 1) % L + 1 : site + R;
    a = a * ladder(nq, lay.matter_qubit(end_site), -1);
    return a.normalized();
}

OperatorSum mesonic_string_hat(const LatticeLayout& lay, int site, int R) {
    return map_operator_to_hat(lay, mesonic_string(lay, site, R));
}

OperatorSum mesonic_string_hat_display(const LatticeLayout& lay, int site, int R) {
    if (lay.dim != 1 || lay.boundary != Boundary::Periodic)
        throw std::invalid_argument("mesonic_string_hat_display: periodic chains only");
    const int L = lay.L1;
    if (site < 1 || site > L) throw std::invalid_argument("mesonic_string_hat_display: site out of range");
    if (R >= 1 && R < L && L - R < R)
        return mesonic_string_hat_display(lay, (site + R - 1) % L + 1, L - R).dagger();
    if (R < 2 || R >= L)
        throw std::invalid_argument("mesonic_string_hat_display: needs 2 <= R < L");

    const int n = site;
    // Link l sits on hat qubit (l-1) mod L.
    auto hq = [&](int l) { return (l - 1 + L * 8) % L; };
    auto one = [&](int l, Axis ax) { return OperatorSum::single(L, hq(l), ax); };
    auto ystr = [&](int from, int to) {
        OperatorSum s = OperatorSum::identity(L);
        for (int m = from; m <= to; ++m) s = s * one(m, Axis::Y);
        return s;
    };
    auto sgn = [](int k) { return (k % 2) ? -1.0 : 1.0; };

    OperatorSum m1 = one(n - 1, Axis::Z) * ystr(n, n + R - 2) * one(n + R - 1, Axis::X);
    OperatorSum m2 =
        (one(n, Axis::X) * ystr(n + 1, n + R - 2) * one(n + R - 1, Axis::X)).scaled(cplx(0.0, sgn(n)));
    OperatorSum m3 =
        (one(n - 1, Axis::Z) * ystr(n, n + R - 1) * one(n + R, Axis::Z)).scaled(cplx(0.0, sgn(n + R)));
    OperatorSum m4 = (one(n, Axis::X) * ystr(n + 1, n + R - 1) * one(n + R, Axis::Z)).scaled(sgn(R + 1));

    const long long half = static_cast<long long>(R) * (2LL * n + R - 1) / 2;
    const cplx pref = cplx(0.0, 0.25) * ((half % 2) ? -1.0 : 1.0);
    return (m1 + m2 + m3 + m4).scaled(pref).normalized();
}

Circuit compile_string_measurement(const PauliTerm& word, int register_size) {
    const int anc = register_size;
    Circuit c(register_size + 1);
    c.add(make_gate(GateKind::H, {anc}));
    for (const auto& [q, ax] : word.axes) {
        if (q < 0 || q >= register_size)
            throw std::invalid_argument("compile_string_measurement: word exceeds register");
        switch (ax) {
            case Axis::X: c.add(make_gate(GateKind::CNot, {anc, q})); break;
            case Axis::Y: c.add(make_gate(GateKind::CY, {anc, q})); break;
            case Axis::Z: c.add(make_gate(GateKind::CZ, {anc, q})); break;
            default: break;
        }
    }
    return c;
}

cplx run_hadamard_test(const PauliTerm& term, const Eigen::VectorXcd& psi) {
    int nq = 0;
    while ((1LL << nq) < psi.size()) ++nq;
    if ((1LL << nq) != psi.size())
        throw std::invalid_argument("run_hadamard_test: state dimension is not a power of two");
    Circuit c = compile_string_measurement(term, nq);

    // Data state with the ancilla appended in |0⟩.
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(psi.size() * 2);
    full.head(psi.size()) = psi;
    apply_circuit(c, full);

    const int anc = nq;
    const double x = expectation(full, OperatorSum::single(nq + 1, anc, Axis::X)).real();
    const double y = expectation(full, OperatorSum::single(nq + 1, anc, Axis::Y)).real();
    return term.coeff * cplx(x, y);
}

cplx run_hadamard_test(const OperatorSum& a, const Eigen::VectorXcd& psi) {
    cplx acc = 0.0;
    for (const auto& t : a.terms()) acc += run_hadamard_test(t, psi);
    return acc;
}

}  // namespace z2sim
