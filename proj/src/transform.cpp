#include "z2sim/transform.hpp"

#include <bit>
#include <stdexcept>

namespace z2sim {

Circuit build_gauge_elimination(const LatticeLayout& lay) {
    if (lay.dim != 1 || lay.boundary != Boundary::Open)
        throw std::invalid_argument("gauge elimination needs an open chain");
    Circuit c(lay.n_qubits());
    for (int n = 1; n <= lay.n_links(); ++n) {
        // Flip link n when Σ_{k≤n}(N_k + q_k) is odd. With N = (1+σ^z)/2 the
        // parity operator is (-1)^{n+Q_n} Π_{k≤n} σ^z_k, Q_n = Σ_{k≤n} q_k.
        int qsum = 0;
        std::vector<int> qubits;
        for (int k = 1; k <= n; ++k) {
            qsum += lay.stagger(k);
            qubits.push_back(lay.matter_qubit(k));
        }
        qubits.push_back(lay.link_qubit(n));
        const int sign = ((n + qsum) % 2) ? 1 : -1;  // flip iff sign·ΠZ = +1
        c.add(make_gate(GateKind::ParityCtrlX, qubits, 0, 0, sign));
    }
    return c;
}

OperatorSum project_link_vacuum(const OperatorSum& a, const LatticeLayout& lay) {
    if (a.register_size() != lay.n_qubits())
        throw std::invalid_argument("project_link_vacuum: register mismatch");
    const int base = lay.n_sites();
    OperatorSum out(base);
    for (const auto& t : a.terms()) {
        PauliTerm nt;
        nt.coeff = t.coeff;
        for (const auto& [q, ax] : t.axes) {
            if (q < base) {
                nt.axes.emplace(q, ax);
            } else if (ax != Axis::Z) {
                throw std::runtime_error("operator acts off-diagonally on a link");
            }
            // link Z contributes +1 on the all-|0⟩ block
        }
        out.add_term(std::move(nt));
    }
    return out.normalized();
}

Circuit build_matter_elimination(const LatticeLayout& lay) {
    Circuit c(lay.n_qubits());
    for (int s = 0; s < lay.n_sites(); ++s) {
        const int site = lay.dim == 1 ? s + 1 : s;
        std::vector<int> qubits = lay.star_links(site);
        qubits.push_back(s);                              // matter target last
        const int sign = lay.stagger(site) ? 1 : -1;      // opposite the stagger
        c.add(make_gate(GateKind::ParityCtrlX, qubits, 0, 0, sign));
    }
    return c;
}

OperatorSum effective_mass(const LatticeLayout& lay, double m) {
    OperatorSum sum(lay.n_qubits());
    for (int s = 0; s < lay.n_sites(); ++s) {
        const int site = lay.dim == 1 ? s + 1 : s;
        PauliTerm t;
        t.coeff = -0.5 * m;
        for (int q : lay.star_links(site)) {
            auto [it, fresh] = t.axes.emplace(q, Axis::Z);
            if (!fresh) {
                t.axes.erase(it);  // Z² = 1 when both chain ends meet (L=2)
            }
        }
        sum.add_term(std::move(t));
    }
    return sum.normalized();
}

OperatorSum project_out(const OperatorSum& a, const LatticeLayout& lay,
                        bool require_block_diagonal) {
    if (a.register_size() != lay.n_qubits())
        throw std::invalid_argument("project_out: register mismatch");
    const int base = lay.n_sites();
    OperatorSum out(lay.n_links());
    for (const auto& t : a.terms()) {
        PauliTerm nt;
        nt.coeff = t.coeff;
        bool keep = true;
        for (const auto& [q, ax] : t.axes) {
            if (q >= base) {
                nt.axes.emplace(q - base, ax);
            } else if (ax == Axis::Z) {
                nt.coeff = -nt.coeff;  // matter sits in |1⟩
            } else {
                if (require_block_diagonal)
                    throw std::runtime_error("A not block-diagonal in matter σ^z");
                keep = false;
                break;
            }
        }
        if (keep) out.add_term(std::move(nt));
    }
    return out.normalized();
}

std::vector<int> destagger_qubits(const LatticeLayout& lay) {
    std::vector<int> qubits;
    if (lay.dim == 1) {
        if (lay.L1 % 2) throw std::invalid_argument("destaggering needs an even chain");
        for (int l = 2; l <= lay.n_links(); l += 2) qubits.push_back(l - 1);
    } else {
        if (lay.L1 % 2 || lay.L2 % 2)
            throw std::invalid_argument("destaggering needs even torus extents");
        for (int k = 0; k < lay.n_links(); ++k)
            if (lay.stagger(k / 2) == 0) qubits.push_back(k);
    }
    return qubits;
}

OperatorSum destagger(const OperatorSum& a, const LatticeLayout& lay) {
    if (a.register_size() != lay.n_links())
        throw std::invalid_argument("destagger acts on the link register");
    std::vector<bool> flagged(lay.n_links(), false);
    for (int q : destagger_qubits(lay)) flagged[q] = true;

    OperatorSum out(lay.n_links());
    for (const auto& t : a.terms()) {
        PauliTerm nt = t;
        for (const auto& [q, ax] : nt.axes)
            if (flagged[q] && (ax == Axis::X || ax == Axis::Y)) nt.coeff = -nt.coeff;
        out.add_term(std::move(nt));
    }
    return out.normalized();
}

OperatorSum DeriveResult::hat() const {
    OperatorSum t = electric;
    t += gauge_matter;
    t += mass;
    t += plaquette;
    return t.normalized();
}

namespace {

DeriveResult derive_impl(const LatticeLayout& lay, const ModelParams& p, const H1Pieces& h1) {
    DeriveResult out;
    out.u2 = build_matter_elimination(lay);

    auto pipe = [&](const OperatorSum& a) {
        return destagger(project_out(conjugate_by_gates(a, out.u2), lay), lay);
    };

    const OperatorSum mass_in = effective_mass(lay, p.m);
    const OperatorSum el_img = pipe(h1.electric);
    const OperatorSum hop_img = pipe(h1.hopping);
    out.mass = pipe(mass_in);
    out.plaquette = pipe(h1.plaquette);

    // Bare Y terms carry the same per-link weight as the electric field and
    // share its single-qubit rotation, so they live in the electric piece.
    OperatorSum electric = el_img, gm(lay.n_links());
    for (const auto& t : hop_img.terms()) {
        if (t.weight() == 1 && t.axes.begin()->second == Axis::Y)
            electric.add_term(t);
        else
            gm.add_term(t);
    }
    out.electric = electric.normalized();
    out.gauge_matter = gm.normalized();

    OperatorSum input = h1.electric;
    input += h1.hopping;
    input += h1.plaquette;
    input += mass_in;
    out.stages.input = input.normalized();
    out.stages.conjugated = conjugate_by_gates(out.stages.input, out.u2);
    out.stages.projected = project_out(out.stages.conjugated, lay);
    out.stages.hat = destagger(out.stages.projected, lay);
    return out;
}

}  // namespace

DeriveResult derive_matter_eliminated(const LatticeLayout& lay, const ModelParams& p) {
    return derive_impl(lay, p, build_hardcore_h1_pieces(lay, p));
}

DeriveResult derive_matter_eliminated(const LatticeLayout& lay, const ModelParams& p,
                                      const TermSpec& ts) {
    return derive_impl(lay, p, build_hardcore_h1_pieces(lay, p, ts));
}

Eigen::VectorXcd map_state_to_hat(const LatticeLayout& lay, const Eigen::VectorXcd& psi) {
    const int nq = lay.n_qubits();
    if (psi.size() != (Eigen::Index{1} << nq))
        throw std::invalid_argument("map_state_to_hat: state size mismatch");

    Eigen::VectorXcd full = psi;
    apply_circuit(build_matter_elimination(lay), full);

    const int nl = lay.n_links();
    const std::uint64_t matter_mask = (std::uint64_t{1} << lay.n_sites()) - 1;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << nl);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << nq); ++b) {
        if ((b & matter_mask) != matter_mask) continue;  // matter all |1⟩
        out(b >> lay.n_sites()) += full(b);
    }

    std::uint64_t flag_mask = 0;
    for (int q : destagger_qubits(lay)) flag_mask |= std::uint64_t{1} << q;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << nl); ++b)
        if (std::popcount(b & flag_mask) & 1) out(b) = -out(b);
    return out;
}

OperatorSum map_operator_to_hat(const LatticeLayout& lay, const OperatorSum& a) {
    return destagger(project_out(conjugate_by_gates(a, build_matter_elimination(lay)), lay,
                                 /*require_block_diagonal=*/false),
                     lay);
}

}  // namespace z2sim
