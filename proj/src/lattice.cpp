#include "z2sim/lattice.hpp"

#include <bit>
#include <stdexcept>

namespace z2sim {

LatticeLayout LatticeLayout::chain(int L, Boundary b) {
    if (L < 2) throw std::invalid_argument("chain needs at least 2 sites");
    LatticeLayout lay;
    lay.dim = 1;
    lay.boundary = b;
    lay.L1 = L;
    lay.L2 = 1;
    return lay;
}

LatticeLayout LatticeLayout::torus(int L1, int L2) {
    if (L1 < 2 || L2 < 2) throw std::invalid_argument("torus needs at least 2x2 sites");
    LatticeLayout lay;
    lay.dim = 2;
    lay.boundary = Boundary::Periodic;
    lay.L1 = L1;
    lay.L2 = L2;
    return lay;
}

int LatticeLayout::n_links() const {
    if (dim == 1) return boundary == Boundary::Periodic ? L1 : L1 - 1;
    return 2 * n_sites();
}

int LatticeLayout::matter_qubit(int site) const {
    if (dim != 1) throw std::logic_error("matter_qubit is the d=1 accessor");
    if (site < 1 || site > L1) throw std::out_of_range("site outside chain");
    return site - 1;
}

int LatticeLayout::link_qubit(int link) const {
    if (dim != 1) throw std::logic_error("link_qubit is the d=1 accessor");
    if (link < 1 || link > n_links()) throw std::out_of_range("link outside chain");
    return L1 + link - 1;
}

int LatticeLayout::site_index(int x1, int x2) const {
    if (dim != 2) throw std::logic_error("site_index is the d=2 accessor");
    const int a = ((x1 % L1) + L1) % L1;
    const int b = ((x2 % L2) + L2) % L2;
    return b * L1 + a;
}

int LatticeLayout::link_index(int x1, int x2, int dir) const {
    if (dir != 1 && dir != 2) throw std::invalid_argument("link direction must be 1 or 2");
    return 2 * site_index(x1, x2) + (dir - 1);
}

int LatticeLayout::matter_qubit_2d(int x1, int x2) const { return site_index(x1, x2); }

int LatticeLayout::link_qubit_2d(int x1, int x2, int dir) const {
    return n_sites() + link_index(x1, x2, dir);
}

int LatticeLayout::stagger(int site) const {
    if (dim == 1) {
        if (site < 1 || site > L1) throw std::out_of_range("site outside chain");
        return site % 2;
    }
    const int x1 = site % L1, x2 = site / L1;
    return (x1 + x2) % 2;
}

std::vector<int> LatticeLayout::star_links(int site) const {
    std::vector<int> qubits;
    if (dim == 1) {
        if (site < 1 || site > L1) throw std::out_of_range("site outside chain");
        if (boundary == Boundary::Periodic) {
            const int left = (site + L1 - 2) % L1 + 1;  // link entering from site-1
            qubits.push_back(link_qubit(left));
            qubits.push_back(link_qubit((site - 1) % L1 + 1));
        } else {
            if (site >= 2) qubits.push_back(link_qubit(site - 1));
            if (site <= L1 - 1) qubits.push_back(link_qubit(site));
        }
        return qubits;
    }
    const int x1 = site % L1, x2 = site / L1;
    qubits.push_back(link_qubit_2d(x1, x2, 1));
    qubits.push_back(link_qubit_2d(x1, x2, 2));
    qubits.push_back(link_qubit_2d(x1 - 1, x2, 1));
    qubits.push_back(link_qubit_2d(x1, x2 - 1, 2));
    return qubits;
}

OperatorSum gauss_operator(const LatticeLayout& lay, int site) {
    PauliTerm t;
    t.coeff = -1.0;  // e^{iπN} = -σ^z
    const int mq = lay.dim == 1 ? lay.matter_qubit(site) : site;
    t.axes.emplace(mq, Axis::Z);
    for (int q : lay.star_links(site)) t.axes.emplace(q, Axis::Z);
    OperatorSum g(lay.n_qubits());
    g.add_term(std::move(t));
    return g;
}

namespace {

std::vector<std::uint64_t> sector_basis_impl(const LatticeLayout& lay,
                                             const std::vector<int>& charges) {
    const int nq = lay.n_qubits();
    if (nq > 24) throw std::runtime_error("sector_basis: register too large to enumerate");
    const int ns = lay.n_sites();

    // Precompute per-site Z-support masks; eigenvalue of each constraint is
    // a parity of the bits under its mask.
    std::vector<std::uint64_t> masks(ns);
    std::vector<int> want(ns);
    for (int s = 0; s < ns; ++s) {
        const int site = lay.dim == 1 ? s + 1 : s;
        const int mq = lay.dim == 1 ? lay.matter_qubit(site) : site;
        std::uint64_t m = std::uint64_t{1} << mq;
        for (int q : lay.star_links(site)) m |= std::uint64_t{1} << q;
        masks[s] = m;
        // Generator eigenvalue is -(-1)^{bit count over the mask}; matching it
        // to e^{iπq} needs the bit count parity opposite to the charge.
        want[s] = (charges[s] & 1) ^ 1;
    }

    std::vector<std::uint64_t> basis;
    const std::uint64_t dim = std::uint64_t{1} << nq;
    for (std::uint64_t b = 0; b < dim; ++b) {
        bool ok = true;
        for (int s = 0; s < ns; ++s)
            if ((std::popcount(b & masks[s]) & 1) != want[s]) {
                ok = false;
                break;
            }
        if (ok) basis.push_back(b);
    }
    return basis;
}

}  // namespace

std::vector<std::uint64_t> sector_basis(const LatticeLayout& lay) {
    std::vector<int> q(lay.n_sites());
    for (int s = 0; s < lay.n_sites(); ++s) q[s] = lay.stagger(lay.dim == 1 ? s + 1 : s);
    return sector_basis_impl(lay, q);
}

std::vector<std::uint64_t> sector_basis_for_charges(const LatticeLayout& lay,
                                                    const std::vector<int>& charges) {
    if (static_cast<int>(charges.size()) != lay.n_sites())
        throw std::invalid_argument("one charge per site required");
    return sector_basis_impl(lay, charges);
}

OperatorSum sector_projector(const LatticeLayout& lay) {
    OperatorSum p = OperatorSum::identity(lay.n_qubits());
    for (int s = 0; s < lay.n_sites(); ++s) {
        const int site = lay.dim == 1 ? s + 1 : s;
        const double eig = lay.stagger(site) ? -1.0 : 1.0;
        OperatorSum half =
            OperatorSum::identity(lay.n_qubits()) + gauss_operator(lay, site).scaled(eig);
        p = p * half.scaled(0.5);
    }
    return p;
}

OperatorSum global_parity_operator(const LatticeLayout& lay) {
    PauliTerm t;
    for (int s = 0; s < lay.n_sites(); ++s) t.axes.emplace(s, Axis::Z);
    OperatorSum p(lay.n_qubits());
    p.add_term(std::move(t));
    return p;
}

std::vector<std::uint64_t> parity_basis(int n_qubits, const std::vector<int>& qubits,
                                        int parity) {
    if (n_qubits > 24) throw std::runtime_error("parity_basis: register too large to enumerate");
    std::uint64_t mask = 0;
    for (int q : qubits) {
        if (q < 0 || q >= n_qubits) throw std::out_of_range("qubit outside register");
        mask |= std::uint64_t{1} << q;
    }
    std::vector<std::uint64_t> basis;
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    for (std::uint64_t b = 0; b < dim; ++b)
        if ((std::popcount(b & mask) & 1) == (parity & 1)) basis.push_back(b);
    return basis;
}

}  // namespace z2sim
