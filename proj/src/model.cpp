#include "z2sim/model.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace z2sim {

namespace {

bool g_gm_sign_flip = false;

// σ^± on one qubit: (X ± iY)/2. σ⁺ maps |1⟩ (empty) to |0⟩ (occupied).
OperatorSum ladder(int nq, int q, int sign) {
    OperatorSum s = OperatorSum::single(nq, q, Axis::X, 0.5);
    s += OperatorSum::single(nq, q, Axis::Y, cplx(0, 0.5 * sign));
    return s;
}

// ψ_s = (Π_{k<s} σ^z_k) σ⁻_s over matter qubits, site index 0-based.
OperatorSum jw_annihilator(const LatticeLayout& lay, int s) {
    OperatorSum psi(lay.n_qubits());
    PauliTerm even, odd;
    even.coeff = 0.5;
    odd.coeff = cplx(0, -0.5);
    for (int k = 0; k < s; ++k) {
        even.axes.emplace(k, Axis::Z);
        odd.axes.emplace(k, Axis::Z);
    }
    even.axes.emplace(s, Axis::X);
    odd.axes.emplace(s, Axis::Y);
    psi.add_term(std::move(even));
    psi.add_term(std::move(odd));
    return psi;
}

int stagger_sign(const LatticeLayout& lay, int s) {
    return lay.stagger(lay.dim == 1 ? s + 1 : s) ? -1 : 1;
}

std::vector<std::array<int, 2>> link_endpoints(const LatticeLayout& lay) {
    std::vector<std::array<int, 2>> ends(lay.n_links());
    if (lay.dim == 1) {
        for (int l = 1; l <= lay.n_links(); ++l)
            ends[l - 1] = {l - 1, l % lay.L1};  // 0-based sites l-1 and l (wrapped)
    } else {
        for (int k = 0; k < lay.n_links(); ++k) {
            const int s = k / 2, dir = k % 2 + 1;
            const int x1 = s % lay.L1, x2 = s / lay.L1;
            const int s2 = dir == 1 ? lay.site_index(x1 + 1, x2) : lay.site_index(x1, x2 + 1);
            ends[k] = {s, s2};
        }
    }
    return ends;
}

OperatorSum plaquette_sum(const LatticeLayout& lay) {
    OperatorSum sum(lay.n_qubits());
    if (lay.dim != 2) return sum;
    for (int x2 = 0; x2 < lay.L2; ++x2)
        for (int x1 = 0; x1 < lay.L1; ++x1) {
            PauliTerm t;
            t.axes.emplace(lay.link_qubit_2d(x1, x2, 1), Axis::X);
            t.axes.emplace(lay.link_qubit_2d(x1 + 1, x2, 2), Axis::X);
            t.axes.emplace(lay.link_qubit_2d(x1, x2 + 1, 1), Axis::X);
            t.axes.emplace(lay.link_qubit_2d(x1, x2, 2), Axis::X);
            sum.add_term(std::move(t));
        }
    return sum;
}

OperatorSum electric_sum(const LatticeLayout& lay, double h) {
    OperatorSum sum(lay.n_qubits());
    const int base = lay.n_sites();
    for (int k = 0; k < lay.n_links(); ++k)
        sum += OperatorSum::single(lay.n_qubits(), base + k, Axis::Z, h);
    return sum.normalized();
}

// Chains have no plaquettes; a nonzero b there is a config slip worth a
// note, not an error.
void warn_unused_b(const LatticeLayout& lay, const ModelParams& p) {
    if (lay.dim == 1 && p.b != 0.0)
        std::fprintf(stderr, "note: plaquette coupling b is ignored on chains\n");
}

}  // namespace

OperatorSum build_fermionic(const LatticeLayout& lay, const ModelParams& p) {
    warn_unused_b(lay, p);
    const int nq = lay.n_qubits();
    OperatorSum H = electric_sum(lay, p.h);
    if (lay.dim == 2 && p.b != 0.0) H += plaquette_sum(lay).scaled(p.b);

    const auto ends = link_endpoints(lay);
    for (int k = 0; k < lay.n_links(); ++k) {
        const auto [s, s2] = ends[k];
        OperatorSum hop = jw_annihilator(lay, s).dagger() *
                          OperatorSum::single(nq, lay.n_sites() + k, Axis::X) *
                          jw_annihilator(lay, s2);
        hop = hop + hop.dagger();
        H += hop.scaled(p.J);
    }

    for (int s = 0; s < lay.n_sites(); ++s) {
        const double c = p.m * stagger_sign(lay, s) * 0.5;  // m (±1) N, N = (1+σ^z)/2
        H += OperatorSum::identity(nq, c);
        H += OperatorSum::single(nq, s, Axis::Z, c);
    }
    return H.normalized();
}

TermSpec default_term_spec(const LatticeLayout& lay) {
    if (lay.dim != 2) throw std::logic_error("term specs describe d=2 hops");
    TermSpec ts;
    const auto ends = link_endpoints(lay);
    for (int k = 0; k < lay.n_links(); ++k) {
        const auto [s, s2] = ends[k];
        const int a = std::min(s, s2), b = std::max(s, s2);

        double pref = -1.0;
        std::map<int, int> zcount;
        for (int mid = a + 1; mid < b; ++mid) {
            pref *= lay.stagger(mid) ? 1.0 : -1.0;  // -(-1)^{q}
            for (int q : lay.star_links(mid)) ++zcount[q];
        }

        PauliTerm word;
        for (const auto& [q, c] : zcount)
            if (c & 1) word.axes.emplace(q, Axis::Z);
        const int xq = lay.n_sites() + k;
        if (word.axes.count(xq)) throw std::logic_error("hop link collides with a star");
        word.axes.emplace(xq, Axis::X);

        ts.entries.push_back({pref, word, s, s2});
        ts.entries.push_back({pref, word, s2, s});
    }
    return ts;
}

std::string term_spec_to_text(const TermSpec& ts, const LatticeLayout& lay) {
    std::ostringstream out;
    out << "# hop dressing for a " << lay.L1 << "x" << lay.L2 << " torus\n";
    out << "# line: coeff_re coeff_im <link word, global qubit ids> create=<site> annih=<site>\n";
    char buf[80];
    for (const auto& e : ts.entries) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", e.prefactor.real(), e.prefactor.imag());
        out << buf;
        for (const auto& [q, ax] : e.link_word.axes) out << ' ' << axis_char(ax) << q;
        out << " create=" << e.create_site << " annih=" << e.annih_site << '\n';
    }
    return out.str();
}

TermSpec term_spec_from_text(const std::string& text, const LatticeLayout& lay) {
    TermSpec ts;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == '#') continue;
        TermSpecEntry e;
        double re = 0, im = 0;
        try {
            re = std::stod(first);
        } catch (const std::exception&) {
            throw std::runtime_error("term spec line " + std::to_string(lineno) +
                                     ": expected a coefficient");
        }
        if (!(ls >> im))
            throw std::runtime_error("term spec line " + std::to_string(lineno) +
                                     ": missing imaginary part");
        e.prefactor = cplx(re, im);
        std::string tok;
        bool have_create = false, have_annih = false;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            if (tok.rfind("create=", 0) == 0) {
                e.create_site = std::stoi(tok.substr(7));
                have_create = true;
            } else if (tok.rfind("annih=", 0) == 0) {
                e.annih_site = std::stoi(tok.substr(6));
                have_annih = true;
            } else {
                const Axis ax = axis_from_char(tok[0]);
                const int q = std::stoi(tok.substr(1));
                if (!e.link_word.axes.emplace(q, ax).second)
                    throw std::runtime_error("term spec line " + std::to_string(lineno) +
                                             ": duplicate qubit in word");
            }
        }
        if (!have_create || !have_annih)
            throw std::runtime_error("term spec line " + std::to_string(lineno) +
                                     ": missing create=/annih= annotation");
        ts.entries.push_back(std::move(e));
    }
    validate_term_spec(ts, lay);
    return ts;
}

void validate_term_spec(const TermSpec& ts, const LatticeLayout& lay) {
    if (lay.dim != 2) throw std::runtime_error("term specs describe d=2 hops");
    const auto ends = link_endpoints(lay);
    const int base = lay.n_sites();

    for (const auto& e : ts.entries) {
        if (e.create_site < 0 || e.create_site >= lay.n_sites() || e.annih_site < 0 ||
            e.annih_site >= lay.n_sites())
            throw std::runtime_error("term spec: site annotation outside lattice");
        if (e.create_site == e.annih_site)
            throw std::runtime_error("term spec: hop must join two distinct sites");
        if (e.link_word.coeff != cplx(1.0))
            throw std::runtime_error("term spec: words carry unit coefficient");
        int x_link = -1;
        for (const auto& [q, ax] : e.link_word.axes) {
            if (q < base || q >= lay.n_qubits())
                throw std::runtime_error("term spec: word touches a matter qubit");
            if (ax == Axis::X) {
                if (x_link >= 0) throw std::runtime_error("term spec: word has two X factors");
                x_link = q - base;
            } else if (ax != Axis::Z) {
                throw std::runtime_error("term spec: words are Z's plus one X");
            }
        }
        if (x_link < 0) throw std::runtime_error("term spec: word lacks the hop-link X");
    }

    // Hermiticity: entries close under create/annih swap with conjugate weight.
    for (const auto& e : ts.entries) {
        bool found = false;
        for (const auto& o : ts.entries)
            if (o.create_site == e.annih_site && o.annih_site == e.create_site &&
                o.link_word.axes == e.link_word.axes &&
                std::abs(o.prefactor - std::conj(e.prefactor)) < 1e-14) {
                found = true;
                break;
            }
        if (!found) throw std::runtime_error("term spec: missing Hermitian partner entry");
    }

    // Gauss commutation before the endpoint check: an X on the wrong link
    // shows up here first, as a violation localized at a site.
    ModelParams unit;
    unit.h = 0;
    unit.J = 1;
    unit.m = 0;
    unit.b = 0;
    const OperatorSum hop = build_hardcore_h1_pieces(lay, unit, ts).hopping;
    for (int s = 0; s < lay.n_sites(); ++s)
        if (!commutator(hop, gauss_operator(lay, s)).is_zero())
            throw std::runtime_error("term spec: hop part breaks the Gauss constraint at site " +
                                     std::to_string(s));

    for (const auto& e : ts.entries) {
        int x_link = -1;
        for (const auto& [q, ax] : e.link_word.axes)
            if (ax == Axis::X) x_link = q - base;
        const auto [s, s2] = ends[x_link];
        if (!((s == e.create_site && s2 == e.annih_site) ||
              (s2 == e.create_site && s == e.annih_site)))
            throw std::runtime_error("term spec: X sits on a link not joining the two sites");
    }
}

OperatorSum H1Pieces::total() const {
    OperatorSum t = electric;
    t += hopping;
    t += mass;
    t += plaquette;
    return t.normalized();
}

namespace {

OperatorSum mass_sum(const LatticeLayout& lay, double m) {
    const int nq = lay.n_qubits();
    OperatorSum sum(nq);
    for (int s = 0; s < lay.n_sites(); ++s) {
        const double c = 0.5 * m * stagger_sign(lay, s);
        sum += OperatorSum::single(nq, s, Axis::Z, c);
        sum += OperatorSum::identity(nq, c);
    }
    return sum.normalized();
}

}  // namespace

H1Pieces build_hardcore_h1_pieces(const LatticeLayout& lay, const ModelParams& p) {
    if (lay.dim == 2) return build_hardcore_h1_pieces(lay, p, default_term_spec(lay));
    warn_unused_b(lay, p);

    const int nq = lay.n_qubits();
    H1Pieces out{electric_sum(lay, p.h), OperatorSum(nq), mass_sum(lay, p.m), OperatorSum(nq)};

    for (int n = 1; n <= lay.n_links(); ++n) {
        const int n2 = n < lay.L1 ? n + 1 : 1;
        OperatorSum t = ladder(nq, lay.matter_qubit(n), +1) *
                        OperatorSum::single(nq, lay.link_qubit(n), Axis::X) *
                        ladder(nq, lay.matter_qubit(n2), -1);
        const int prev = n > 1 ? n - 1 : (lay.boundary == Boundary::Periodic ? lay.L1 : 0);
        if (prev) t = OperatorSum::single(nq, lay.link_qubit(prev), Axis::Z) * t;
        t = t.scaled(cplx(0, -p.J));
        out.hopping += t + t.dagger();
    }
    out.hopping = out.hopping.normalized();
    return out;
}

H1Pieces build_hardcore_h1_pieces(const LatticeLayout& lay, const ModelParams& p,
                                  const TermSpec& ts) {
    if (lay.dim != 2) throw std::logic_error("term-spec hops are the d=2 path");
    const int nq = lay.n_qubits();
    H1Pieces out{electric_sum(lay, p.h), OperatorSum(nq), mass_sum(lay, p.m),
                 plaquette_sum(lay).scaled(p.b)};

    for (const auto& e : ts.entries) {
        OperatorSum word(nq);
        word.add_term(e.link_word);
        OperatorSum t = ladder(nq, e.create_site, +1) * word * ladder(nq, e.annih_site, -1);
        out.hopping += t.scaled(e.prefactor * p.J);
    }
    out.hopping = out.hopping.normalized();
    return out;
}

OperatorSum build_hardcore_h1(const LatticeLayout& lay, const ModelParams& p) {
    return build_hardcore_h1_pieces(lay, p).total();
}

OperatorSum build_gauge_eliminated_h0(int L, const ModelParams& p) {
    if (L < 2) throw std::invalid_argument("chain needs at least 2 sites");
    OperatorSum H(L);
    for (int n = 1; n < L; ++n) {
        // (-1)^{n(n+3)/2}: +,-,-,+ repeating
        const double sgn = ((n * (n + 3) / 2) % 2) ? -1.0 : 1.0;
        PauliTerm zs;
        zs.coeff = p.h * sgn;
        for (int k = 0; k < n; ++k) zs.axes.emplace(k, Axis::Z);
        H.add_term(std::move(zs));

        OperatorSum t = ladder(L, n - 1, +1) * ladder(L, n, -1);
        t = t.scaled(-p.J);
        H += t + t.dagger();
    }
    for (int n = 1; n <= L; ++n) {
        const double c = 0.5 * p.m * (n % 2 ? -1.0 : 1.0);
        H += OperatorSum::single(L, n - 1, Axis::Z, c);
        H += OperatorSum::identity(L, c);
    }
    return H.normalized();
}

OperatorSum HatPieces::total() const {
    OperatorSum t = electric;
    t += gauge_matter;
    t += mass;
    return t.normalized();
}

HatPieces build_matter_eliminated_hat(int L, Boundary b, const ModelParams& p) {
    if (L < 2) throw std::invalid_argument("chain needs at least 2 sites");
    // The staggered pattern only closes on itself for even length; odd
    // chains have no matter-free counterpart.
    if (L % 2) throw std::invalid_argument("matter elimination needs an even number of sites");
    const int M = b == Boundary::Periodic ? L : L - 1;
    HatPieces out{OperatorSum(M), OperatorSum(M), OperatorSum(M)};

    for (int j = 0; j < M; ++j) {
        out.electric += OperatorSum::single(M, j, Axis::Z, p.h);
        out.electric += OperatorSum::single(M, j, Axis::Y, 0.5 * p.J);
    }

    double gm_sign = g_gm_sign_flip ? -1.0 : 1.0;
    auto add_gm = [&](OperatorSum term) {
        out.gauge_matter += term.scaled(gm_sign * 0.5 * p.J);
        gm_sign = 1.0;  // a requested sign flip only hits the first term
    };

    if (b == Boundary::Periodic) {
        for (int j = 0; j < M; ++j) {
            OperatorSum t = OperatorSum::single(M, (j + M - 1) % M, Axis::Z) *
                            OperatorSum::single(M, j, Axis::Y) *
                            OperatorSum::single(M, (j + 1) % M, Axis::Z);
            add_gm(std::move(t));
            out.mass += OperatorSum::single(M, j, Axis::Z) *
                        OperatorSum::single(M, (j + 1) % M, Axis::Z).scaled(-0.5 * p.m);
        }
    } else if (M == 1) {
        // The lone hop's dressed partner degenerates to a bare Y; fold it
        // into the electric piece so the gauge-matter piece stays empty.
        out.electric += OperatorSum::single(M, 0, Axis::Y, 0.5 * p.J);
        out.mass += OperatorSum::single(M, 0, Axis::Z, -p.m);
    } else {
        add_gm(OperatorSum::single(M, 0, Axis::Y) * OperatorSum::single(M, 1, Axis::Z));
        for (int j = 1; j + 1 < M; ++j)
            add_gm(OperatorSum::single(M, j - 1, Axis::Z) * OperatorSum::single(M, j, Axis::Y) *
                   OperatorSum::single(M, j + 1, Axis::Z));
        add_gm(OperatorSum::single(M, M - 2, Axis::Z) * OperatorSum::single(M, M - 1, Axis::Y));

        out.mass += OperatorSum::single(M, 0, Axis::Z, -0.5 * p.m);
        for (int j = 0; j + 1 < M; ++j)
            out.mass += OperatorSum::single(M, j, Axis::Z) *
                        OperatorSum::single(M, j + 1, Axis::Z).scaled(-0.5 * p.m);
        out.mass += OperatorSum::single(M, M - 1, Axis::Z, -0.5 * p.m);
    }

    out.electric = out.electric.normalized();
    out.gauge_matter = out.gauge_matter.normalized();
    out.mass = out.mass.normalized();
    return out;
}

void testing_set_gm_sign_flip(bool enabled) { g_gm_sign_flip = enabled; }

}  // namespace z2sim
