#include "z2sim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace z2sim {

char axis_char(Axis a) {
    switch (a) {
        case Axis::I: return 'I';
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    throw std::logic_error("bad axis");
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'I': return Axis::I;
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
    }
    throw std::invalid_argument(std::string("bad axis char '") + c + "'");
}

AxisProduct axis_multiply(Axis a, Axis b) {
    if (a == Axis::I) return {1.0, b};
    if (b == Axis::I) return {1.0, a};
    if (a == b) return {1.0, Axis::I};
    // Cyclic: XY=iZ, YZ=iX, ZX=iY; reversed order flips the sign.
    auto ia = static_cast<int>(a), ib = static_cast<int>(b);
    // axes 1,2,3; the one not involved:
    int ic = 6 - ia - ib;
    bool cyclic = (ib - ia + 3) % 3 == 1;  // (X,Y),(Y,Z),(Z,X)
    return {cyclic ? cplx(0, 1) : cplx(0, -1), static_cast<Axis>(ic)};
}

bool PauliTerm::commutes_with(const PauliTerm& o) const {
    int anti = 0;
    auto it = axes.begin();
    auto jt = o.axes.begin();
    while (it != axes.end() && jt != o.axes.end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            if (it->second != jt->second) ++anti;
            ++it;
            ++jt;
        }
    }
    return anti % 2 == 0;
}

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
    PauliTerm out;
    out.coeff = a.coeff * b.coeff;
    out.axes = a.axes;
    for (const auto& [q, bx] : b.axes) {
        auto it = out.axes.find(q);
        if (it == out.axes.end()) {
            out.axes.emplace(q, bx);
        } else {
            AxisProduct p = axis_multiply(it->second, bx);
            out.coeff *= p.phase;
            if (p.axis == Axis::I) {
                out.axes.erase(it);
            } else {
                it->second = p.axis;
            }
        }
    }
    return out;
}

BasisAction apply_to_basis(const PauliTerm& t, std::uint64_t b) {
    BasisAction r{t.coeff, b};
    for (const auto& [q, ax] : t.axes) {
        std::uint64_t bit = (r.state >> q) & 1u;
        switch (ax) {
            case Axis::X:
                r.state ^= (std::uint64_t{1} << q);
                break;
            case Axis::Y:
                r.amp *= bit ? cplx(0, -1) : cplx(0, 1);
                r.state ^= (std::uint64_t{1} << q);
                break;
            case Axis::Z:
                if (bit) r.amp = -r.amp;
                break;
            case Axis::I:
                break;
        }
    }
    return r;
}

OperatorSum OperatorSum::identity(int nq, cplx c) {
    OperatorSum a(nq);
    PauliTerm t;
    t.coeff = c;
    a.add_term(std::move(t));
    return a;
}

OperatorSum OperatorSum::single(int nq, int qubit, Axis ax, cplx c) {
    if (qubit < 0 || qubit >= nq) throw std::out_of_range("qubit outside register");
    OperatorSum a(nq);
    PauliTerm t;
    t.coeff = c;
    if (ax != Axis::I) t.axes.emplace(qubit, ax);
    a.add_term(std::move(t));
    return a;
}

OperatorSum& OperatorSum::add_term(PauliTerm t) {
    if (!t.axes.empty() && (t.axes.begin()->first < 0 || t.axes.rbegin()->first >= nq_))
        throw std::out_of_range("term support outside register");
    terms_.push_back(std::move(t));
    return *this;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& o) {
    if (o.nq_ != nq_) throw std::invalid_argument("register size mismatch");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& o) {
    return *this += o.scaled(-1.0);
}

OperatorSum OperatorSum::operator*(const OperatorSum& o) const {
    if (o.nq_ != nq_) throw std::invalid_argument("register size mismatch");
    OperatorSum out(nq_);
    out.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) out.terms_.push_back(multiply(a, b));
    return out.normalized();
}

OperatorSum OperatorSum::scaled(cplx c) const {
    OperatorSum out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

OperatorSum OperatorSum::dagger() const {
    OperatorSum out = *this;
    for (auto& t : out.terms_) t.coeff = std::conj(t.coeff);
    return out;
}

OperatorSum OperatorSum::normalized(double rel_tol) const {
    std::map<std::vector<std::pair<int, Axis>>, cplx> bucket;
    for (const auto& t : terms_) {
        std::vector<std::pair<int, Axis>> key(t.axes.begin(), t.axes.end());
        bucket[std::move(key)] += t.coeff;
    }
    double max_abs = 0.0;
    for (const auto& [k, c] : bucket) max_abs = std::max(max_abs, std::abs(c));
    OperatorSum out(nq_);
    if (max_abs == 0.0) return out;
    const double cut = rel_tol * max_abs;
    for (const auto& [k, c] : bucket) {
        if (std::abs(c) <= cut) continue;
        PauliTerm t;
        t.coeff = c;
        t.axes.insert(k.begin(), k.end());
        out.terms_.push_back(std::move(t));
    }
    return out;
}

bool OperatorSum::is_zero(double rel_tol) const {
    return normalized(rel_tol).terms_.empty();
}

bool OperatorSum::is_hermitian(double tol) const {
    OperatorSum d = (*this - dagger()).normalized();
    double scale = std::max(1.0, coeff_l1());
    for (const auto& t : d.terms())
        if (std::abs(t.coeff) > tol * scale) return false;
    return true;
}

std::size_t OperatorSum::max_support() const {
    std::size_t w = 0;
    for (const auto& t : terms_) w = std::max(w, t.weight());
    return w;
}

double OperatorSum::coeff_l1() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
    if (a.register_size() != b.register_size())
        throw std::invalid_argument("commutator: register size mismatch");
    OperatorSum out(a.register_size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            // Pauli words either commute or anticommute; the commutator of an
            // anticommuting pair is 2*ab.
            if (ta.commutes_with(tb)) continue;
            PauliTerm p = multiply(ta, tb);
            p.coeff *= 2.0;
            out.add_term(std::move(p));
        }
    }
    return out.normalized();
}

Eigen::MatrixXcd to_dense(const OperatorSum& a, int cap) {
    const int nq = a.register_size();
    if (nq > cap) throw std::runtime_error("to_dense: register exceeds dense cap");
    const std::uint64_t dim = std::uint64_t{1} << nq;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& t : a.terms())
        for (std::uint64_t b = 0; b < dim; ++b) {
            BasisAction r = apply_to_basis(t, b);
            m(r.state, b) += r.amp;
        }
    return m;
}

NormResult operator_norm(const OperatorSum& a, int cap) {
    if (a.register_size() <= cap) {
        Eigen::MatrixXcd m = to_dense(a, cap);
        if (m.rows() == 0) return {0.0, true};
        if (a.is_hermitian()) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
            return {es.eigenvalues().cwiseAbs().maxCoeff(), true};
        }
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
        return {svd.singularValues()(0), true};
    }
    return {a.coeff_l1(), false};
}

std::string to_text(const OperatorSum& a) {
    std::string out;
    char buf[64];
    for (const auto& t : a.terms()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", t.coeff.real(), t.coeff.imag());
        out += buf;
        for (const auto& [q, ax] : t.axes) {
            std::snprintf(buf, sizeof buf, " %c%d", axis_char(ax), q);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

OperatorSum from_text(const std::string& text, int register_size) {
    OperatorSum a(register_size);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        PauliTerm t;
        double re = std::stod(tok), im;
        if (!(ls >> im)) throw std::invalid_argument("term line missing imaginary part");
        t.coeff = cplx(re, im);
        while (ls >> tok) {
            if (tok[0] == '#') break;
            Axis ax = axis_from_char(tok[0]);
            int q = std::stoi(tok.substr(1));
            if (ax != Axis::I && !t.axes.emplace(q, ax).second)
                throw std::invalid_argument("duplicate qubit in term");
        }
        a.add_term(std::move(t));
    }
    return a;
}

}  // namespace z2sim
