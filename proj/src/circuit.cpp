#include "z2sim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace z2sim {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

bool is_rotation(GateKind k) {
    return k == GateKind::RotZ || k == GateKind::RotY || k == GateKind::RotZZ ||
           k == GateKind::RotAxisZY;
}

int expected_arity(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::PauliX:
        case GateKind::PauliY:
        case GateKind::PauliZ:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::RotZ:
        case GateKind::RotY:
        case GateKind::RotAxisZY:
            return 1;
        case GateKind::RotZZ:
        case GateKind::CNot:
        case GateKind::CZ:
        case GateKind::CY:
            return 2;
        case GateKind::ParityCtrlX:
            return -1;  // >= 2: any number of parity qubits plus a target
    }
    return -1;
}

}  // namespace

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::PauliX: return "pauli_x";
        case GateKind::PauliY: return "pauli_y";
        case GateKind::PauliZ: return "pauli_z";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::RotZ: return "rot_z";
        case GateKind::RotY: return "rot_y";
        case GateKind::RotZZ: return "rot_zz";
        case GateKind::RotAxisZY: return "rot_axis_zy";
        case GateKind::CNot: return "cnot";
        case GateKind::CZ: return "cz";
        case GateKind::CY: return "cy";
        case GateKind::ParityCtrlX: return "parity_ctrl_x";
    }
    throw std::logic_error("bad gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
    static const std::map<std::string, GateKind> table = {
        {"h", GateKind::H},           {"pauli_x", GateKind::PauliX},
        {"pauli_y", GateKind::PauliY}, {"pauli_z", GateKind::PauliZ},
        {"s", GateKind::S},           {"sdg", GateKind::Sdg},
        {"rot_z", GateKind::RotZ},    {"rot_y", GateKind::RotY},
        {"rot_zz", GateKind::RotZZ},  {"rot_axis_zy", GateKind::RotAxisZY},
        {"cnot", GateKind::CNot},     {"cz", GateKind::CZ},
        {"cy", GateKind::CY},         {"parity_ctrl_x", GateKind::ParityCtrlX}};
    auto it = table.find(name);
    if (it == table.end()) throw std::invalid_argument("unknown gate name: " + name);
    return it->second;
}

Gate make_gate(GateKind k, std::vector<int> qubits, double angle, double axis_theta,
               int sign, std::string label) {
    Gate g{k, std::move(qubits), angle, axis_theta, sign, std::move(label)};
    int want = expected_arity(k);
    if (want >= 0 && g.arity() != want) throw std::invalid_argument("gate arity mismatch");
    if (want < 0 && g.arity() < 2) throw std::invalid_argument("parity_ctrl_x needs >= 2 qubits");
    for (std::size_t i = 0; i < g.qubits.size(); ++i)
        for (std::size_t j = i + 1; j < g.qubits.size(); ++j)
            if (g.qubits[i] == g.qubits[j]) throw std::invalid_argument("duplicate gate qubit");
    if (k == GateKind::ParityCtrlX && sign != 1 && sign != -1)
        throw std::invalid_argument("parity_ctrl_x sign must be ±1");
    return g;
}

Circuit& Circuit::add(Gate g) {
    for (int q : g.qubits)
        if (q < 0 || q >= register_size) throw std::out_of_range("gate target outside register");
    gates.push_back(std::move(g));
    return *this;
}

Eigen::MatrixXcd gate_matrix(const Gate& g) {
    const int k = g.arity();
    const int dim = 1 << k;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const cplx i1(0, 1);
    switch (g.kind) {
        case GateKind::H:
            m << kSqrtHalf, kSqrtHalf, kSqrtHalf, -kSqrtHalf;
            return m;
        case GateKind::PauliX:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::PauliY:
            m << 0, -i1, i1, 0;
            return m;
        case GateKind::PauliZ:
            m << 1, 0, 0, -1;
            return m;
        case GateKind::S:
            m << 1, 0, 0, i1;
            return m;
        case GateKind::Sdg:
            m << 1, 0, 0, -i1;
            return m;
        case GateKind::RotZ: {
            const cplx e = std::exp(-i1 * (g.angle / 2));
            m << e, 0, 0, std::conj(e);
            return m;
        }
        case GateKind::RotY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            m << c, -s, s, c;
            return m;
        }
        case GateKind::RotAxisZY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            const double az = std::cos(g.axis_theta), ay = std::sin(g.axis_theta);
            m << c - i1 * s * az, -s * ay, s * ay, c + i1 * s * az;
            return m;
        }
        case GateKind::RotZZ: {
            const cplx e = std::exp(-i1 * (g.angle / 2));
            // ZZ eigenvalue per local basis index (bit0 = qubits[0]).
            m.diagonal() << e, std::conj(e), std::conj(e), e;
            return m;
        }
        case GateKind::CNot:
            // local bit 0 = control, bit 1 = target
            for (int c = 0; c < 2; ++c)
                for (int t = 0; t < 2; ++t) m(c + 2 * (t ^ c), c + 2 * t) = 1.0;
            return m;
        case GateKind::CZ:
            m.diagonal() << 1, 1, 1, -1;
            return m;
        case GateKind::CY:
            m(0, 0) = 1.0;
            m(2, 2) = 1.0;
            m(1 + 2, 1 + 0) = i1;   // |c=1,t=0> -> i|c=1,t=1>
            m(1 + 0, 1 + 2) = -i1;  // |c=1,t=1> -> -i|c=1,t=0>
            return m;
        case GateKind::ParityCtrlX: {
            // Flip the target (last local bit) when sign * ΠZ(parity bits) = +1.
            for (int b = 0; b < dim; ++b) {
                int p = 0;
                for (int i = 0; i + 1 < k; ++i) p ^= (b >> i) & 1;
                const int zval = p ? -1 : 1;
                const int bp = (g.sign * zval == 1) ? (b ^ (1 << (k - 1))) : b;
                m(bp, b) = 1.0;
            }
            return m;
        }
    }
    throw std::logic_error("bad gate kind");
}

void apply_gate(const Gate& g, Eigen::VectorXcd& state) {
    const int k = g.arity();
    const std::uint64_t n = state.size();
    int nq = 0;
    while ((std::uint64_t{1} << nq) < n) ++nq;
    for (int q : g.qubits)
        if (q >= nq) throw std::out_of_range("gate target outside register");

    const Eigen::MatrixXcd m = gate_matrix(g);
    const int sub = 1 << k;
    std::uint64_t mask = 0;
    for (int q : g.qubits) mask |= std::uint64_t{1} << q;

    std::vector<std::uint64_t> offset(sub, 0);
    for (int j = 0; j < sub; ++j)
        for (int i = 0; i < k; ++i)
            if ((j >> i) & 1) offset[j] |= std::uint64_t{1} << g.qubits[i];

    Eigen::VectorXcd v(sub);
    for (std::uint64_t base = 0; base < n; ++base) {
        if (base & mask) continue;  // enumerate states with all gate bits clear
        for (int j = 0; j < sub; ++j) v(j) = state(base | offset[j]);
        v = m * v;
        for (int j = 0; j < sub; ++j) state(base | offset[j]) = v(j);
    }
}

void apply_circuit(const Circuit& c, Eigen::VectorXcd& state) {
    if (state.size() != (Eigen::Index{1} << c.register_size))
        throw std::invalid_argument("state size does not match circuit register");
    for (const auto& g : c.gates) apply_gate(g, state);
}

Eigen::MatrixXcd circuit_matrix(const Circuit& c, int cap) {
    if (c.register_size > cap) throw std::runtime_error("circuit_matrix: register exceeds cap");
    const std::uint64_t dim = std::uint64_t{1} << c.register_size;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
        col(b) = 1.0;
        apply_circuit(c, col);
        m.col(b) = col;
    }
    return m;
}

Circuit inverse(const Circuit& c) {
    Circuit inv(c.register_size);
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::S:
                g.kind = GateKind::Sdg;
                break;
            case GateKind::Sdg:
                g.kind = GateKind::S;
                break;
            case GateKind::RotZ:
            case GateKind::RotY:
            case GateKind::RotZZ:
            case GateKind::RotAxisZY:
                g.angle = -g.angle;
                break;
            default:
                break;  // self-inverse
        }
        inv.gates.push_back(std::move(g));
    }
    return inv;
}

namespace {

using LocalWord = std::vector<std::uint8_t>;  // axis code per local bit, 0..3

std::string memo_key(const Gate& g, const LocalWord& w) {
    std::string key;
    key.push_back(static_cast<char>(g.kind));
    key.push_back(static_cast<char>(g.arity()));
    key.push_back(static_cast<char>(g.sign + 2));
    char buf[sizeof(double)];
    std::memcpy(buf, &g.angle, sizeof buf);
    key.append(buf, sizeof buf);
    std::memcpy(buf, &g.axis_theta, sizeof buf);
    key.append(buf, sizeof buf);
    for (auto a : w) key.push_back(static_cast<char>(a));
    return key;
}

Eigen::MatrixXcd local_word_matrix(const LocalWord& w) {
    const int k = static_cast<int>(w.size());
    const int dim = 1 << k;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    PauliTerm t;
    for (int i = 0; i < k; ++i)
        if (w[i]) t.axes.emplace(i, static_cast<Axis>(w[i]));
    for (int b = 0; b < dim; ++b) {
        BasisAction r = apply_to_basis(t, static_cast<std::uint64_t>(b));
        m(static_cast<int>(r.state), b) = r.amp;
    }
    return m;
}

// U w U† expanded over the local Pauli basis.
std::vector<std::pair<cplx, LocalWord>> decompose_conjugation(const Gate& g, const LocalWord& w) {
    static std::map<std::string, std::vector<std::pair<cplx, LocalWord>>> memo;
    static std::mutex mtx;
    const std::string key = memo_key(g, w);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    const int k = g.arity();
    const int dim = 1 << k;
    const Eigen::MatrixXcd u = gate_matrix(g);
    const Eigen::MatrixXcd conj = u * local_word_matrix(w) * u.adjoint();

    std::vector<std::pair<cplx, LocalWord>> out;
    LocalWord cand(k, 0);
    const int words = 1 << (2 * k);
    for (int code = 0; code < words; ++code) {
        for (int i = 0; i < k; ++i) cand[i] = (code >> (2 * i)) & 3;
        PauliTerm t;
        for (int i = 0; i < k; ++i)
            if (cand[i]) t.axes.emplace(i, static_cast<Axis>(cand[i]));
        // tr(P·M) = Σ_c amp(c) · M(c, f(c)) since P has one entry per column.
        cplx tr = 0.0;
        for (int b = 0; b < dim; ++b) {
            BasisAction r = apply_to_basis(t, static_cast<std::uint64_t>(b));
            tr += r.amp * conj(b, static_cast<int>(r.state));
        }
        cplx coeff = tr / static_cast<double>(dim);
        if (std::abs(coeff) < 1e-12) continue;
        if (!is_rotation(g.kind)) {
            // Clifford action: snap the unit coefficient exactly.
            double re = std::round(coeff.real()), im = std::round(coeff.imag());
            if (std::abs(coeff.real() - re) > 1e-9 || std::abs(coeff.imag() - im) > 1e-9)
                throw std::logic_error("non-unit coefficient from a Clifford gate");
            coeff = cplx(re, im);
        }
        out.emplace_back(coeff, cand);
    }
    if (!is_rotation(g.kind) && out.size() != 1)
        throw std::logic_error("Clifford conjugation must produce a single word");

    std::lock_guard<std::mutex> lock(mtx);
    memo.emplace(key, out);
    return out;
}

OperatorSum conjugate_by_gate(const OperatorSum& a, const Gate& g) {
    OperatorSum out(a.register_size());
    const int k = g.arity();
    for (const auto& t : a.terms()) {
        LocalWord w(k, 0);
        bool touches = false;
        for (int i = 0; i < k; ++i) {
            auto it = t.axes.find(g.qubits[i]);
            if (it != t.axes.end()) {
                w[i] = static_cast<std::uint8_t>(it->second);
                touches = true;
            }
        }
        if (!touches) {
            out.add_term(t);
            continue;
        }
        for (const auto& [c, wp] : decompose_conjugation(g, w)) {
            PauliTerm nt;
            nt.coeff = t.coeff * c;
            nt.axes = t.axes;
            for (int i = 0; i < k; ++i) {
                nt.axes.erase(g.qubits[i]);
                if (wp[i]) nt.axes.emplace(g.qubits[i], static_cast<Axis>(wp[i]));
            }
            out.add_term(std::move(nt));
        }
    }
    return out.normalized();
}

}  // namespace

OperatorSum conjugate_by_gates(const OperatorSum& a, const Circuit& c) {
    if (c.register_size != a.register_size())
        throw std::invalid_argument("conjugate_by_gates: register size mismatch");
    OperatorSum cur = a;
    // C A C† with C = g_last ··· g_first unwinds innermost-first.
    for (const auto& g : c.gates) cur = conjugate_by_gate(cur, g);
    return cur;
}

namespace {

bool gates_commute(const Gate& a, const Gate& b) {
    std::vector<int> uni;
    for (int q : a.qubits) uni.push_back(q);
    bool overlap = false;
    for (int q : b.qubits) {
        if (std::find(uni.begin(), uni.end(), q) == uni.end())
            uni.push_back(q);
        else
            overlap = true;
    }
    if (!overlap) return true;
    auto localize = [&](const Gate& g) {
        Gate lg = g;
        for (auto& q : lg.qubits)
            q = static_cast<int>(std::find(uni.begin(), uni.end(), q) - uni.begin());
        Circuit c(static_cast<int>(uni.size()));
        c.add(lg);
        return circuit_matrix(c);
    };
    const Eigen::MatrixXcd ma = localize(a), mb = localize(b);
    return (ma * mb - mb * ma).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

int circuit_layer_count(const Circuit& c) {
    std::vector<std::vector<const Gate*>> layers;
    for (const auto& g : c.gates) {
        int depth = 0;  // one past the last layer with a non-commuting gate
        for (int l = static_cast<int>(layers.size()) - 1; l >= 0; --l) {
            bool clash = false;
            for (const Gate* other : layers[l])
                if (!gates_commute(g, *other)) {
                    clash = true;
                    break;
                }
            if (clash) {
                depth = l + 1;
                break;
            }
        }
        if (depth == static_cast<int>(layers.size())) layers.emplace_back();
        layers[depth].push_back(&g);
    }
    return static_cast<int>(layers.size());
}

std::string to_gate_list(const Circuit& c) {
    std::ostringstream out;
    char buf[64];
    for (const auto& g : c.gates) {
        out << gate_name(g.kind) << " q=";
        for (std::size_t i = 0; i < g.qubits.size(); ++i)
            out << (i ? "," : "") << g.qubits[i];
        if (is_rotation(g.kind)) {
            std::snprintf(buf, sizeof buf, " angle=%.17g", g.angle);
            out << buf;
        }
        if (g.kind == GateKind::RotAxisZY) {
            std::snprintf(buf, sizeof buf, " theta=%.17g", g.axis_theta);
            out << buf;
        }
        if (g.kind == GateKind::ParityCtrlX) out << " sign=" << (g.sign > 0 ? "+1" : "-1");
        if (!g.label.empty()) out << " # " << g.label;
        out << '\n';
    }
    return out.str();
}

Circuit parse_gate_list(const std::string& text, int register_size) {
    Circuit c(register_size);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name[0] == '#') continue;
        Gate g;
        g.kind = gate_kind_from_name(name);
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(ls, rest);
                if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
                g.label = rest;
                break;
            }
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad gate token: " + tok);
            std::string kname = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (kname == "q") {
                std::istringstream qs(val);
                std::string piece;
                while (std::getline(qs, piece, ',')) g.qubits.push_back(std::stoi(piece));
            } else if (kname == "angle") {
                g.angle = std::stod(val);
            } else if (kname == "theta") {
                g.axis_theta = std::stod(val);
            } else if (kname == "sign") {
                g.sign = std::stoi(val);
            } else {
                throw std::invalid_argument("bad gate token: " + tok);
            }
        }
        c.add(make_gate(g.kind, g.qubits, g.angle, g.axis_theta, g.sign, g.label));
    }
    return c;
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << c.register_size << "];\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& g : c.gates) {
        if (!g.label.empty()) out << "// " << g.label << '\n';
        switch (g.kind) {
            case GateKind::H: out << "h q[" << g.qubits[0] << "];\n"; break;
            case GateKind::PauliX: out << "x q[" << g.qubits[0] << "];\n"; break;
            case GateKind::PauliY: out << "y q[" << g.qubits[0] << "];\n"; break;
            case GateKind::PauliZ: out << "z q[" << g.qubits[0] << "];\n"; break;
            case GateKind::S: out << "s q[" << g.qubits[0] << "];\n"; break;
            case GateKind::Sdg: out << "sdg q[" << g.qubits[0] << "];\n"; break;
            case GateKind::RotZ:
                out << "rz(" << num(g.angle) << ") q[" << g.qubits[0] << "];\n";
                break;
            case GateKind::RotY:
                out << "ry(" << num(g.angle) << ") q[" << g.qubits[0] << "];\n";
                break;
            case GateKind::RotAxisZY:
                out << "rx(" << num(g.axis_theta) << ") q[" << g.qubits[0] << "];\n";
                out << "rz(" << num(g.angle) << ") q[" << g.qubits[0] << "];\n";
                out << "rx(" << num(-g.axis_theta) << ") q[" << g.qubits[0] << "];\n";
                break;
            case GateKind::RotZZ:
                out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
                out << "rz(" << num(g.angle) << ") q[" << g.qubits[1] << "];\n";
                out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
                break;
            case GateKind::CNot:
                out << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
                break;
            case GateKind::CZ:
                out << "cz q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
                break;
            case GateKind::CY:
                out << "cy q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n";
                break;
            case GateKind::ParityCtrlX: {
                const int t = g.qubits.back();
                if (g.sign > 0) out << "x q[" << t << "];\n";
                for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i)
                    out << "cx q[" << g.qubits[i] << "],q[" << t << "];\n";
                break;
            }
        }
    }
    return out.str();
}

}  // namespace z2sim
