#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace z2sim {

using cplx = std::complex<double>;

// Relative coefficient pruning threshold used by OperatorSum::normalized.
inline constexpr double kPruneTol = 1e-14;
// Default qubit cap for dense 2^n x 2^n realizations.
inline constexpr int kDenseCap = 14;
// Default qubit cap for exact spectral norms (SVD cost grows as 8^n).
inline constexpr int kNormCap = 10;

// Single-qubit Pauli axis. Identity is represented by absence from a
// PauliTerm's support map; Axis::I appears only in low-level helpers.
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

// a*b = phase * axis, phase in {1, -1, i, -i}.
struct AxisProduct {
    cplx phase;
    Axis axis;
};
AxisProduct axis_multiply(Axis a, Axis b);

// One complex-weighted Pauli string. The support map never stores identity;
// qubit 0 is the least-significant bit of a basis index.
struct PauliTerm {
    cplx coeff{1.0, 0.0};
    std::map<int, Axis> axes;

    bool commutes_with(const PauliTerm& o) const;
    std::size_t weight() const { return axes.size(); }
};

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

// P|b> = amp |state>. Bit q of the basis index is qubit q; a 0 bit is the
// Z=+1 eigenstate.
struct BasisAction {
    cplx amp;
    std::uint64_t state;
};
BasisAction apply_to_basis(const PauliTerm& t, std::uint64_t b);

struct NormResult {
    double value = 0.0;
    bool exact = false;
};

// Sum of Pauli strings over a fixed-size qubit register.
class OperatorSum {
public:
    OperatorSum() = default;
    explicit OperatorSum(int register_size) : nq_(register_size) {}

    static OperatorSum zero(int nq) { return OperatorSum(nq); }
    static OperatorSum identity(int nq, cplx c = 1.0);
    static OperatorSum single(int nq, int qubit, Axis ax, cplx c = 1.0);

    int register_size() const { return nq_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    OperatorSum& add_term(PauliTerm t);

    OperatorSum& operator+=(const OperatorSum& o);
    OperatorSum& operator-=(const OperatorSum& o);
    friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
    friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
    OperatorSum operator*(const OperatorSum& o) const;

    OperatorSum scaled(cplx c) const;
    OperatorSum dagger() const;

    // Merges equal supports, drops coefficients below rel_tol * max|coeff|,
    // and orders terms canonically. Idempotent and permutation-invariant.
    OperatorSum normalized(double rel_tol = kPruneTol) const;

    bool is_zero(double rel_tol = kPruneTol) const;
    bool is_hermitian(double tol = 1e-12) const;

    // Largest support size over terms (0 for identity/zero operators).
    std::size_t max_support() const;
    // Sum of |coeff| — a triangle-inequality upper bound on the norm.
    double coeff_l1() const;

private:
    int nq_ = 0;
    std::vector<PauliTerm> terms_;
};

// AB - BA, normalized. Throws on register mismatch.
OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);

// Dense 2^n x 2^n realization; throws if register exceeds cap.
Eigen::MatrixXcd to_dense(const OperatorSum& a, int cap = kDenseCap);

// Spectral norm: exact (dense SVD) when the register fits the cap,
// otherwise the coefficient-L1 upper bound with exact=false.
NormResult operator_norm(const OperatorSum& a, int cap = kNormCap);

// Text form, one term per line: "coeff_re coeff_im X3 Z5". Round-trips
// bit-exactly. Lines starting with '#' and blank lines are ignored on read.
std::string to_text(const OperatorSum& a);
OperatorSum from_text(const std::string& text, int register_size);

}  // namespace z2sim
