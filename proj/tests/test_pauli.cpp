#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "z2sim/pauli.hpp"

using namespace z2sim;

namespace {

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

OperatorSum random_hermitian(std::mt19937& rng, int nq, int nterms) {
    OperatorSum a = random_sum(rng, nq, nterms);
    return (a + a.dagger()).normalized();
}

double dense_diff(const OperatorSum& a, const Eigen::MatrixXcd& m) {
    return (to_dense(a, 12) - m).cwiseAbs().maxCoeff();
}

double max_coeff(const OperatorSum& a) {
    double worst = 0.0;
    const OperatorSum n = a.normalized();
    for (const auto& t : n.terms()) worst = std::max(worst, std::abs(t.coeff));
    return worst;
}

}  // namespace

TEST_CASE("single-qubit products carry exact phases") {
    const auto x = OperatorSum::single(1, 0, Axis::X);
    const auto y = OperatorSum::single(1, 0, Axis::Y);
    const auto z = OperatorSum::single(1, 0, Axis::Z);

    const auto xy = (x * y).normalized();
    REQUIRE(xy.term_count() == 1);
    CHECK(xy.terms()[0].axes.at(0) == Axis::Z);
    CHECK(xy.terms()[0].coeff == cplx(0, 1));

    const auto zz = (z * z).normalized();
    REQUIRE(zz.term_count() == 1);
    CHECK(zz.terms()[0].axes.empty());
    CHECK(zz.terms()[0].coeff == cplx(1, 0));
}

TEST_CASE("two-qubit product composes per site") {
    // (X ⊗ I)(Z ⊗ Z) = -i (Y ⊗ Z)
    const auto a = OperatorSum::single(2, 0, Axis::X);
    auto zz = OperatorSum::identity(2);
    zz = zz * OperatorSum::single(2, 0, Axis::Z) * OperatorSum::single(2, 1, Axis::Z);
    const auto prod = (a * zz).normalized();
    REQUIRE(prod.term_count() == 1);
    CHECK(prod.terms()[0].coeff == cplx(0, -1));
    CHECK(prod.terms()[0].axes.at(0) == Axis::Y);
    CHECK(prod.terms()[0].axes.at(1) == Axis::Z);
}

TEST_CASE("commutators: su(2), diagonal, register mismatch") {
    const auto z = OperatorSum::single(1, 0, Axis::Z);
    const auto x = OperatorSum::single(1, 0, Axis::X);
    const auto c = commutator(z, x);
    REQUIRE(c.term_count() == 1);
    CHECK(c.terms()[0].coeff == cplx(0, 2));
    CHECK(c.terms()[0].axes.at(0) == Axis::Y);

    const auto z0 = OperatorSum::single(2, 0, Axis::Z);
    const auto z0z1 = (OperatorSum::single(2, 0, Axis::Z) * OperatorSum::single(2, 1, Axis::Z));
    CHECK(commutator(z0, z0z1).is_zero());

    CHECK_THROWS(commutator(z, z0));
}

TEST_CASE("products agree with dense matrices and associate") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 24; ++trial) {
        const int nq = 2 + trial % 3;
        const auto a = random_sum(rng, nq, 3);
        const auto b = random_sum(rng, nq, 3);
        const auto c = random_sum(rng, nq, 3);

        CHECK(dense_diff(a * b, to_dense(a, 12) * to_dense(b, 12)) < 1e-12);
        const Eigen::MatrixXcd triple = to_dense(a, 12) * to_dense(b, 12) * to_dense(c, 12);
        CHECK(dense_diff((a * b) * c, triple) < 1e-12);
        CHECK(dense_diff(a * (b * c), triple) < 1e-12);
        CHECK(max_coeff((a * b) * c - a * (b * c)) < 1e-12);
    }
}

TEST_CASE("i[A,B] is hermitian for hermitian A, B") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        const auto a = random_hermitian(rng, 3, 4);
        const auto b = random_hermitian(rng, 3, 4);
        CHECK(commutator(a, b).scaled(cplx(0, 1)).is_hermitian());
    }
}

TEST_CASE("normalization merges, prunes, and ignores insertion order") {
    OperatorSum a(2), b(2);
    PauliTerm t1;
    t1.coeff = 0.75;
    t1.axes[0] = Axis::X;
    PauliTerm t2;
    t2.coeff = cplx(0, -2.0);
    t2.axes[1] = Axis::Z;
    PauliTerm t3;
    t3.coeff = -0.75;
    t3.axes[0] = Axis::X;

    a.add_term(t1).add_term(t2).add_term(t3);
    b.add_term(t3).add_term(t1).add_term(t2);
    CHECK(to_text(a.normalized()) == to_text(b.normalized()));
    CHECK(a.normalized().term_count() == 1);  // X terms cancel

    CHECK(to_text(a.normalized()) == to_text(a.normalized().normalized()));

    // Relative pruning: dust below 1e-14 of the largest coefficient goes.
    OperatorSum c(1);
    PauliTerm big;
    big.coeff = 1.0;
    big.axes[0] = Axis::Z;
    PauliTerm dust;
    dust.coeff = 1e-16;
    dust.axes[0] = Axis::X;
    c.add_term(big).add_term(dust);
    CHECK(c.normalized().term_count() == 1);
}

TEST_CASE("dense realizations of reference operators") {
    const auto z = OperatorSum::single(1, 0, Axis::Z);
    const Eigen::MatrixXcd zd = to_dense(z);
    CHECK(zd(0, 0) == cplx(1, 0));
    CHECK(zd(1, 1) == cplx(-1, 0));
    CHECK(std::abs(zd(0, 1)) == 0.0);

    // ½(1 + Z_0 + Z_1 - Z_0 Z_1) is the controlled-Z diagonal.
    auto cz = OperatorSum::identity(2, 0.5);
    cz += OperatorSum::single(2, 0, Axis::Z, 0.5);
    cz += OperatorSum::single(2, 1, Axis::Z, 0.5);
    cz += (OperatorSum::single(2, 0, Axis::Z) * OperatorSum::single(2, 1, Axis::Z)).scaled(-0.5);
    const Eigen::MatrixXcd czd = to_dense(cz);
    const Eigen::Vector4cd diag = czd.diagonal();
    CHECK(diag(0) == cplx(1, 0));
    CHECK(diag(1) == cplx(1, 0));
    CHECK(diag(2) == cplx(1, 0));
    CHECK(diag(3) == cplx(-1, 0));
    CHECK(czd.cwiseAbs().sum() == doctest::Approx(4.0));

    const auto xx = (OperatorSum::single(2, 0, Axis::X) * OperatorSum::single(2, 1, Axis::X));
    const Eigen::MatrixXcd xxd = to_dense(xx);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(std::abs(xxd(i, j) - (i + j == 3 ? 1.0 : 0.0)) < 1e-15);

    std::mt19937 rng(3);
    const auto h = random_hermitian(rng, 4, 6);
    const Eigen::MatrixXcd hd = to_dense(h);
    CHECK((hd - hd.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS(to_dense(OperatorSum::zero(15)));
}

TEST_CASE("apply_to_basis matches dense columns") {
    std::mt19937 rng(9);
    const auto a = random_sum(rng, 3, 5);
    const Eigen::MatrixXcd ad = to_dense(a, 12);
    for (std::uint64_t b = 0; b < 8; ++b) {
        Eigen::VectorXcd col = Eigen::VectorXcd::Zero(8);
        for (const auto& t : a.terms()) {
            const auto act = apply_to_basis(t, b);
            col(Eigen::Index(act.state)) += act.amp;
        }
        CHECK((col - ad.col(Eigen::Index(b))).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("operator norms: exact small, L1 fallback large") {
    const auto z = OperatorSum::single(1, 0, Axis::Z);
    auto nz = operator_norm(z);
    CHECK(nz.exact);
    CHECK(nz.value == doctest::Approx(1.0));

    const auto y2 = OperatorSum::single(1, 0, Axis::Y, cplx(0, 2));
    auto ny = operator_norm(y2);
    CHECK(ny.exact);
    CHECK(ny.value == doctest::Approx(2.0));

    // Past the cap the bound is the coefficient L1 norm.
    OperatorSum big(12);
    big += OperatorSum::single(12, 0, Axis::X, 0.5);
    big += OperatorSum::single(12, 11, Axis::Z, -2.0);
    auto nb = operator_norm(big);
    CHECK(!nb.exact);
    CHECK(nb.value == doctest::Approx(2.5));
}

TEST_CASE("text form round-trips bit-exactly") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        const auto a = random_sum(rng, 5, 7);
        const auto back = from_text(to_text(a), 5);
        CHECK(to_text(back) == to_text(a));
        CHECK((a - back).is_zero(0.0));
    }
    // Comments and blank lines are tolerated.
    const auto b = from_text("# header\n\n1 0 Z0\n", 2);
    CHECK(b.term_count() == 1);
}

TEST_CASE("hermiticity detection") {
    auto a = OperatorSum::single(2, 0, Axis::X, cplx(0, 1));
    CHECK(!a.is_hermitian());
    CHECK((a + a.dagger()).is_hermitian());
    CHECK(OperatorSum::identity(3, 2.5).is_hermitian());
}
