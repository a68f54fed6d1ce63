#include "z2sim/verify.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "z2sim/exact.hpp"
#include "z2sim/observables.hpp"
#include "z2sim/transform.hpp"
#include "z2sim/trotter.hpp"

namespace z2sim {

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "skipped";
    }
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

// Largest coefficient left after cancelling a against b.
double coeff_deviation(const OperatorSum& a, const OperatorSum& b) {
    double worst = 0.0;
    const OperatorSum d = (a - b).normalized();
    for (const auto& t : d.terms()) worst = std::max(worst, std::abs(t.coeff));
    return worst;
}

CheckResult run_one(const std::string& name, const std::function<CheckResult()>& body) {
    CheckResult r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r.status = CheckStatus::Fail;
        r.detail = e.what();
    }
    r.name = name;
    return r;
}

CheckResult pass(const std::string& detail) { return {"", CheckStatus::Pass, detail}; }
CheckResult fail(const std::string& detail) { return {"", CheckStatus::Fail, detail}; }
CheckResult skip(const std::string& detail) { return {"", CheckStatus::Skipped, detail}; }

CheckResult graded(double err, double tol) {
    const std::string detail = fmt("max deviation %.3g", err) + fmt(", tolerance %.3g", tol);
    return err <= tol ? pass(detail) : fail(detail);
}

// Σ_{n<L} h s_n Z_0..Z_{n-1} on the gauge-eliminated register.
OperatorSum h0_electric_string(int L, double h) {
    OperatorSum a = OperatorSum::zero(L);
    for (int n = 1; n < L; ++n) {
        const double sgn = ((n * (n + 3) / 2) % 2) ? -1.0 : 1.0;
        PauliTerm t;
        t.coeff = h * sgn;
        for (int k = 0; k < n; ++k) t.axes[k] = Axis::Z;
        a.add_term(t);
    }
    return a;
}

CheckResult check_pipeline(const RunConfig& cfg) {
    const LatticeLayout lay = cfg.layout();
    if (lay.L1 % 2) return skip("destaggering needs an even chain");
    const DeriveResult d = derive_matter_eliminated(lay, cfg.params);
    const HatPieces c = build_matter_eliminated_hat(lay.L1, lay.boundary, cfg.params);
    double err = coeff_deviation(d.electric, c.electric);
    err = std::max(err, coeff_deviation(d.gauge_matter, c.gauge_matter));
    err = std::max(err, coeff_deviation(d.mass, c.mass));
    return graded(err, 1e-12);
}

CheckResult check_commutators(const RunConfig& cfg) {
    if (cfg.boundary != Boundary::Periodic || cfg.L1 < 4 || cfg.L1 % 2)
        return skip("audit needs an even periodic chain of length 4 or more");
    const CommutatorAudit a = audit_commutators(cfg.L1, cfg.params);
    std::string detail = fmt("|[GM,E]| = %.6g", a.gm_e_norm) + fmt(" <= bound %.6g", a.norm_bound);
    if (!a.mass_terms_cancel) return fail("mass-sector commutators do not cancel");
    if (!a.displayed_forms_match) return fail("commutators deviate from their closed forms");
    if (a.gm_e_norm > a.norm_bound * (1 + 1e-12)) return fail(detail);
    return pass(detail);
}

CheckResult check_gates(const RunConfig& cfg) {
    const LatticeLayout lay = cfg.layout();
    if (lay.L1 % 2) return skip("gate forms live on even chains");
    const int M = lay.n_links();
    if (M > kNormCap) return skip("link register beyond the dense-norm cap");
    const double eps = cfg.eps.value_or(0.05);
    const HatPieces hat = build_matter_eliminated_hat(lay.L1, lay.boundary, cfg.params);

    auto diff = [&](const Circuit& c, const OperatorSum& piece) {
        return global_phase_aligned_diff(circuit_matrix(c, M), propagator(to_dense(piece, M), eps));
    };
    double err = diff(compile_omega_e(M, lay.boundary, cfg.params, eps), hat.electric);
    err = std::max(err, diff(compile_omega_m(M, lay.boundary, cfg.params, eps), hat.mass));
    err = std::max(err, diff(compile_omega_gm(M, lay.boundary, cfg.params, eps), hat.gauge_matter));

    // The assembled step equals the ordered product of the piece exponentials,
    // not exp(-i eps H): the difference from the latter is the Trotter error.
    const Eigen::MatrixXcd pieces = propagator(to_dense(hat.gauge_matter, M), eps) *
                                    propagator(to_dense(hat.mass, M), eps) *
                                    propagator(to_dense(hat.electric, M), eps);
    err = std::max(err, global_phase_aligned_diff(
                            circuit_matrix(compile_step(M, lay.boundary, cfg.params, eps), M),
                            pieces));

    if (M >= 2) {
        const HybridPieces hy = build_hybrid_pieces(M, lay.boundary, cfg.params, eps);
        const Eigen::MatrixXcd product = propagator(to_dense(hy.h_z, M), eps) *
                                         propagator(to_dense(hy.h_y, M), eps) *
                                         propagator(to_dense(hy.hat_z, M), eps) *
                                         propagator(to_dense(hy.hat_e, M), eps);
        err = std::max(err, global_phase_aligned_diff(
                                product, circuit_matrix(compile_step(M, lay.boundary, cfg.params, eps), M)));
    }
    if (cfg.boundary == Boundary::Open && cfg.L1 <= kNormCap) {
        const Circuit ladder = compile_omega_e0(cfg.L1, cfg.params, eps);
        err = std::max(err, global_phase_aligned_diff(
                                circuit_matrix(ladder, cfg.L1),
                                propagator(to_dense(h0_electric_string(cfg.L1, cfg.params.h), cfg.L1), eps)));
    }
    return graded(err, 1e-12);
}

CheckResult check_frame_spectra(const RunConfig& cfg) {
    const LatticeLayout lay = cfg.layout();
    if (lay.n_qubits() > 20) return skip("register beyond the sector-enumeration cap");
    const auto basis = sector_basis(lay);
    if (basis.size() > 4096) return skip("sector too large for dense diagonalization");

    const auto ferm = spectrum_restricted(build_fermionic(lay, cfg.params), basis);
    const auto h1 = spectrum_restricted(build_hardcore_h1(lay, cfg.params), basis);
    double err = spectrum_distance(ferm, h1);
    std::string scope = "fermionic vs hard-core";

    if (lay.dim == 1) {
        if (lay.L1 % 2 == 0) {
            const auto hat =
                spectrum(build_matter_eliminated_hat(lay.L1, lay.boundary, cfg.params).total());
            err = std::max(err, spectrum_distance(ferm, hat));
            scope += " vs matter-eliminated";
        }
        if (lay.boundary == Boundary::Open) {
            // The sector lands in the matter-parity block fixed by the total
            // staggered charge.
            const int L = lay.L1;
            int q_total = 0;
            for (int n = 1; n <= L; ++n) q_total += n % 2;
            std::vector<int> matter(L);
            for (int i = 0; i < L; ++i) matter[i] = i;
            const auto pbasis = parity_basis(L, matter, (L - q_total) % 2);
            const auto h0 =
                spectrum_restricted(build_gauge_eliminated_h0(L, cfg.params), pbasis);
            err = std::max(err, spectrum_distance(ferm, h0));
            scope += " vs gauge-eliminated";
        }
    }
    CheckResult r = graded(err, 1e-10);
    r.detail = scope + ": " + r.detail;
    return r;
}

CheckResult check_sectors(const RunConfig& cfg) {
    const LatticeLayout lay = cfg.layout();
    const int nq = lay.n_qubits();
    const int ns = lay.n_sites();
    if (nq > 20) return skip("register beyond the sector-enumeration cap");

    const auto basis = sector_basis(lay);
    const std::uint64_t expected = 1ull << (nq - ns);
    if (basis.size() != expected)
        return fail("staggered sector has " + std::to_string(basis.size()) + " states, expected " +
                    std::to_string(expected));
    std::string detail = "staggered sector dimension " + std::to_string(basis.size());

    if (nq + ns <= 20) {
        std::uint64_t total = 0;
        for (std::uint64_t c = 0; c < (1ull << ns); ++c) {
            std::vector<int> charges(ns);
            for (int s = 0; s < ns; ++s) charges[s] = int((c >> s) & 1u);
            total += sector_basis_for_charges(lay, charges).size();
        }
        if (total != (1ull << nq))
            return fail("charge sectors cover " + std::to_string(total) + " of " +
                        std::to_string(1ull << nq) + " states");
        detail += ", " + std::to_string(1ull << ns) + " charge sectors partition the register";
    }
    return pass(detail);
}

CheckResult check_term_spec(const RunConfig& cfg) {
    const LatticeLayout lay = cfg.layout();
    const TermSpec ts = default_term_spec(lay);
    validate_term_spec(ts, lay);
    const TermSpec back = term_spec_from_text(term_spec_to_text(ts, lay), lay);
    validate_term_spec(back, lay);
    if (back.entries.size() != ts.entries.size()) return fail("term-spec text round trip lost entries");
    return pass(std::to_string(ts.entries.size()) + " entries validated and round-tripped");
}

}  // namespace

bool VerifyReport::all_ok() const {
    for (const auto& c : checks)
        if (c.status == CheckStatus::Fail) return false;
    return true;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    int failures = 0;
    for (const auto& c : checks) {
        j["checks"].push_back(
            {{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
        failures += c.status == CheckStatus::Fail;
    }
    j["failures"] = failures;
    j["ok"] = failures == 0;
    return j.dump(2) + "\n";
}

VerifyReport run_verification(const RunConfig& cfg) {
    VerifyReport rep;
    rep.checks.push_back(run_one("sector_dimensions", [&] { return check_sectors(cfg); }));
    if (cfg.dim == 1) {
        rep.checks.push_back(run_one("closed_form_pipeline", [&] { return check_pipeline(cfg); }));
        rep.checks.push_back(run_one("commutator_audit", [&] { return check_commutators(cfg); }));
        rep.checks.push_back(run_one("gate_exponentials", [&] { return check_gates(cfg); }));
    } else {
        rep.checks.push_back(run_one("term_spec", [&] { return check_term_spec(cfg); }));
    }
    rep.checks.push_back(run_one("frame_spectra", [&] { return check_frame_spectra(cfg); }));
    return rep;
}

}  // namespace z2sim
