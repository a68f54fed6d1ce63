#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "z2sim/exact.hpp"
#include "z2sim/io.hpp"
#include "z2sim/observables.hpp"
#include "z2sim/transform.hpp"
#include "z2sim/trotter.hpp"
#include "z2sim/verify.hpp"

namespace {

using namespace z2sim;

// File sink: with --out everything lands in that directory, otherwise on
// stdout under a "## name" banner.
struct Sink {
    std::string dir;

    void emit(const std::string& name, const std::string& content) const {
        if (dir.empty()) {
            std::cout << "## " << name << "\n" << content;
            return;
        }
        std::filesystem::create_directories(dir);
        const std::string path = dir + "/" + name;
        write_text_file(path, content);
        std::cout << "wrote " << path << "\n";
    }
};

struct Flags {
    std::string config_path, out_dir;
    bool dump_stages = false;
    bool inject_gm_sign_flip = false;
    std::optional<int> dim, L1, L2, steps;
    std::optional<double> h, J, m, b, t, eps, delta;
    std::optional<std::string> boundary, ordering, scheme, initial, frames, termspec;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    return out;
}

RunConfig make_config(const Flags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = load_config(f.config_path);
    if (f.dim) cfg.dim = *f.dim;
    if (f.L1) cfg.L1 = *f.L1;
    if (f.L2) cfg.L2 = *f.L2;
    if (f.boundary) {
        if (*f.boundary == "periodic") cfg.boundary = Boundary::Periodic;
        else if (*f.boundary == "open") cfg.boundary = Boundary::Open;
        else throw std::invalid_argument("boundary must be periodic or open");
    }
    if (f.h) cfg.params.h = *f.h;
    if (f.J) cfg.params.J = *f.J;
    if (f.m) cfg.params.m = *f.m;
    if (f.b) cfg.params.b = *f.b;
    if (f.t) cfg.t = *f.t;
    if (f.eps || f.steps || f.delta) {
        cfg.eps.reset();
        cfg.steps.reset();
        cfg.delta.reset();
        cfg.eps = f.eps;
        if (f.steps) cfg.steps = f.steps;
        if (f.delta) cfg.delta = f.delta;
    }
    if (cfg.step_controls() > 1)
        throw std::invalid_argument("eps, steps and delta are mutually exclusive");
    if (f.ordering) cfg.ordering = *f.ordering;
    if (f.scheme) cfg.scheme = *f.scheme;
    if (f.initial) cfg.initial = *f.initial;
    if (f.frames) cfg.frames = split_list(*f.frames);
    if (f.termspec) cfg.termspec_path = *f.termspec;
    return cfg;
}

std::vector<std::string> resolve_frames(const RunConfig& cfg) {
    std::vector<std::string> frames = cfg.frames;
    if (frames.empty() || (frames.size() == 1 && frames[0] == "all")) {
        frames = {"fermionic", "hardcore"};
        // The matter-eliminated frame only exists for even chains.
        if (cfg.dim == 2 || cfg.L1 % 2 == 0) frames.push_back("hat");
        if (cfg.dim == 1 && cfg.boundary == Boundary::Open) frames.push_back("h0");
    }
    for (const auto& fr : frames)
        if (fr != "fermionic" && fr != "hardcore" && fr != "hat" && fr != "h0")
            throw std::invalid_argument("unknown frame \"" + fr + "\"");
    return frames;
}

// Matter-parity block of the gauge-eliminated chain holding the staggered
// sector: total bit parity (L - Σq) mod 2.
std::vector<std::uint64_t> h0_block_basis(int L) {
    int q_total = 0;
    for (int n = 1; n <= L; ++n) q_total += n % 2;
    std::vector<int> qubits(L);
    for (int i = 0; i < L; ++i) qubits[i] = i;
    return parity_basis(L, qubits, (L - q_total) % 2);
}

TermSpec term_spec_for(const RunConfig& cfg, const LatticeLayout& lay) {
    if (cfg.termspec_path.empty()) return default_term_spec(lay);
    return term_spec_from_text(read_text_file(cfg.termspec_path), lay);
}

std::vector<double> spectrum_for_frame(const RunConfig& cfg, const std::string& frame) {
    const LatticeLayout lay = cfg.layout();
    if (frame == "fermionic")
        return spectrum_restricted(build_fermionic(lay, cfg.params), sector_basis(lay));
    if (frame == "hardcore") {
        if (lay.dim == 2)
            return spectrum_restricted(
                build_hardcore_h1_pieces(lay, cfg.params, term_spec_for(cfg, lay)).total(),
                sector_basis(lay));
        return spectrum_restricted(build_hardcore_h1(lay, cfg.params), sector_basis(lay));
    }
    if (frame == "hat") {
        if (lay.dim == 2)
            return spectrum(
                derive_matter_eliminated(lay, cfg.params, term_spec_for(cfg, lay)).hat());
        return spectrum(build_matter_eliminated_hat(lay.L1, lay.boundary, cfg.params).total());
    }
    if (frame == "h0") {
        if (lay.dim != 1 || lay.boundary != Boundary::Open)
            throw std::invalid_argument("frame h0 needs an open chain");
        return spectrum_restricted(build_gauge_eliminated_h0(lay.L1, cfg.params),
                                   h0_block_basis(lay.L1));
    }
    throw std::invalid_argument("unknown frame \"" + frame + "\"");
}

void dump_pipeline_stages(const RunConfig& cfg, const Sink& sink) {
    const LatticeLayout lay = cfg.layout();
    const DeriveResult d = lay.dim == 2
                               ? derive_matter_eliminated(lay, cfg.params, term_spec_for(cfg, lay))
                               : derive_matter_eliminated(lay, cfg.params);
    sink.emit("stage_input.txt", to_text(d.stages.input));
    sink.emit("stage_conjugated.txt", to_text(d.stages.conjugated));
    sink.emit("stage_projected.txt", to_text(d.stages.projected));
    sink.emit("stage_hat.txt", to_text(d.stages.hat));
}

int cmd_spectrum(const RunConfig& cfg, const Sink& sink, bool dump_stages) {
    const auto frames = resolve_frames(cfg);
    LinePlot plot;
    plot.title = "Spectra by frame";
    plot.xlabel = "level";
    plot.ylabel = "energy";

    std::vector<std::vector<double>> spectra;
    for (const auto& fr : frames) {
        SpectrumReport rep;
        rep.frame = fr;
        rep.params = cfg.params;
        rep.eigenvalues = spectrum_for_frame(cfg, fr);
        spectra.push_back(rep.eigenvalues);
        sink.emit("spectrum_" + fr + ".csv", spectrum_report_csv(rep));

        PlotSeries s;
        s.name = fr;
        for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
            s.points.emplace_back(double(i), rep.eigenvalues[i]);
        plot.series.push_back(std::move(s));
    }
    sink.emit("spectrum_overlay.svg", render_svg(plot));

    for (size_t i = 0; i < frames.size(); ++i)
        for (size_t j = i + 1; j < frames.size(); ++j)
            std::cout << frames[i] << " vs " << frames[j] << ": max |dE| = "
                      << format_full(spectrum_distance(spectra[i], spectra[j])) << "\n";
    if (dump_stages) dump_pipeline_stages(cfg, sink);
    return 0;
}

int cmd_trotter_error(const RunConfig& cfg, const Sink& sink) {
    if (cfg.dim != 1) throw std::invalid_argument("trotter-error runs on chains");
    const LatticeLayout lay = cfg.layout();
    const int M = lay.n_links();
    if (M > kNormCap) throw std::runtime_error("link register beyond the dense-norm cap");

    std::vector<std::vector<std::string>> orderings;
    if (cfg.scheme == "sweep") {
        orderings = {{"gm", "m", "e"}, {"gm", "e", "m"}, {"m", "gm", "e"},
                     {"m", "e", "gm"}, {"e", "gm", "m"}, {"e", "m", "gm"}};
    } else if (cfg.scheme == "product") {
        orderings = {parse_ordering(cfg.ordering)};
    } else {
        throw std::invalid_argument("scheme must be product or sweep");
    }

    std::vector<long> step_counts;
    if (cfg.steps) step_counts = {*cfg.steps};
    else for (long n = 8; n <= 256; n *= 2) step_counts.push_back(n);

    std::string csv = "ordering,steps,eps,measured,bound,ratio\n";
    if (cfg.delta)
        csv += "# recommended steps for delta=" + format_full(*cfg.delta) + ": " +
               std::to_string(recommend_steps(cfg.params, M, cfg.t, *cfg.delta)) + "\n";

    LinePlot plot;
    plot.title = "Trotter error vs step count";
    plot.xlabel = "steps";
    plot.ylabel = "error";
    plot.logx = plot.logy = true;

    for (const auto& ord : orderings) {
        std::string label;
        for (const auto& p : ord) label += (label.empty() ? "" : "+") + p;
        PlotSeries meas{label, {}};
        PlotSeries bnd{"bound", {}};
        for (long n : step_counts) {
            const double eps = cfg.t / double(n);
            const double measured =
                measured_trotter_error(lay.L1, lay.boundary, cfg.params, cfg.t, int(n), ord);
            const double bound = trotter_error_bound(cfg.params, M, cfg.t, int(n));
            csv += csv_join({label, std::to_string(n), format_full(eps), format_full(measured),
                             format_full(bound), format_full(measured / bound)});
            meas.points.emplace_back(double(n), measured);
            bnd.points.emplace_back(double(n), bound);
        }
        plot.series.push_back(std::move(meas));
        if (plot.series.size() == 1) plot.series.push_back(std::move(bnd));
    }
    sink.emit("trotter_error.csv", csv);
    sink.emit("trotter_error.svg", render_svg(plot));
    return 0;
}

Eigen::VectorXcd initial_state(const RunConfig& cfg, const OperatorSum& hat_total, int M) {
    const Eigen::Index dim = 1LL << M;
    if (cfg.initial == "vacuum") {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(0) = 1.0;
        return psi;
    }
    if (cfg.initial == "ground") {
        const EigenSystem es = eigensystem(to_dense(hat_total, M));
        return es.vectors.col(0);
    }
    if (int(cfg.initial.size()) == M &&
        cfg.initial.find_first_not_of("01") == std::string::npos) {
        std::uint64_t b = 0;
        for (int q = 0; q < M; ++q)
            if (cfg.initial[size_t(q)] == '1') b |= 1ull << q;
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        psi(Eigen::Index(b)) = 1.0;
        return psi;
    }
    throw std::invalid_argument("initial must be vacuum, ground, or a length-" + std::to_string(M) +
                                " bit string");
}

int cmd_evolve(const RunConfig& cfg, const Sink& sink) {
    if (cfg.dim != 1) throw std::invalid_argument("evolve runs on chains");
    const LatticeLayout lay = cfg.layout();
    const int M = lay.n_links();
    if (M > kDenseCap) throw std::runtime_error("link register beyond the dense cap");
    if (cfg.step_controls() != 1)
        throw std::invalid_argument("give exactly one of eps, steps or delta");

    long N;
    if (cfg.steps) N = *cfg.steps;
    else if (cfg.eps) N = std::max(1L, long(std::ceil(cfg.t / *cfg.eps)));
    else N = recommend_steps(cfg.params, M, cfg.t, *cfg.delta);
    const double eps = cfg.t / double(N);

    const HatPieces hat = build_matter_eliminated_hat(lay.L1, lay.boundary, cfg.params);
    const OperatorSum H = hat.total();
    const Eigen::MatrixXcd Hd = to_dense(H, M);
    const Eigen::MatrixXcd u_exact = propagator(Hd, eps);

    Eigen::MatrixXcd u_step;
    Circuit step(M);
    if (cfg.scheme == "product") {
        step = compile_step(M, lay.boundary, cfg.params, eps, parse_ordering(cfg.ordering));
        u_step = circuit_matrix(step, M);
    } else if (cfg.scheme == "hybrid") {
        const HybridPieces hy = build_hybrid_pieces(M, lay.boundary, cfg.params, eps);
        u_step = propagator(to_dense(hy.h_z, M), eps) * propagator(to_dense(hy.h_y, M), eps) *
                 propagator(to_dense(hy.hat_z, M), eps) * propagator(to_dense(hy.hat_e, M), eps);
    } else {
        throw std::invalid_argument("scheme must be product or hybrid");
    }

    Eigen::VectorXcd psi0 = initial_state(cfg, H, M);
    Eigen::VectorXcd pe = psi0, pt = psi0;

    std::vector<std::string> header = {"step", "time", "fidelity", "energy_exact",
                                       "energy_trotter"};
    for (int q = 0; q < M; ++q) {
        header.push_back("z" + std::to_string(q) + "_exact");
        header.push_back("z" + std::to_string(q) + "_trotter");
    }
    std::string csv = csv_join(header);
    for (long k = 0; k <= N; ++k) {
        if (k) {
            pe = u_exact * pe;
            pt = u_step * pt;
        }
        std::vector<std::string> row = {std::to_string(k), format_full(double(k) * eps),
                                        format_full(std::abs(pe.dot(pt))),
                                        format_full(expectation(pe, H).real()),
                                        format_full(expectation(pt, H).real())};
        for (int q = 0; q < M; ++q) {
            const OperatorSum z = OperatorSum::single(M, q, Axis::Z);
            row.push_back(format_full(expectation(pe, z).real()));
            row.push_back(format_full(expectation(pt, z).real()));
        }
        csv += csv_join(row);
    }
    sink.emit("evolve.csv", csv);
    if (cfg.scheme == "product") {
        sink.emit("step_circuit.txt", to_gate_list(step));
        sink.emit("step_circuit.qasm", to_qasm(step));
    }
    std::cout << "steps " << N << ", eps " << format_full(eps) << ", final fidelity "
              << format_full(std::abs(pe.dot(pt))) << "\n";
    return 0;
}

int cmd_derive2d(const RunConfig& cfg, const Sink& sink, bool dump_stages) {
    if (cfg.dim != 2) throw std::invalid_argument("derive2d needs a d=2 torus config");
    const LatticeLayout lay = cfg.layout();
    const TermSpec ts = term_spec_for(cfg, lay);
    validate_term_spec(ts, lay);

    const DeriveResult d = derive_matter_eliminated(lay, cfg.params, ts);
    const OperatorSum hat = d.hat();
    sink.emit("hamiltonian_hat_2d.txt", to_text(hat));

    std::vector<int> histogram;
    for (const auto& t : hat.terms()) {
        const int w = t.weight();
        if (w >= int(histogram.size())) histogram.resize(size_t(w) + 1, 0);
        histogram[size_t(w)]++;
    }
    std::string csv = "support,terms\n";
    for (size_t w = 0; w < histogram.size(); ++w)
        if (histogram[w]) csv += csv_join({std::to_string(w), std::to_string(histogram[w])});
    sink.emit("locality_report.csv", csv);
    std::cout << "terms " << hat.term_count() << ", max support " << hat.max_support() << "\n";

    if (dump_stages) dump_pipeline_stages(cfg, sink);

    // Equivalence verdict against the sector-restricted hard-core spectrum.
    if (lay.n_qubits() > 14) {
        std::cout << "spectrum equivalence: skipped (register beyond the dense cap)\n";
        return 0;
    }
    const auto ref = spectrum_restricted(build_hardcore_h1_pieces(lay, cfg.params, ts).total(),
                                         sector_basis(lay));
    const auto got = spectrum(hat);
    const double dev = spectrum_distance(ref, got);
    std::cout << "spectrum equivalence: max |dE| = " << format_full(dev) << "\n";
    if (dev > 1e-10)
        throw std::runtime_error("term spec fails spectrum equivalence: max |dE| = " +
                                 format_full(dev));
    return 0;
}

struct NamedObservable {
    std::string name;
    OperatorSum full;  // full-register form
    OperatorSum hat;   // matter-eliminated image
};

std::vector<NamedObservable> observable_set(const RunConfig& cfg, const LatticeLayout& lay) {
    std::vector<NamedObservable> obs;
    auto add_z = [&](int l) {
        obs.push_back({"Z(link " + std::to_string(l) + ")", link_field(lay, l),
                       OperatorSum::single(lay.n_links(), l - 1, Axis::Z)});
    };
    auto add_n = [&](int n) {
        obs.push_back({"N(site " + std::to_string(n) + ")", charge_density(lay, n),
                       charge_density_hat(lay, n)});
    };
    auto add_m = [&](int n, int R) {
        obs.push_back({"M(" + std::to_string(n) + "," + std::to_string(R) + ")",
                       mesonic_string(lay, n, R), mesonic_string_hat(lay, n, R)});
    };
    if (cfg.observables.empty()) {
        for (int l = 1; l <= lay.n_links(); ++l) add_z(l);
        for (int n = 1; n <= lay.L1; ++n) add_n(n);
        for (int R = 1; R <= std::min(3, lay.L1 - 1); ++R) add_m(1, R);
        return obs;
    }
    for (const auto& token : cfg.observables) {
        // Z:<link>, N:<site>, M:<site>:<R>
        const auto parts = split_list([&] {
            std::string t = token;
            for (auto& c : t) if (c == ':') c = ',';
            return t;
        }());
        auto want = [&](size_t k) {
            if (parts.size() != k + 1)
                throw std::invalid_argument("bad observable token \"" + token + "\"");
        };
        if (parts.empty()) throw std::invalid_argument("bad observable token");
        if (parts[0] == "Z") { want(1); add_z(std::stoi(parts[1])); }
        else if (parts[0] == "N") { want(1); add_n(std::stoi(parts[1])); }
        else if (parts[0] == "M") { want(2); add_m(std::stoi(parts[1]), std::stoi(parts[2])); }
        else throw std::invalid_argument("bad observable token \"" + token + "\"");
    }
    return obs;
}

int cmd_observables(const RunConfig& cfg, const Sink& sink) {
    if (cfg.dim != 1) throw std::invalid_argument("observables runs on chains");
    const LatticeLayout lay = cfg.layout();
    if (lay.L1 % 2) throw std::invalid_argument("the state map needs an even chain");
    if (lay.n_qubits() > kDenseCap) throw std::runtime_error("register beyond the dense cap");

    const auto basis = sector_basis(lay);
    const OperatorSum h1 = build_hardcore_h1(lay, cfg.params);
    const EigenSystem es = eigensystem(restricted_matrix(h1, basis));

    // Embed sector eigenvectors in the full register and map them across.
    const Eigen::Index dim_full = 1LL << lay.n_qubits();
    std::vector<Eigen::VectorXcd> full(size_t(es.values.size()));
    std::vector<Eigen::VectorXcd> mapped(size_t(es.values.size()));
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_full);
        for (size_t i = 0; i < basis.size(); ++i) v(Eigen::Index(basis[i])) = es.vectors(Eigen::Index(i), k);
        full[size_t(k)] = v;
        mapped[size_t(k)] = map_state_to_hat(lay, v);
    }

    const auto obs = observable_set(cfg, lay);
    const double scale = std::max(1.0, std::abs(es.values(es.values.size() - 1)));
    std::string csv =
        "level,count,energy,name,hardcore_re,hardcore_im,hat_re,hat_im,hadamard_re,hadamard_im,"
        "max_dev\n";
    double worst = 0.0;

    for (Eigen::Index k0 = 0; k0 < es.values.size();) {
        Eigen::Index k1 = k0;
        while (k1 + 1 < es.values.size() && es.values(k1 + 1) - es.values(k0) < 1e-8 * scale) ++k1;
        const double count = double(k1 - k0 + 1);
        for (const auto& o : obs) {
            cplx vc = 0, vh = 0, vt = 0;
            for (Eigen::Index k = k0; k <= k1; ++k) {
                vc += expectation(full[size_t(k)], o.full);
                vh += expectation(mapped[size_t(k)], o.hat);
                vt += run_hadamard_test(o.hat, mapped[size_t(k)]);
            }
            vc /= count; vh /= count; vt /= count;
            const double dev = std::max(std::abs(vc - vh), std::abs(vh - vt));
            worst = std::max(worst, dev);
            csv += csv_join({std::to_string(k0), std::to_string(Eigen::Index(count)),
                             format_full(es.values(k0)), o.name, format_full(vc.real()),
                             format_full(vc.imag()), format_full(vh.real()), format_full(vh.imag()),
                             format_full(vt.real()), format_full(vt.imag()), format_full(dev)});
        }
        k0 = k1 + 1;
    }
    sink.emit("observables.csv", csv);
    std::cout << "worst cross-frame deviation " << format_full(worst) << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, const Sink& sink, bool inject) {
    if (inject) testing_set_gm_sign_flip(true);
    VerifyReport rep;
    try {
        rep = run_verification(cfg);
    } catch (...) {
        testing_set_gm_sign_flip(false);
        throw;
    }
    testing_set_gm_sign_flip(false);
    sink.emit("verify_report.json", rep.to_json());
    return rep.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* tc = std::getenv("Z2SIM_THREADS")) Eigen::setNbThreads(std::atoi(tc));

    CLI::App app{"Lattice gauge chain toolkit: equivalent formulations, exact spectra, "
                 "Trotter circuits"};
    app.require_subcommand(1);

    Flags f;
    int rc = 0;
    auto attach = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help");  // frees -h for the coupling below
        sub->add_option("--config", f.config_path, "JSON config file");
        sub->add_option("--out", f.out_dir, "output directory (default: stdout)");
        sub->add_option("--dim", f.dim, "1 (chain) or 2 (torus)");
        sub->add_option("-L,--L1", f.L1, "chain length / torus extent");
        sub->add_option("--L2", f.L2, "second torus extent");
        sub->add_option("--boundary", f.boundary, "periodic | open");
        sub->add_option("--h", f.h, "electric coupling");
        sub->add_option("--J", f.J, "hopping coupling");
        sub->add_option("--m", f.m, "staggered mass");
        sub->add_option("--b", f.b, "plaquette coupling");
        sub->add_option("--t", f.t, "evolution time");
        sub->add_option("--eps", f.eps, "Trotter step size");
        sub->add_option("--steps", f.steps, "Trotter step count");
        sub->add_option("--delta", f.delta, "Trotter error budget");
        sub->add_option("--ordering", f.ordering, "step ordering, e.g. gm,m,e");
        sub->add_option("--scheme", f.scheme, "product | hybrid | sweep");
        sub->add_option("--initial", f.initial, "vacuum | ground | bit string");
        sub->add_option("--frames", f.frames, "comma list: fermionic,hardcore,hat,h0");
        sub->add_option("--termspec", f.termspec, "term-spec text file (d=2)");
        return sub;
    };

    auto* spectrum_cmd = attach(app.add_subcommand("spectrum", "sorted eigenvalues per frame"));
    spectrum_cmd->add_flag("--dump-stages", f.dump_stages, "dump pipeline stage operators");
    spectrum_cmd->callback(
        [&] { rc = cmd_spectrum(make_config(f), Sink{f.out_dir}, f.dump_stages); });

    auto* evolve_cmd = attach(app.add_subcommand("evolve", "exact vs Trotterized time series"));
    evolve_cmd->callback([&] { rc = cmd_evolve(make_config(f), Sink{f.out_dir}); });

    auto* terr_cmd =
        attach(app.add_subcommand("trotter-error", "measured error against the bound"));
    terr_cmd->callback([&] { rc = cmd_trotter_error(make_config(f), Sink{f.out_dir}); });

    auto* derive_cmd =
        attach(app.add_subcommand("derive2d", "generate the d=2 link-only Hamiltonian"));
    derive_cmd->add_flag("--dump-stages", f.dump_stages, "dump pipeline stage operators");
    derive_cmd->callback(
        [&] { rc = cmd_derive2d(make_config(f), Sink{f.out_dir}, f.dump_stages); });

    auto* obs_cmd =
        attach(app.add_subcommand("observables", "per-level expectations across frames"));
    obs_cmd->callback([&] { rc = cmd_observables(make_config(f), Sink{f.out_dir}); });

    auto* verify_cmd = attach(app.add_subcommand("verify", "self-check report"));
    verify_cmd->add_flag("--inject-gm-sign-flip", f.inject_gm_sign_flip,
                         "testing hook: flip one gauge-matter sign so checks must fail");
    verify_cmd->callback(
        [&] { rc = cmd_verify(make_config(f), Sink{f.out_dir}, f.inject_gm_sign_flip); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
