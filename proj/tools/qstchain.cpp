// qstchain: command-line front end for the spin-chain state-transfer toolkit.
//
// Exit codes: 0 success, 2 bad input (parse/contract/structure), 3 numerical
// failure. Every subcommand writes manifest.json next to its outputs; the
// `replay` subcommand re-runs a manifest.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qst/analogue.hpp"
#include "qst/dynamics.hpp"
#include "qst/errors.hpp"
#include "qst/ga.hpp"
#include "qst/io.hpp"
#include "qst/reconstruction.hpp"
#include "qst/spectra.hpp"
#include "qst/sweep.hpp"
#include "qst/tridiagonal_eigen.hpp"

namespace fs = std::filesystem;
using qst::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void write_manifest(const fs::path& out, qst::io::RunManifest m, const std::vector<std::string>& argv) {
    m.output_dir = out.string();
    m.argv = argv;
    qst::io::write_text_file(out / "manifest.json", qst::io::dump(qst::io::to_json(m)));
}

std::string csv(const std::function<void(std::ostream&)>& writer) {
    std::ostringstream os;
    writer(os);
    return os.str();
}

struct SimulateArgs {
    std::string chain;
    double window = 50.0;
    std::size_t samples = 0;
    bool raw_time = false;
    std::string out = ".";
};

void cmd_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
    const auto chain = qst::io::chain_from_json(qst::io::read_json_file(a.chain));
    const std::size_t samples =
        a.samples ? a.samples : static_cast<std::size_t>(std::llround(a.window * qst::kSamplesPerUnit)) + 1;
    const auto es = qst::eigendecompose(chain);
    const double jmax = chain.max_coupling();
    const auto tr = qst::trace(es, jmax, a.window, samples);
    const auto best = qst::max_fidelity(es, jmax, a.window, samples);

    const fs::path out(a.out);
    qst::io::write_text_file(out / "trace.csv", csv([&](std::ostream& os) { qst::io::write_trace_csv(os, tr, a.raw_time); }));
    qst::io::write_text_file(out / "peaks.json", qst::io::dump(qst::io::peaks_json(tr, a.raw_time)));

    qst::io::RunManifest m;
    m.subcommand = "simulate";
    m.inputs = {a.chain};
    m.parameters = {{"window", a.window}, {"samples", samples}, {"raw_time", a.raw_time}};
    write_manifest(out, m, argv);

    const double tscale = a.raw_time ? 1.0 / jmax : 1.0;
    std::cout << qst::io::dump({{"max_F", best.fidelity},
                                {"max_Fav", qst::average_fidelity(std::min(best.fidelity, 1.0))},
                                {a.raw_time ? "t" : "t_Jmax", best.time * tscale},
                                {"peaks", tr.peaks.size()}});
}

struct ReconstructArgs {
    std::string spectrum;
    std::vector<double> pinched;  // N p alpha
    std::optional<double> base;
    std::string sign = "negative";
    std::string out = ".";
};

void cmd_reconstruct(const ReconstructArgs& a, const std::vector<std::string>& argv) {
    if (a.spectrum.empty() == a.pinched.empty()) {
        throw qst::StructuralError("give exactly one of a spectrum file or --pinched N p alpha");
    }
    std::optional<qst::Spectrum> s;
    if (!a.pinched.empty()) {
        const double n = a.pinched[0], p = a.pinched[1], alpha = a.pinched[2];
        if (n != std::floor(n) || p != std::floor(p)) throw qst::StructuralError("--pinched N and p must be integers");
        const qst::PinchSpec ps{static_cast<int>(n), static_cast<int>(p), alpha};
        // Ground level defaults to 2*alpha, i.e. levels 2*alpha*(k+1) below the pinch.
        const double base = a.base.value_or(2.0 * alpha);
        s = qst::pinched_spectrum(ps, base - alpha * (1 - ps.n));
    } else {
        s = qst::io::spectrum_from_json(qst::io::read_json_file(a.spectrum));
    }
    const auto sign = qst::sign_convention_from_string(a.sign);
    const auto chain = qst::reconstruct(*s, sign);
    const double err = qst::roundtrip_error(*s);
    std::cerr << "roundtrip error: " << err << "\n";

    const fs::path out(a.out);
    qst::io::write_text_file(out / "chain.json", qst::io::dump(qst::io::to_json(chain)));
    qst::io::RunManifest m;
    m.subcommand = "reconstruct";
    if (!a.spectrum.empty()) m.inputs = {a.spectrum};
    m.parameters = {{"pinched", a.pinched}, {"sign", a.sign}, {"roundtrip_error", err}};
    if (a.base) m.parameters["base"] = *a.base;
    write_manifest(out, m, argv);
    std::cout << qst::io::dump(qst::io::to_json(chain));
}

struct SnapArgs {
    std::string spectrum;
    int p = 3;
    std::string out = ".";
};

void cmd_snap(const SnapArgs& a, const std::vector<std::string>& argv) {
    const auto in = qst::io::spectrum_from_json(qst::io::read_json_file(a.spectrum));
    const auto snapped = qst::snap_to_pst(in, a.p);
    const auto check = qst::check_pst_condition(snapped);
    std::vector<double> shifts;
    double max_shift = 0.0;
    for (Eigen::Index k = 0; k < in.size(); ++k) {
        shifts.push_back(snapped[k] - in[k]);
        max_shift = std::max(max_shift, std::abs(shifts.back()));
    }
    const json report = {{"input", qst::io::to_json(in)["values"]},
                         {"snapped", qst::io::to_json(snapped)["values"]},
                         {"shifts", shifts},
                         {"max_shift", max_shift},
                         {"pst_valid", check.valid},
                         {"t_m", check.t_m},
                         {"odd_integers", check.odd_integers}};
    const fs::path out(a.out);
    qst::io::write_text_file(out / "snapped.json", qst::io::dump(qst::io::to_json(snapped)));
    qst::io::write_text_file(out / "snap_report.json", qst::io::dump(report));
    qst::io::RunManifest m;
    m.subcommand = "snap";
    m.inputs = {a.spectrum};
    m.parameters = {{"p", a.p}};
    write_manifest(out, m, argv);
    std::cout << qst::io::dump(report);
}

struct OptimizeArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> generations;
    std::optional<int> population;
    std::string out = ".";
};

void cmd_optimize(const OptimizeArgs& a, const std::vector<std::string>& argv) {
    auto cfg = qst::io::ga_config_from_json(qst::io::read_json_file(a.config));
    if (a.seed) cfg.seed = *a.seed;
    if (a.generations) cfg.generations = *a.generations;
    if (a.population) cfg.population = *a.population;
    cfg.validate();
    const auto rep = qst::evolve(cfg);
    const auto chain = qst::genome_chain(rep.best.genome, cfg);

    const fs::path out(a.out);
    qst::io::write_text_file(out / "best_chain.json", qst::io::dump(qst::io::to_json(chain)));
    qst::io::write_text_file(out / "history.csv", csv([&](std::ostream& os) { qst::io::write_history_csv(os, rep.history); }));
    const auto& r = rep.best.report;
    const json report = {{"config", qst::io::to_json(cfg)},
                         {"best_genome", rep.best.genome},
                         {"fitness", r.fitness},
                         {"F_max", r.f_max},
                         {"Fav_max", qst::average_fidelity(std::clamp(r.f_max, 0.0, 1.0))},
                         {"t_Jmax", r.best_time},
                         {"Q", r.q},
                         {"sigma_lambda", r.sigma},
                         {"penalty", r.penalty},
                         {"symmetry_held", rep.symmetry_held},
                         {"final_population",
                          {{"size", rep.final_population.size},
                           {"viable", rep.final_population.viable},
                           {"mean_fitness", rep.final_population.mean_fitness},
                           {"best_fitness", rep.final_population.best_fitness},
                           {"worst_fitness", rep.final_population.worst_fitness}}}};
    qst::io::write_text_file(out / "report.json", qst::io::dump(report));
    qst::io::RunManifest m;
    m.subcommand = "optimize";
    m.inputs = {a.config};
    m.parameters = qst::io::to_json(cfg);
    m.seed = cfg.seed;
    write_manifest(out, m, argv);
    std::cout << qst::io::dump({{"F_max", r.f_max}, {"fitness", r.fitness}, {"t_Jmax", r.best_time}});
}

struct AnalyzeArgs {
    std::string chain;
    std::optional<int> p;
    std::optional<double> gamma;
    std::string out = ".";
};

void cmd_analyze(const AnalyzeArgs& a, const std::vector<std::string>& argv) {
    const auto chain = qst::io::chain_from_json(qst::io::read_json_file(a.chain));
    const auto es = qst::eigendecompose(chain);
    const Eigen::Index n = es.size();

    json report;
    report["nodes"] = qst::node_count(es);
    report["mirror_symmetric"] = qst::check_mirror_symmetry(chain).symmetric;
    try {
        report["schrodinger_residual"] = qst::schrodinger_residual(chain, es).cwiseAbs().maxCoeff();
    } catch (const qst::ContractError&) {
        report["schrodinger_residual"] = nullptr;
    }
    if (n == 2) report["schrodinger_residual"] = 0.0;

    const double gamma = a.gamma.value_or(es.values(1) - es.values(0));
    int p = 1;
    if (a.p) {
        p = *a.p;
    } else if (n >= 2) {
        const double ratio = gamma / (es.values(n - 1) - es.values(n - 2));
        p = std::max(1, 2 * static_cast<int>(std::lround((ratio - 1.0) / 2.0)) + 1);
    }
    report["p"] = p;
    report["gamma"] = gamma;
    try {
        const auto ladder = qst::build_ladder(es, p, gamma);
        report["ladder_residual"] = qst::ladder_residual(ladder, chain, es);
        report["commutator_residual"] = (ladder.commutator() - ladder.commutator_closed_form()).cwiseAbs().maxCoeff();
        const auto pairing = qst::pairing_check(qst::position_operator(ladder), qst::mirror_in_eigenbasis(es));
        report["x_pairs"] = pairing.x_pairs;
        report["zero_mode"] = pairing.zero_mode;
        report["anticommutator_residual"] = pairing.anticommutator_residual;
    } catch (const qst::ContractError& e) {
        for (const char* k : {"ladder_residual", "commutator_residual", "x_pairs", "zero_mode"}) report[k] = nullptr;
        report["ladder_error"] = e.what();
    }

    const fs::path out(a.out);
    qst::io::write_text_file(out / "analysis.json", qst::io::dump(report));
    qst::io::RunManifest m;
    m.subcommand = "analyze";
    m.inputs = {a.chain};
    m.parameters = {{"p", p}, {"gamma", gamma}};
    write_manifest(out, m, argv);
    std::cout << qst::io::dump(report);
}

struct SweepArgs {
    int n_min = 4;
    int n_max = 40;
    std::vector<int> p_list{3, 5, 7, 9, 11, 13};
    double alpha = 0.5;
    std::optional<double> christandl;
    std::string out = ".";
};

void cmd_sweep(const SweepArgs& a, const std::vector<std::string>& argv) {
    if (a.n_min < 2 || a.n_max < a.n_min) throw qst::StructuralError("need 2 <= n-min <= n-max");
    std::vector<int> ns;
    for (int n = a.n_min; n <= a.n_max; ++n) ns.push_back(n);
    const auto points = qst::deviation_sweep(ns, a.p_list, a.alpha);
    const fs::path out(a.out);
    qst::io::write_text_file(out / "sweep.csv", csv([&](std::ostream& os) { qst::write_sweep_csv(os, points); }));
    if (a.christandl) {
        std::ostringstream os;
        os << "N,std_J,max_rel_spread_J\n" << std::setprecision(12);
        for (int n : ns) {
            const auto st = qst::coupling_statistics(qst::christandl_chain(n, *a.christandl));
            os << n << ',' << st.std_dev << ',' << st.max_rel_spread << '\n';
        }
        qst::io::write_text_file(out / "christandl.csv", os.str());
    }
    qst::io::RunManifest m;
    m.subcommand = "sweep";
    m.parameters = {{"n_min", a.n_min}, {"n_max", a.n_max}, {"p_list", a.p_list}, {"alpha", a.alpha}};
    if (a.christandl) m.parameters["christandl_j0"] = *a.christandl;
    write_manifest(out, m, argv);
    std::size_t failed = 0;
    for (const auto& pt : points) {
        if (pt.error) {
            ++failed;
            std::cerr << "N=" << pt.n << " p=" << pt.p << ": " << *pt.error << "\n";
        }
    }
    std::cout << qst::io::dump({{"points", points.size()}, {"failed", failed}});
}

int run(std::vector<std::string> args, int depth = 0);

int map_exceptions(const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const qst::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const qst::Error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
}

int run(std::vector<std::string> args, int depth) {
    const std::vector<std::string> original = args;
    CLI::App app{"Design, reconstruct and verify spin chains for perfect state transfer", "qstchain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qst::io::kToolVersion);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Time-evolve a chain and record F(t), <F_av(t)> and peaks");
    s->add_option("chain", sim.chain, "ChainSpec JSON")->required();
    s->add_option("--window", sim.window, "Window in units of t*J_max")->check(CLI::PositiveNumber);
    s->add_option("--samples", sim.samples, "Samples (default 200 per unit of window)");
    s->add_flag("--raw-time", sim.raw_time, "Report raw t instead of t*J_max");
    s->add_option("--out", sim.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    ReconstructArgs rec;
    auto* r = app.add_subcommand("reconstruct", "Persymmetric chain from a spectrum");
    r->add_option("spectrum", rec.spectrum, "Spectrum JSON");
    r->add_option("--pinched", rec.pinched, "Pinched spectrum N p alpha")->expected(3);
    r->add_option("--base", rec.base, "Lowest eigenvalue of the --pinched spectrum (default 2*alpha)");
    r->add_option("--sign", rec.sign, "Coupling sign convention")->check(CLI::IsMember({"negative", "positive"}));
    r->add_option("--out", rec.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SnapArgs snap;
    auto* sn = app.add_subcommand("snap", "Round a quasi-PST spectrum onto the nearest pinched PST spectrum");
    sn->add_option("spectrum", snap.spectrum, "Spectrum JSON")->required();
    sn->add_option("--p", snap.p, "Odd pinch denominator")->required();
    sn->add_option("--out", snap.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    OptimizeArgs opt;
    auto* o = app.add_subcommand("optimize", "Genetic search over mirror-symmetric on-site energies");
    o->add_option("config", opt.config, "GA config JSON")->required();
    o->add_option("--seed", opt.seed, "Override the config seed");
    o->add_option("--generations", opt.generations, "Override generations");
    o->add_option("--population", opt.population, "Override population size");
    o->add_option("--out", opt.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    AnalyzeArgs ana;
    auto* an = app.add_subcommand("analyze", "Particle-in-a-potential diagnostics of a chain");
    an->add_option("chain", ana.chain, "ChainSpec JSON")->required();
    an->add_option("--p", ana.p, "Pinch denominator (inferred from the spectrum by default)");
    an->add_option("--gamma", ana.gamma, "Level spacing (default lambda_1 - lambda_0)");
    an->add_option("--out", ana.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SweepArgs sw;
    auto* swc = app.add_subcommand("sweep", "Coupling deviation statistics versus N for pinched spectra");
    swc->add_option("--n-min", sw.n_min, "Smallest chain");
    swc->add_option("--n-max", sw.n_max, "Largest chain");
    swc->add_option("--p-list", sw.p_list, "Pinch values")->delimiter(',');
    swc->add_option("--alpha", sw.alpha, "Spectral scale alpha")->check(CLI::PositiveNumber);
    swc->add_option("--christandl", sw.christandl, "Also tabulate the sqrt(i(N-i)) chain with this J0");
    swc->add_option("--out", sw.out, "Output directory")->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::string manifest_path;
    std::optional<std::string> replay_out;
    auto* rp = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    rp->add_option("manifest", manifest_path, "manifest.json")->required();
    rp->add_option("--out", replay_out, "Write outputs here instead of the recorded directory");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (s->parsed()) return map_exceptions([&] { cmd_simulate(sim, original); });
    if (r->parsed()) return map_exceptions([&] { cmd_reconstruct(rec, original); });
    if (sn->parsed()) return map_exceptions([&] { cmd_snap(snap, original); });
    if (o->parsed()) return map_exceptions([&] { cmd_optimize(opt, original); });
    if (an->parsed()) return map_exceptions([&] { cmd_analyze(ana, original); });
    if (swc->parsed()) return map_exceptions([&] { cmd_sweep(sw, original); });
    if (rp->parsed()) {
        std::vector<std::string> again;
        const int code = map_exceptions([&] {
            if (depth > 0) throw qst::StructuralError("a manifest cannot replay another manifest");
            again = qst::io::manifest_from_json(qst::io::read_json_file(manifest_path)).argv;
            if (again.empty() || again.front() == "replay") throw qst::StructuralError("manifest has no replayable command");
            if (replay_out) {
                again.push_back("--out");
                again.push_back(*replay_out);
            }
        });
        return code == kExitOk ? run(again, depth + 1) : code;
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}
