// kgcomp: bound-state solver and eigenvalue-ordering certificates for the
// Klein-Gordon equation with vector/scalar potential pairs.
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kgcomp/registry.hpp"
#include "kgcomp/sampling.hpp"

namespace {

using nlohmann::ordered_json;

// Round every number to 15 significant digits so repeated runs are
// byte-identical regardless of shortest-representation quirks.
void round15(ordered_json& j) {
    if (j.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.15g", j.get<double>());
        j = ordered_json::parse(buf);
    } else if (j.is_object() || j.is_array()) {
        for (auto& item : j) round15(item);
    }
}

std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void emit(const ordered_json& j, const std::string& out_path) {
    ordered_json copy = j;
    round15(copy);
    if (out_path.empty()) {
        std::cout << copy.dump(2) << "\n";
    } else {
        std::ofstream os(out_path);
        os << copy.dump(2) << "\n";
    }
}

ordered_json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw kgcomp::DomainError("cannot open config: " + path);
    return ordered_json::parse(is);
}

kgcomp::SolverOptions options_from(const ordered_json& cfg, const std::string& tol_profile) {
    kgcomp::SolverOptions opts;
    if (cfg.contains("options")) opts = kgcomp::SolverOptions::from_json(cfg.at("options"));
    if (tol_profile == "strict") {
        opts.match_tol = std::min(opts.match_tol, 1e-12);
        opts.ode_tol = std::min(opts.ode_tol, 1e-12);
        opts.coarse_samples = std::max(opts.coarse_samples, 128);
    }
    return opts;
}

ordered_json state_json(const kgcomp::BoundState& st) {
    ordered_json j;
    j["energy"] = st.energy;
    j["nodes"] = st.nodes;
    j["kappa"] = st.kappa;
    j["f_sign_change"] =
        st.f_sign_change ? ordered_json(*st.f_sign_change) : ordered_json(nullptr);
    j["norm_residual"] = st.norm_residual;
    j["match_mismatch"] = st.match_mismatch;
    j["converged"] = st.converged;
    j["grid_start"] = st.grid.start;
    j["grid_end"] = st.grid.end;
    j["grid_points"] = st.grid.points.size();
    j["warnings"] = st.warnings;
    return j;
}

int cmd_solve(const std::string& config, const std::string& out, const std::string& tol_profile,
              const std::string& psi_csv) {
    ordered_json cfg;
    kgcomp::ProblemSpec problem;
    kgcomp::SolverOptions opts;
    try {
        cfg = load_config(config);
        problem = kgcomp::ProblemSpec::from_json(cfg.contains("problem") ? cfg.at("problem") : cfg);
        opts = options_from(cfg, tol_profile);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        const kgcomp::BoundState st = kgcomp::solve(problem, opts);
        emit(state_json(st), out);
        if (!psi_csv.empty()) {
            std::ofstream os(psi_csv);
            st.write_csv(os);
        }
        return st.converged ? 0 : 3;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }
}

int cmd_certify(const std::string& config, const std::string& out, const std::string& tol_profile,
                bool confirm) {
    kgcomp::ComparisonPair pair;
    std::optional<std::string> requested;
    kgcomp::SolverOptions opts;
    try {
        const ordered_json cfg = load_config(config);
        pair = kgcomp::ComparisonPair::from_json(cfg.contains("pair") ? cfg.at("pair") : cfg);
        if (cfg.contains("requested") && !cfg.at("requested").is_null())
            requested = cfg.at("requested").get<std::string>();
        opts = options_from(cfg, tol_profile);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        kgcomp::OrderingCertificate cert = kgcomp::certify(pair, requested);
        if (confirm) cert = kgcomp::numeric_confirm(pair, cert, opts);
        emit(cert.to_json(), out);
        const bool ordered = cert.predicted == kgcomp::Prediction::AOrdered &&
                             (!cert.numeric || cert.numeric->holds);
        return ordered ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }
}

int cmd_reproduce(const std::string& id, const std::string& out, const std::string& tol_profile,
                  const std::string& figures_dir) {
    std::vector<const kgcomp::ExampleRecord*> records;
    try {
        if (id == "all")
            for (const auto& r : kgcomp::example_registry()) records.push_back(&r);
        else
            records.push_back(&kgcomp::example_by_id(id));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    kgcomp::SolverOptions opts = options_from(ordered_json::object(), tol_profile);

    std::vector<std::future<kgcomp::RunReport>> futures;
    for (const auto* rec : records)
        futures.push_back(std::async(std::launch::async,
                                     [rec, opts] { return kgcomp::reproduce_example(*rec, opts); }));

    bool all_pass = true;
    double total = 0.0;
    ordered_json reports = ordered_json::array();
    std::printf("%-22s %-6s %-10s %-18s %-18s %s\n", "example", "check", "status", "expected",
                "computed", "theorem");
    for (std::size_t i = 0; i < futures.size(); ++i) {
        kgcomp::RunReport rep;
        try {
            rep = futures[i].get();
        } catch (const std::exception& e) {
            std::cerr << "solver failure in " << records[i]->id << ": " << e.what() << "\n";
            return 3;
        }
        std::string label = rep.certificate.theorem.empty() ? "-" : rep.certificate.theorem;
        if (rep.certificate.corollary_crossings)
            label += " (corollary, " + std::to_string(*rep.certificate.corollary_crossings) +
                     " crossings" + (rep.certificate.adjusted_corollary ? ", adjusted)" : ")");
        for (const auto& c : rep.checks)
            std::printf("%-22s %-6s %-10s %-18s %-18s %s\n", rep.id.c_str(), c.name.c_str(),
                        c.pass ? "pass" : "FAIL", fmt15(c.expected).c_str(),
                        fmt15(c.computed).c_str(), label.c_str());
        std::printf("%-22s %-6s %-10s certificate %s\n", rep.id.c_str(), "cert",
                    rep.theorem_pass ? "pass" : "FAIL", label.c_str());
        if (!rep.pass) all_pass = false;
        total += rep.wall_seconds;
        reports.push_back(rep.to_json());
        if (!figures_dir.empty()) {
            std::ofstream os(figures_dir + "/" + rep.id + "_figure.csv");
            kgcomp::write_figure_series(*records[i], os);
        }
    }
    std::printf("total: %zu example(s), %.2f s, %s\n", records.size(), total,
                all_pass ? "all pass" : "FAILURES");
    ordered_json j;
    j["reports"] = reports;
    j["pass"] = all_pass;
    j["total_seconds"] = total;
    if (!out.empty()) emit(j, out);
    return all_pass ? 0 : 4;
}

int run_soundness_sweep(const ordered_json& cfg, std::uint64_t seed, const kgcomp::SolverOptions& opts,
                        std::ostream& os) {
    const auto scenario = kgcomp::scenario_from_name(cfg.at("scenario").get<std::string>());
    const int samples = cfg.at("samples").get<int>();
    kgcomp::PairSampler sampler(seed);
    os << "index,pair,theorem,predicted,E_a,E_b,holds\n";
    int violations = 0;
    for (int i = 0; i < samples; ++i) {
        const kgcomp::ComparisonPair pair = sampler.sample_pair(scenario);
        std::string desc = kgcomp::family_name(pair.problem_a.vector_pot.family) + "|" +
                           kgcomp::family_name(pair.problem_b.vector_pot.family);
        try {
            kgcomp::OrderingCertificate cert =
                kgcomp::numeric_confirm(pair, kgcomp::certify(pair), opts);
            const bool ordered = cert.predicted == kgcomp::Prediction::AOrdered;
            if (ordered && cert.numeric && !cert.numeric->holds) ++violations;
            os << i << "," << desc << "," << (cert.theorem.empty() ? "-" : cert.theorem) << ","
               << (ordered ? "a_ordered" : "inconclusive") << "," << fmt15(cert.numeric->e_a)
               << "," << fmt15(cert.numeric->e_b) << "," << (cert.numeric->holds ? 1 : 0) << "\n";
        } catch (const std::exception&) {
            os << i << "," << desc << ",-,unsolvable,nan,nan,0\n";
        }
    }
    os << "# soundness_violations=" << violations << "\n";
    std::cerr << "soundness violations: " << violations << "\n";
    return 0;
}

int run_equivalence_sweep(const ordered_json& cfg, const kgcomp::SolverOptions& opts,
                          std::ostream& os) {
    kgcomp::ProblemSpec base;
    base.m = cfg.contains("m") ? cfg.at("m").get<double>() : 1.0;
    base.vector_pot = kgcomp::PotentialSpec::from_json(cfg.at("potential"));
    const auto ds = cfg.at("d_range");
    const auto ls = cfg.at("l_range");
    os << "d,l,E_dl,E_equiv,diff\n";
    double worst = 0.0;
    for (int d = ds.at(0).get<int>(); d <= ds.at(1).get<int>(); ++d) {
        for (int l = ls.at(0).get<int>(); l <= ls.at(1).get<int>(); ++l) {
            base.geometry = kgcomp::Geometry::radial(d, l);
            try {
                const auto eq = kgcomp::equivalence_check(base, opts);
                const double diff = std::abs(eq.e_dl - eq.e_equiv);
                worst = std::max(worst, diff);
                os << d << "," << l << "," << fmt15(eq.e_dl) << "," << fmt15(eq.e_equiv) << ","
                   << fmt15(diff) << "\n";
            } catch (const std::exception&) {
                os << d << "," << l << ",nan,nan,nan\n";
            }
        }
    }
    os << "# max_diff=" << fmt15(worst) << "\n";
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out, const std::string& tol_profile,
              std::optional<std::uint64_t> seed_flag) {
    ordered_json cfg;
    std::string mode;
    kgcomp::SolverOptions opts;
    std::uint64_t seed = 0;
    try {
        cfg = load_config(config);
        mode = cfg.at("mode").get<std::string>();
        if (mode != "soundness" && mode != "equivalence")
            throw kgcomp::DomainError("unknown sweep mode: " + mode);
        opts = options_from(cfg, tol_profile);
        seed = seed_flag ? *seed_flag
                         : (cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 1234567);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    std::ostringstream buffer;
    int rc = 0;
    try {
        rc = (mode == "soundness") ? run_soundness_sweep(cfg, seed, opts, buffer)
                                   : run_equivalence_sweep(cfg, opts, buffer);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kgcomp::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    if (out.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream os(out);
        os << buffer.str();
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Klein-Gordon bound states and eigenvalue-ordering certificates"};
    app.require_subcommand(1);

    std::string out;
    std::string tol_profile = "default";
    std::optional<std::uint64_t> seed;
    app.add_option("--out", out, "output path (default: stdout)");
    app.add_option("--tol-profile", tol_profile, "default or strict")
        ->check(CLI::IsMember({"default", "strict"}));
    app.add_option("--seed", seed, "override RNG seed for sweeps");

    std::string solve_config, psi_csv;
    auto* solve = app.add_subcommand("solve", "solve one bound-state problem");
    solve->add_option("config", solve_config, "problem config JSON")->required();
    solve->add_option("--psi-csv", psi_csv, "also write the wave function as CSV");

    std::string certify_config;
    bool confirm = false;
    auto* certify = app.add_subcommand("certify", "build an ordering certificate for a pair");
    certify->add_option("config", certify_config, "pair config JSON")->required();
    certify->add_flag("--confirm", confirm, "attach numeric eigenvalue confirmation");

    std::string repro_id, figures_dir;
    auto* reproduce = app.add_subcommand("reproduce", "re-run a published example (or 'all')");
    reproduce->add_option("id", repro_id, "example id or 'all'")->required();
    reproduce->add_option("--figures-dir", figures_dir, "directory for figure-series CSVs");

    std::string sweep_config;
    auto* sweep = app.add_subcommand("sweep", "randomized soundness or equivalence campaign");
    sweep->add_option("config", sweep_config, "sweep config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) return cmd_solve(solve_config, out, tol_profile, psi_csv);
    if (certify->parsed()) return cmd_certify(certify_config, out, tol_profile, confirm);
    if (reproduce->parsed()) return cmd_reproduce(repro_id, out, tol_profile, figures_dir);
    if (sweep->parsed()) return cmd_sweep(sweep_config, out, tol_profile, seed);
    return 2;
}
