#pragma once

// Command-line front end. run_command parses argv, runs one subcommand and
// returns the process exit status; every JSON it emits embeds the resolved
// configuration under "config".

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convexgeom.hpp"
#include "energy.hpp"
#include "grid.hpp"
#include "io.hpp"
#include "minkowski.hpp"
#include "parallel.hpp"
#include "specfun.hpp"
#include "verify.hpp"

namespace affine {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_usage = 2, exit_io = 3 };

namespace detail {

struct CommonFlags {
    std::uint64_t seed = 0;
    int threads = 0;
    bool strict = false;
};

inline void add_common(CLI::App* sub, CommonFlags& c) {
    sub->add_option("--seed", c.seed, "Random seed (default 0)");
    sub->add_option("--threads", c.threads, "Worker threads, 0 = available parallelism")->check(CLI::NonNegativeNumber);
    sub->add_flag("--strict", c.strict, "Escalate warnings to errors; exit 1 on any failed inequality");
}

inline Json common_json(const CommonFlags& c) {
    Json j = Json::object();
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["strict"] = c.strict;
    return j;
}

inline Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace detail

/// argv excludes the program name. Output JSON goes to `out`, diagnostics to `err`.
inline int run_command(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Affine energies, rearrangements and sharp functional inequalities on grids", "affine-cli"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");
    detail::CommonFlags common;

    // constants
    std::string c_kind;
    int c_n = 2;
    std::optional<double> c_p, c_q;
    auto* constants = app.add_subcommand("constants", "Print a sharp constant (or lambda, the radial Neumann eigenvalue)");
    constants->add_option("--kind", c_kind, "c_np|e_np|a_sobolev|b_logsob|alpha_morrey|beta_nash|gamma_gn|theta_gn|r_gn|kappa|lambda")
        ->required();
    constants->add_option("--n", c_n, "Dimension")->required();
    constants->add_option("--p", c_p, "Exponent p");
    constants->add_option("--q", c_q, "Exponent q (gamma_gn, theta_gn, r_gn)");
    detail::add_common(constants, common);

    // energy
    std::string e_input, e_kind = "plus";
    double e_p = 2.0;
    int e_dirs = 720;
    auto* energy = app.add_subcommand("energy", "Affine energy of a grid function");
    energy->add_option("--input", e_input, "Grid function header JSON")->required();
    energy->add_option("--p", e_p, "Exponent p > 1 (ignored for inf_plus)");
    energy->add_option("--directions", e_dirs, "Number of sphere directions")->check(CLI::PositiveNumber);
    energy->add_option("--kind", e_kind, "plus|sym|grad|inf_plus")->check(CLI::IsMember({"plus", "sym", "grad", "inf_plus"}));
    detail::add_common(energy, common);

    // rearrange
    std::string r_input, r_out, r_data;
    auto* rearrange = app.add_subcommand("rearrange", "Symmetric decreasing rearrangement of a grid function");
    rearrange->add_option("--input", r_input, "Grid function header JSON")->required();
    rearrange->add_option("--out", r_out, "Output header JSON")->required();
    rearrange->add_option("--data", r_data, "Output data file (default: header path with .bin)");
    detail::add_common(rearrange, common);

    // minkowski
    std::string m_measure;
    double m_p = 2.0;
    SolverOptions m_opts;
    auto* minkowski = app.add_subcommand("minkowski", "Solve the discrete normalised L^p Minkowski problem");
    minkowski->add_option("--measure", m_measure, "Sphere measure JSON")->required();
    minkowski->add_option("--p", m_p, "Exponent p > 1")->required();
    minkowski->add_option("--tol", m_opts.tol, "Residual tolerance (default 1e-10)");
    minkowski->add_option("--max-iter", m_opts.max_iter, "Iteration cap (default 10000)");
    detail::add_common(minkowski, common);

    // petty
    std::string pt_body;
    double pt_p = 2.0;
    int pt_dirs = 720;
    auto* petty = app.add_subcommand("petty", "Petty-type projection inequality for a polytope");
    petty->add_option("--body", pt_body, "Polytope JSON")->required();
    petty->add_option("--p", pt_p, "Exponent p > 1")->required();
    petty->add_option("--directions", pt_dirs, "Number of sphere directions")->check(CLI::PositiveNumber);
    detail::add_common(petty, common);

    // verify
    std::string v_suite = "all", v_corpus = "default", v_out;
    std::optional<double> v_mn;
    int v_dirs = 720;
    auto* verify = app.add_subcommand("verify", "Run a verification suite over a corpus and write the reports");
    verify->add_option("--suite", v_suite, "chain|sobolev|logsob|morrey|faber_krahn|nash|gn|moser_trudinger|starequal|all")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--corpus", v_corpus, "'default' (built in, from --seed) or a corpus JSON file");
    verify->add_option("--out", v_out, "Report file (JSON array)")->required();
    verify->add_option("--mn", v_mn, "Moser-Trudinger constant m_n; without it those reports have no verdict");
    verify->add_option("--directions", v_dirs, "Number of sphere directions")->check(CLI::PositiveNumber);
    detail::add_common(verify, common);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return exit_ok;
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    }
    set_thread_count(common.threads);

    try {
        if (constants->parsed()) {
            double v = 0.0;
            if (c_kind == "lambda") {
                v = neumann_radial_eigenvalue(c_n);
            } else {
                v = sharp_constant(parse_constant_kind(c_kind), c_n, c_p, c_q);
            }
            out << detail::format_double(v) << "\n";
            return exit_ok;
        }

        if (energy->parsed()) {
            const auto f = load_grid_function(e_input);
            const auto ds = make_direction_set(f.dim(), e_dirs);
            double v = 0.0;
            if (e_kind == "plus") v = affine_energy_plus(f, ds, e_p);
            if (e_kind == "sym") v = affine_energy_sym(f, ds, e_p);
            if (e_kind == "grad") v = gradient_lp(f, e_p);
            if (e_kind == "inf_plus") v = affine_energy_inf_plus(f, ds);
            Json j = Json::object();
            j["kind"] = e_kind;
            j["n"] = f.dim();
            j["p"] = e_kind == "inf_plus" ? Json(nullptr) : Json(e_p);
            j["m"] = ds.size();
            j["value"] = v;
            Json cfg = Json::object();
            cfg["subcommand"] = "energy";
            cfg["input"] = e_input;
            cfg["p"] = e_p;
            cfg["directions"] = e_dirs;
            cfg["kind"] = e_kind;
            cfg.update(detail::common_json(common));
            j["config"] = std::move(cfg);
            out << dump_json(j) << "\n";
            return exit_ok;
        }

        if (rearrange->parsed()) {
            const auto f = load_grid_function(r_input);
            const auto star = symmetric_rearrangement(f);
            std::filesystem::path data = r_data.empty() ? std::filesystem::path(r_out).replace_extension(".bin") : std::filesystem::path(r_data);
            save_grid_function(star, r_out, data);
            Json j = Json::object();
            j["n"] = f.dim();
            j["output"] = r_out;
            j["data"] = data.generic_string();
            j["max_abs"] = f.max_abs();
            j["star_max_abs"] = star.max_abs();
            j["l1"] = lp_norm(f, 1.0);
            j["star_l1"] = lp_norm(star, 1.0);
            Json cfg = Json::object();
            cfg["subcommand"] = "rearrange";
            cfg["input"] = r_input;
            cfg["out"] = r_out;
            cfg["data"] = data.generic_string();
            cfg.update(detail::common_json(common));
            j["config"] = std::move(cfg);
            out << dump_json(j) << "\n";
            return exit_ok;
        }

        if (minkowski->parsed()) {
            const auto mu = measure_from_json(read_json_file(m_measure));
            const auto res = solve_normalized(mu, m_p, m_opts);
            Json j = to_json(res);
            Json cfg = Json::object();
            cfg["subcommand"] = "minkowski";
            cfg["measure"] = m_measure;
            cfg["p"] = m_p;
            cfg["tol"] = m_opts.tol;
            cfg["max_iter"] = m_opts.max_iter;
            cfg.update(detail::common_json(common));
            j["config"] = std::move(cfg);
            out << dump_json(j) << "\n";
            return common.strict && !res.converged ? exit_failed : exit_ok;
        }

        if (petty->parsed()) {
            const auto P = polytope_from_json(read_json_file(pt_body));
            auto r = petty_functional_plus(P, pt_p, make_direction_set(P.dim(), pt_dirs));
            Json cfg = Json::object();
            cfg["subcommand"] = "petty";
            cfg["body"] = pt_body;
            cfg["p"] = pt_p;
            cfg["directions"] = pt_dirs;
            cfg.update(detail::common_json(common));
            r.metadata["config"] = std::move(cfg);
            out << dump_json(to_json(r)) << "\n";
            return common.strict && !r.pass.value_or(true) ? exit_failed : exit_ok;
        }

        if (verify->parsed()) {
            const auto corpus = v_corpus == "default" ? default_corpus(common.seed) : corpus_from_json(read_json_file(v_corpus));
            SuiteOptions so;
            so.seed = common.seed;
            so.directions = v_dirs;
            so.m_n = v_mn;
            so.strict = common.strict;
            auto reports = run_suite(v_suite, corpus, so);
            Json cfg = Json::object();
            cfg["subcommand"] = "verify";
            cfg["suite"] = v_suite;
            cfg["corpus"] = v_corpus;
            cfg["out"] = v_out;
            cfg["mn"] = detail::opt_json(v_mn);
            cfg["directions"] = v_dirs;
            cfg.update(detail::common_json(common));
            std::size_t passed = 0, failed = 0, open = 0;
            for (auto& r : reports) {
                r.metadata["config"] = cfg;
                if (!r.pass) ++open;
                else if (*r.pass) ++passed;
                else ++failed;
            }
            write_text_file(v_out, dump_json(to_json(reports)) + "\n");
            Json j = Json::object();
            j["suite"] = v_suite;
            j["reports"] = reports.size();
            j["passed"] = passed;
            j["failed"] = failed;
            j["indeterminate"] = open;
            j["out"] = v_out;
            j["config"] = std::move(cfg);
            out << dump_json(j) << "\n";
            return common.strict && failed > 0 ? exit_failed : exit_ok;
        }
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        // Bad inputs and out-of-range parameters are usage errors.
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace affine
