#include "curvelast/cli.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvelast/dispersion.hpp"
#include "curvelast/verify.hpp"

namespace curvelast {

namespace {

using nlohmann::json;

json meta_json(const RunConfig& cfg, const ScaledProblem& sp) {
    json meta;
    meta["normalization"] = {{"stress_scale_mu", cfg.mu}, {"length_scale_A", cfg.radius}};
    meta["model"] = cfg.model;
    meta["params"] = {{"gamma", cfg.gamma},   {"alpha_s", cfg.alpha_s}, {"beta_s", cfg.beta_s},
                      {"h0", cfg.h0},         {"mu", cfg.mu},           {"radius", cfg.radius},
                      {"incompressible", cfg.incompressible}};
    if (cfg.incompressible)
        meta["incompressible_route"] =
            sp.closed_form_incompressible ? "closed-form" : "bulk-modulus-proxy-1e8";
    else
        meta["params"]["d_modulus"] = *cfg.d_modulus;
    return meta;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path " + cfg.output_path);
    out << text;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(static_cast<std::size_t>(n));
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

struct DispersionRow {
    double k = 0.0, lambda = 0.0, omega = 0.0;
    std::string status = "ok";
};

void for_each_parallel(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned nt = threads > 0 ? static_cast<unsigned>(threads) : (hw ? hw : 1);
    nt = std::min<unsigned>(nt, static_cast<unsigned>(n ? n : 1));
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

int cmd_base_state(const RunConfig& cfg) {
    const auto sp = scale_problem(cfg);
    if (!cfg.lambda) throw ConfigError("base-state: a single lambda is required");
    const double lambda = *cfg.lambda;

    double a, residual, fz;
    if (cfg.incompressible && sp.closed_form_incompressible) {
        a = 1.0 / std::sqrt(lambda);
        residual = 0.0;  // the a-lambda relation is satisfied identically in the limit
        fz = axial_force_incompressible(lambda, sp.surf);
    } else {
        const auto state = BaseState::solve(lambda, sp.mat, sp.surf, 1.0);
        a = state.a;
        residual = base_residual(a, lambda, sp.mat, sp.surf, 1.0);
        fz = axial_force(lambda, a, sp.mat, sp.surf, 1.0);
    }

    json out;
    out["meta"] = meta_json(cfg, sp);
    out["lambda"] = lambda;
    out["a"] = a;
    out["F_z"] = fz * cfg.mu * cfg.radius * cfg.radius;
    out["residual"] = residual;
    out["nu"] = cfg.incompressible ? 0.5 : BulkMaterial(1.0, *cfg.d_modulus / cfg.mu).poisson();
    write_output(cfg, out.dump(2) + "\n");
    return 0;
}

int cmd_dispersion(const RunConfig& cfg) {
    const auto sp = scale_problem(cfg);
    const double A_len = cfg.radius;

    std::vector<DispersionRow> rows;
    if (cfg.lambda) {
        if (!cfg.k_min) throw ConfigError("dispersion: k_min/k_max required with fixed lambda");
        const auto ks = linspace(*cfg.k_min * A_len, *cfg.k_max * A_len, cfg.k_steps);
        rows.resize(ks.size());
        for_each_parallel(ks.size(), cfg.threads, [&](std::size_t i) {
            rows[i].k = ks[i] / A_len;
            rows[i].lambda = *cfg.lambda;
            try {
                if (cfg.incompressible && sp.closed_form_incompressible) {
                    rows[i].omega = dispersion_det_incompressible(ks[i], *cfg.lambda, sp.surf.gamma,
                                                                  sp.surf.beta_s, sp.surf.h0);
                } else {
                    const auto dp = DispersionProblem::assemble(
                        ks[i], BaseState::solve(*cfg.lambda, sp.mat, sp.surf, 1.0));
                    rows[i].omega = dp.omega;
                    if (dp.lambda_perturbed) rows[i].status = "degenerate_perturbed";
                }
            } catch (const DegenerateRootsError&) {
                rows[i].status = "degenerate";
            } catch (const NoBracketError&) {
                rows[i].status = "no_base_state";
            }
        });
    } else if (cfg.lambda_min) {
        if (!cfg.k_min) throw ConfigError("dispersion: a fixed k (k_min) is required");
        const double k = *cfg.k_min * A_len;
        const auto ls = linspace(*cfg.lambda_min, *cfg.lambda_max, cfg.lambda_steps);
        rows.resize(ls.size());
        for_each_parallel(ls.size(), cfg.threads, [&](std::size_t i) {
            rows[i].k = k / A_len;
            rows[i].lambda = ls[i];
            try {
                if (cfg.incompressible && sp.closed_form_incompressible) {
                    rows[i].omega = dispersion_det_incompressible(k, ls[i], sp.surf.gamma,
                                                                  sp.surf.beta_s, sp.surf.h0);
                } else {
                    const auto dp = DispersionProblem::assemble(
                        k, BaseState::solve(ls[i], sp.mat, sp.surf, 1.0));
                    rows[i].omega = dp.omega;
                    if (dp.lambda_perturbed) rows[i].status = "degenerate_perturbed";
                }
            } catch (const DegenerateRootsError&) {
                rows[i].status = "degenerate";
            } catch (const NoBracketError&) {
                rows[i].status = "no_base_state";
            }
        });
    } else {
        throw ConfigError("dispersion: supply lambda (k sweep) or lambda_min/lambda_max (lambda sweep)");
    }

    if (cfg.format == "csv") {
        std::string text = "k,lambda,omega,status\n";
        for (const auto& r : rows)
            text += format_number(r.k) + "," + format_number(r.lambda) + "," +
                    format_number(r.omega) + "," + r.status + "\n";
        write_output(cfg, text);
    } else {
        json out;
        out["meta"] = meta_json(cfg, sp);
        out["rows"] = json::array();
        for (const auto& r : rows)
            out["rows"].push_back(
                {{"k", r.k}, {"lambda", r.lambda}, {"omega", r.omega}, {"status", r.status}});
        write_output(cfg, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_bifurcation(const RunConfig& cfg) {
    const auto sp = scale_problem(cfg);
    if (!cfg.k_min) throw ConfigError("bifurcation: k_min/k_max required");
    if (!cfg.lambda_min) throw ConfigError("bifurcation: lambda_min/lambda_max bracket required");
    const double A_len = cfg.radius;
    const auto ks = linspace(*cfg.k_min * A_len, *cfg.k_max * A_len, cfg.k_steps);

    std::vector<std::optional<BifurcationPoint>> points;
    if (cfg.incompressible && sp.closed_form_incompressible)
        points = bifurcation_curve_incompressible(ks, sp.surf.gamma, sp.surf.beta_s, sp.surf.h0,
                                                  *cfg.lambda_min, *cfg.lambda_max);
    else
        points = bifurcation_curve(ks, sp.mat, sp.surf, 1.0, *cfg.lambda_min, *cfg.lambda_max);

    if (cfg.format == "csv") {
        std::string text = "k,lambda_crit,a,omega_residual,status\n";
        for (std::size_t i = 0; i < ks.size(); ++i) {
            const double k_user = ks[i] / A_len;
            if (points[i])
                text += format_number(k_user) + "," + format_number(points[i]->lambda_crit) + "," +
                        format_number(points[i]->a) + "," +
                        format_number(points[i]->omega_residual) + ",ok\n";
            else
                text += format_number(k_user) + ",nan,nan,nan,no_root\n";
        }
        write_output(cfg, text);
    } else {
        json out;
        out["meta"] = meta_json(cfg, sp);
        out["rows"] = json::array();
        for (std::size_t i = 0; i < ks.size(); ++i) {
            json row;
            row["k"] = ks[i] / A_len;
            if (points[i]) {
                row["lambda_crit"] = points[i]->lambda_crit;
                row["a"] = points[i]->a;
                row["omega_residual"] = points[i]->omega_residual;
                row["status"] = "ok";
            } else {
                row["status"] = "no_root";
            }
            out["rows"].push_back(row);
        }
        write_output(cfg, out.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(bool json_report) {
    const auto results = run_verification();
    int failures = 0;
    if (json_report) {
        json out = json::array();
        for (const auto& r : results) {
            out.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            failures += r.passed ? 0 : 1;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
            failures += r.passed ? 0 : 1;
        }
    }
    return std::min(failures, 125);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"coated-cylinder surface-elasticity dispersion analysis"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, model;
    bool json_report = false;
    std::map<std::string, std::string> overrides;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value configuration file");
        auto track = [&overrides](const std::string& key) {
            return [key, &overrides](const std::string& v) { overrides[key] = v; };
        };
        for (const char* key :
             {"mu", "d_modulus", "gamma", "alpha_s", "beta_s", "h0", "radius", "lambda",
              "lambda_min", "lambda_max", "lambda_steps", "k_min", "k_max", "k_steps",
              "incompressible", "model", "output_path", "format", "threads"}) {
            sub->add_option_function<std::string>("--" + std::string(key), track(key));
        }
    };

    auto* base = app.add_subcommand("base-state", "solve the homogeneous deformation");
    add_common(base);
    auto* disp = app.add_subcommand("dispersion", "evaluate the dispersion determinant on a grid");
    add_common(disp);
    auto* bif = app.add_subcommand("bifurcation", "trace the critical-stretch curve");
    add_common(bif);
    auto* ver = app.add_subcommand("verify", "run the cross-path verification suites");
    ver->add_flag("--json", json_report, "emit a JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = parse_config_file(config_path);
        cfg = parse_config(overrides, cfg);
        if (base->parsed()) return cmd_base_state(cfg);
        if (disp->parsed()) return cmd_dispersion(cfg);
        if (bif->parsed()) return cmd_bifurcation(cfg);
        if (ver->parsed()) return cmd_verify(json_report);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NoBracketError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace curvelast
