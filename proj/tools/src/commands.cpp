#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "mixsch/errors.hpp"
#include "mixsch/field_io.hpp"
#include "mixsch/verify.hpp"
#include "output.hpp"

namespace mixsch::cli {

namespace {

namespace fs = std::filesystem;

void warn_radial_weight(const Context& ctx, const Problem& prob) {
    if (ctx.config.solve.radial && !prob.weight.is_radial()) {
        ctx.log << "warning: solver.radial = true with a non-radial weight (" << prob.weight.name()
                << "); radial existence theory assumes a radial h. Proceeding.\n";
    }
}

SolveOptions solve_options(const Context& ctx) {
    SolveOptions so = ctx.config.solve;
    so.jobs = ctx.jobs;
    return so;
}

LambdaOptions lambda_options(const Context& ctx) {
    LambdaOptions lo = ctx.config.lambda;
    lo.jobs = ctx.jobs;
    return lo;
}

void write_pair(const fs::path& dir, const Pair& p) {
    write_mgf1(dir / "u.mgf1", p.u);
    write_mgf1(dir / "v.mgf1", p.v);
}

nlohmann::json model_json(const RunConfig& c) {
    return {{"s1", c.model.s1}, {"s2", c.model.s2}, {"alpha", c.model.alpha}, {"beta", c.model.beta},
            {"kappa", c.model.kappa}, {"regime", to_string(c.model.regime())}, {"h", c.weight_kind},
            {"h_params", c.weight_params}, {"grid", {c.nx, c.ny, c.lx, c.ly}}};
}

}  // namespace

int cmd_solve(const Context& ctx) {
    const Problem prob = ctx.config.problem();
    warn_radial_weight(ctx, prob);
    SolveOptions so = solve_options(ctx);
    so.record_history = true;
    const MultistartResult ms = multistart(prob, so);
    const SolveReport& best = ms.best;

    write_pair(ctx.out, best.pair);
    nlohmann::json starts = nlohmann::json::array();
    for (const auto& r : ms.reports) starts.push_back(to_json(r));
    write_json(ctx.out / "report.json", {{"model", model_json(ctx.config)}, {"best", to_json(best)},
                                         {"n_success", ms.n_success}, {"energy_scatter", ms.energy_scatter},
                                         {"starts", starts}});
    write_table_csv(ctx.out / "history.csv", history_table(best));
    ctx.log << "solve: E = " << std::setprecision(12) << best.energy << " (" << best.status << ", " << ms.n_success
            << "/" << so.n_starts << " starts converged, el = " << best.el_residual << ")\n";
    return kOk;
}

int cmd_scan_kappa(const Context& ctx) {
    const RunConfig& c = ctx.config;
    if (c.kappas.size() < 2) throw ConfigError("scan.kappas", "needs >= 2 entries");
    const Problem base = c.problem();
    warn_radial_weight(ctx, base);
    ScanOptions so = c.scan;
    so.solve = solve_options(ctx);
    so.solve.record_history = false;
    const double threshold = model_threshold(c.model, base.grid, so.solve.radial, lambda_options(ctx));
    KappaScan scan;
    try {
        scan = scan_kappa(c.kappas, base, so, threshold);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("scan.kappas", e.what());
    }

    nlohmann::json star;
    if (c.refine_iters > 0) {
        try {
            const KappaStar ks = estimate_kappa_star(scan, level_evaluator(base, so, threshold), c.refine_iters);
            scan.kappa_star_estimate = ks.estimate;
            star = {{"status", "bracketed"}, {"estimate", ks.estimate}, {"lo", ks.lo}, {"hi", ks.hi},
                    {"width", ks.width()}, {"relative_width", ks.width() / ks.estimate}, {"evaluations", ks.evaluations}};
        } catch (const NotBracketed& e) {
            star = {{"status", "not bracketed"}, {"detail", e.what()}};
        }
    } else {
        star = {{"status", "not requested"}};
    }

    Table t{{"kappa", "energy", "converged", "n_success", "threshold"}, {}};
    std::ofstream dat(ctx.out / "energy_vs_kappa.dat");
    dat << "# kappa energy threshold\n";
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < scan.kappas.size(); ++i) {
        t.rows.push_back({format_double(scan.kappas[i]), format_double(scan.energies[i]), scan.converged[i] ? "1" : "0",
                          std::to_string(scan.n_success[i]), format_double(threshold)});
        if (scan.converged[i]) dat << format_double(scan.kappas[i]) << ' ' << format_double(scan.energies[i]) << ' '
                                   << format_double(threshold) << '\n';
        nlohmann::json e = {{"kappa", scan.kappas[i]}, {"converged", bool(scan.converged[i])},
                            {"n_success", scan.n_success[i]}, {"scatter", scan.scatter[i]}, {"error", scan.errors[i]}};
        e["energy"] = scan.converged[i] ? nlohmann::json(scan.energies[i]) : nlohmann::json(nullptr);
        if (scan.converged[i]) e["best"] = to_json(scan.best[i]);
        entries.push_back(e);
    }
    write_table_csv(ctx.out / "scan.csv", t);
    write_json(ctx.out / "scan.json", {{"model", model_json(c)}, {"threshold", threshold}, {"entries", entries},
                                       {"monotonicity_violations", scan.monotonicity_violations},
                                       {"jump_constant", scan.jump_constant}, {"kappa_star", star}});
    ctx.log << "scan-kappa: threshold = " << std::setprecision(10) << threshold << ", "
            << scan.monotonicity_violations.size() << " monotonicity violations, kappa*: " << star.value("status", "")
            << "\n";
    return kOk;
}

int cmd_estimate_lambda(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const Grid2D grid = c.grid();
    std::vector<double> orders{c.model.s1};
    if (std::abs(c.model.s1 - c.model.s2) > kCriticalTolerance) orders.push_back(c.model.s2);
    std::vector<bool> modes;
    if (c.lambda_mode != LambdaMode::radial) modes.push_back(false);
    if (c.lambda_mode != LambdaMode::nonradial) modes.push_back(true);

    int code = kOk;
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
        std::optional<double> lam[2];
        for (bool radial : modes) {
            SobolevEstimate est(grid);
            try {
                est = estimate_lambda(orders[oi], radial, grid, lambda_options(ctx));
            } catch (const LambdaNotConverged& e) {
                ctx.log << "estimate-lambda: " << e.what() << "\n";
                est = e.best();
                code = kCheckFailed;
            }
            std::string stem = std::string("lambda_") + (radial ? "radial" : "nonradial");
            if (orders.size() > 1) stem += "_s" + std::to_string(oi + 1);
            write_json(ctx.out / (stem + ".json"), to_json(est));
            write_mgf1(ctx.out / (stem + "_minimizer.mgf1"), est.minimizer);
            lam[radial ? 1 : 0] = est.lambda;
            ctx.log << "estimate-lambda: s = " << orders[oi] << (radial ? " radial" : " non-radial") << " lambda = "
                    << std::setprecision(10) << est.lambda << " threshold = " << est.threshold << "\n";
        }
        if (lam[0] && lam[1] && *lam[1] < *lam[0] * (1.0 - 0.01)) {
            ctx.log << "estimate-lambda: radial lambda below the non-radial one beyond 1% slack\n";
            code = kCheckFailed;
        }
    }
    return code;
}

int cmd_check_pohozaev(const Context& ctx) {
    const RunConfig& c = ctx.config;
    const Problem prob = c.problem();
    if (prob.model.regime() != Regime::critical) {
        throw RegimeMismatch("pohozaev: identities need the critical regime s1 = s2, alpha + beta = 2_s (got " +
                             to_string(prob.model.regime()) + ")");
    }
    warn_radial_weight(ctx, prob);

    nlohmann::json summary = {{"model", model_json(c)}};
    std::optional<Pair> pair;
    if (!c.input_u.empty()) {
        Pair p(read_mgf1(c.input_u), read_mgf1(c.input_v));
        if (!p.u.grid().compatible(prob.grid) || !p.v.grid().compatible(prob.grid)) {
            throw ConfigError("input.u", "input fields do not match grid.*");
        }
        pair = std::move(p);
        summary["source"] = "input";
    } else {
        SolveOptions so = solve_options(ctx);
        so.record_history = false;
        try {
            const MultistartResult ms = multistart(prob, so);
            summary["solve"] = to_json(ms.best);
            pair = ms.best.pair;
            summary["source"] = "solve";
        } catch (const AllFailed& e) {
            summary["source"] = std::string("none: ") + e.what();
        }
    }
    if (pair) {
        const PohozaevReport r = pohozaev_residuals(*pair, prob);
        summary["residuals"] = to_json(r);
        ctx.log << std::setprecision(4) << "check-pohozaev: r61 = " << r.r61 << " r62 = " << r.r62
                << " r622 = " << r.r622 << "\n";
    }
    write_json(ctx.out / "pohozaev.json", summary);

    ProbeOptions po;
    po.solve = solve_options(ctx);
    po.solve.record_history = false;
    po.box_sensitivity = c.probe_box_sensitivity;
    const NonexistenceReport probe = nonexistence_probe(prob, po);
    write_json(ctx.out / "probe.json", to_json(probe));
    Table t{{"start_index", "converged", "energy", "mass", "gap", "inconsistent", "boundary_mass", "r61", "r62", "r622"}, {}};
    for (const auto& cand : probe.candidates) {
        t.rows.push_back({std::to_string(cand.start_index), cand.converged ? "1" : "0", format_double(cand.energy),
                          format_double(cand.mass), format_double(cand.gap), cand.inconsistent ? "1" : "0",
                          format_double(cand.boundary_mass), format_double(cand.pohozaev.r61),
                          format_double(cand.pohozaev.r62), format_double(cand.pohozaev.r622)});
    }
    write_table_csv(ctx.out / "probe.csv", t);
    ctx.log << "check-pohozaev: non-existence gate " << probe.gate << ", " << probe.candidates.size()
            << " candidates" << (probe.all_inconsistent ? ", all inconsistent with existence on R^2" : "") << "\n";
    return kOk;
}

int cmd_verify_operators(const Context& ctx) {
    OperatorBatteryOptions bo;
    bo.seed = ctx.config.seed;
    const auto results = operator_battery(bo);
    bool ok = true;
    nlohmann::json arr = nlohmann::json::array();
    Table t{{"check", "value", "tolerance", "pass"}, {}};
    for (const auto& r : results) {
        ok = ok && r.pass;
        arr.push_back(to_json(r));
        t.rows.push_back({r.name, format_double(r.value), format_double(r.tolerance), r.pass ? "1" : "0"});
        ctx.log << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(58) << r.name << std::right
                << std::setprecision(3) << std::scientific << r.value << " <= " << r.tolerance << std::defaultfloat
                << "\n";
    }
    write_json(ctx.out / "verify.json", {{"checks", arr}, {"all_pass", ok}});
    write_table_csv(ctx.out / "verify.csv", t);
    return ok ? kOk : kCheckFailed;
}

}  // namespace mixsch::cli
