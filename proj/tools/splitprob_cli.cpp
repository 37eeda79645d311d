// Command-line front end: analytic sweeps, figure reproduction, Monte-Carlo
// estimation and the analytic-vs-MC validation harness.
//
// Exit status: 0 success (and validation pass), 1 validation failure,
// 2 configuration error.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "splitprob/bayes.hpp"
#include "splitprob/figures.hpp"
#include "splitprob/io.hpp"
#include "splitprob/mc.hpp"
#include "splitprob/models.hpp"
#include "splitprob/ratchet.hpp"
#include "splitprob/resetting.hpp"
#include "splitprob/rnt.hpp"
#include "splitprob/spectral.hpp"
#include "splitprob/validate.hpp"

using json = nlohmann::json;
using namespace splitprob;

namespace {

struct CliOverrides {
    std::string out_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<double> dt;
    std::optional<int> threads;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error in ") + path + ": " + e.what());
    }
    return cfg;
}

void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double need_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    if (!obj[key].is_number()) throw ConfigError("key '" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

Permeability parse_kappa(const json& params, const std::string& key) {
    if (!params.contains(key)) return Permeability::infinite();
    const auto& v = params[key];
    if (v.is_string() && v.get<std::string>() == "inf") return Permeability::infinite();
    if (v.is_number()) return Permeability::finite(v.get<double>());
    throw ConfigError("key '" + key + "' must be a number or \"inf\"");
}

resetting::ResetDistribution parse_reset_dist(const json& obj) {
    require_keys(obj, {"type", "x_r", "lo", "hi", "points", "weights"}, "params.reset");
    const std::string type = obj.value("type", "delta");
    if (type == "delta") return resetting::ResetDistribution::delta(need_number(obj, "x_r", "reset"));
    if (type == "uniform")
        return resetting::ResetDistribution::uniform(need_number(obj, "lo", "reset"),
                                                     need_number(obj, "hi", "reset"));
    if (type == "discrete") {
        if (!obj.contains("points") || !obj.contains("weights"))
            throw ConfigError("discrete reset distribution needs 'points' and 'weights'");
        return resetting::ResetDistribution::discrete(obj["points"].get<std::vector<double>>(),
                                                      obj["weights"].get<std::vector<double>>());
    }
    throw ConfigError("unknown reset distribution type: " + type);
}

struct RunConfig {
    std::string model;
    json params;
    std::string y0;
    double x0 = 0.0;
    std::string sweep_variable = "x0";
    std::vector<double> sweep_grid;
    mc::SimConfig mc_config;
    std::string out_path = "out.csv";
    std::string format = "csv";
    json resolved;  // echoed into output headers
};

RunConfig parse_run_config(const json& cfg, const CliOverrides& cli) {
    require_keys(cfg, {"model", "params", "y0", "x0", "sweep", "mc", "output"}, "config");
    RunConfig rc;
    if (!cfg.contains("model")) throw ConfigError("missing key 'model' in config");
    rc.model = cfg["model"].get<std::string>();
    const std::vector<std::string> known = {"ripening", "ou", "rnt", "ratchet", "resetting"};
    if (std::find(known.begin(), known.end(), rc.model) == known.end())
        throw ConfigError("unknown model: " + rc.model);
    rc.params = cfg.value("params", json::object());
    rc.y0 = cfg.value("y0", "");
    rc.x0 = cfg.value("x0", 0.0);

    if (cfg.contains("sweep")) {
        const auto& sw = cfg["sweep"];
        require_keys(sw, {"variable", "from", "to", "points", "values"}, "config.sweep");
        rc.sweep_variable = sw.value("variable", "x0");
        if (sw.contains("values")) {
            rc.sweep_grid = sw["values"].get<std::vector<double>>();
        } else {
            const double from = need_number(sw, "from", "sweep");
            const double to = need_number(sw, "to", "sweep");
            const long points = long(sw.value("points", 101));
            if (points < 2) throw ConfigError("sweep needs at least 2 points");
            for (long i = 0; i < points; ++i)
                rc.sweep_grid.push_back(from + (to - from) * double(i) / double(points - 1));
        }
    }

    if (cfg.contains("mc")) {
        const auto& m = cfg["mc"];
        require_keys(m, {"trials", "dt", "seed", "threads", "max_steps", "exact_clocks"},
                     "config.mc");
        rc.mc_config.n_trials = m.value("trials", rc.mc_config.n_trials);
        rc.mc_config.dt = m.value("dt", rc.mc_config.dt);
        rc.mc_config.seed = m.value("seed", rc.mc_config.seed);
        rc.mc_config.n_threads = m.value("threads", rc.mc_config.n_threads);
        rc.mc_config.max_steps = m.value("max_steps", rc.mc_config.max_steps);
        rc.mc_config.exact_clocks = m.value("exact_clocks", rc.mc_config.exact_clocks);
    }
    if (cfg.contains("output")) {
        require_keys(cfg["output"], {"path", "format"}, "config.output");
        rc.out_path = cfg["output"].value("path", rc.out_path);
        rc.format = cfg["output"].value("format", rc.format);
    }

    // CLI flags override file values
    if (!cli.out_path.empty()) rc.out_path = cli.out_path;
    if (!cli.format.empty()) rc.format = cli.format;
    if (cli.seed) rc.mc_config.seed = *cli.seed;
    if (cli.trials) rc.mc_config.n_trials = *cli.trials;
    if (cli.dt) rc.mc_config.dt = *cli.dt;
    if (cli.threads) rc.mc_config.n_threads = *cli.threads;
    if (rc.format != "csv" && rc.format != "json")
        throw ConfigError("format must be 'csv' or 'json'");

    rc.resolved = {{"model", rc.model},
                   {"params", rc.params},
                   {"y0", rc.y0},
                   {"x0", rc.x0},
                   {"sweep", {{"variable", rc.sweep_variable}, {"points", rc.sweep_grid.size()}}},
                   {"mc",
                    {{"trials", rc.mc_config.n_trials},
                     {"dt", rc.mc_config.dt},
                     {"seed", rc.mc_config.seed}}}};
    return rc;
}

void write_sheet(const io::Sheet& sheet, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    io::write_csv(out, sheet);
    std::cerr << "wrote " << path << "\n";
}

// ---- compute: analytic sweeps ----

io::Sheet compute_ripening(const RunConfig& rc) {
    require_keys(rc.params, {"r", "s", "D", "L", "kappa_left", "kappa_right"}, "params");
    const spectral::RipeningParams p(need_number(rc.params, "r", "params"),
                                     need_number(rc.params, "s", "params"));
    const double D = need_number(rc.params, "D", "params");
    const double L = need_number(rc.params, "L", "params");
    const IntervalSpec iv(L / 2.0, parse_kappa(rc.params, "kappa_left"),
                          parse_kappa(rc.params, "kappa_right"));
    const auto es = spectral::ripening_eigensystem(p);
    const Eigen::Index y0 = es.hidden_space.index_of(rc.y0.empty() ? "U" : rc.y0);
    if (rc.sweep_variable != "x0") throw ConfigError("ripening supports sweep over x0 only");

    io::Sheet sheet;
    sheet.columns = {"x0", "pi_left_U", "pi_left_R", "pi_left_S",
                     "pi_right_U", "pi_right_R", "pi_right_S"};
    for (double x0 : rc.sweep_grid) {
        const auto t = spectral::decoupled_table(es, D, iv, x0, y0);
        std::vector<std::string> row{io::format_double(x0)};
        for (auto side : {ExitSide::Left, ExitSide::Right})
            for (Eigen::Index j = 0; j < 3; ++j)
                row.push_back(io::format_double(t.side(side)(j)));
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

io::Sheet compute_ou(const RunConfig& rc) {
    require_keys(rc.params, {"mu", "D_Y", "D", "L", "n_modes", "kappa_left", "kappa_right"},
                 "params");
    const spectral::OUParams p(need_number(rc.params, "mu", "params"),
                               need_number(rc.params, "D_Y", "params"));
    const double D = need_number(rc.params, "D", "params");
    const double L = need_number(rc.params, "L", "params");
    const IntervalSpec iv(L / 2.0, parse_kappa(rc.params, "kappa_left"),
                          parse_kappa(rc.params, "kappa_right"));
    const int n_modes = int(rc.params.value("n_modes", 40));
    const double y0 = rc.y0.empty() ? 0.0 : std::stod(rc.y0);
    const auto grid = spectral::ou_default_grid(p);
    if (rc.sweep_variable != "x0") throw ConfigError("ou supports sweep over x0 only");

    io::Sheet sheet;
    sheet.columns = {"x0", "p_left", "p_right", "post_mean_left", "post_var_left"};
    for (double x0 : rc.sweep_grid) {
        const auto t = spectral::ou_table(p, D, iv, x0, y0, n_modes, grid);
        const double pl = t.side_marginal(ExitSide::Left);
        const Posterior post = condition_on_exit(t, ExitSide::Left);
        sheet.rows.push_back({io::format_double(x0), io::format_double(pl),
                              io::format_double(t.side_marginal(ExitSide::Right)),
                              io::format_double(post.mean()),
                              io::format_double(post.variance())});
    }
    return sheet;
}

io::Sheet compute_rnt(const RunConfig& rc) {
    require_keys(rc.params, {"nu", "alpha", "D", "L"}, "params");
    auto params_at = [&](double L) {
        return rnt::RnTParams(need_number(rc.params, "nu", "params"),
                              need_number(rc.params, "alpha", "params"),
                              need_number(rc.params, "D", "params"), L);
    };
    const double L0 = need_number(rc.params, "L", "params");

    io::Sheet sheet;
    if (rc.sweep_variable == "x0") {
        const auto p = params_at(L0);
        sheet.columns = {"x0",
                         "pi_minus_from_minus", "pi_minus_from_plus",
                         "pi_plus_from_minus", "pi_plus_from_plus",
                         "pi_sum_from_minus", "pi_sum_from_plus"};
        for (double x0 : rc.sweep_grid) {
            const double mm = rnt::joint(p, x0, -1, ExitSide::Left, -1);
            const double mp = rnt::joint(p, x0, +1, ExitSide::Left, -1);
            const double pm = rnt::joint(p, x0, -1, ExitSide::Left, +1);
            const double pp = rnt::joint(p, x0, +1, ExitSide::Left, +1);
            sheet.rows.push_back({io::format_double(x0), io::format_double(mm),
                                  io::format_double(mp), io::format_double(pm),
                                  io::format_double(pp), io::format_double(mm + pm),
                                  io::format_double(mp + pp)});
        }
    } else if (rc.sweep_variable == "L") {
        sheet.columns = {"L", "cond_minus_given_left"};
        for (double L : rc.sweep_grid) {
            const auto p = params_at(L);
            sheet.rows.push_back({io::format_double(L),
                                  io::format_double(rnt::conditional(p, rc.x0, {0.5, 0.5},
                                                                     ExitSide::Left, -1))});
        }
    } else {
        throw ConfigError("rnt supports sweep over x0 or L");
    }
    return sheet;
}

io::Sheet compute_ratchet(const RunConfig& rc) {
    require_keys(rc.params, {"h", "a", "r", "D", "L"}, "params");
    auto params_at = [&](double h) {
        return ratchet::RatchetParams(h, need_number(rc.params, "a", "params"),
                                      need_number(rc.params, "r", "params"),
                                      need_number(rc.params, "D", "params"),
                                      need_number(rc.params, "L", "params"));
    };
    const bool y0_on = rc.y0.empty() ? true : rc.y0 == "on";

    io::Sheet sheet;
    if (rc.sweep_variable == "x0") {
        const auto p = params_at(need_number(rc.params, "h", "params"));
        sheet.columns = {"x0", "pi_left_on", "pi_left_off", "pi_right_on", "pi_right_off"};
        for (double x0 : rc.sweep_grid) {
            const auto t = ratchet::table(p, x0, y0_on);
            sheet.rows.push_back({io::format_double(x0), io::format_double(t.left(0)),
                                  io::format_double(t.left(1)), io::format_double(t.right(0)),
                                  io::format_double(t.right(1))});
        }
    } else if (rc.sweep_variable == "h") {
        sheet.columns = {"h", "cond_on_given_left"};
        for (double h : rc.sweep_grid) {
            const auto p = params_at(h);
            sheet.rows.push_back({io::format_double(h),
                                  io::format_double(ratchet::conditional(
                                      p, rc.x0, {0.5, 0.5}, ExitSide::Left, true))});
        }
    } else {
        throw ConfigError("ratchet supports sweep over x0 or h");
    }
    return sheet;
}

io::Sheet compute_resetting(const RunConfig& rc) {
    require_keys(rc.params, {"D", "r", "L", "reset", "n_max"}, "params");
    if (!rc.params.contains("reset")) throw ConfigError("missing key 'reset' in params");
    const resetting::ResetParams p(need_number(rc.params, "D", "params"),
                                   need_number(rc.params, "r", "params"),
                                   need_number(rc.params, "L", "params"),
                                   parse_reset_dist(rc.params["reset"]));
    if (rc.sweep_variable != "x0") throw ConfigError("resetting supports sweep over x0 only");

    io::Sheet sheet;
    sheet.columns = {"x0", "pi0_left", "pi0_right", "piR_left", "piR_right", "p_reset"};
    for (double x0 : rc.sweep_grid) {
        sheet.rows.push_back({io::format_double(x0),
                              io::format_double(resetting::pi0(p, x0, ExitSide::Left)),
                              io::format_double(resetting::pi0(p, x0, ExitSide::Right)),
                              io::format_double(resetting::piR(p, x0, ExitSide::Left)),
                              io::format_double(resetting::piR(p, x0, ExitSide::Right)),
                              io::format_double(resetting::p_reset(p, x0))});
    }
    return sheet;
}

int cmd_compute(const json& cfg, const CliOverrides& cli) {
    RunConfig rc = parse_run_config(cfg, cli);
    io::Sheet sheet;
    if (rc.model == "ripening") sheet = compute_ripening(rc);
    else if (rc.model == "ou") sheet = compute_ou(rc);
    else if (rc.model == "rnt") sheet = compute_rnt(rc);
    else if (rc.model == "ratchet") sheet = compute_ratchet(rc);
    else sheet = compute_resetting(rc);
    sheet.comments.insert(sheet.comments.begin(),
                          {"splitprob v0.1.0", "config: " + rc.resolved.dump()});
    write_sheet(sheet, rc.out_path);
    return 0;
}

// ---- simulate: Monte-Carlo estimation ----

int cmd_simulate(const json& cfg, const CliOverrides& cli) {
    RunConfig rc = parse_run_config(cfg, cli);
    mc::EstimateTable est;
    if (rc.model == "ripening") {
        const spectral::RipeningParams p(need_number(rc.params, "r", "params"),
                                         need_number(rc.params, "s", "params"));
        const IntervalSpec iv(need_number(rc.params, "L", "params") / 2.0,
                              parse_kappa(rc.params, "kappa_left"),
                              parse_kappa(rc.params, "kappa_right"));
        const auto es = spectral::ripening_eigensystem(p);
        est = mc::simulate_ripening(p, need_number(rc.params, "D", "params"), iv, rc.x0,
                                    int(es.hidden_space.index_of(rc.y0.empty() ? "U" : rc.y0)),
                                    rc.mc_config);
    } else if (rc.model == "ou") {
        const spectral::OUParams p(need_number(rc.params, "mu", "params"),
                                   need_number(rc.params, "D_Y", "params"));
        const IntervalSpec iv(need_number(rc.params, "L", "params") / 2.0,
                              parse_kappa(rc.params, "kappa_left"),
                              parse_kappa(rc.params, "kappa_right"));
        const double y0 = rc.y0.empty() ? 0.0 : std::stod(rc.y0);
        est = mc::simulate_ou(p, need_number(rc.params, "D", "params"), iv, rc.x0, y0,
                              -6.0 * p.ell(), 6.0 * p.ell(), 48, rc.mc_config);
    } else if (rc.model == "rnt") {
        const rnt::RnTParams p(need_number(rc.params, "nu", "params"),
                               need_number(rc.params, "alpha", "params"),
                               need_number(rc.params, "D", "params"),
                               need_number(rc.params, "L", "params"));
        est = mc::simulate_rnt(p, rc.x0, rc.y0 == "-1" ? -1 : +1, rc.mc_config);
    } else if (rc.model == "ratchet") {
        const ratchet::RatchetParams p(
            need_number(rc.params, "h", "params"), need_number(rc.params, "a", "params"),
            need_number(rc.params, "r", "params"), need_number(rc.params, "D", "params"),
            need_number(rc.params, "L", "params"));
        est = mc::simulate_ratchet(p, rc.x0, rc.y0.empty() || rc.y0 == "on", rc.mc_config);
    } else {
        if (!rc.params.contains("reset")) throw ConfigError("missing key 'reset' in params");
        const resetting::ResetParams p(need_number(rc.params, "D", "params"),
                                       need_number(rc.params, "r", "params"),
                                       need_number(rc.params, "L", "params"),
                                       parse_reset_dist(rc.params["reset"]));
        est = mc::simulate_resetting(p, rc.x0, long(rc.params.value("n_max", 50)), rc.mc_config);
    }

    if (rc.format == "json") {
        std::ofstream out(rc.out_path);
        if (!out) throw Error("cannot open output file: " + rc.out_path);
        out << io::estimate_json(est) << "\n";
        std::cerr << "wrote " << rc.out_path << "\n";
    } else {
        io::Sheet sheet = io::estimate_sheet(est);
        sheet.comments.insert(sheet.comments.begin(),
                              {"splitprob v0.1.0", "config: " + rc.resolved.dump()});
        write_sheet(sheet, rc.out_path);
    }
    return 0;
}

// ---- validate ----

int cmd_validate(const std::string& model, const CliOverrides& cli) {
    validate::Budget budget;
    budget.trials = 20000;  // default desk budget; the reference protocol is 1e5
    if (cli.trials) budget.trials = *cli.trials;
    if (cli.dt) budget.dt = *cli.dt;
    if (cli.seed) budget.seed = *cli.seed;
    if (cli.threads) budget.threads = *cli.threads;

    std::vector<validate::Report> reports;
    if (model == "ripening" || model == "all") reports.push_back(validate::validate_ripening(budget));
    if (model == "rnt" || model == "all") reports.push_back(validate::validate_rnt(budget));
    if (model == "ratchet" || model == "all") reports.push_back(validate::validate_ratchet(budget));
    if (model == "resetting" || model == "all")
        reports.push_back(validate::validate_resetting(budget));
    if (reports.empty()) throw ConfigError("unknown model for validate: " + model);

    bool all_passed = true;
    json doc = json::array();
    for (const auto& r : reports) {
        std::cout << validate::report_summary(r) << "\n";
        doc.push_back(json::parse(validate::report_json(r)));
        all_passed = all_passed && r.passed();
    }
    if (!cli.out_path.empty()) {
        std::ofstream out(cli.out_path);
        out << doc.dump(2) << "\n";
        std::cerr << "wrote " << cli.out_path << "\n";
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"splitting probabilities and hidden-state inference for drift-diffusive processes"};
    app.require_subcommand(1);

    CliOverrides cli;
    std::string config_path, figure_id, validate_model = "all";
    std::uint64_t seed_flag = 0;
    long trials_flag = 0;
    double dt_flag = 0.0;
    int threads_flag = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cli.out_path, "output path");
        sub->add_option("--format", cli.format, "csv or json");
        sub->add_option("--seed", seed_flag, "RNG seed");
        sub->add_option("--trials", trials_flag, "Monte-Carlo trials");
        sub->add_option("--dt", dt_flag, "Monte-Carlo timestep");
        sub->add_option("--threads", threads_flag, "worker threads (0 = hardware)");
    };

    auto* compute = app.add_subcommand("compute", "analytic sweep from a config file");
    compute->add_option("--config", config_path, "JSON config")->required();
    add_common(compute);

    auto* figure = app.add_subcommand("figure", "emit a plot-ready CSV from the figure catalogue");
    figure->add_option("id", figure_id, "figure id (fig1a..fig8b)")->required();
    add_common(figure);

    auto* validate_cmd = app.add_subcommand("validate", "analytic-vs-MC agreement report");
    validate_cmd->add_option("--model", validate_model, "ripening|rnt|ratchet|resetting|all");
    add_common(validate_cmd);

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimation from a config file");
    simulate->add_option("--config", config_path, "JSON config")->required();
    add_common(simulate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    // bound flag variables are only assigned by the parsed subcommand
    for (CLI::App* sub : app.get_subcommands()) {
        if (sub->count("--seed")) cli.seed = seed_flag;
        if (sub->count("--trials")) cli.trials = trials_flag;
        if (sub->count("--dt")) cli.dt = dt_flag;
        if (sub->count("--threads")) cli.threads = threads_flag;
    }

    try {
        if (compute->parsed()) return cmd_compute(load_config(config_path), cli);
        if (simulate->parsed()) return cmd_simulate(load_config(config_path), cli);
        if (validate_cmd->parsed()) return cmd_validate(validate_model, cli);
        if (figure->parsed()) {
            figures::FigureOptions opt;
            if (cli.trials) opt.trials = *cli.trials;
            if (cli.dt) opt.dt = *cli.dt;
            if (cli.seed) opt.seed = *cli.seed;
            if (cli.threads) opt.threads = *cli.threads;
            const auto sheet = figures::make_figure(figure_id, opt);
            write_sheet(sheet, cli.out_path.empty() ? figure_id + ".csv" : cli.out_path);
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownFigure& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
