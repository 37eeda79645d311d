#include "splitprob/figures.hpp"

#include <cmath>

#include "splitprob/mc.hpp"
#include "splitprob/ratchet.hpp"
#include "splitprob/resetting.hpp"
#include "splitprob/rnt.hpp"
#include "splitprob/spectral.hpp"

namespace splitprob::figures {

using io::format_double;
using io::Sheet;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[size_t(i)] = lo + (hi - lo) * i / double(n - 1);
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[size_t(i)] = lo * std::pow(hi / lo, i / double(n - 1));
    return v;
}

mc::SimConfig sim_config(const FigureOptions& opt) {
    mc::SimConfig cfg;
    cfg.dt = opt.dt;
    cfg.n_trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.n_threads = opt.threads;
    return cfg;
}

void mc_comment(Sheet& sheet, const FigureOptions& opt) {
    if (opt.trials <= 0) {
        sheet.add_comment("mc overlay: disabled");
    } else {
        sheet.add_comment("mc overlay: trials=" + std::to_string(opt.trials) +
                          " dt=" + format_double(opt.dt) + " seed=" + std::to_string(opt.seed));
    }
}

// ---- fig1: ripening-spoiling joint / conditional vs x for several kappa ----

Sheet fig1(bool conditional) {
    const spectral::RipeningParams p(1.0, 10.0);
    const auto es = spectral::ripening_eigensystem(p);
    const double D = 0.3;
    const std::vector<std::pair<std::string, Permeability>> kappas = {
        {"kappa0", Permeability::finite(0.0)},
        {"kappa1", Permeability::finite(1.0)},
        {"kappa10", Permeability::finite(10.0)},
        {"kappainf", Permeability::infinite()},
    };
    Sheet sheet;
    sheet.add_comment("ripening-spoiling: exit left in state R from initial state U");
    sheet.add_comment("r=1 s=10 D=0.3 L=1; right-boundary permeability per column");
    sheet.columns = {"x"};
    for (const auto& [name, kappa] : kappas)
        sheet.columns.push_back((conditional ? "cond_" : "joint_") + name);
    for (double x : linspace(-0.5, 0.5, 201)) {
        std::vector<std::string> row{format_double(x)};
        for (const auto& [name, kappa] : kappas) {
            const IntervalSpec iv(0.5, Permeability::infinite(), kappa);
            const double joint = spectral::decoupled_joint(es, D, iv, x, 0, ExitSide::Left, 1);
            if (!conditional) {
                row.push_back(format_double(joint));
            } else {
                double marg = 0.0;
                for (Eigen::Index ye = 0; ye < 3; ++ye)
                    marg += spectral::decoupled_joint(es, D, iv, x, 0, ExitSide::Left, ye);
                row.push_back(format_double(marg > 0.0 ? joint / marg : 0.0));
            }
        }
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

// ---- fig2: OU conditional exit-state density for several L ----

Sheet fig2() {
    const spectral::OUParams p(1.0, 1.0);
    const double D = 1.0;
    const std::vector<double> Ls = {0.5, 2.0, 8.0};
    Sheet sheet;
    sheet.add_comment("OU hidden state: conditional exit density given left exit");
    sheet.add_comment("D=1 D_Y=1 mu=1 x0=0 y0=1; one column per interval length L");
    sheet.columns = {"y_exit"};
    for (double L : Ls) sheet.columns.push_back("density_L" + format_double(L));

    const auto y_grid = linspace(-4.0, 4.0, 201);
    std::vector<std::vector<double>> cols;
    for (double L : Ls) {
        const auto iv = IntervalSpec::fully_permeable(L);
        // mode count for ~1e-6 kernel decay: sqrt(n) L/2 >= 14
        const int n_modes = std::max(60, int(std::ceil(784.0 / (L * L) * 4.0)));
        const double marginal = spectral::brownian_marginal(iv, 0.0, ExitSide::Left);
        std::vector<double> col;
        col.reserve(y_grid.size());
        for (double y : y_grid)
            col.push_back(spectral::ou_joint(p, D, iv, 0.0, 1.0, ExitSide::Left, y, n_modes) /
                          marginal);
        cols.push_back(std::move(col));
    }
    for (size_t i = 0; i < y_grid.size(); ++i) {
        std::vector<std::string> row{format_double(y_grid[i])};
        for (const auto& col : cols) row.push_back(format_double(col[i]));
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

// ---- fig3: RnT joint splitting probabilities vs x0 ----

Sheet fig3(int y_exit, const FigureOptions& opt) {
    const rnt::RnTParams p(1.0, 2.0, 0.1, 1.0);
    Sheet sheet;
    const std::string what = y_exit == 0 ? "either state" : (y_exit < 0 ? "left mover" : "right mover");
    sheet.add_comment("RnT left-exit probability, exit state: " + what);
    sheet.add_comment("nu=1 alpha=2 D=0.1 L=1");
    mc_comment(sheet, opt);
    sheet.columns = {"x0", "from_plus", "from_minus", "from_mixed"};
    if (opt.trials > 0) {
        sheet.columns.insert(sheet.columns.end(),
                             {"mc_from_plus", "mc_se_plus", "mc_from_minus", "mc_se_minus"});
    }

    auto analytic = [&](double x0, int y0) {
        if (y_exit == 0)
            return rnt::joint(p, x0, y0, ExitSide::Left, -1) +
                   rnt::joint(p, x0, y0, ExitSide::Left, +1);
        return rnt::joint(p, x0, y0, ExitSide::Left, y_exit);
    };
    auto estimate = [&](const mc::EstimateTable& t) {
        if (y_exit == 0) return t.p_hat(ExitSide::Left, 0) + t.p_hat(ExitSide::Left, 1);
        return t.p_hat(ExitSide::Left, y_exit < 0 ? 0 : 1);
    };

    const auto xs = linspace(-0.5, 0.5, 101);
    for (size_t i = 0; i < xs.size(); ++i) {
        const double x0 = xs[i];
        std::vector<std::string> row{format_double(x0), format_double(analytic(x0, +1)),
                                     format_double(analytic(x0, -1)),
                                     format_double(0.5 * (analytic(x0, +1) + analytic(x0, -1)))};
        if (opt.trials > 0) {
            if (i % 10 == 0) {  // markers on a coarser grid
                mc::SimConfig cfg = sim_config(opt);
                cfg.seed = opt.seed + i;
                const auto tp = mc::simulate_rnt(p, x0, +1, cfg);
                cfg.seed = opt.seed + 7919 + i;
                const auto tm = mc::simulate_rnt(p, x0, -1, cfg);
                const double se = std::sqrt(0.25 / double(opt.trials));
                row.insert(row.end(),
                           {format_double(estimate(tp)), format_double(se),
                            format_double(estimate(tm)), format_double(se)});
            } else {
                row.insert(row.end(), {"", "", "", ""});
            }
        }
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

// ---- fig4a: RnT conditional vs L, grouped by Peclet number ----

Sheet fig4a() {
    Sheet sheet;
    sheet.add_comment("RnT posterior P(left mover | left exit) vs L, x0=0, symmetric prior");
    sheet.add_comment("three parameterizations per Peclet number: (a) alpha=D=1 nu=sqrt(Pe), "
                      "(b) nu=D=1 alpha=1/Pe, (c) nu=alpha=1 D=1/Pe");
    sheet.columns = {"L"};
    const std::vector<double> pes = {0.1, 1.0, 10.0};
    for (double pe : pes)
        for (const char* tag : {"a", "b", "c"})
            sheet.columns.push_back("pe" + format_double(pe) + "_" + tag);
    for (double L : logspace(0.05, 100.0, 61)) {
        std::vector<std::string> row{format_double(L)};
        for (double pe : pes) {
            const rnt::RnTParams pa(std::sqrt(pe), 1.0, 1.0, L);
            const rnt::RnTParams pb(1.0, 1.0 / pe, 1.0, L);
            const rnt::RnTParams pc(1.0, 1.0, 1.0 / pe, L);
            for (const auto& p : {pa, pb, pc})
                row.push_back(format_double(
                    rnt::conditional(p, 0.0, {0.5, 0.5}, ExitSide::Left, -1)));
        }
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

Sheet fig4b() {
    Sheet sheet;
    sheet.add_comment("RnT posterior asymptote (L -> infinity) vs Peclet number");
    sheet.columns = {"Pe", "asymptote"};
    for (double pe : logspace(1e-2, 1e3, 20))
        sheet.rows.push_back({format_double(pe), format_double(rnt::asymptote(pe))});
    return sheet;
}

// ---- fig5: ratchet joint probabilities vs x (long format over h, a) ----

Sheet fig5(const FigureOptions& opt) {
    Sheet sheet;
    sheet.add_comment("intermittent ratchet: left-exit joint probabilities vs x");
    sheet.add_comment("L=4 r=1 D=1; barrier heights h in {1,2,-1,-2}, apex a in {-1,0,1}");
    mc_comment(sheet, opt);
    sheet.columns = {"h", "a", "y0", "x", "pi_exit_on", "pi_exit_off"};
    if (opt.trials > 0)
        sheet.columns.insert(sheet.columns.end(),
                             {"mc_exit_on", "mc_se_on", "mc_exit_off", "mc_se_off"});

    int seed_bump = 0;
    for (double h : {1.0, 2.0, -1.0, -2.0}) {
        for (double a : {-1.0, 0.0, 1.0}) {
            const ratchet::RatchetParams p(h, a, 1.0, 1.0, 4.0);
            const auto sol = ratchet::solve(p);
            for (const bool y0_on : {true, false}) {
                const char* y0 = y0_on ? "on" : "off";
                const auto xs = linspace(-2.0, 2.0, 81);
                for (size_t i = 0; i < xs.size(); ++i) {
                    const double x = xs[i];
                    std::vector<std::string> row{format_double(h), format_double(a), y0,
                                                 format_double(x),
                                                 format_double(ratchet::joint(sol, x, y0_on, true)),
                                                 format_double(ratchet::joint(sol, x, y0_on, false))};
                    if (opt.trials > 0) {
                        if (i % 10 == 0 && i > 0 && i < 80) {  // 7 interior marker points
                            mc::SimConfig cfg = sim_config(opt);
                            cfg.seed = opt.seed + 100000 + seed_bump++;
                            const auto est = mc::simulate_ratchet(p, x, y0_on, cfg);
                            row.insert(row.end(),
                                       {format_double(est.p_hat(ExitSide::Left, 0)),
                                        format_double(est.std_err(ExitSide::Left, 0)),
                                        format_double(est.p_hat(ExitSide::Left, 1)),
                                        format_double(est.std_err(ExitSide::Left, 1))});
                        } else {
                            row.insert(row.end(), {"", "", "", ""});
                        }
                    }
                    sheet.rows.push_back(std::move(row));
                }
            }
        }
    }
    return sheet;
}

// ---- fig6: ratchet conditional vs h for several apex locations ----

Sheet fig6() {
    Sheet sheet;
    sheet.add_comment("intermittent ratchet: P(on | left exit) vs barrier height h");
    sheet.add_comment("L=4 r=1 D=1 x0=0, symmetric prior; one column per apex location");
    sheet.columns = {"h", "cond_a_m1", "cond_a_0", "cond_a_p1"};
    for (double h : linspace(-3.0, 3.0, 61)) {
        std::vector<std::string> row{format_double(h)};
        for (double a : {-1.0, 0.0, 1.0}) {
            const ratchet::RatchetParams p(h, a, 1.0, 1.0, 4.0);
            row.push_back(
                format_double(ratchet::conditional(p, 0.0, {0.5, 0.5}, ExitSide::Left, true)));
        }
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

// ---- fig7: resetting pi0 and piR vs x ----

Sheet fig7(const FigureOptions& opt) {
    const resetting::ResetParams p(1.0, 2.0, 1.0, resetting::ResetDistribution::delta(0.2));
    Sheet sheet;
    sheet.add_comment("resetting: exit with no reset (pi0) or at least one reset (piR)");
    sheet.add_comment("D=1 r=2 L=1 x_r=0.2 (delta reset distribution)");
    mc_comment(sheet, opt);
    sheet.columns = {"x", "pi0_left", "pi0_right", "piR_left", "piR_right", "p_reset"};
    if (opt.trials > 0)
        sheet.columns.insert(sheet.columns.end(), {"mc_pi0_left", "mc_pi0_right",
                                                   "mc_piR_left", "mc_piR_right", "mc_se"});
    const auto xs = linspace(-0.5, 0.5, 101);
    for (size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        std::vector<std::string> row{format_double(x),
                                     format_double(resetting::pi0(p, x, ExitSide::Left)),
                                     format_double(resetting::pi0(p, x, ExitSide::Right)),
                                     format_double(resetting::piR(p, x, ExitSide::Left)),
                                     format_double(resetting::piR(p, x, ExitSide::Right)),
                                     format_double(resetting::p_reset(p, x))};
        if (opt.trials > 0) {
            if (i % 10 == 0) {
                mc::SimConfig cfg = sim_config(opt);
                cfg.seed = opt.seed + 200000 + i;
                const auto est = mc::simulate_resetting(p, x, 1, cfg);
                // outcome 0 = no reset; outcomes {1, R} pooled = at least one
                auto pooled = [&](ExitSide s) {
                    return est.p_hat(s, 1) + est.p_hat(s, 2);
                };
                row.insert(row.end(),
                           {format_double(est.p_hat(ExitSide::Left, 0)),
                            format_double(est.p_hat(ExitSide::Right, 0)),
                            format_double(pooled(ExitSide::Left)),
                            format_double(pooled(ExitSide::Right)),
                            format_double(std::sqrt(0.25 / double(opt.trials)))});
            } else {
                row.insert(row.end(), {"", "", "", "", ""});
            }
        }
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

// ---- fig8: posterior over reset counts ----

Sheet fig8a() {
    Sheet sheet;
    sheet.add_comment("resetting: P(n | left exit) vs n for several alpha = sqrt(r/D)");
    sheet.add_comment("L=5 x_r=0.2 x0=0 D=1");
    sheet.columns = {"n", "cond_alpha_0.5", "cond_alpha_1", "cond_alpha_2"};
    for (long n = 0; n <= 15; ++n) {
        std::vector<std::string> row{std::to_string(n)};
        for (double alpha : {0.5, 1.0, 2.0}) {
            const resetting::ResetParams p(1.0, alpha * alpha, 5.0,
                                           resetting::ResetDistribution::delta(0.2));
            row.push_back(format_double(resetting::conditional_n(p, 0.0, ExitSide::Left, n)));
        }
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

Sheet fig8b() {
    Sheet sheet;
    sheet.add_comment("resetting: P(n | left exit) vs alpha for n = 0..3");
    sheet.add_comment("L=5 x_r=0.2 x0=0 D=1");
    sheet.columns = {"alpha", "cond_n0", "cond_n1", "cond_n2", "cond_n3"};
    for (double alpha : logspace(0.05, 8.0, 61)) {
        const resetting::ResetParams p(1.0, alpha * alpha, 5.0,
                                       resetting::ResetDistribution::delta(0.2));
        std::vector<std::string> row{format_double(alpha)};
        for (long n = 0; n <= 3; ++n)
            row.push_back(format_double(resetting::conditional_n(p, 0.0, ExitSide::Left, n)));
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig1a", "fig1b", "fig2",  "fig3a", "fig3b",
                                                 "fig3c", "fig4a", "fig4b", "fig5",  "fig6",
                                                 "fig7",  "fig8a", "fig8b"};
    return ids;
}

io::Sheet make_figure(const std::string& id, const FigureOptions& opt) {
    Sheet sheet;
    if (id == "fig1a") sheet = fig1(false);
    else if (id == "fig1b") sheet = fig1(true);
    else if (id == "fig2") sheet = fig2();
    else if (id == "fig3a") sheet = fig3(-1, opt);
    else if (id == "fig3b") sheet = fig3(+1, opt);
    else if (id == "fig3c") sheet = fig3(0, opt);
    else if (id == "fig4a") sheet = fig4a();
    else if (id == "fig4b") sheet = fig4b();
    else if (id == "fig5") sheet = fig5(opt);
    else if (id == "fig6") sheet = fig6();
    else if (id == "fig7") sheet = fig7(opt);
    else if (id == "fig8a") sheet = fig8a();
    else if (id == "fig8b") sheet = fig8b();
    else throw UnknownFigure("unknown figure id: " + id + " (see figure_ids())");
    sheet.comments.insert(sheet.comments.begin(), "figure: " + id);
    return sheet;
}

}  // namespace splitprob::figures
