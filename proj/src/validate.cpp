#include "splitprob/validate.hpp"

#include <cmath>

#include "json.hpp"
#include "splitprob/ratchet.hpp"
#include "splitprob/resetting.hpp"
#include "splitprob/rnt.hpp"
#include "splitprob/spectral.hpp"

namespace splitprob::validate {

double Report::max_abs_z() const {
    double m = 0.0;
    for (const auto& c : cells)
        if (c.counted) m = std::max(m, std::fabs(c.z));
    return m;
}

long Report::n_counted() const {
    long n = 0;
    for (const auto& c : cells) n += c.counted ? 1 : 0;
    return n;
}

long Report::n_failed(double z_max) const {
    long n = 0;
    for (const auto& c : cells) n += (c.counted && std::fabs(c.z) > z_max) ? 1 : 0;
    return n;
}

double Report::pass_fraction(double z_max) const {
    const long total = n_counted();
    return total == 0 ? 1.0 : double(total - n_failed(z_max)) / double(total);
}

bool Report::passed(double z_max, double min_fraction) const {
    return n_counted() > 0 && max_steps_exceeded == 0 && pass_fraction(z_max) >= min_fraction;
}

void compare(Report& report, const std::string& point_id, const mc::EstimateTable& estimate,
             const std::function<double(ExitSide, Eigen::Index)>& analytic,
             double min_expected) {
    report.max_steps_exceeded += estimate.n_max_steps_exceeded;
    for (ExitSide side : {ExitSide::Left, ExitSide::Right})
        for (Eigen::Index j = 0; j < estimate.n_outcomes(); ++j) {
            CellCheck cell;
            cell.point_id = point_id;
            cell.side = to_string(side);
            cell.outcome = estimate.outcome_labels[size_t(j)];
            cell.analytic = analytic(side, j);
            cell.estimate = estimate.p_hat(side, j);
            cell.std_err = std::sqrt(cell.analytic * (1.0 - cell.analytic) /
                                     double(estimate.n_trials));
            cell.counted = cell.analytic * double(estimate.n_trials) >= min_expected;
            cell.z = cell.counted ? (cell.estimate - cell.analytic) / cell.std_err : 0.0;
            report.cells.push_back(cell);
        }
}

namespace {

mc::SimConfig sim_config(const Budget& b) {
    mc::SimConfig cfg;
    cfg.dt = b.dt;
    cfg.n_trials = b.trials;
    cfg.seed = b.seed;
    cfg.n_threads = b.threads;
    return cfg;
}

}  // namespace

Report validate_ripening(const Budget& budget) {
    Report report;
    report.model = "ripening";
    const spectral::RipeningParams p(1.0, 10.0);
    const auto es = spectral::ripening_eigensystem(p);
    const double D = 0.3;
    mc::SimConfig cfg = sim_config(budget);

    const std::vector<std::pair<std::string, Permeability>> kappas = {
        {"kappa=0", Permeability::finite(0.0)},
        {"kappa=1", Permeability::finite(1.0)},
        {"kappa=10", Permeability::finite(10.0)},
        {"kappa=inf", Permeability::infinite()},
    };
    for (const auto& [kname, kappa] : kappas) {
        const IntervalSpec iv(0.5, Permeability::infinite(), kappa);
        for (double x0 : {-0.3, 0.2}) {
            cfg.seed = budget.seed + std::hash<std::string>{}(kname + std::to_string(x0)) % 100000;
            const auto est = mc::simulate_ripening(p, D, iv, x0, 0, cfg);
            compare(report, kname + " x0=" + std::to_string(x0), est,
                    [&](ExitSide side, Eigen::Index j) {
                        return spectral::decoupled_joint(es, D, iv, x0, 0, side, j);
                    });
        }
    }
    return report;
}

Report validate_rnt(const Budget& budget) {
    Report report;
    report.model = "rnt";
    const rnt::RnTParams p(1.0, 2.0, 0.1, 1.0);
    mc::SimConfig cfg = sim_config(budget);

    int point = 0;
    for (double x0 : {-0.35, 0.0, 0.3}) {
        for (int y0 : {-1, +1}) {
            cfg.seed = budget.seed + 1000 + point++;
            const auto est = mc::simulate_rnt(p, x0, y0, cfg);
            compare(report,
                    "x0=" + std::to_string(x0) + " y0=" + std::to_string(y0), est,
                    [&](ExitSide side, Eigen::Index j) {
                        return rnt::joint(p, x0, y0, side, j == 0 ? -1 : +1);
                    });
        }
    }
    return report;
}

Report validate_ratchet(const Budget& budget) {
    Report report;
    report.model = "ratchet";
    mc::SimConfig cfg = sim_config(budget);

    // h = 0 edge: the solver delegates to the decoupled telegraph route
    {
        const ratchet::RatchetParams flat(0.0, 0.3, 1.0, 1.0, 4.0);
        const auto es = spectral::telegraph_eigensystem(flat.r);
        const auto iv = IntervalSpec::fully_permeable(flat.L);
        double worst = 0.0;
        for (double x0 : {-1.0, 0.5})
            for (int on = 0; on <= 1; ++on)
                worst = std::max(worst,
                                 std::fabs(ratchet::joint(flat, x0, true, ExitSide::Left, on) -
                                           spectral::decoupled_joint(es, flat.D, iv, x0, 0,
                                                                     ExitSide::Left,
                                                                     on ? 0 : 1)));
        report.notes.push_back(worst < 1e-10
                                   ? "h=0 routed to the decoupled telegraph solver (ok)"
                                   : "h=0 delegation mismatch!");
    }

    int point = 0;
    for (double h : {1.0, 2.0, -1.0, -2.0}) {
        for (double a : {-1.0, 0.0, 1.0}) {
            const ratchet::RatchetParams p(h, a, 1.0, 1.0, 4.0);
            // trapping potentials take longest from the centre; start the
            // trapped cases closer to a boundary to keep the budget sane
            const double x0 = h < 0.0 ? -1.5 : (point % 3 - 1.0);
            const bool y0_on = point % 2 == 0;
            cfg.seed = budget.seed + 2000 + point++;
            const auto est = mc::simulate_ratchet(p, x0, y0_on, cfg);
            compare(report,
                    "h=" + std::to_string(h) + " a=" + std::to_string(a) +
                        " x0=" + std::to_string(x0),
                    est, [&](ExitSide side, Eigen::Index j) {
                        return ratchet::joint(p, x0, y0_on, side, j == 0);
                    });
        }
    }
    return report;
}

Report validate_resetting(const Budget& budget) {
    Report report;
    report.model = "resetting";
    mc::SimConfig cfg = sim_config(budget);
    const long n_max = 3;

    int point = 0;
    auto run = [&](const resetting::ResetParams& p, double x0, const std::string& id) {
        cfg.seed = budget.seed + 3000 + point++;
        const auto est = mc::simulate_resetting(p, x0, n_max, cfg);
        compare(report, id, est, [&](ExitSide side, Eigen::Index j) {
            if (j == 0) return resetting::pi0(p, x0, side);
            if (j <= n_max) return resetting::pin(p, x0, side, j);
            double tail = resetting::piR(p, x0, side);
            for (long n = 1; n <= n_max; ++n) tail -= resetting::pin(p, x0, side, n);
            return tail;
        });
    };

    const resetting::ResetParams delta(1.0, 2.0, 1.0, resetting::ResetDistribution::delta(0.2));
    for (double x0 : {-0.4, -0.2, 0.0, 0.2, 0.4}) run(delta, x0, "delta x0=" + std::to_string(x0));

    const resetting::ResetParams uni(1.0, 2.0, 1.0,
                                     resetting::ResetDistribution::uniform(-0.3, 0.4));
    run(uni, 0.0, "uniform x0=0");
    return report;
}

std::string report_json(const Report& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells)
        cells.push_back({{"point", c.point_id},
                         {"side", c.side},
                         {"outcome", c.outcome},
                         {"analytic", c.analytic},
                         {"estimate", c.estimate},
                         {"std_err", c.std_err},
                         {"z", c.z},
                         {"counted", c.counted}});
    nlohmann::json doc = {{"model", report.model},
                          {"notes", report.notes},
                          {"max_abs_z", report.max_abs_z()},
                          {"cells_counted", report.n_counted()},
                          {"cells_failed_3sigma", report.n_failed()},
                          {"pass_fraction", report.pass_fraction()},
                          {"max_steps_exceeded", report.max_steps_exceeded},
                          {"passed", report.passed()},
                          {"cells", cells}};
    return doc.dump(2);
}

std::string report_summary(const Report& report) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-10s cells=%ld failed(3sigma)=%ld pass=%.1f%% max|z|=%.2f  %s",
                  report.model.c_str(), report.n_counted(), report.n_failed(),
                  100.0 * report.pass_fraction(), report.max_abs_z(),
                  report.passed() ? "PASS" : "FAIL");
    std::string out = buf;
    for (const auto& note : report.notes) out += "\n  note: " + note;
    return out;
}

}  // namespace splitprob::validate
