#pragma once

#include <functional>
#include <string>
#include <vector>

#include "splitprob/mc.hpp"

namespace splitprob::validate {

// Budget knobs for an agreement run; the defaults reproduce the simulation
// protocol used for the reference curves (1e5 trials, dt = 1e-5).
struct Budget {
    long trials = 100000;
    double dt = 1e-5;
    std::uint64_t seed = 12345;
    int threads = 0;
};

struct CellCheck {
    std::string point_id;
    std::string side;
    std::string outcome;
    double analytic = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;
    double z = 0.0;
    bool counted = false;  // expected count >= 10, so the z-test applies
};

struct Report {
    std::string model;
    std::vector<CellCheck> cells;
    std::vector<std::string> notes;  // analytic side checks run alongside
    long max_steps_exceeded = 0;

    double max_abs_z() const;
    long n_counted() const;
    long n_failed(double z_max = 3.0) const;
    double pass_fraction(double z_max = 3.0) const;
    bool passed(double z_max = 3.0, double min_fraction = 0.95) const;
};

// Per-cell z-scores of an estimate against analytic probabilities; cells
// with expected count below min_expected are recorded but not counted.
void compare(Report& report, const std::string& point_id, const mc::EstimateTable& estimate,
             const std::function<double(ExitSide, Eigen::Index)>& analytic,
             double min_expected = 10.0);

// Agreement suites at the reference parameter sets:
// ripening r=1, s=10, D=0.3, L=1, kappa_right in {0, 1, 10, inf};
// RnT nu=1, alpha=2, D=0.1, L=1; ratchet L=4, r=1, D=1, h in {+-1, +-2},
// a in {-1, 0, 1}; resetting D=1, r=2, L=1, x_r=0.2 (plus a uniform variant).
Report validate_ripening(const Budget& budget);
Report validate_rnt(const Budget& budget);
Report validate_ratchet(const Budget& budget);
Report validate_resetting(const Budget& budget);

std::string report_json(const Report& report);
std::string report_summary(const Report& report);

}  // namespace splitprob::validate
