#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitprob/eigensystem.hpp"
#include "splitprob/ratchet.hpp"
#include "splitprob/resetting.hpp"
#include "splitprob/rng.hpp"
#include "splitprob/rnt.hpp"
#include "splitprob/types.hpp"

namespace splitprob::mc {

struct SimConfig {
    double dt = 1e-5;
    long n_trials = 100000;
    std::uint64_t seed = 1;
    long max_steps = 1000000000L;
    int n_threads = 0;          // 0: use hardware concurrency
    bool exact_clocks = false;  // telegraph flips by exponential clocks instead of Bernoulli(rate dt)
};

// Exit-event counts with binomial standard errors. A trial that hits
// max_steps is tallied separately and never enters the counts.
struct EstimateTable {
    std::vector<std::string> outcome_labels;
    Eigen::Array<long, 2, Eigen::Dynamic> counts;  // row 0 = left exits, row 1 = right exits
    long n_trials = 0;
    long n_max_steps_exceeded = 0;
    SimConfig config;
    std::string model;

    Eigen::Index n_outcomes() const { return counts.cols(); }
    long count(ExitSide s, Eigen::Index j) const {
        return counts(s == ExitSide::Left ? 0 : 1, j);
    }
    double p_hat(ExitSide s, Eigen::Index j) const {
        return double(count(s, j)) / double(n_trials);
    }
    double std_err(ExitSide s, Eigen::Index j) const {
        const double p = p_hat(s, j);
        return std::sqrt(p * (1.0 - p) / double(n_trials));
    }
    long total_exited() const { return counts.sum(); }

    // z-score of the estimate against an analytic probability, using the
    // analytic binomial standard error (safe when the count is zero).
    double z_score(ExitSide s, Eigen::Index j, double p_true) const {
        const double se = std::sqrt(p_true * (1.0 - p_true) / double(n_trials));
        return (p_hat(s, j) - p_true) / (se > 0.0 ? se : 1e-300);
    }
};

enum class BoundaryOutcome { Absorbed, Reflected };

// First-order discretisation of the Robin condition: a trajectory that
// attempts to cross a finite-kappa boundary is absorbed with probability
// min(1, kappa sqrt(pi D dt)) and mirror-reflected otherwise.
BoundaryOutcome robin_boundary_step(const Permeability& kappa, double D, double dt,
                                    Xoshiro256pp& rng);

// Brownian X with an independent ripening-spoiling hidden state (exact
// exponential jump clocks); outcome = hidden state at the crossing step.
EstimateTable simulate_ripening(const spectral::RipeningParams& p, double D,
                                const IntervalSpec& iv, double x0, int y0_index,
                                const SimConfig& cfg);

// Brownian X with an independent OU hidden state (exact Gaussian transition
// per step); outcomes are n_bins equal histogram cells over [lo, hi],
// with out-of-range exits clamped into the edge cells.
EstimateTable simulate_ou(const spectral::OUParams& p, double D, const IntervalSpec& iv,
                          double x0, double y0, double lo, double hi, int n_bins,
                          const SimConfig& cfg);

// Run-and-tumble particle, fully permeable boundaries.
EstimateTable simulate_rnt(const rnt::RnTParams& p, double x0, int y0, const SimConfig& cfg);

// Intermittent piecewise-linear potential, fully permeable boundaries.
EstimateTable simulate_ratchet(const ratchet::RatchetParams& p, double x0, bool y0_on,
                               const SimConfig& cfg);

// Diffusion with Poissonian resetting; outcome = reset count, with counts
// above n_max pooled into the trailing "R" bucket.
EstimateTable simulate_resetting(const resetting::ResetParams& p, double x0, long n_max,
                                 const SimConfig& cfg);

}  // namespace splitprob::mc
