#pragma once

#include "splitprob/eigensystem.hpp"
#include "splitprob/types.hpp"

namespace splitprob::spectral {

// Metadata collected while evaluating a mode sum.
struct SumDiagnostics {
    bool truncation_warning = false;  // last retained mode still contributed > 1e-6
    int modes_used = 0;
    double last_term_ratio = 0.0;     // |last term| / |partial sum|
};

// Spatial kernel K_n(side; x) of one hidden mode: the solution of
// D K'' = lambda K on [-L/2, L/2] equal to 1 on the exit side and 0 (or the
// Robin mixture) on the other, per the interval's permeabilities. The
// lambda == 0 kernel is the analytic limit (never 0/0): the marginal
// splitting probability of simple Brownian motion with those boundaries.
// For two finite permeabilities the per-mode 2x2 coefficient system is
// solved in an overflow-free scaled basis.
double mode_kernel(double lambda, double D, const IntervalSpec& iv, double x, ExitSide side);

// Marginal splitting probability of the diffusive process alone
// (the lambda -> 0 kernel; S(x) and S~(x) for a Robin boundary).
double brownian_marginal(const IntervalSpec& iv, double x, ExitSide side);

// Joint splitting probability via the eigenbasis mode sum,
// Pi(side, y_exit | x0, y0) = sum_n u~_n(y_exit) u_n(y0) K_n(side; x0).
// Versions for discrete label indices and for continuous values (the latter
// require the eigensystem's evaluators). Adaptive early stop after the
// terms fall below 1e-9 of the partial sum.
double decoupled_joint(const Eigensystem& es, double D, const IntervalSpec& iv, double x0,
                       Eigen::Index y0_index, ExitSide side, Eigen::Index y_exit_index,
                       SumDiagnostics* diag = nullptr);
double decoupled_joint_value(const Eigensystem& es, double D, const IntervalSpec& iv,
                             double x0, double y0, ExitSide side, double y_exit,
                             SumDiagnostics* diag = nullptr);

// Full joint table over the eigensystem's hidden space.
JointSplittingTable decoupled_table(const Eigensystem& es, double D, const IntervalSpec& iv,
                                    double x0, Eigen::Index y0_index,
                                    SumDiagnostics* diag = nullptr);
JointSplittingTable decoupled_table_value(const Eigensystem& es, double D,
                                          const IntervalSpec& iv, double x0, double y0,
                                          SumDiagnostics* diag = nullptr);

// D -> 0 (equivalently L -> infinity) factorisation: the joint probability
// tends to rho_steady(y_exit) * S(x0) (left) and rho_steady * S~(x0) (right).
struct FactorizationLimit {
    Eigen::ArrayXd rho_steady;
    double S;
    double S_tilde;
};
FactorizationLimit decoupled_factorization_limit(const Eigensystem& es, const IntervalSpec& iv,
                                                 double x0);

// Direct OU mode sum through the scaled Hermite recurrence; no factorial
// overflow, so n_modes may be large (needed when L^2 mu / D is small and the
// posterior is far from stationary). Equals the eigensystem path exactly.
double ou_joint(const OUParams& p, double D, const IntervalSpec& iv, double x0, double y0,
                ExitSide side, double y_exit, int n_modes, SumDiagnostics* diag = nullptr);
JointSplittingTable ou_table(const OUParams& p, double D, const IntervalSpec& iv, double x0,
                             double y0, int n_modes, const OutcomeSpace& grid,
                             SumDiagnostics* diag = nullptr);

}  // namespace splitprob::spectral
