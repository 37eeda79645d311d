#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "splitprob/types.hpp"

namespace splitprob::resetting {

// Post-reset position law P_r supported inside [-L/2, L/2]. Moments of
// cosh/sinh are analytic for every variant (exact antiderivatives for the
// uniform case; no quadrature).
class ResetDistribution {
public:
    enum class Kind { Delta, Discrete, Uniform };

    static ResetDistribution delta(double x_r);
    static ResetDistribution discrete(std::vector<double> points, std::vector<double> weights);
    static ResetDistribution uniform(double lo, double hi);

    Kind kind() const { return kind_; }
    double support_lo() const;
    double support_hi() const;
    double mean() const;

    // <cosh(alpha x_r)>
    double moment_cosh(double alpha) const;
    // <sinh(alpha (L/2 + sigma x_r))>
    double moment_sinh(double alpha, double L, int sigma) const;

    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }

private:
    Kind kind_ = Kind::Delta;
    std::vector<double> points_;   // delta: {x_r}; uniform: {lo, hi}
    std::vector<double> weights_;
};

// Brownian motion with Poissonian resetting at rate r; the hidden state is
// the number of resets since initialisation. Fully permeable boundaries.
struct ResetParams {
    double D;
    double r;
    double L;
    ResetDistribution dist;

    ResetParams(double D_, double r_, double L_, ResetDistribution dist_);

    double alpha() const { return std::sqrt(r / D); }  // inverse length scale
};

// Probability of exit via `side` with exactly zero resets.
double pi0(const ResetParams& p, double x0, ExitSide side);

// Exactly n >= 1 resets: geometric in n with the distribution moments.
double pin(const ResetParams& p, double x0, ExitSide side, long n);

// At least one reset (closed geometric sum, never series summation).
double piR(const ResetParams& p, double x0, ExitSide side);

// Probability of resetting at least once before exit (side-summed).
double p_reset(const ResetParams& p, double x0);

// The common ratio pin(n+1)/pin(n) = 1 - <cosh(alpha x_r)>/cosh(alpha L/2),
// guaranteed to lie in [0, 1) for supports inside the interval.
double geometric_ratio(const ResetParams& p);

// piR^sigma(x)/p_reset(x): independent of x.
double reset_side_factor(const ResetParams& p, ExitSide side);

// Posterior over reset counts given the observed exit side.
double conditional_n(const ResetParams& p, double x0, ExitSide side, long n);
double conditional_reset(const ResetParams& p, double x0, ExitSide side);  // >= 1 resets

// Table over outcomes {"0", "1", ..., "<n_max>", "R"}; the final bucket
// pools n > n_max via the geometric tail so the table mass is exact.
JointSplittingTable table(const ResetParams& p, double x0, long n_max);

}  // namespace splitprob::resetting
