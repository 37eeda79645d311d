#include "splitprob/resetting.hpp"

#include "splitprob/hyperbolic.hpp"

namespace splitprob::resetting {

ResetDistribution ResetDistribution::delta(double x_r) {
    ResetDistribution d;
    d.kind_ = Kind::Delta;
    d.points_ = {x_r};
    d.weights_ = {1.0};
    return d;
}

ResetDistribution ResetDistribution::discrete(std::vector<double> points,
                                              std::vector<double> weights) {
    if (points.empty() || points.size() != weights.size())
        throw Error("discrete reset distribution needs matching points/weights");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw Error("reset weights must be non-negative");
        total += w;
    }
    if (!(total > 0.0)) throw Error("reset weights must not all vanish");
    for (double& w : weights) w /= total;
    ResetDistribution d;
    d.kind_ = Kind::Discrete;
    d.points_ = std::move(points);
    d.weights_ = std::move(weights);
    return d;
}

ResetDistribution ResetDistribution::uniform(double lo, double hi) {
    if (!(hi > lo)) throw Error("uniform reset distribution needs hi > lo");
    ResetDistribution d;
    d.kind_ = Kind::Uniform;
    d.points_ = {lo, hi};
    return d;
}

double ResetDistribution::support_lo() const {
    double lo = points_[0];
    for (double p : points_) lo = std::min(lo, p);
    return lo;
}

double ResetDistribution::support_hi() const {
    double hi = points_[0];
    for (double p : points_) hi = std::max(hi, p);
    return hi;
}

double ResetDistribution::mean() const {
    switch (kind_) {
        case Kind::Delta:
            return points_[0];
        case Kind::Uniform:
            return 0.5 * (points_[0] + points_[1]);
        case Kind::Discrete: {
            double m = 0.0;
            for (size_t i = 0; i < points_.size(); ++i) m += weights_[i] * points_[i];
            return m;
        }
    }
    return 0.0;
}

double ResetDistribution::moment_cosh(double alpha) const {
    switch (kind_) {
        case Kind::Delta:
            return std::cosh(alpha * points_[0]);
        case Kind::Discrete: {
            double m = 0.0;
            for (size_t i = 0; i < points_.size(); ++i)
                m += weights_[i] * std::cosh(alpha * points_[i]);
            return m;
        }
        case Kind::Uniform: {
            const double lo = points_[0], hi = points_[1];
            return (std::sinh(alpha * hi) - std::sinh(alpha * lo)) / (alpha * (hi - lo));
        }
    }
    return 1.0;
}

double ResetDistribution::moment_sinh(double alpha, double L, int sigma) const {
    auto f = [&](double x) { return std::sinh(alpha * (L / 2.0 + sigma * x)); };
    switch (kind_) {
        case Kind::Delta:
            return f(points_[0]);
        case Kind::Discrete: {
            double m = 0.0;
            for (size_t i = 0; i < points_.size(); ++i) m += weights_[i] * f(points_[i]);
            return m;
        }
        case Kind::Uniform: {
            const double lo = points_[0], hi = points_[1];
            const double upper = std::cosh(alpha * (L / 2.0 + sigma * hi));
            const double lower = std::cosh(alpha * (L / 2.0 + sigma * lo));
            return (upper - lower) / (sigma * alpha * (hi - lo));
        }
    }
    return 0.0;
}

ResetParams::ResetParams(double D_, double r_, double L_, ResetDistribution dist_)
    : D(D_), r(r_), L(L_), dist(std::move(dist_)) {
    if (!(D > 0.0) || !(r > 0.0) || !(L > 0.0)) throw Error("D, r, L must be positive");
    if (dist.support_lo() < -L / 2.0 || dist.support_hi() > L / 2.0)
        throw Error("reset distribution must be supported inside [-L/2, L/2]");
    const double ratio = geometric_ratio(*this);
    if (!(ratio >= 0.0) || !(ratio < 1.0))
        throw Error("geometric ratio outside [0, 1); reset distribution inconsistent");
}

namespace {

void check_x(const ResetParams& p, double x0) {
    if (std::fabs(x0) > p.L / 2.0) throw OutOfDomain("x0 outside [-L/2, L/2]");
}

// 1 - cosh(alpha x)/cosh(alpha L/2), computed as a stable ratio
double cosh_deficit(double alpha, double L, double x) {
    return 1.0 - detail::cosh_ratio(alpha * x, alpha * L / 2.0);
}

}  // namespace

double pi0(const ResetParams& p, double x0, ExitSide side) {
    check_x(p, x0);
    const double a = p.alpha();
    return detail::sinh_ratio(a * (p.L / 2.0 + sign_of(side) * x0), a * p.L);
}

double geometric_ratio(const ResetParams& p) {
    const double a = p.alpha();
    // <cosh(alpha x_r)>/cosh(alpha L/2) via overflow-free ratios
    double frac = 0.0;
    if (p.dist.kind() == ResetDistribution::Kind::Uniform) {
        const double lo = p.dist.points()[0], hi = p.dist.points()[1];
        frac = (detail::sinh_over_cosh(a * hi, a * p.L / 2.0) -
                detail::sinh_over_cosh(a * lo, a * p.L / 2.0)) /
               (a * (hi - lo));
    } else {
        for (size_t i = 0; i < p.dist.points().size(); ++i)
            frac += p.dist.weights()[i] * detail::cosh_ratio(a * p.dist.points()[i], a * p.L / 2.0);
    }
    return 1.0 - frac;
}

namespace {

// <sinh(alpha (L/2 + sigma x_r))>/sinh(alpha L), overflow-free
double sinh_moment_ratio(const ResetParams& p, int sigma) {
    const double a = p.alpha();
    if (p.dist.kind() == ResetDistribution::Kind::Uniform) {
        const double lo = p.dist.points()[0], hi = p.dist.points()[1];
        const double upper = detail::cosh_over_sinh(a * (p.L / 2.0 + sigma * hi), a * p.L);
        const double lower = detail::cosh_over_sinh(a * (p.L / 2.0 + sigma * lo), a * p.L);
        return (upper - lower) / (sigma * a * (hi - lo));
    }
    double m = 0.0;
    for (size_t i = 0; i < p.dist.points().size(); ++i)
        m += p.dist.weights()[i] *
             detail::sinh_ratio(a * (p.L / 2.0 + sigma * p.dist.points()[i]), a * p.L);
    return m;
}

}  // namespace

double pin(const ResetParams& p, double x0, ExitSide side, long n) {
    check_x(p, x0);
    if (n < 1) throw Error("pin is defined for n >= 1; use pi0 for n = 0");
    const double a = p.alpha();
    const double prefactor = sinh_moment_ratio(p, sign_of(side));
    const double ratio = geometric_ratio(p);
    return prefactor * std::pow(ratio, double(n - 1)) * cosh_deficit(a, p.L, x0);
}

double piR(const ResetParams& p, double x0, ExitSide side) {
    check_x(p, x0);
    const double a = p.alpha();
    // pin summed over n >= 1: prefactor * deficit(x0) / (1 - ratio); the
    // closed form divides deficit by <cosh(alpha x_r)>/cosh(alpha L/2).
    const double prefactor = sinh_moment_ratio(p, sign_of(side));
    const double one_minus_ratio = 1.0 - geometric_ratio(p);
    return prefactor * cosh_deficit(a, p.L, x0) / one_minus_ratio;
}

double p_reset(const ResetParams& p, double x0) {
    check_x(p, x0);
    // 2 sinh(aL/2)/sinh(aL) * (cosh(aL/2) - cosh(a x)); the prefactor equals
    // 1/cosh(aL/2), so this is 1 - cosh(a x)/cosh(a L/2).
    return cosh_deficit(p.alpha(), p.L, x0);
}

double reset_side_factor(const ResetParams& p, ExitSide side) {
    return sinh_moment_ratio(p, sign_of(side)) / (1.0 - geometric_ratio(p));
}

namespace {

double exit_denominator(const ResetParams& p, double x0, ExitSide side) {
    const double den = pi0(p, x0, side) + piR(p, x0, side);
    if (!(den > 0.0))
        throw ZeroMarginal(std::string("exit via ") + to_string(side) +
                           " has zero probability");
    return den;
}

}  // namespace

double conditional_n(const ResetParams& p, double x0, ExitSide side, long n) {
    const double den = exit_denominator(p, x0, side);
    return (n == 0 ? pi0(p, x0, side) : pin(p, x0, side, n)) / den;
}

double conditional_reset(const ResetParams& p, double x0, ExitSide side) {
    return piR(p, x0, side) / exit_denominator(p, x0, side);
}

JointSplittingTable table(const ResetParams& p, double x0, long n_max) {
    check_x(p, x0);
    if (n_max < 1) throw Error("n_max must be >= 1");
    std::vector<std::string> labels;
    labels.reserve(size_t(n_max) + 2);
    for (long n = 0; n <= n_max; ++n) labels.push_back(std::to_string(n));
    labels.push_back("R");  // pooled n > n_max

    JointSplittingTable t;
    t.outcomes = OutcomeSpace::labels(labels);
    t.x0 = x0;
    t.y0 = "0";
    t.left = Eigen::ArrayXd::Zero(n_max + 2);
    t.right = Eigen::ArrayXd::Zero(n_max + 2);
    for (ExitSide side : {ExitSide::Left, ExitSide::Right}) {
        Eigen::ArrayXd& col = t.side(side);
        col(0) = pi0(p, x0, side);
        double total_tail = piR(p, x0, side);
        for (long n = 1; n <= n_max; ++n) {
            col(n) = pin(p, x0, side, n);
            total_tail -= col(n);
        }
        col(n_max + 1) = std::max(total_tail, 0.0);  // pooled geometric remainder
    }
    return t;
}

}  // namespace splitprob::resetting
