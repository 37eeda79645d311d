#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "splitprob/errors.hpp"

namespace splitprob {

// Boundary through which the observable process leaves the interval.
// Numeric values follow the sigma = -1 (left) / +1 (right) convention.
enum class ExitSide : int { Left = -1, Right = +1 };

inline constexpr ExitSide opposite(ExitSide s) {
    return s == ExitSide::Left ? ExitSide::Right : ExitSide::Left;
}

inline constexpr int sign_of(ExitSide s) { return static_cast<int>(s); }

inline const char* to_string(ExitSide s) {
    return s == ExitSide::Left ? "left" : "right";
}

// Boundary permeability kappa in [0, inf]. The fully permeable (absorbing)
// limit is a distinct symbolic state, not a large float, so closed forms can
// branch on it without overflow.
class Permeability {
public:
    Permeability() = default;

    static Permeability finite(double kappa) {
        if (!(kappa >= 0.0) || !std::isfinite(kappa))
            throw Error("finite permeability must be a non-negative finite number");
        Permeability p;
        p.kappa_ = kappa;
        return p;
    }
    static Permeability infinite() {
        Permeability p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_reflecting() const noexcept { return !infinite_ && kappa_ == 0.0; }

    // Finite value; only meaningful when !is_infinite().
    double value() const {
        if (infinite_) throw Error("permeability is infinite; no finite value");
        return kappa_;
    }

private:
    double kappa_ = 0.0;
    bool infinite_ = false;
};

// The domain [-L/2, L/2] with per-boundary permeability.
struct IntervalSpec {
    double half_width = 0.5;  // L/2
    Permeability kappa_left = Permeability::infinite();
    Permeability kappa_right = Permeability::infinite();

    IntervalSpec() = default;
    IntervalSpec(double half_width_, Permeability left, Permeability right)
        : half_width(half_width_), kappa_left(left), kappa_right(right) {
        if (!(half_width > 0.0)) throw Error("interval half-width must be positive");
    }

    static IntervalSpec fully_permeable(double length) {
        return IntervalSpec(length / 2.0, Permeability::infinite(), Permeability::infinite());
    }

    double length() const { return 2.0 * half_width; }
    bool contains(double x) const { return x >= -half_width && x <= half_width; }
    bool exit_possible() const {
        return !(kappa_left.is_reflecting() && kappa_right.is_reflecting());
    }
    void require_inside(double x) const {
        if (!contains(x)) throw OutOfDomain("x0 outside [-L/2, L/2]");
    }
    Permeability kappa(ExitSide s) const {
        return s == ExitSide::Left ? kappa_left : kappa_right;
    }
};

// Hidden-outcome alphabet: a finite label set, or a uniform grid on which
// densities are sampled.
class OutcomeSpace {
public:
    enum class Kind { Labels, Grid };

    static OutcomeSpace labels(std::vector<std::string> names) {
        OutcomeSpace s;
        s.kind_ = Kind::Labels;
        s.labels_ = std::move(names);
        return s;
    }
    static OutcomeSpace grid(double lo, double hi, Eigen::Index n) {
        if (!(hi > lo) || n < 3) throw Error("outcome grid needs hi > lo and >= 3 points");
        OutcomeSpace s;
        s.kind_ = Kind::Grid;
        s.grid_ = Eigen::ArrayXd::LinSpaced(n, lo, hi);
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_grid() const { return kind_ == Kind::Grid; }

    Eigen::Index size() const {
        return is_grid() ? grid_.size() : static_cast<Eigen::Index>(labels_.size());
    }

    const std::vector<std::string>& label_set() const { return labels_; }
    const Eigen::ArrayXd& grid_points() const { return grid_; }
    double spacing() const { return (grid_(grid_.size() - 1) - grid_(0)) / double(grid_.size() - 1); }

    Eigen::Index index_of(const std::string& label) const {
        for (Eigen::Index i = 0; i < Eigen::Index(labels_.size()); ++i)
            if (labels_[size_t(i)] == label) return i;
        throw Error("unknown outcome label: " + label);
    }

    std::string name_of(Eigen::Index i) const {
        if (is_grid()) return "y[" + std::to_string(i) + "]";
        return labels_[size_t(i)];
    }

    // Sum for label spaces; trapezoid quadrature for grids.
    double integrate(const Eigen::ArrayXd& f) const {
        if (!is_grid()) return f.sum();
        const double h = spacing();
        return h * (f.sum() - 0.5 * (f(0) + f(f.size() - 1)));
    }

    bool same_as(const OutcomeSpace& o) const {
        if (kind_ != o.kind_) return false;
        if (!is_grid()) return labels_ == o.labels_;
        return grid_.size() == o.grid_.size() && (grid_ == o.grid_).all();
    }

private:
    Kind kind_ = Kind::Labels;
    std::vector<std::string> labels_;
    Eigen::ArrayXd grid_;
};

// Joint splitting probabilities (exit side, hidden outcome) for one fixed
// initialisation. For grid spaces the entries are densities in y_exit.
struct JointSplittingTable {
    OutcomeSpace outcomes;
    Eigen::ArrayXd left;   // entry (or density) per outcome, exit via -L/2
    Eigen::ArrayXd right;  // same, exit via +L/2
    double x0 = 0.0;
    std::string y0;        // provenance: initial hidden state

    const Eigen::ArrayXd& side(ExitSide s) const { return s == ExitSide::Left ? left : right; }
    Eigen::ArrayXd& side(ExitSide s) { return s == ExitSide::Left ? left : right; }

    double side_marginal(ExitSide s) const { return outcomes.integrate(side(s)); }
    double mass() const { return side_marginal(ExitSide::Left) + side_marginal(ExitSide::Right); }
};

// Normalised distribution over hidden outcomes given an observed exit side.
struct Posterior {
    OutcomeSpace outcomes;
    Eigen::ArrayXd weights;  // probabilities, or a density on the grid
    ExitSide conditioning = ExitSide::Left;
    std::string prior_provenance;

    double total() const { return outcomes.integrate(weights); }
    double operator()(Eigen::Index i) const { return weights(i); }

    double mean() const {
        if (!outcomes.is_grid()) throw Error("mean requires a grid outcome space");
        return outcomes.integrate(weights * outcomes.grid_points());
    }
    double variance() const {
        const double m = mean();
        return outcomes.integrate(weights * (outcomes.grid_points() - m).square());
    }
};

// Monte-Carlo outcome record.
struct ExitEvent {
    ExitSide side = ExitSide::Left;
    double y_exit = 0.0;
    long n_resets = 0;
    double exit_time = 0.0;
};

}  // namespace splitprob
