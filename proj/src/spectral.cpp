#include "splitprob/spectral.hpp"

#include <cmath>

#include "splitprob/hyperbolic.hpp"

namespace splitprob::spectral {

namespace {

using detail::robin_ratio;
using detail::sinh_over_robin;
using detail::sinh_ratio;

double kernel_absorbing(double q, double hw, double x, ExitSide side) {
    const double L = 2.0 * hw;
    const double w = (side == ExitSide::Left) ? (hw - x) : (hw + x);
    if (q == 0.0) return w / L;
    return sinh_ratio(q * w, q * L);
}

// Robin boundary (finite kappa) at +L/2, fully permeable at -L/2.
double kernel_robin_right(double q, double kappa, double hw, double x, ExitSide side) {
    const double L = 2.0 * hw;
    if (q == 0.0) {
        if (side == ExitSide::Left) return (1.0 + kappa * (hw - x)) / (1.0 + kappa * L);
        return kappa * (hw + x) / (1.0 + kappa * L);
    }
    if (side == ExitSide::Left) return robin_ratio(q, kappa, q * (hw - x), q * L);
    return kappa * sinh_over_robin(q * (hw + x), q, kappa, q * L);
}

// Both permeabilities finite: per-mode 2x2 coefficient system in the scaled
// basis e^{q(x-L/2)}, e^{-q(x+L/2)} (entries bounded for any q L).
double kernel_general(double q, double kl, double kr, double hw, double x, ExitSide side) {
    const double L = 2.0 * hw;
    const double bL = (side == ExitSide::Left) ? 1.0 : 0.0;
    const double bR = 1.0 - bL;
    if (q == 0.0) {
        const double m11 = kl, m12 = -(1.0 + kl * hw), r1 = kl * bL;
        const double m21 = kr, m22 = (1.0 + kr * hw), r2 = kr * bR;
        const double det = m11 * m22 - m12 * m21;
        const double A = (r1 * m22 - m12 * r2) / det;
        const double B = (m11 * r2 - r1 * m21) / det;
        return A + B * x;
    }
    const double E = std::exp(-q * L);
    const double m11 = (kl - q) * E, m12 = kl + q, r1 = kl * bL;
    const double m21 = kr + q, m22 = (kr - q) * E, r2 = kr * bR;
    const double det = m11 * m22 - m12 * m21;
    const double A = (r1 * m22 - m12 * r2) / det;
    const double B = (m11 * r2 - r1 * m21) / det;
    return A * std::exp(q * (x - hw)) + B * std::exp(-q * (x + hw));
}

struct SumState {
    double sum = 0.0;
    double prev_abs = std::numeric_limits<double>::infinity();
    double last_abs = 0.0;
    int used = 0;
    bool converged = false;

    // Returns true once the tail is negligible (two consecutive small terms).
    bool accumulate(int n, double term) {
        sum += term;
        ++used;
        last_abs = std::fabs(term);
        const double scale = std::fabs(sum) + 1e-300;
        if (n >= 8 && last_abs <= 1e-9 * scale && prev_abs <= 1e-9 * scale) {
            converged = true;
            return true;
        }
        prev_abs = last_abs;
        return false;
    }

    void report(SumDiagnostics* diag, bool truncatable) const {
        if (!diag) return;
        diag->modes_used = used;
        diag->last_term_ratio = last_abs / (std::fabs(sum) + 1e-300);
        diag->truncation_warning = truncatable && !converged && diag->last_term_ratio > 1e-6;
    }
};

void check_domain(const IntervalSpec& iv, double x0) {
    if (!iv.exit_possible())
        throw NoExitPossible("both boundaries reflecting: no exit event exists");
    iv.require_inside(x0);
}

}  // namespace

double mode_kernel(double lambda, double D, const IntervalSpec& iv, double x, ExitSide side) {
    if (!iv.exit_possible())
        throw NoExitPossible("both boundaries reflecting: no exit event exists");
    const double q = std::sqrt(std::max(lambda, 0.0) / D);
    const Permeability kl = iv.kappa_left, kr = iv.kappa_right;
    if (kl.is_infinite() && kr.is_infinite()) return kernel_absorbing(q, iv.half_width, x, side);
    if (kl.is_infinite()) return kernel_robin_right(q, kr.value(), iv.half_width, x, side);
    if (kr.is_infinite())
        // Robin on the left: reflect x -> -x, side -> opposite side.
        return kernel_robin_right(q, kl.value(), iv.half_width, -x, opposite(side));
    return kernel_general(q, kl.value(), kr.value(), iv.half_width, x, side);
}

double brownian_marginal(const IntervalSpec& iv, double x, ExitSide side) {
    return mode_kernel(0.0, 1.0, iv, x, side);
}

namespace {

double mode_sum(const Eigen::ArrayXd& coef, const Eigen::ArrayXd& lambdas, double D,
                const IntervalSpec& iv, double x0, ExitSide side, bool truncatable,
                SumDiagnostics* diag) {
    SumState st;
    for (Eigen::Index n = 0; n < coef.size(); ++n) {
        const double K = mode_kernel(lambdas(n), D, iv, x0, side);
        if (st.accumulate(int(n), coef(n) * K)) break;
    }
    st.report(diag, truncatable);
    return st.sum;
}

}  // namespace

double decoupled_joint(const Eigensystem& es, double D, const IntervalSpec& iv, double x0,
                       Eigen::Index y0_index, ExitSide side, Eigen::Index y_exit_index,
                       SumDiagnostics* diag) {
    check_domain(iv, x0);
    const Eigen::ArrayXd coef =
        es.left_modes.col(y_exit_index).array() * es.right_modes.col(y0_index).array();
    return mode_sum(coef, es.eigenvalues, D, iv, x0, side, es.hidden_space.is_grid(), diag);
}

double decoupled_joint_value(const Eigensystem& es, double D, const IntervalSpec& iv,
                             double x0, double y0, ExitSide side, double y_exit,
                             SumDiagnostics* diag) {
    check_domain(iv, x0);
    if (!es.left_at || !es.right_at)
        throw Error("eigensystem lacks continuous evaluators; use the index overload");
    const Eigen::ArrayXd coef = es.left_at(y_exit) * es.right_at(y0);
    return mode_sum(coef, es.eigenvalues, D, iv, x0, side, es.hidden_space.is_grid(), diag);
}

namespace {

JointSplittingTable table_from_weights(const Eigensystem& es, double D, const IntervalSpec& iv,
                                       double x0, const Eigen::ArrayXd& u_y0, std::string y0_name,
                                       SumDiagnostics* diag) {
    const Eigen::Index n_modes = es.mode_count();
    Eigen::ArrayXd k_left(n_modes), k_right(n_modes);
    for (Eigen::Index n = 0; n < n_modes; ++n) {
        k_left(n) = mode_kernel(es.eigenvalues(n), D, iv, x0, ExitSide::Left);
        k_right(n) = mode_kernel(es.eigenvalues(n), D, iv, x0, ExitSide::Right);
    }
    const Eigen::ArrayXd w_left = u_y0 * k_left;
    const Eigen::ArrayXd w_right = u_y0 * k_right;

    JointSplittingTable table;
    table.outcomes = es.hidden_space;
    table.x0 = x0;
    table.y0 = std::move(y0_name);
    table.left = (es.left_modes.transpose() * w_left.matrix()).array();
    table.right = (es.left_modes.transpose() * w_right.matrix()).array();

    if (diag && es.hidden_space.is_grid()) {
        const Eigen::ArrayXd row_max = es.left_modes.array().abs().rowwise().maxCoeff();
        const Eigen::ArrayXd contrib = (w_left.abs() + w_right.abs()) * row_max;
        const double total = contrib.sum() + 1e-300;
        diag->modes_used = int(n_modes);
        diag->last_term_ratio = contrib(n_modes - 1) / total;
        diag->truncation_warning = diag->last_term_ratio > 1e-6;
    }
    return table;
}

}  // namespace

JointSplittingTable decoupled_table(const Eigensystem& es, double D, const IntervalSpec& iv,
                                    double x0, Eigen::Index y0_index, SumDiagnostics* diag) {
    check_domain(iv, x0);
    return table_from_weights(es, D, iv, x0, es.right_modes.col(y0_index).array(),
                              es.hidden_space.name_of(y0_index), diag);
}

JointSplittingTable decoupled_table_value(const Eigensystem& es, double D,
                                          const IntervalSpec& iv, double x0, double y0,
                                          SumDiagnostics* diag) {
    check_domain(iv, x0);
    if (!es.right_at)
        throw Error("eigensystem lacks continuous evaluators; use the index overload");
    return table_from_weights(es, D, iv, x0, es.right_at(y0), std::to_string(y0), diag);
}

FactorizationLimit decoupled_factorization_limit(const Eigensystem& es, const IntervalSpec& iv,
                                                 double x0) {
    check_domain(iv, x0);
    FactorizationLimit lim;
    lim.rho_steady = es.stationary();
    lim.S = brownian_marginal(iv, x0, ExitSide::Left);
    lim.S_tilde = brownian_marginal(iv, x0, ExitSide::Right);
    return lim;
}

double ou_joint(const OUParams& p, double D, const IntervalSpec& iv, double x0, double y0,
                ExitSide side, double y_exit, int n_modes, SumDiagnostics* diag) {
    check_domain(iv, x0);
    const double ell = p.ell();
    const double z = y_exit / ell, z0 = y0 / ell;
    const double weight = std::exp(-0.5 * z * z) / (ell * std::sqrt(2.0 * M_PI));

    // scaled recurrence h_n = He_n / sqrt(n!): u~_n(y) u_n(y0) = h_n(z) h_n(z0) weight
    double h_prev = 0.0, h = 1.0;      // h_{n-1}, h_n at z
    double g_prev = 0.0, g = 1.0;      // same at z0
    SumState st;
    for (int n = 0; n < n_modes; ++n) {
        const double K = mode_kernel(p.mu * n, D, iv, x0, side);
        if (st.accumulate(n, weight * h * g * K)) break;
        const double h_next = (z * h - std::sqrt(double(n)) * h_prev) / std::sqrt(double(n + 1));
        const double g_next = (z0 * g - std::sqrt(double(n)) * g_prev) / std::sqrt(double(n + 1));
        h_prev = h;
        h = h_next;
        g_prev = g;
        g = g_next;
    }
    st.report(diag, true);
    return st.sum;
}

JointSplittingTable ou_table(const OUParams& p, double D, const IntervalSpec& iv, double x0,
                             double y0, int n_modes, const OutcomeSpace& grid,
                             SumDiagnostics* diag) {
    check_domain(iv, x0);
    if (!grid.is_grid()) throw Error("OU table requires a grid outcome space");
    const double ell = p.ell();
    const Eigen::ArrayXd z = grid.grid_points() / ell;
    if (z(0) > -6.0 || z(z.size() - 1) < 6.0)
        throw GridTooNarrow("OU grid must cover at least [-6 ell, 6 ell]");
    const double z0 = y0 / ell;
    const Eigen::ArrayXd weight = (-0.5 * z.square()).exp() / (ell * std::sqrt(2.0 * M_PI));

    Eigen::ArrayXd h_prev = Eigen::ArrayXd::Zero(z.size());
    Eigen::ArrayXd h = Eigen::ArrayXd::Ones(z.size());
    double g_prev = 0.0, g = 1.0;
    Eigen::ArrayXd left = Eigen::ArrayXd::Zero(z.size());
    Eigen::ArrayXd right = Eigen::ArrayXd::Zero(z.size());

    double total_contrib = 1e-300, last_contrib = 0.0;
    int used = 0;
    bool converged = false;
    for (int n = 0; n < n_modes; ++n) {
        const double kL = mode_kernel(p.mu * n, D, iv, x0, ExitSide::Left);
        const double kR = mode_kernel(p.mu * n, D, iv, x0, ExitSide::Right);
        const Eigen::ArrayXd mode_density = weight * h;  // u~_n row up to the g factor
        left += (g * kL) * mode_density;
        right += (g * kR) * mode_density;
        ++used;
        const double prev_contrib = last_contrib;
        last_contrib = mode_density.abs().maxCoeff() * std::fabs(g) * (std::fabs(kL) + std::fabs(kR));
        total_contrib += last_contrib;
        if (n >= 8 && last_contrib <= 1e-9 * total_contrib &&
            prev_contrib <= 1e-9 * total_contrib) {
            converged = true;
            break;
        }
        const Eigen::ArrayXd h_next =
            (z * h - std::sqrt(double(n)) * h_prev) / std::sqrt(double(n + 1));
        const double g_next = (z0 * g - std::sqrt(double(n)) * g_prev) / std::sqrt(double(n + 1));
        h_prev = h;
        h = h_next;
        g_prev = g;
        g = g_next;
    }
    if (diag) {
        diag->modes_used = used;
        diag->last_term_ratio = last_contrib / total_contrib;
        diag->truncation_warning = !converged && diag->last_term_ratio > 1e-6;
    }

    JointSplittingTable table;
    table.outcomes = grid;
    table.x0 = x0;
    table.y0 = std::to_string(y0);
    table.left = left;
    table.right = right;
    return table;
}

}  // namespace splitprob::spectral
