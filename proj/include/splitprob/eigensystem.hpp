#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>

#include "splitprob/types.hpp"

namespace splitprob::spectral {

// Rates of the two irreversible jumps U -> R -> S.
struct RipeningParams {
    double r;  // unripe -> ripe
    double s;  // ripe -> spoiled

    RipeningParams(double r_, double s_) : r(r_), s(s_) {
        if (!(r > 0.0) || !(s > 0.0)) throw Error("ripening rates must be positive");
        if (std::fabs(r - s) < 1e-9 * std::max(r, s))
            throw DegenerateRates("r == s: eigenvectors do not span the state space");
    }
};

// Zero-mean Ornstein-Uhlenbeck hidden state.
struct OUParams {
    double mu;   // relaxation rate
    double D_Y;  // hidden diffusivity

    OUParams(double mu_, double D_Y_) : mu(mu_), D_Y(D_Y_) {
        if (!(mu > 0.0) || !(D_Y > 0.0)) throw Error("OU parameters must be positive");
    }
    double ell() const { return std::sqrt(D_Y / mu); }  // stationary std of y
};

// Biorthogonal eigensystem of the hidden-state generator: lambda_n with
// right eigenfunctions u_n (backward operator) and left eigenfunctions
// u~_n (forward operator), sampled on the hidden space. u~_0 is the
// stationary distribution and u_0 == 1.
struct Eigensystem {
    Eigen::ArrayXd eigenvalues;   // lambda_n, eigenvalues(0) == 0
    Eigen::MatrixXd right_modes;  // N x M, row n = u_n on the hidden space
    Eigen::MatrixXd left_modes;   // N x M, row n = u~_n
    OutcomeSpace hidden_space;

    // For continuous spaces: u_n / u~_n at arbitrary y (all modes at once).
    std::function<Eigen::ArrayXd(double)> right_at;
    std::function<Eigen::ArrayXd(double)> left_at;

    Eigen::Index mode_count() const { return eigenvalues.size(); }

    Eigen::ArrayXd stationary() const { return left_modes.row(0).array(); }

    // <f, g> with the hidden space's measure (dot product or trapezoid).
    double inner(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g) const {
        return hidden_space.integrate(f * g);
    }

    // u_n(y0) for all n; exact evaluator if present, otherwise y0 must be a label index.
    Eigen::ArrayXd right_modes_at(double y0) const {
        if (right_at) return right_at(y0);
        throw Error("eigensystem has no continuous right-mode evaluator");
    }

    Eigen::ArrayXd right_modes_col(Eigen::Index j) const { return right_modes.col(j).array(); }

    double max_biorthonormality_defect() const {
        double worst = 0.0;
        for (Eigen::Index n = 0; n < mode_count(); ++n)
            for (Eigen::Index m = 0; m < mode_count(); ++m) {
                const double v = inner(left_modes.row(n).array(), right_modes.row(m).array());
                worst = std::max(worst, std::fabs(v - (n == m ? 1.0 : 0.0)));
            }
        return worst;
    }
};

// Exact three-mode eigensystem of the U -> R -> S chain (components in
// the order U, R, S; eigenvalues {0, r, s}).
Eigensystem ripening_eigensystem(const RipeningParams& p);

// Hermite eigensystem of the OU generator on a declared y-grid:
// lambda_n = n*mu, u_n = He_n(y/ell), u~_n = He_n(y/ell) exp(-y^2/2ell^2)/(n! ell sqrt(2pi)).
// The grid must cover at least [-6 ell, 6 ell]. n_modes is capped at 250;
// beyond that the factorial scales overflow and the direct OU evaluation
// path in spectral.hpp applies instead.
Eigensystem ou_eigensystem(const OUParams& p, int n_modes, const OutcomeSpace& grid);

// Default grid for OU hidden outcomes: [-8 ell, 8 ell] with 321 points.
OutcomeSpace ou_default_grid(const OUParams& p);

// Symmetric two-state telegraph (labels "on", "off"; eigenvalues {0, 2r}).
Eigensystem telegraph_eigensystem(double rate);

}  // namespace splitprob::spectral
