#pragma once

#include <array>
#include <cmath>

#include "splitprob/types.hpp"

namespace splitprob::rnt {

// Run-and-tumble particle on [-L/2, L/2] with fully permeable boundaries:
// dX = nu Y dt + sqrt(2D) dW, Y in {-1,+1} flipping at rate alpha.
struct RnTParams {
    double nu;     // self-propulsion speed (>= 0; 0 is the passive limit)
    double alpha;  // tumble rate
    double D;      // translational diffusivity
    double L;      // interval length

    RnTParams(double nu_, double alpha_, double D_, double L_)
        : nu(nu_), alpha(alpha_), D(D_), L(L_) {
        if (nu < 0.0 || !(alpha > 0.0) || !(D > 0.0) || !(L > 0.0))
            throw Error("RnT parameters require nu >= 0 and alpha, D, L > 0");
    }

    double k() const { return std::sqrt(nu * nu / (D * D) + 2.0 * alpha / D); }
    double peclet() const { return nu * nu / (alpha * D); }
};

// The four integration constants of the left-exit solution for a given exit
// state y_exit in {-1,+1}, in the raw closed form (requires nu > 0; the
// evaluation path below handles nu = 0 by analytic limits instead).
struct Constants {
    double c1, c2, c3, c4;
};
Constants constants(const RnTParams& p, int y_exit);

// rho = pi(x,-) + pi(x,+) and sigma = pi(x,-) - pi(x,+) for left exit in
// state y_exit, with first and second derivatives (for residual checks).
// Computed in a rescaled form that is regular at nu = 0 and immune to
// overflow at large k L.
struct PolarityComponents {
    double rho, sigma;
    double drho, dsigma;
    double d2rho, d2sigma;
};
PolarityComponents components(const RnTParams& p, int y_exit, double x);

// Joint splitting probability Pi(side L/2, y_exit | x0, y0). Right exits go
// through the inversion Pi(R, y1 | x0, y0) = Pi(L, -y1 | -x0, -y0).
double joint(const RnTParams& p, double x0, int y0, ExitSide side, int y_exit);

// Table over the exit-state alphabet {-1,+1} for one initialisation.
JointSplittingTable table(const RnTParams& p, double x0, int y0);

// Bayes posterior of y_exit given the observed exit side, with prior
// {P(y0=-1), P(y0=+1)} over the initial state.
double conditional(const RnTParams& p, double x0, const std::array<double, 2>& prior_minus_plus,
                   ExitSide side, int y_exit);

// Marginal exit-side probability under the prior (the Bayes denominator).
double side_marginal(const RnTParams& p, double x0, const std::array<double, 2>& prior_minus_plus,
                     ExitSide side);

// L -> infinity limit of conditional(y_exit=-1 | left exit, x0=0, symmetric
// prior): evaluated at kL >= 50 and Richardson-checked by doubling L.
// Depends on the parameters only through the Peclet number.
double asymptote(double nu, double alpha, double D);
double asymptote(double peclet);  // canonical parameterization alpha = D = 1

}  // namespace splitprob::rnt
