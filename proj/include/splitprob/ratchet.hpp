#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>

#include "splitprob/types.hpp"

namespace splitprob::ratchet {

using cplx = std::complex<double>;

// Brownian motion in an intermittent piecewise-linear potential of barrier
// height h (sign-carrying) with apex at x = a, switching on/off at symmetric
// telegraph rate r. Boundaries fully permeable.
struct RatchetParams {
    double h;  // barrier height; h < 0 traps, h > 0 expels
    double a;  // apex location, |a| < L/2
    double r;  // on/off switching rate
    double D;  // diffusivity
    double L;  // interval length

    RatchetParams(double h_, double a_, double r_, double D_, double L_)
        : h(h_), a(a_), r(r_), D(D_), L(L_) {
        if (!(std::fabs(a) < L / 2.0)) throw Error("apex must satisfy |a| < L/2");
        if (!(r > 0.0) || !(D > 0.0) || !(L > 0.0)) throw Error("r, D, L must be positive");
    }

    double slope_left() const { return h / (L / 2.0 + a); }   // force scale on [-L/2, a]
    double slope_right() const { return h / (L / 2.0 - a); }  // force scale on [a, L/2]

    RatchetParams mirrored() const { return RatchetParams(h, -a, r, D, L); }
};

// Roots of p3 k^3 + p2 k^2 + p1 k + p0 (p3 != 0), each Newton-refined to
// relative residual 1e-12; complex roots come in exact conjugate pairs.
std::array<cplx, 3> solve_cubic(double p3, double p2, double p1, double p0);

// Left-exit solution: characteristic roots of both branches and the eight
// integration constants (c0..c3, d0..d3) per exit state, fixed by the
// boundary and continuity conditions via a partial-pivoted complex solve.
struct Solution {
    RatchetParams params;
    std::array<cplx, 3> roots_left;   // branch x in [-L/2, a]
    std::array<cplx, 3> roots_right;  // branch x in [a, L/2]
    Eigen::Matrix<cplx, 8, 2> coeffs;  // column 0: y_exit = off, column 1: y_exit = on
    double residual = 0.0;   // max boundary/continuity residual
    double condition = 0.0;  // condition estimate of the scaled 8x8 system

    explicit Solution(const RatchetParams& p) : params(p) {}
};

// Assembles and solves the 8x8 system for both exit states. Throws
// ZeroBarrier for |h| < 1e-12 (use joint(), which reroutes to the decoupled
// solver), DegenerateRoots for nearly confluent characteristic roots, and
// IllConditioned when the condition estimate exceeds 1e12.
Solution solve(const RatchetParams& p);

// pi and derivatives at one point of the left-exit solution (y0/y1 flags:
// true = potential on). imag_leak records the discarded imaginary part.
struct ValueDerivs {
    double value, d1, d2;
    double imag_leak;
};
ValueDerivs evaluate(const Solution& sol, double x, bool y0_on, bool y1_on);

// Joint splitting probability from a prepared left-exit solution.
double joint(const Solution& sol, double x0, bool y0_on, bool y1_on);

// Full joint probability. Right exits use the inversion
// Pi(L/2, y1 | x0, y0; a) = Pi(-L/2, y1 | -x0, y0; -a); |h| < 1e-12 is routed
// through the decoupled telegraph eigensystem (the potential never acts).
double joint(const RatchetParams& p, double x0, bool y0_on, ExitSide side, bool y1_on);

// Table over the outcome labels {"on", "off"}.
JointSplittingTable table(const RatchetParams& p, double x0, bool y0_on);

// Posterior of the exit state given the observed side; prior = {P(on), P(off)}.
double conditional(const RatchetParams& p, double x0, const std::array<double, 2>& prior_on_off,
                   ExitSide side, bool y1_on);

}  // namespace splitprob::ratchet
