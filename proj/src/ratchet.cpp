#include "splitprob/ratchet.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "splitprob/bayes.hpp"
#include "splitprob/eigensystem.hpp"
#include "splitprob/spectral.hpp"

namespace splitprob::ratchet {

namespace {

cplx cubic_value(double p3, double p2, double p1, double p0, cplx k) {
    return ((p3 * k + p2) * k + p1) * k + p0;
}

double cubic_residual(double p3, double p2, double p1, double p0, cplx k) {
    const double ak = std::abs(k);
    const double scale = std::fabs(p3) * ak * ak * ak + std::fabs(p2) * ak * ak +
                         std::fabs(p1) * ak + std::fabs(p0) + 1e-300;
    return std::abs(cubic_value(p3, p2, p1, p0, k)) / scale;
}

}  // namespace

std::array<cplx, 3> solve_cubic(double p3, double p2, double p1, double p0) {
    if (p3 == 0.0) throw Error("leading cubic coefficient must be nonzero");
    const double b = p2 / p3, c = p1 / p3, d = p0 / p3;

    // depressed form t^3 + P t + Q with k = t - b/3
    const double P = c - b * b / 3.0;
    const double Q = d - b * c / 3.0 + 2.0 * b * b * b / 27.0;

    // Cardano in complex arithmetic; the larger cube root avoids cancellation
    const cplx disc = std::sqrt(cplx(Q * Q / 4.0 + P * P * P / 27.0, 0.0));
    cplx S = -Q / 2.0 + disc;
    if (std::abs(-Q / 2.0 - disc) > std::abs(S)) S = -Q / 2.0 - disc;
    const cplx u = std::pow(S, 1.0 / 3.0);
    const cplx omega(-0.5, 0.5 * std::sqrt(3.0));

    std::array<cplx, 3> roots;
    for (int i = 0; i < 3; ++i) {
        cplx w = u * std::pow(omega, i);
        cplx t = (std::abs(w) > 0.0) ? w - P / (3.0 * w) : cplx(0.0, 0.0);
        cplx k = t - b / 3.0;
        // Newton polish on the original cubic
        for (int it = 0; it < 50; ++it) {
            const cplx f = cubic_value(p3, p2, p1, p0, k);
            const cplx df = (3.0 * p3 * k + 2.0 * p2) * k + p1;
            if (std::abs(df) == 0.0) break;
            const cplx step = f / df;
            k -= step;
            if (std::abs(step) <= 1e-15 * (std::abs(k) + 1e-300)) break;
        }
        roots[size_t(i)] = k;
    }

    // Real coefficients: snap tiny imaginary parts and enforce exact
    // conjugate pairing, so downstream reality checks are meaningful.
    double scale = 0.0;
    for (const auto& k : roots) scale = std::max(scale, std::abs(k));
    int n_real = 0;
    for (auto& k : roots)
        if (std::fabs(k.imag()) <= 1e-9 * scale) {
            k = cplx(k.real(), 0.0);
            ++n_real;
        }
    if (n_real == 1) {
        std::array<cplx, 3> ordered;
        int idx = 0;
        for (const auto& k : roots)
            if (k.imag() == 0.0) ordered[0] = k;
        for (const auto& k : roots)
            if (k.imag() != 0.0) ordered[size_t(++idx)] = k;
        const cplx z = 0.5 * (ordered[1] + std::conj(ordered[2]));
        ordered[1] = z;
        ordered[2] = std::conj(z);
        roots = ordered;
    }

    for (const auto& k : roots)
        if (cubic_residual(p3, p2, p1, p0, k) > 1e-12)
            throw Error("cubic root refinement did not reach 1e-12 residual");
    return roots;
}

namespace {

// Coefficient of e^{k x} in pi (on/off) for each branch; branch 1 carries
// weight D k / slope on the "on" row, branch 2 the sign-flipped analogue
// (the second branch is the first with slope -> -slope).
struct BranchWeights {
    cplx on, off;
};
BranchWeights weights_branch1(double D, double slope, cplx k) {
    const cplx w = D * k / slope;
    return {w, 1.0 - w};
}
BranchWeights weights_branch2(double D, double slope, cplx k) {
    const cplx w = D * k / slope;
    return {-w, 1.0 + w};
}

struct System {
    Eigen::Matrix<cplx, 8, 8> A;           // scaled columns
    std::array<cplx, 3> kL, kR;            // roots
    std::array<double, 3> refL, refR;      // column scaling references
    double slopeL, slopeR;
};

System assemble(const RatchetParams& p) {
    System sys;
    sys.slopeL = p.slope_left();
    sys.slopeR = p.slope_right();
    const double D = p.D, r = p.r, hw = p.L / 2.0, a = p.a;

    sys.kL = solve_cubic(1.0, -sys.slopeL / D, -2.0 * r / D, sys.slopeL * r / (D * D));
    sys.kR = solve_cubic(1.0, sys.slopeR / D, -2.0 * r / D, -sys.slopeR * r / (D * D));

    for (const auto& ks : {sys.kL, sys.kR}) {
        double scale = 0.0;
        for (const auto& k : ks) scale = std::max(scale, std::abs(k));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (std::abs(ks[size_t(i)] - ks[size_t(j)]) < 1e-6 * scale)
                    throw DegenerateRoots(
                        "nearly confluent characteristic roots; perturb the parameters");
    }

    // Column scaling keeps every matrix exponential at modulus <= 1:
    // reference point a for growing modes, the outer boundary for decaying.
    for (int i = 0; i < 3; ++i) {
        sys.refL[size_t(i)] = sys.kL[size_t(i)].real() > 0.0 ? a : -hw;
        sys.refR[size_t(i)] = sys.kR[size_t(i)].real() > 0.0 ? hw : a;
    }

    auto e1 = [&](int i, double x) { return std::exp(sys.kL[size_t(i)] * (x - sys.refL[size_t(i)])); };
    auto e2 = [&](int i, double x) { return std::exp(sys.kR[size_t(i)] * (x - sys.refR[size_t(i)])); };

    Eigen::Matrix<cplx, 8, 8>& A = sys.A;
    A.setZero();
    // rows 0,1: pi1_on(-L/2), pi1_off(-L/2)
    // rows 2,3: pi2_on(L/2),  pi2_off(L/2)
    // rows 4,5: value continuity at a (on, off)
    // rows 6,7: derivative continuity at a (on, off)
    A(0, 0) = 0.5;
    A(1, 0) = 0.5;
    A(4, 0) = 0.5;
    A(5, 0) = 0.5;
    A(2, 4) = 0.5;
    A(3, 4) = 0.5;
    A(4, 4) = -0.5;
    A(5, 4) = -0.5;
    for (int i = 0; i < 3; ++i) {
        const auto wl = weights_branch1(D, sys.slopeL, sys.kL[size_t(i)]);
        const auto wr = weights_branch2(D, sys.slopeR, sys.kR[size_t(i)]);
        const int cl = 1 + i, cr = 5 + i;
        A(0, cl) = wl.on * e1(i, -hw);
        A(1, cl) = wl.off * e1(i, -hw);
        A(2, cr) = wr.on * e2(i, hw);
        A(3, cr) = wr.off * e2(i, hw);
        A(4, cl) = wl.on * e1(i, a);
        A(5, cl) = wl.off * e1(i, a);
        A(4, cr) = -wr.on * e2(i, a);
        A(5, cr) = -wr.off * e2(i, a);
        A(6, cl) = sys.kL[size_t(i)] * wl.on * e1(i, a);
        A(7, cl) = sys.kL[size_t(i)] * wl.off * e1(i, a);
        A(6, cr) = -sys.kR[size_t(i)] * wr.on * e2(i, a);
        A(7, cr) = -sys.kR[size_t(i)] * wr.off * e2(i, a);
    }
    return sys;
}

}  // namespace

Solution solve(const RatchetParams& p) {
    if (std::fabs(p.h) < 1e-12)
        throw ZeroBarrier("barrier height ~ 0: potential never acts; use the decoupled solver");
    System sys = assemble(p);

    Eigen::JacobiSVD<Eigen::Matrix<cplx, 8, 8>> svd(sys.A);
    const double cond =
        svd.singularValues()(0) / std::max(svd.singularValues()(7), 1e-300);
    if (cond > 1e12)
        throw IllConditioned("boundary-matching system condition estimate " +
                             std::to_string(cond));

    Eigen::PartialPivLU<Eigen::Matrix<cplx, 8, 8>> lu(sys.A);
    Solution sol(p);
    sol.roots_left = sys.kL;
    sol.roots_right = sys.kR;
    sol.condition = cond;

    double max_residual = 0.0;
    for (int y1 = 0; y1 <= 1; ++y1) {  // 0 = off, 1 = on
        Eigen::Matrix<cplx, 8, 1> rhs = Eigen::Matrix<cplx, 8, 1>::Zero();
        rhs(0) = y1 == 1 ? 1.0 : 0.0;
        rhs(1) = y1 == 0 ? 1.0 : 0.0;
        Eigen::Matrix<cplx, 8, 1> x = lu.solve(rhs);
        x += lu.solve(rhs - sys.A * x);  // one refinement pass
        max_residual = std::max(max_residual, (sys.A * x - rhs).cwiseAbs().maxCoeff());

        // unscale back to the plain e^{k x} basis
        Eigen::Matrix<cplx, 8, 1> c = x;
        for (int i = 0; i < 3; ++i) {
            c(1 + i) *= std::exp(-sys.kL[size_t(i)] * sys.refL[size_t(i)]);
            c(5 + i) *= std::exp(-sys.kR[size_t(i)] * sys.refR[size_t(i)]);
        }
        sol.coeffs.col(y1) = c;
    }
    sol.residual = max_residual;
    if (!(sol.residual < 1e-9))
        throw IllConditioned("boundary matching residual " + std::to_string(sol.residual));
    return sol;
}

ValueDerivs evaluate(const Solution& sol, double x, bool y0_on, bool y1_on) {
    const RatchetParams& p = sol.params;
    if (std::fabs(x) > p.L / 2.0) throw OutOfDomain("x outside [-L/2, L/2]");
    const auto& c = sol.coeffs.col(y1_on ? 1 : 0);
    const bool branch1 = x <= p.a;
    cplx v = 0.5 * (branch1 ? c(0) : c(4));
    cplx d1 = 0.0, d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const cplx k = branch1 ? sol.roots_left[size_t(i)] : sol.roots_right[size_t(i)];
        const auto w = branch1 ? weights_branch1(p.D, sol.params.slope_left(), k)
                               : weights_branch2(p.D, sol.params.slope_right(), k);
        const cplx coef = (branch1 ? c(1 + i) : c(5 + i)) * (y0_on ? w.on : w.off);
        const cplx term = coef * std::exp(k * x);
        v += term;
        d1 += k * term;
        d2 += k * k * term;
    }
    return {v.real(), d1.real(), d2.real(), std::fabs(v.imag())};
}

double joint(const Solution& sol, double x0, bool y0_on, bool y1_on) {
    const ValueDerivs v = evaluate(sol, x0, y0_on, y1_on);
    if (!(v.imag_leak < 1e-9))
        throw Error("imaginary leakage " + std::to_string(v.imag_leak) + " in ratchet solution");
    return v.value;
}

namespace {

Eigen::Index state_index(bool on) { return on ? 0 : 1; }  // telegraph label order {on, off}

double decoupled_route(const RatchetParams& p, double x0, bool y0_on, ExitSide side,
                       bool y1_on) {
    const auto es = spectral::telegraph_eigensystem(p.r);
    const IntervalSpec iv = IntervalSpec::fully_permeable(p.L);
    return spectral::decoupled_joint(es, p.D, iv, x0, state_index(y0_on), side,
                                     state_index(y1_on));
}

}  // namespace

double joint(const RatchetParams& p, double x0, bool y0_on, ExitSide side, bool y1_on) {
    if (std::fabs(x0) > p.L / 2.0) throw OutOfDomain("x0 outside [-L/2, L/2]");
    if (std::fabs(p.h) < 1e-12) return decoupled_route(p, x0, y0_on, side, y1_on);
    if (side == ExitSide::Left) return joint(solve(p), x0, y0_on, y1_on);
    return joint(solve(p.mirrored()), -x0, y0_on, y1_on);
}

JointSplittingTable table(const RatchetParams& p, double x0, bool y0_on) {
    JointSplittingTable t;
    t.outcomes = OutcomeSpace::labels({"on", "off"});
    t.x0 = x0;
    t.y0 = y0_on ? "on" : "off";
    t.left = Eigen::ArrayXd(2);
    t.right = Eigen::ArrayXd(2);
    if (std::fabs(p.h) < 1e-12) {
        for (int on = 0; on <= 1; ++on) {
            t.left(state_index(on)) = decoupled_route(p, x0, y0_on, ExitSide::Left, on);
            t.right(state_index(on)) = decoupled_route(p, x0, y0_on, ExitSide::Right, on);
        }
        return t;
    }
    const Solution left_sol = solve(p);
    const Solution right_sol = solve(p.mirrored());
    for (int on = 0; on <= 1; ++on) {
        t.left(state_index(on)) = joint(left_sol, x0, y0_on, on);
        t.right(state_index(on)) = joint(right_sol, -x0, y0_on, on);
    }
    return t;
}

double conditional(const RatchetParams& p, double x0, const std::array<double, 2>& prior_on_off,
                   ExitSide side, bool y1_on) {
    std::vector<std::pair<double, JointSplittingTable>> weighted;
    weighted.emplace_back(prior_on_off[0], table(p, x0, true));
    weighted.emplace_back(prior_on_off[1], table(p, x0, false));
    const Posterior post = condition_with_prior(weighted, side);
    return post.weights(state_index(y1_on));
}

}  // namespace splitprob::ratchet
