#include "splitprob/rnt.hpp"

#include "splitprob/hyperbolic.hpp"

namespace splitprob::rnt {

namespace {

void check_state(int y) {
    if (y != -1 && y != 1) throw Error("RnT state must be -1 or +1");
}

// Shared rescaled quantities. With u = kL/2 and the boundary-layer scalings
// s_hat = sinh(u) e^{-u}, c_hat = cosh(u) e^{-u}, every coefficient below is
// finite for all nu >= 0 and all kL, and sigma/rho are assembled from
// exponentials with non-positive arguments only.
struct Scaled {
    double k, u, eu2, s_hat, c_hat, nu_dk, e_hat;

    explicit Scaled(const RnTParams& p) {
        k = p.k();
        u = 0.5 * k * p.L;
        eu2 = std::exp(-2.0 * u);
        s_hat = 0.5 * (1.0 - eu2);
        c_hat = 0.5 * (1.0 + eu2);
        nu_dk = p.nu / (p.D * k);
        e_hat = p.alpha * p.L * c_hat + p.nu * nu_dk * s_hat;  // E e^{-u}
    }
};

struct Coeffs {
    double gamma2, gamma3;  // c2 e^{u}, c3 e^{u}
    double c1, slope, c4l;  // slope = (2 alpha / nu) c1, c4l = (nu / D k) c4
};

Coeffs coeffs(const RnTParams& p, const Scaled& s, int y1) {
    const double aL = p.alpha * p.L;
    const double a2 = aL + y1 * p.nu + p.nu * s.nu_dk;
    Coeffs c;
    c.gamma2 = -(y1 / 4.0) * (a2 * s.s_hat + aL * s.c_hat) / (s.e_hat * s.s_hat);
    c.gamma3 = -(y1 / 4.0) * ((y1 * p.nu - p.nu * s.nu_dk) * s.s_hat - aL * s.eu2) /
               (s.e_hat * s.s_hat);
    c.c1 = 0.5 * p.nu * (s.c_hat - y1 * s.nu_dk * s.s_hat) / s.e_hat;
    c.slope = p.alpha * (s.c_hat - y1 * s.nu_dk * s.s_hat) / s.e_hat;
    c.c4l = 0.5 * (1.0 - y1 * s.nu_dk * s.c_hat / s.s_hat);
    return c;
}

}  // namespace

Constants constants(const RnTParams& p, int y_exit) {
    check_state(y_exit);
    if (!(p.nu > 0.0)) throw Error("raw constants require nu > 0; use components() at nu = 0");
    const double k = p.k(), u = 0.5 * k * p.L;
    const double ch = std::cosh(u), sh = std::sinh(u);
    const double nu_dk = p.nu / (p.D * k);
    const double denom = (p.alpha * p.L / p.nu) * ch + nu_dk * sh;
    Constants c;
    c.c1 = 0.5 * (ch - y_exit * nu_dk * sh) / denom;
    c.c2 = -(y_exit / 4.0) * ((p.alpha * p.L / p.nu + y_exit) / denom + detail::csch(u));
    c.c3 = -(y_exit / 4.0) * ((p.alpha * p.L / p.nu + y_exit) / denom - detail::csch(u));
    c.c4 = 0.5 * (1.0 / nu_dk - y_exit * detail::coth(u));
    return c;
}

PolarityComponents components(const RnTParams& p, int y_exit, double x) {
    check_state(y_exit);
    const Scaled s(p);
    const Coeffs c = coeffs(p, s, y_exit);
    const double ep = std::exp(s.k * x - s.u);    // e^{k(x - L/2)} <= 1
    const double em = std::exp(-s.k * x - s.u);   // e^{-k(x + L/2)} <= 1

    PolarityComponents out;
    out.sigma = c.gamma3 * ep + c.gamma2 * em + c.c1;
    out.rho = c.c4l + s.nu_dk * (c.gamma3 * ep - c.gamma2 * em) - c.slope * x;
    out.dsigma = s.k * (c.gamma3 * ep - c.gamma2 * em);
    out.drho = (p.nu / p.D) * (out.sigma - c.c1) - c.slope;
    out.d2sigma = s.k * s.k * (out.sigma - c.c1);
    out.d2rho = (p.nu / p.D) * out.dsigma;
    return out;
}

double joint(const RnTParams& p, double x0, int y0, ExitSide side, int y_exit) {
    check_state(y0);
    check_state(y_exit);
    if (std::fabs(x0) > 0.5 * p.L) throw OutOfDomain("x0 outside [-L/2, L/2]");
    if (side == ExitSide::Right) return joint(p, -x0, -y0, ExitSide::Left, -y_exit);
    const PolarityComponents pc = components(p, y_exit, x0);
    return 0.5 * (pc.rho - y0 * pc.sigma);
}

JointSplittingTable table(const RnTParams& p, double x0, int y0) {
    JointSplittingTable t;
    t.outcomes = OutcomeSpace::labels({"-1", "+1"});
    t.x0 = x0;
    t.y0 = y0 < 0 ? "-1" : "+1";
    t.left = Eigen::ArrayXd(2);
    t.right = Eigen::ArrayXd(2);
    t.left << joint(p, x0, y0, ExitSide::Left, -1), joint(p, x0, y0, ExitSide::Left, +1);
    t.right << joint(p, x0, y0, ExitSide::Right, -1), joint(p, x0, y0, ExitSide::Right, +1);
    return t;
}

double side_marginal(const RnTParams& p, double x0, const std::array<double, 2>& prior,
                     ExitSide side) {
    double m = 0.0;
    const int y0s[2] = {-1, +1};
    for (int i = 0; i < 2; ++i)
        m += prior[size_t(i)] *
             (joint(p, x0, y0s[i], side, -1) + joint(p, x0, y0s[i], side, +1));
    return m;
}

double conditional(const RnTParams& p, double x0, const std::array<double, 2>& prior,
                   ExitSide side, int y_exit) {
    const double den = side_marginal(p, x0, prior, side);
    if (!(den > 0.0))
        throw ZeroMarginal(std::string("prior-weighted exit via ") + to_string(side) +
                           " has zero probability");
    const double num = prior[0] * joint(p, x0, -1, side, y_exit) +
                       prior[1] * joint(p, x0, +1, side, y_exit);
    return num / den;
}

double asymptote(double nu, double alpha, double D) {
    if (!(nu > 0.0)) return 0.5;
    const double k = std::sqrt(nu * nu / (D * D) + 2.0 * alpha / D);
    double L = 50.0 / k;
    double value = conditional(RnTParams(nu, alpha, D, L), 0.0, {0.5, 0.5}, ExitSide::Left, -1);
    for (int i = 0; i < 8; ++i) {
        L *= 2.0;
        const double next =
            conditional(RnTParams(nu, alpha, D, L), 0.0, {0.5, 0.5}, ExitSide::Left, -1);
        const bool settled = std::fabs(next - value) < 1e-8;
        value = next;
        if (settled) break;
    }
    return value;
}

double asymptote(double peclet) {
    if (!(peclet > 0.0)) throw Error("Peclet number must be positive");
    return asymptote(std::sqrt(peclet), 1.0, 1.0);
}

}  // namespace splitprob::rnt
