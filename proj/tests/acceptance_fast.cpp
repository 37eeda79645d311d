// Analytic acceptance suite: boundary exactness, normalization,
// marginalization, backward-equation residuals, limit checks, resetting
// structure, Peclet sufficiency and inference calibration. One line per
// criterion; exit status 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "splitprob/bayes.hpp"
#include "splitprob/inference.hpp"
#include "splitprob/mc.hpp"
#include "splitprob/ratchet.hpp"
#include "splitprob/resetting.hpp"
#include "splitprob/rnt.hpp"
#include "splitprob/spectral.hpp"

using namespace splitprob;

namespace {

int g_failures = 0;

struct Criterion {
    std::string id;
    double worst = 0.0;       // worst deviation against the criterion's tolerance
    double tolerance = 0.0;
    bool pass = true;
    std::string note;

    void track(double deviation) {
        worst = std::max(worst, std::fabs(deviation));
        pass = pass && std::fabs(deviation) <= tolerance;
    }
    void require(bool ok, const std::string& why = "") {
        if (!ok) {
            pass = false;
            if (!why.empty()) note = why;
        }
    }
};

void finish(Criterion& c, std::chrono::steady_clock::time_point t0) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s: worst=%.3g tol=%.3g%s%s [%.2f s]\n", c.pass ? "PASS" : "FAIL",
                c.id.c_str(), c.worst, c.tolerance, c.note.empty() ? "" : " ", c.note.c_str(),
                secs);
    if (!c.pass) ++g_failures;
    std::fflush(stdout);
}

double frand(std::mt19937& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

// ---------------------------------------------------------------------------

void criterion1_boundary_exactness() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 1: delta table at a fully permeable boundary"};
    c.tolerance = 1e-12;

    // ripening (three hidden outcomes)
    {
        const auto es = spectral::ripening_eigensystem(spectral::RipeningParams(1.0, 10.0));
        const auto iv = IntervalSpec::fully_permeable(1.0);
        for (double x0 : {-0.5, 0.5}) {
            const ExitSide here = x0 < 0.0 ? ExitSide::Left : ExitSide::Right;
            for (Eigen::Index y0 = 0; y0 < 3; ++y0) {
                const auto t = spectral::decoupled_table(es, 0.3, iv, x0, y0);
                for (Eigen::Index y = 0; y < 3; ++y) {
                    c.track(t.side(here)(y) - (y == y0 ? 1.0 : 0.0));
                    c.track(t.side(opposite(here))(y));
                }
            }
        }
    }

    // OU: off-side mass vanishes exactly; the boundary table equals the
    // retained completeness kernel (the truncated-mode form of the delta),
    // cross-checked through the independently stored eigensystem matrices.
    {
        const spectral::OUParams p(1.0, 1.0);
        const auto iv = IntervalSpec::fully_permeable(2.0);
        const auto grid = spectral::ou_default_grid(p);
        const auto es = spectral::ou_eigensystem(p, 40, grid);
        const double y0 = 0.7;
        const auto table = spectral::ou_table(p, 1.0, iv, -1.0, y0, 40, grid);
        c.track(table.right.abs().maxCoeff());
        const Eigen::ArrayXd kernel =
            (es.left_modes.transpose() * es.right_at(y0).matrix()).array();
        c.track((table.left - kernel).abs().maxCoeff());
    }

    // RnT
    {
        const rnt::RnTParams p(1.0, 2.0, 0.1, 1.0);
        for (int y0 : {-1, +1})
            for (int ye : {-1, +1})
                for (auto side : {ExitSide::Left, ExitSide::Right}) {
                    const double here = side == ExitSide::Left ? -0.5 : 0.5;
                    c.track(rnt::joint(p, here, y0, side, ye) - (y0 == ye ? 1.0 : 0.0));
                    c.track(rnt::joint(p, -here, y0, side, ye));
                }
    }

    // ratchet, all reference parameter combinations
    for (double h : {1.0, 2.0, -1.0, -2.0})
        for (double a : {-1.0, 0.0, 1.0}) {
            const ratchet::RatchetParams p(h, a, 1.0, 1.0, 4.0);
            for (bool y0 : {false, true})
                for (bool ye : {false, true})
                    for (auto side : {ExitSide::Left, ExitSide::Right}) {
                        const double here = side == ExitSide::Left ? -2.0 : 2.0;
                        c.track(ratchet::joint(p, here, y0, side, ye) -
                                (y0 == ye ? 1.0 : 0.0));
                        c.track(ratchet::joint(p, -here, y0, side, ye));
                    }
        }

    // resetting (hidden outcome = reset count; y0 = 0 by construction)
    {
        const resetting::ResetParams p(1.0, 2.0, 1.0,
                                       resetting::ResetDistribution::delta(0.2));
        for (auto side : {ExitSide::Left, ExitSide::Right}) {
            const double here = side == ExitSide::Left ? -0.5 : 0.5;
            const auto t = resetting::table(p, here, 10);
            c.track(t.side(side)(0) - 1.0);
            c.track(t.side(side).tail(11).abs().maxCoeff());
            c.track(t.side(opposite(side)).abs().maxCoeff());
        }
    }

    finish(c, t0);
}

void criterion2_normalization() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 2: total mass = 1 over 100 random draws per model"};
    c.tolerance = 1e-8;
    std::mt19937 gen(2028);

    for (int i = 0; i < 100; ++i) {
        // ripening with a random boundary configuration (at least one open side)
        {
            double r = frand(gen, 0.2, 4.0), s = frand(gen, 0.2, 4.0);
            if (std::fabs(r - s) < 0.05) s += 0.2;
            const auto es = spectral::ripening_eigensystem(spectral::RipeningParams(r, s));
            const double L = frand(gen, 0.4, 3.0);
            auto rand_kappa = [&](bool must_open) {
                const int kind = int(frand(gen, 0.0, must_open ? 2.0 : 3.0));
                if (kind == 0) return Permeability::infinite();
                if (kind == 1) return Permeability::finite(frand(gen, 0.1, 20.0));
                return Permeability::finite(0.0);
            };
            const Permeability kl = rand_kappa(false);
            const IntervalSpec iv(L / 2.0, kl, rand_kappa(kl.is_reflecting()));
            const auto t = spectral::decoupled_table(es, frand(gen, 0.05, 2.0), iv,
                                                     frand(gen, -0.49, 0.49) * L,
                                                     Eigen::Index(i % 3));
            c.track(t.mass() - 1.0);
        }
        // OU on the default grid
        {
            const spectral::OUParams p(frand(gen, 0.3, 3.0), frand(gen, 0.3, 3.0));
            const double L = frand(gen, 0.5, 4.0);
            const auto t = spectral::ou_table(p, frand(gen, 0.3, 3.0),
                                              IntervalSpec::fully_permeable(L),
                                              frand(gen, -0.45, 0.45) * L,
                                              frand(gen, -1.5, 1.5) * p.ell(), 40,
                                              spectral::ou_default_grid(p));
            c.track(t.mass() - 1.0);
        }
        // RnT (nu = 0 included every tenth draw)
        {
            const rnt::RnTParams p(i % 10 == 0 ? 0.0 : frand(gen, 0.05, 2.5),
                                   frand(gen, 0.3, 4.0), frand(gen, 0.05, 2.0),
                                   frand(gen, 0.4, 3.0));
            const auto t = rnt::table(p, frand(gen, -0.49, 0.49) * p.L, i % 2 ? +1 : -1);
            c.track(t.mass() - 1.0);
        }
        // ratchet
        {
            const double L = frand(gen, 2.0, 5.0);
            const double h = (i % 2 ? 1.0 : -1.0) * frand(gen, 0.3, 2.5);
            const ratchet::RatchetParams p(h, frand(gen, -0.3, 0.3) * L, frand(gen, 0.3, 3.0),
                                           frand(gen, 0.4, 2.0), L);
            const auto t = ratchet::table(p, frand(gen, -0.45, 0.45) * L, i % 2 == 0);
            c.track(t.mass() - 1.0);
        }
        // resetting, rotating through the distribution variants
        {
            const double L = frand(gen, 0.5, 3.0);
            resetting::ResetDistribution dist =
                i % 3 == 0 ? resetting::ResetDistribution::delta(frand(gen, -0.4, 0.4) * L)
                : i % 3 == 1
                    ? resetting::ResetDistribution::uniform(-0.3 * L, frand(gen, 0.0, 0.45) * L)
                    : resetting::ResetDistribution::discrete(
                          {frand(gen, -0.45, 0.0) * L, frand(gen, 0.0, 0.45) * L},
                          {0.3, 0.7});
            const resetting::ResetParams p(frand(gen, 0.3, 3.0), frand(gen, 0.3, 5.0), L, dist);
            const auto t = resetting::table(p, frand(gen, -0.49, 0.49) * L, 40);
            c.track(t.mass() - 1.0);
        }
    }
    finish(c, t0);
}

void criterion3_marginalization() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 3: y-marginal reproduces the Brownian splitting probability"};
    c.tolerance = 1e-8;

    const auto es = spectral::ripening_eigensystem(spectral::RipeningParams(1.0, 10.0));
    const spectral::OUParams ou(1.0, 1.0);
    const auto ou_grid = spectral::ou_default_grid(ou);
    const double kappa = 2.0;

    for (int i = 0; i < 50; ++i) {
        const double x = -0.45 + 0.9 * i / 49.0;  // interior points, L = 1 and L = 2

        // fully permeable
        {
            const auto iv = IntervalSpec::fully_permeable(1.0);
            const auto t = spectral::decoupled_table(es, 0.3, iv, x, 0);
            c.track(t.side_marginal(ExitSide::Left) - (0.5 - x));
            const auto tou = spectral::ou_table(ou, 1.0, IntervalSpec::fully_permeable(2.0),
                                                2.0 * x, 0.8, 40, ou_grid);
            c.track(tou.side_marginal(ExitSide::Left) - (1.0 - 2.0 * x) / 2.0);
        }
        // Robin right boundary: S(x) and S~(x)
        {
            const IntervalSpec iv(0.5, Permeability::infinite(), Permeability::finite(kappa));
            const double S = (0.5 + 1.0 / kappa - x) / (1.0 + 1.0 / kappa);
            const auto t = spectral::decoupled_table(es, 0.3, iv, x, 0);
            c.track(t.side_marginal(ExitSide::Left) - S);
            c.track(t.side_marginal(ExitSide::Right) - (1.0 - S));
            const IntervalSpec iv2(1.0, Permeability::infinite(), Permeability::finite(kappa));
            const double S2 = (1.0 + 1.0 / kappa - 2.0 * x) / (2.0 + 1.0 / kappa);
            const auto tou = spectral::ou_table(ou, 1.0, iv2, 2.0 * x, 0.8, 40, ou_grid);
            c.track(tou.side_marginal(ExitSide::Left) - S2);
        }
    }
    finish(c, t0);
}

void criterion4_residuals() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 4: backward-equation residuals (finite differences)"};
    c.tolerance = 1e-8;
    std::mt19937 gen(4041);

    auto d1 = [](auto&& f, double x, double h) {
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    };
    auto d2 = [](auto&& f, double x, double h) {
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
               (12 * h * h);
    };

    // RnT
    for (int cfg = 0; cfg < 20; ++cfg) {
        const rnt::RnTParams p(frand(gen, 0.0, 2.5), frand(gen, 0.3, 4.0),
                               frand(gen, 0.05, 2.0), frand(gen, 0.4, 3.0));
        const double h = std::min(0.01 / p.k(), p.L / 100.0);
        for (int y1 : {-1, +1}) {
            auto pp = [&](double x) { return rnt::joint(p, x, +1, ExitSide::Left, y1); };
            auto pm = [&](double x) { return rnt::joint(p, x, -1, ExitSide::Left, y1); };
            for (int i = 0; i < 50; ++i) {
                const double x = frand(gen, -p.L / 2 + 2 * h, p.L / 2 - 2 * h);
                c.track(p.nu * d1(pp, x, h) + p.D * d2(pp, x, h) + p.alpha * (pm(x) - pp(x)));
                c.track(-p.nu * d1(pm, x, h) + p.D * d2(pm, x, h) + p.alpha * (pp(x) - pm(x)));
            }
        }
    }

    // ratchet
    for (int cfg = 0; cfg < 20; ++cfg) {
        const double L = frand(gen, 2.0, 5.0);
        const ratchet::RatchetParams p((cfg % 2 ? 1.0 : -1.0) * frand(gen, 0.3, 2.5),
                                       frand(gen, -0.3, 0.3) * L, frand(gen, 0.3, 3.0),
                                       frand(gen, 0.4, 2.0), L);
        const auto sol = ratchet::solve(p);
        double kmax = 1.0;
        for (const auto& k : sol.roots_left) kmax = std::max(kmax, std::abs(k));
        for (const auto& k : sol.roots_right) kmax = std::max(kmax, std::abs(k));
        const double h = std::min(0.01 / kmax, L / 200.0);
        for (bool y1 : {false, true}) {
            auto pon = [&](double x) { return ratchet::joint(sol, x, true, y1); };
            auto poff = [&](double x) { return ratchet::joint(sol, x, false, y1); };
            for (int i = 0; i < 25; ++i) {
                // branch 1, then branch 2
                double x = frand(gen, -L / 2 + 2 * h, p.a - 2 * h);
                c.track(p.D * d2(pon, x, h) - p.slope_left() * d1(pon, x, h) +
                        p.r * (poff(x) - pon(x)));
                c.track(p.D * d2(poff, x, h) + p.r * (pon(x) - poff(x)));
                x = frand(gen, p.a + 2 * h, L / 2 - 2 * h);
                c.track(p.D * d2(pon, x, h) + p.slope_right() * d1(pon, x, h) +
                        p.r * (poff(x) - pon(x)));
                c.track(p.D * d2(poff, x, h) + p.r * (pon(x) - poff(x)));
            }
        }
    }

    // resetting
    for (int cfg = 0; cfg < 20; ++cfg) {
        const double L = frand(gen, 0.5, 3.0);
        resetting::ResetDistribution dist =
            cfg % 2 ? resetting::ResetDistribution::delta(frand(gen, -0.4, 0.4) * L)
                    : resetting::ResetDistribution::discrete(
                          {frand(gen, -0.4, 0.0) * L, frand(gen, 0.0, 0.4) * L}, {0.5, 0.5});
        const resetting::ResetParams p(frand(gen, 0.3, 3.0), frand(gen, 0.3, 5.0), L, dist);
        const double h = std::min(0.005 / p.alpha(), L / 100.0);
        for (auto side : {ExitSide::Left, ExitSide::Right}) {
            auto f0 = [&](double x) { return resetting::pi0(p, x, side); };
            for (int i = 0; i < 25; ++i) {
                double x = frand(gen, -L / 2 + 2 * h, L / 2 - 2 * h);
                c.track(p.D * d2(f0, x, h) - p.r * f0(x));
                for (long n : {1L, 2L}) {
                    auto fn = [&](double xx) { return resetting::pin(p, xx, side, n); };
                    double feed = 0.0;
                    for (size_t j = 0; j < dist.points().size(); ++j)
                        feed += dist.weights()[j] *
                                (n == 1 ? resetting::pi0(p, dist.points()[j], side)
                                        : resetting::pin(p, dist.points()[j], side, n - 1));
                    c.track(p.D * d2(fn, x, h) - p.r * fn(x) + p.r * feed);
                }
            }
        }
    }
    finish(c, t0);
}

void criterion6_limits() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 6: limit checks (Robin, reflecting, factorization, Pe)"};
    c.tolerance = 1.0;  // aggregate of per-part tolerances; parts tracked scaled

    const auto es = spectral::ripening_eigensystem(spectral::RipeningParams(1.0, 10.0));
    std::mt19937 gen(66);

    // (a) kappa -> infinity matches the fully permeable formula, 1e-10
    {
        const auto iv_inf = IntervalSpec::fully_permeable(1.0);
        const IntervalSpec iv_big(0.5, Permeability::infinite(), Permeability::finite(1e12));
        const IntervalSpec iv_both(0.5, Permeability::finite(1e12), Permeability::finite(1e12));
        for (int i = 0; i < 20; ++i) {
            const double x = frand(gen, -0.49, 0.49);
            const Eigen::Index y0 = i % 3, ye = (i + 1) % 3;
            for (auto side : {ExitSide::Left, ExitSide::Right}) {
                const double ref = spectral::decoupled_joint(es, 0.3, iv_inf, x, y0, side, ye);
                c.require(std::fabs(spectral::decoupled_joint(es, 0.3, iv_big, x, y0, side, ye) -
                                    ref) <= 1e-10,
                          "robin kappa=1e12 vs fully permeable");
                c.require(std::fabs(spectral::decoupled_joint(es, 0.3, iv_both, x, y0, side, ye) -
                                    ref) <= 1e-10,
                          "two-sided kappa=1e12 vs fully permeable");
            }
        }
    }

    // (b) kappa = 0 blocks a side and routes all mass through the other, 1e-8
    {
        const IntervalSpec iv(0.5, Permeability::infinite(), Permeability::finite(0.0));
        for (int i = 0; i < 20; ++i) {
            const auto t = spectral::decoupled_table(es, 0.3, iv, frand(gen, -0.49, 0.49), i % 3);
            c.require(t.side_marginal(ExitSide::Right) == 0.0, "blocked side must be zero");
            c.require(std::fabs(t.side_marginal(ExitSide::Left) - 1.0) <= 1e-8,
                      "open side must carry all mass");
        }
    }

    // (c) D-halving: exponential approach to rho_steady * S(x)
    {
        const auto iv = IntervalSpec::fully_permeable(1.0);
        const auto lim = spectral::decoupled_factorization_limit(es, iv, 0.0);
        std::vector<double> devs;
        for (double D : {0.05, 0.025, 0.0125, 0.00625}) {
            double dev = 0.0;
            for (Eigen::Index ye = 0; ye < 3; ++ye)
                dev = std::max(dev,
                               std::fabs(spectral::decoupled_joint(es, D, iv, 0.0, 0,
                                                                   ExitSide::Left, ye) /
                                             lim.S -
                                         lim.rho_steady(ye)));
            c.require(dev <= 5.0 * std::exp(-std::sqrt(1.0 / D) * 0.5),
                      "factorization deviation bound");
            devs.push_back(dev);
        }
        for (size_t i = 1; i < devs.size(); ++i) {
            const double ratio = std::log(devs[i]) / std::log(devs[i - 1]);
            c.require(ratio > 1.2 && ratio < 1.65, "log-dev should scale like 1/sqrt(D)");
        }
    }

    // (d) RnT conditional -> 1/2 and -> 1; Pe controlled through D at L = 1
    {
        auto cond_at = [&](double peclet) {
            const rnt::RnTParams p(1.0, 1.0, 1.0 / peclet, 1.0);
            return rnt::conditional(p, 0.0, {0.5, 0.5}, ExitSide::Left, -1);
        };
        const double low = cond_at(1e-3), high = cond_at(1e3);
        c.require(low <= 0.501, "Pe=1e-3 conditional must be <= 0.501");
        c.require(high >= 0.99, "Pe=1e3 conditional must be >= 0.99");
        c.require(rnt::asymptote(1e3) >= 0.99, "asymptote at Pe=1e3");
        char buf[96];
        std::snprintf(buf, sizeof(buf), "cond(Pe=1e-3)=%.6f cond(Pe=1e3)=%.6f", low, high);
        c.note += buf;
    }

    finish(c, t0);
}

void criterion7_resetting_structure() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 7 (analytic): resetting geometric structure"};
    c.tolerance = 1e-10;

    const resetting::ResetParams p(1.0, 2.0, 1.0, resetting::ResetDistribution::delta(0.2));
    const double ratio = resetting::geometric_ratio(p);

    // recurrence ratio constant in n, 1e-12
    for (double x0 : {-0.4, -0.1, 0.25}) {
        for (long n = 1; n <= 15; ++n) {
            const double r = resetting::pin(p, x0, ExitSide::Left, n + 1) /
                             resetting::pin(p, x0, ExitSide::Left, n);
            c.require(std::fabs(r - ratio) <= 1e-12, "pin successor ratio");
        }
    }
    // piR equals the geometric sum, 1e-10
    for (double x0 : {-0.45, 0.0, 0.37}) {
        for (auto side : {ExitSide::Left, ExitSide::Right}) {
            double partial = 0.0;
            for (long n = 1; n <= 200; ++n) partial += resetting::pin(p, x0, side, n);
            partial += resetting::pin(p, x0, side, 200) * ratio / (1.0 - ratio);
            c.track(partial - resetting::piR(p, x0, side));
        }
    }
    // posterior mode at n = 0 for the tested configurations
    for (double alpha : {0.5, 1.0, 1.41421356, 2.0}) {
        const resetting::ResetParams q(1.0, alpha * alpha, 5.0,
                                       resetting::ResetDistribution::delta(0.2));
        double prev = resetting::conditional_n(q, 0.0, ExitSide::Left, 0);
        for (long n = 1; n <= 10; ++n) {
            const double cur = resetting::conditional_n(q, 0.0, ExitSide::Left, n);
            c.require(cur < prev, "posterior must decrease monotonically from n=0");
            prev = cur;
        }
    }
    finish(c, t0);
}

void criterion8_pe_sufficiency() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 8: L->inf conditional depends on Pe alone"};
    c.tolerance = 1e-6;
    for (double pe : {0.1, 1.0, 10.0}) {
        const double a = rnt::asymptote(std::sqrt(pe * 1.0 * 1.0), 1.0, 1.0);
        const double b = rnt::asymptote(std::sqrt(pe * 4.0 * 1.0), 4.0, 1.0);
        const double d = rnt::asymptote(std::sqrt(pe * 0.5 * 2.0), 0.5, 2.0);
        c.track(a - b);
        c.track(a - d);
    }
    finish(c, t0);
}

void criterion9_inference_compounding() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{"criterion 9: log-odds slope matches the exit-side KL divergence"};
    c.tolerance = 0.10;

    const double L = 5.0;
    const rnt::RnTParams truth(std::sqrt(10.0), 1.0, 1.0, L);
    const rnt::RnTParams other(std::sqrt(0.1), 1.0, 1.0, L);
    const double p_truth = rnt::joint(truth, 0.0, +1, ExitSide::Left, -1) +
                           rnt::joint(truth, 0.0, +1, ExitSide::Left, +1);
    const double p_other = rnt::joint(other, 0.0, +1, ExitSide::Left, -1) +
                           rnt::joint(other, 0.0, +1, ExitSide::Left, +1);
    const double kl = infer::exit_kl(p_truth, p_other);

    Eigen::ArrayX2d side_probs(2, 2);
    side_probs << p_truth, 1.0 - p_truth, p_other, 1.0 - p_other;

    auto run = [&]() {
        mc::Xoshiro256pp rng(90210);
        std::vector<ExitSide> events;
        events.reserve(10000);
        for (long i = 0; i < 10000; ++i)
            events.push_back(rng.uniform() < p_truth ? ExitSide::Left : ExitSide::Right);
        const auto hs = infer::compound_events(infer::HypothesisSet::uniform({"truth", "other"}),
                                               events, side_probs);
        return hs.log_odds(0, 1) / 10000.0;
    };
    const double slope = run();
    c.track((slope - kl) / kl);
    c.require(run() == slope, "fixed seed must be deterministic");
    c.note = "slope=" + std::to_string(slope) + " kl=" + std::to_string(kl);
    finish(c, t0);
}

}  // namespace

int main() {
    std::printf("analytic acceptance suite\n");
    criterion1_boundary_exactness();
    criterion2_normalization();
    criterion3_marginalization();
    criterion4_residuals();
    criterion6_limits();
    criterion7_resetting_structure();
    criterion8_pe_sufficiency();
    criterion9_inference_compounding();
    std::printf("%s (%d failed)\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
    return g_failures == 0 ? 0 : 1;
}
