#include "splitprob/mc.hpp"

#include <cmath>
#include <thread>

namespace splitprob::mc {

namespace {

struct TrialResult {
    int side = -1;     // 0 left, 1 right, -1 max_steps exceeded
    int outcome = -1;  // outcome index
};

// Runs cfg.n_trials independent trials of `trial` across a worker pool and
// merges the counts. Each trial draws its RNG substream from (seed, index),
// so the partition has no effect on the result.
template <class TrialFn>
EstimateTable run_trials(std::vector<std::string> labels, const SimConfig& cfg,
                         std::string model, TrialFn&& trial) {
    const Eigen::Index n_out = Eigen::Index(labels.size());
    int n_threads = cfg.n_threads > 0 ? cfg.n_threads
                                      : int(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = int(std::min<long>(n_threads, cfg.n_trials));

    std::vector<Eigen::Array<long, 2, Eigen::Dynamic>> local(
        size_t(n_threads), Eigen::Array<long, 2, Eigen::Dynamic>::Zero(2, n_out));
    std::vector<long> local_maxed(size_t(n_threads), 0);

    auto worker = [&](int t) {
        const long lo = cfg.n_trials * t / n_threads;
        const long hi = cfg.n_trials * (t + 1) / n_threads;
        auto& counts = local[size_t(t)];
        for (long i = lo; i < hi; ++i) {
            Xoshiro256pp rng = Xoshiro256pp::substream(cfg.seed, std::uint64_t(i));
            const TrialResult res = trial(rng);
            if (res.side < 0)
                ++local_maxed[size_t(t)];
            else
                ++counts(res.side, res.outcome);
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    EstimateTable table;
    table.outcome_labels = std::move(labels);
    table.counts = Eigen::Array<long, 2, Eigen::Dynamic>::Zero(2, n_out);
    for (int t = 0; t < n_threads; ++t) {
        table.counts += local[size_t(t)];
        table.n_max_steps_exceeded += local_maxed[size_t(t)];
    }
    table.n_trials = cfg.n_trials;
    table.config = cfg;
    table.model = std::move(model);
    return table;
}

double exponential(Xoshiro256pp& rng, double rate) {
    return -std::log(1.0 - rng.uniform()) / rate;
}

// Checks and resolves boundary crossings; returns 0/1 for an absorbing exit,
// -1 if the walker stays inside (possibly after mirror reflections).
inline int resolve_boundaries(double& x, const IntervalSpec& iv, double D, double dt,
                              Xoshiro256pp& rng) {
    const double hw = iv.half_width;
    while (x < -hw || x > hw) {
        if (x < -hw) {
            const Permeability& kap = iv.kappa_left;
            if (kap.is_infinite()) return 0;
            if (!kap.is_reflecting() &&
                robin_boundary_step(kap, D, dt, rng) == BoundaryOutcome::Absorbed)
                return 0;
            x = -2.0 * hw - x;
        } else {
            const Permeability& kap = iv.kappa_right;
            if (kap.is_infinite()) return 1;
            if (!kap.is_reflecting() &&
                robin_boundary_step(kap, D, dt, rng) == BoundaryOutcome::Absorbed)
                return 1;
            x = 2.0 * hw - x;
        }
    }
    return -1;
}

}  // namespace

BoundaryOutcome robin_boundary_step(const Permeability& kappa, double D, double dt,
                                    Xoshiro256pp& rng) {
    if (kappa.is_infinite()) return BoundaryOutcome::Absorbed;
    const double p_abs = std::min(1.0, kappa.value() * std::sqrt(M_PI * D * dt));
    return rng.uniform() < p_abs ? BoundaryOutcome::Absorbed : BoundaryOutcome::Reflected;
}

EstimateTable simulate_ripening(const spectral::RipeningParams& p, double D,
                                const IntervalSpec& iv, double x0, int y0_index,
                                const SimConfig& cfg) {
    iv.require_inside(x0);
    if (y0_index < 0 || y0_index > 2) throw Error("ripening y0 index must be 0 (U), 1 (R) or 2 (S)");
    const double sig = std::sqrt(2.0 * D * cfg.dt);
    const auto& zig = ziggurat();

    auto trial = [&, sig](Xoshiro256pp& rng) -> TrialResult {
        // exact jump clocks: the chain is decoupled from X
        double t_ripen = 0.0, t_spoil = 0.0;
        if (y0_index == 0) {
            t_ripen = exponential(rng, p.r);
            t_spoil = t_ripen + exponential(rng, p.s);
        } else if (y0_index == 1) {
            t_spoil = exponential(rng, p.s);
        }
        double x = x0;
        for (long n = 0; n < cfg.max_steps; ++n) {
            const double t = double(n) * cfg.dt;
            int y = 2;
            if (y0_index == 0 && t < t_ripen)
                y = 0;
            else if (y0_index <= 1 && t < t_spoil)
                y = 1;
            x += sig * zig(rng);
            const int side = resolve_boundaries(x, iv, D, cfg.dt, rng);
            if (side >= 0) return {side, y};
        }
        return {};
    };
    return run_trials({"U", "R", "S"}, cfg, "ripening", trial);
}

EstimateTable simulate_ou(const spectral::OUParams& p, double D, const IntervalSpec& iv,
                          double x0, double y0, double lo, double hi, int n_bins,
                          const SimConfig& cfg) {
    iv.require_inside(x0);
    if (n_bins < 1 || !(hi > lo)) throw Error("OU histogram needs hi > lo and n_bins >= 1");
    const double sig = std::sqrt(2.0 * D * cfg.dt);
    const double decay = std::exp(-p.mu * cfg.dt);
    const double ynoise = p.ell() * std::sqrt(-std::expm1(-2.0 * p.mu * cfg.dt));
    const double inv_width = n_bins / (hi - lo);
    const auto& zig = ziggurat();

    auto trial = [&, sig, decay, ynoise, inv_width](Xoshiro256pp& rng) -> TrialResult {
        double x = x0, y = y0;
        for (long n = 0; n < cfg.max_steps; ++n) {
            x += sig * zig(rng);
            const int side = resolve_boundaries(x, iv, D, cfg.dt, rng);
            if (side >= 0) {
                int bin = int(std::floor((y - lo) * inv_width));
                bin = std::max(0, std::min(n_bins - 1, bin));
                return {side, bin};
            }
            y = y * decay + ynoise * zig(rng);  // exact OU transition kernel
        }
        return {};
    };

    std::vector<std::string> labels;
    labels.reserve(size_t(n_bins));
    for (int b = 0; b < n_bins; ++b) labels.push_back("bin" + std::to_string(b));
    return run_trials(std::move(labels), cfg, "ou", trial);
}

EstimateTable simulate_rnt(const rnt::RnTParams& p, double x0, int y0, const SimConfig& cfg) {
    if (std::fabs(x0) > p.L / 2.0) throw OutOfDomain("x0 outside [-L/2, L/2]");
    if (y0 != -1 && y0 != 1) throw Error("RnT y0 must be -1 or +1");
    const double sig = std::sqrt(2.0 * p.D * cfg.dt);
    const double vdt = p.nu * cfg.dt;
    const double flip_prob = p.alpha * cfg.dt;
    const auto& zig = ziggurat();

    auto trial = [&, sig, vdt, flip_prob](Xoshiro256pp& rng) -> TrialResult {
        double x = x0;
        int y = y0;
        double t_flip = cfg.exact_clocks ? exponential(rng, p.alpha) : 0.0;
        for (long n = 0; n < cfg.max_steps; ++n) {
            x += y * vdt + sig * zig(rng);
            if (x < -p.L / 2.0) return {0, y < 0 ? 0 : 1};
            if (x > p.L / 2.0) return {1, y < 0 ? 0 : 1};
            if (cfg.exact_clocks) {
                t_flip -= cfg.dt;
                while (t_flip <= 0.0) {
                    y = -y;
                    t_flip += exponential(rng, p.alpha);
                }
            } else if (rng.uniform() < flip_prob) {
                y = -y;
            }
        }
        return {};
    };
    return run_trials({"-1", "+1"}, cfg, "rnt", trial);
}

EstimateTable simulate_ratchet(const ratchet::RatchetParams& p, double x0, bool y0_on,
                               const SimConfig& cfg) {
    if (std::fabs(x0) > p.L / 2.0) throw OutOfDomain("x0 outside [-L/2, L/2]");
    const double sig = std::sqrt(2.0 * p.D * cfg.dt);
    const double drift_left = -p.slope_left() * cfg.dt;   // force -V' on [-L/2, a]
    const double drift_right = p.slope_right() * cfg.dt;  // force -V' on [a, L/2]
    const double flip_prob = p.r * cfg.dt;
    const double hw = p.L / 2.0;
    const auto& zig = ziggurat();

    auto trial = [&, sig, drift_left, drift_right, flip_prob, hw](Xoshiro256pp& rng) -> TrialResult {
        double x = x0;
        bool on = y0_on;
        double t_flip = cfg.exact_clocks ? exponential(rng, p.r) : 0.0;
        for (long n = 0; n < cfg.max_steps; ++n) {
            double dx = sig * zig(rng);
            if (on) dx += (x <= p.a) ? drift_left : drift_right;
            x += dx;
            if (x < -hw) return {0, on ? 0 : 1};
            if (x > hw) return {1, on ? 0 : 1};
            if (cfg.exact_clocks) {
                t_flip -= cfg.dt;
                while (t_flip <= 0.0) {
                    on = !on;
                    t_flip += exponential(rng, p.r);
                }
            } else if (rng.uniform() < flip_prob) {
                on = !on;
            }
        }
        return {};
    };
    return run_trials({"on", "off"}, cfg, "ratchet", trial);
}

EstimateTable simulate_resetting(const resetting::ResetParams& p, double x0, long n_max,
                                 const SimConfig& cfg) {
    if (std::fabs(x0) > p.L / 2.0) throw OutOfDomain("x0 outside [-L/2, L/2]");
    if (n_max < 1) throw Error("n_max must be >= 1");
    const double sig = std::sqrt(2.0 * p.D * cfg.dt);
    const double reset_prob = p.r * cfg.dt;
    const double hw = p.L / 2.0;
    const auto& zig = ziggurat();
    const auto& dist = p.dist;

    auto sample_reset = [&dist](Xoshiro256pp& rng) -> double {
        switch (dist.kind()) {
            case resetting::ResetDistribution::Kind::Delta:
                return dist.points()[0];
            case resetting::ResetDistribution::Kind::Uniform:
                return dist.points()[0] + rng.uniform() * (dist.points()[1] - dist.points()[0]);
            case resetting::ResetDistribution::Kind::Discrete: {
                double u = rng.uniform();
                for (size_t i = 0; i < dist.points().size(); ++i) {
                    u -= dist.weights()[i];
                    if (u <= 0.0) return dist.points()[i];
                }
                return dist.points().back();
            }
        }
        return 0.0;
    };

    auto trial = [&, sig, reset_prob, hw](Xoshiro256pp& rng) -> TrialResult {
        double x = x0;
        long resets = 0;
        for (long n = 0; n < cfg.max_steps; ++n) {
            if (rng.uniform() < reset_prob) {
                x = sample_reset(rng);
                ++resets;
            } else {
                x += sig * zig(rng);
            }
            if (x < -hw || x > hw) {
                const int side = x < -hw ? 0 : 1;
                const int outcome = int(std::min(resets, n_max + 1));
                return {side, outcome};
            }
        }
        return {};
    };

    std::vector<std::string> labels;
    labels.reserve(size_t(n_max) + 2);
    for (long n = 0; n <= n_max; ++n) labels.push_back(std::to_string(n));
    labels.push_back("R");
    return run_trials(std::move(labels), cfg, "resetting", trial);
}

}  // namespace splitprob::mc
