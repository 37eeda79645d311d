#include <cmath>

#include "doctest.h"
#include "splitprob/inference.hpp"
#include "splitprob/io.hpp"
#include "splitprob/mc.hpp"
#include "splitprob/models.hpp"
#include "splitprob/rnt.hpp"

using namespace splitprob;
using namespace splitprob::infer;

TEST_CASE("hypothesis set basics") {
    CHECK_THROWS_AS(HypothesisSet::uniform({"only"}), Error);
    auto hs = HypothesisSet::with_prior({"a", "b"}, (Eigen::ArrayXd(2) << 3.0, 1.0).finished());
    CHECK(hs.weight_of("a") == doctest::Approx(0.75));
    CHECK(hs.weight_of("b") == doctest::Approx(0.25));
}

TEST_CASE("identical likelihoods leave the posterior unchanged") {
    auto hs = HypothesisSet::with_prior({"a", "b"}, (Eigen::ArrayXd(2) << 0.7, 0.3).finished());
    const auto after =
        posterior_update(hs, ExitSide::Left, (Eigen::ArrayXd(2) << 0.4, 0.4).finished());
    CHECK(after.weight_of("a") == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(after.weight_of("b") == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("zero likelihood kills a hypothesis exactly") {
    auto hs = HypothesisSet::uniform({"a", "b"});
    const auto after =
        posterior_update(hs, ExitSide::Left, (Eigen::ArrayXd(2) << 0.0, 0.5).finished());
    CHECK(after.weight_of("a") == 0.0);
    CHECK(after.weight_of("b") == 1.0);
    CHECK_THROWS_AS(
        posterior_update(hs, ExitSide::Left, (Eigen::ArrayXd(2) << 0.0, 0.0).finished()),
        AllZeroLikelihood);
}

TEST_CASE("compounding is order invariant") {
    Eigen::ArrayX2d side_probs(2, 2);
    side_probs << 0.3, 0.7, 0.6, 0.4;
    std::vector<ExitSide> events;
    for (int i = 0; i < 200; ++i)
        events.push_back(i % 3 == 0 ? ExitSide::Left : ExitSide::Right);

    const auto hs = HypothesisSet::uniform({"a", "b"});
    const auto fwd = compound_events(hs, events, side_probs);
    std::reverse(events.begin(), events.end());
    const auto bwd = compound_events(hs, events, side_probs);
    CHECK(std::fabs(fwd.log_odds(0, 1) - bwd.log_odds(0, 1)) < 1e-12);
}

TEST_CASE("log-odds growth rate equals the exit-side KL divergence") {
    // two RnT hypotheses distinguished by their Peclet number; events are
    // fresh re-initialisations at (x0 = 0, y0 = +1) observed by exit side
    const double L = 5.0;
    const rnt::RnTParams truth(std::sqrt(10.0), 1.0, 1.0, L);  // Pe = 10
    const rnt::RnTParams other(std::sqrt(0.1), 1.0, 1.0, L);   // Pe = 0.1
    const double p_truth =
        rnt::joint(truth, 0.0, +1, ExitSide::Left, -1) + rnt::joint(truth, 0.0, +1, ExitSide::Left, +1);
    const double p_other =
        rnt::joint(other, 0.0, +1, ExitSide::Left, -1) + rnt::joint(other, 0.0, +1, ExitSide::Left, +1);
    const double kl = exit_kl(p_truth, p_other);
    CHECK(kl > 0.01);

    Eigen::ArrayX2d side_probs(2, 2);
    side_probs << p_truth, 1.0 - p_truth, p_other, 1.0 - p_other;

    mc::Xoshiro256pp rng(2024);
    const long K = 10000;
    std::vector<ExitSide> events;
    events.reserve(K);
    for (long i = 0; i < K; ++i)
        events.push_back(rng.uniform() < p_truth ? ExitSide::Left : ExitSide::Right);

    const auto final_set = compound_events(HypothesisSet::uniform({"truth", "other"}), events,
                                           side_probs);
    const double slope = final_set.log_odds(0, 1) / double(K);
    CHECK(std::fabs(slope - kl) / kl < 0.10);
}

TEST_CASE("single_event_posterior routes through each model") {
    SUBCASE("RnT with a symmetric prior matches the module conditional") {
        const models::ModelSpec spec = models::RnTModel{rnt::RnTParams(1.0, 2.0, 0.1, 1.0)};
        const std::map<std::string, double> prior{{"-1", 0.5}, {"+1", 0.5}};
        const Posterior post = models::single_event_posterior(spec, 0.0, prior, ExitSide::Left);
        const rnt::RnTParams p(1.0, 2.0, 0.1, 1.0);
        CHECK(post.weights(0) ==
              doctest::Approx(rnt::conditional(p, 0.0, {0.5, 0.5}, ExitSide::Left, -1))
                  .epsilon(1e-12));
        CHECK(post.weights(1) ==
              doctest::Approx(rnt::conditional(p, 0.0, {0.5, 0.5}, ExitSide::Left, +1))
                  .epsilon(1e-12));
    }

    SUBCASE("decoupled model with the stationary prior returns the stationary posterior") {
        const models::ModelSpec spec = models::RipeningModel{
            spectral::RipeningParams(1.0, 10.0), 0.3, IntervalSpec::fully_permeable(1.0)};
        const std::map<std::string, double> prior{{"S", 1.0}};  // stationary: everything spoiled
        for (auto side : {ExitSide::Left, ExitSide::Right}) {
            const Posterior post = models::single_event_posterior(spec, 0.2, prior, side);
            CHECK(post.weights(0) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(post.weights(1) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(post.weights(2) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("resetting posterior over counts") {
        const resetting::ResetParams p(1.0, 2.0, 1.0, resetting::ResetDistribution::delta(0.2));
        const models::ModelSpec spec = models::ResettingModel{p, 40};
        const std::map<std::string, double> prior{{"0", 1.0}};
        const Posterior post = models::single_event_posterior(spec, -0.1, prior, ExitSide::Left);
        for (long n : {0L, 1L, 4L})
            CHECK(post.weights(n) ==
                  doctest::Approx(resetting::conditional_n(p, -0.1, ExitSide::Left, n))
                      .epsilon(1e-10));
    }

    SUBCASE("OU posterior from the dispatch layer") {
        const spectral::OUParams op(1.0, 1.0);
        const models::ModelSpec spec =
            models::OUModel{op, 1.0, IntervalSpec::fully_permeable(2.0), 60, OutcomeSpace{}};
        const std::map<std::string, double> prior{{"1.0", 1.0}};
        const Posterior post = models::single_event_posterior(spec, 0.0, prior, ExitSide::Left);
        CHECK(std::fabs(post.total() - 1.0) < 1e-8);
        CHECK(post.mean() > 0.0);  // posterior remembers the positive initial state
    }
}

TEST_CASE("a hundred simulated events identify the true Peclet number") {
    // events generated by the Monte-Carlo integrator under Pe = 10
    const double L = 5.0;
    const rnt::RnTParams truth(std::sqrt(10.0), 1.0, 1.0, L);
    const rnt::RnTParams other(std::sqrt(0.1), 1.0, 1.0, L);
    mc::SimConfig cfg;
    cfg.dt = 1e-4;  // event generation; the updater sees sides only
    cfg.n_trials = 100;
    cfg.seed = 31;
    const auto events_table = mc::simulate_rnt(truth, 0.0, +1, cfg);

    const double p_truth = rnt::joint(truth, 0.0, +1, ExitSide::Left, -1) +
                           rnt::joint(truth, 0.0, +1, ExitSide::Left, +1);
    const double p_other = rnt::joint(other, 0.0, +1, ExitSide::Left, -1) +
                           rnt::joint(other, 0.0, +1, ExitSide::Left, +1);
    Eigen::ArrayX2d side_probs(2, 2);
    side_probs << p_truth, 1.0 - p_truth, p_other, 1.0 - p_other;

    const long lefts = events_table.count(ExitSide::Left, 0) + events_table.count(ExitSide::Left, 1);
    std::vector<ExitSide> events(100, ExitSide::Right);
    for (long i = 0; i < lefts; ++i) events[size_t(i)] = ExitSide::Left;  // order irrelevant

    const auto final_set =
        compound_events(HypothesisSet::uniform({"Pe=10", "Pe=0.1"}), events, side_probs);
    CHECK(final_set.weight_of("Pe=10") > 0.95);
}

TEST_CASE("event streams round-trip through the CSV wire format") {
    std::istringstream in(
        "# provenance comment\n"
        "trial_index,side\n"
        "0,left\n"
        "1,right\n"
        "2,-1\n"
        "3,+1\n");
    const auto events = infer::read_event_stream(in);
    REQUIRE(events.size() == 4);
    CHECK(events[0].side == ExitSide::Left);
    CHECK(events[1].side == ExitSide::Right);
    CHECK(events[2].side == ExitSide::Left);
    CHECK(events[3].side == ExitSide::Right);

    std::istringstream bad("trial_index,side\n0,up\n");
    CHECK_THROWS_AS(infer::read_event_stream(bad), Error);
}

TEST_CASE("posterior traces emit one row per hypothesis per event") {
    Eigen::ArrayX2d side_probs(2, 2);
    side_probs << 0.2, 0.8, 0.7, 0.3;
    std::vector<ExitEvent> events(3);
    events[0].side = ExitSide::Left;
    events[1].side = ExitSide::Left;
    events[2].side = ExitSide::Right;

    const auto sheet =
        infer::posterior_trace(infer::HypothesisSet::uniform({"a", "b"}), events, side_probs);
    REQUIRE(sheet.columns == std::vector<std::string>({"event_index", "hypothesis", "weight"}));
    REQUIRE(sheet.rows.size() == 8);  // prior + 3 events, 2 hypotheses each
    CHECK(sheet.rows[0][2] == "0.5");
    // after one left event: weights proportional to (0.2, 0.7)
    CHECK(std::stod(sheet.rows[2][2]) == doctest::Approx(0.2 / 0.9).epsilon(1e-12));
    CHECK(std::stod(sheet.rows[3][2]) == doctest::Approx(0.7 / 0.9).epsilon(1e-12));
}
