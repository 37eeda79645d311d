#include "doctest.h"
#include "splitprob/bayes.hpp"
#include "splitprob/types.hpp"

using namespace splitprob;

namespace {

JointSplittingTable two_state_table(double lm, double lp, double rm, double rp) {
    JointSplittingTable t;
    t.outcomes = OutcomeSpace::labels({"-1", "+1"});
    t.left = Eigen::ArrayXd(2);
    t.right = Eigen::ArrayXd(2);
    t.left << lm, lp;
    t.right << rm, rp;
    t.x0 = 0.0;
    t.y0 = "-1";
    return t;
}

}  // namespace

TEST_CASE("exit side basics") {
    CHECK(opposite(ExitSide::Left) == ExitSide::Right);
    CHECK(opposite(ExitSide::Right) == ExitSide::Left);
    CHECK(sign_of(ExitSide::Left) == -1);
    CHECK(sign_of(ExitSide::Right) == +1);
}

TEST_CASE("permeability is symbolic at infinity") {
    const auto inf = Permeability::infinite();
    CHECK(inf.is_infinite());
    CHECK_FALSE(inf.is_reflecting());
    CHECK_THROWS_AS((void)inf.value(), Error);

    const auto k = Permeability::finite(10.0);
    CHECK_FALSE(k.is_infinite());
    CHECK(k.value() == 10.0);
    CHECK(Permeability::finite(0.0).is_reflecting());
    CHECK_THROWS_AS(Permeability::finite(-1.0), Error);
}

TEST_CASE("interval validation") {
    CHECK_THROWS_AS(IntervalSpec(-1.0, Permeability::infinite(), Permeability::infinite()),
                    Error);
    const IntervalSpec closed(0.5, Permeability::finite(0.0), Permeability::finite(0.0));
    CHECK_FALSE(closed.exit_possible());
    const IntervalSpec iv = IntervalSpec::fully_permeable(1.0);
    CHECK(iv.exit_possible());
    CHECK(iv.contains(0.5));
    CHECK_FALSE(iv.contains(0.51));
    CHECK_THROWS_AS(iv.require_inside(0.6), OutOfDomain);
}

TEST_CASE("condition_on_exit: direct ratio") {
    // {(L,-1):0.3, (L,+1):0.1, (R,-1):0.2, (R,+1):0.4}
    const auto t = two_state_table(0.3, 0.1, 0.2, 0.4);
    CHECK(t.mass() == doctest::Approx(1.0).epsilon(1e-12));

    const Posterior post = condition_on_exit(t, ExitSide::Left);
    CHECK(post.weights(0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(post.weights(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(post.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("condition_on_exit: impossible observation") {
    const auto t = two_state_table(0.55, 0.45, 0.0, 0.0);  // right boundary reflecting
    CHECK_THROWS_AS(condition_on_exit(t, ExitSide::Right), ZeroMarginal);
}

TEST_CASE("condition_on_exit is scale invariant") {
    const auto t = two_state_table(0.3, 0.1, 0.2, 0.4);
    auto scaled = t;
    scaled.left *= 7.25;
    scaled.right *= 7.25;
    const Posterior a = condition_on_exit(t, ExitSide::Left);
    const Posterior b = condition_on_exit(scaled, ExitSide::Left);
    CHECK(std::fabs(a.weights(0) - b.weights(0)) < 1e-12);
    CHECK(std::fabs(a.weights(1) - b.weights(1)) < 1e-12);
}

TEST_CASE("condition_with_prior: delta prior reduces to condition_on_exit") {
    const auto t = two_state_table(0.3, 0.1, 0.2, 0.4);
    const Posterior direct = condition_on_exit(t, ExitSide::Left);
    const Posterior via_prior = condition_with_prior({{1.0, t}}, ExitSide::Left);
    CHECK(via_prior.weights(0) == doctest::Approx(direct.weights(0)).epsilon(1e-14));
    CHECK(via_prior.weights(1) == doctest::Approx(direct.weights(1)).epsilon(1e-14));
}

TEST_CASE("condition_with_prior: missing table") {
    std::map<std::string, JointSplittingTable> tables;
    tables.emplace("-1", two_state_table(0.3, 0.1, 0.2, 0.4));
    const std::map<std::string, double> prior{{"-1", 0.5}, {"+1", 0.5}};
    CHECK_THROWS_AS(condition_with_prior(tables, prior, ExitSide::Left), MissingTable);
}

TEST_CASE("condition_with_prior mixes tables") {
    const auto ta = two_state_table(0.3, 0.1, 0.2, 0.4);
    const auto tb = two_state_table(0.1, 0.3, 0.4, 0.2);
    const Posterior post =
        condition_with_prior({{0.5, ta}, {0.5, tb}}, ExitSide::Left);
    // numerator (0.2, 0.2), denominator 0.4
    CHECK(post.weights(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(post.weights(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("grid outcome space integrates by trapezoid") {
    const auto grid = OutcomeSpace::grid(0.0, 1.0, 101);
    Eigen::ArrayXd f = grid.grid_points().square();
    CHECK(grid.integrate(f) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
    CHECK(grid.spacing() == doctest::Approx(0.01).epsilon(1e-12));
}
