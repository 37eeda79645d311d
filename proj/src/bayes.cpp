#include "splitprob/bayes.hpp"

namespace splitprob {

Posterior condition_on_exit(const JointSplittingTable& table, ExitSide side) {
    const double marginal = table.side_marginal(side);
    if (!(marginal > 0.0))
        throw ZeroMarginal(std::string("exit via ") + to_string(side) +
                           " has zero probability; cannot condition on it");
    Posterior post;
    post.outcomes = table.outcomes;
    post.weights = table.side(side) / marginal;
    post.conditioning = side;
    post.prior_provenance = "delta at (x0=" + std::to_string(table.x0) + ", y0=" + table.y0 + ")";
    return post;
}

Posterior condition_with_prior(const std::vector<std::pair<double, JointSplittingTable>>& weighted,
                               ExitSide side) {
    if (weighted.empty()) throw Error("empty prior support");
    const OutcomeSpace& space = weighted.front().second.outcomes;
    Eigen::ArrayXd numerator = Eigen::ArrayXd::Zero(space.size());
    double denominator = 0.0;
    for (const auto& [w, table] : weighted) {
        if (!table.outcomes.same_as(space))
            throw Error("prior support mixes incompatible outcome spaces");
        numerator += w * table.side(side);
        denominator += w * table.side_marginal(side);
    }
    if (!(denominator > 0.0))
        throw ZeroMarginal(std::string("prior-weighted exit via ") + to_string(side) +
                           " has zero probability");
    Posterior post;
    post.outcomes = space;
    post.weights = numerator / denominator;
    post.conditioning = side;
    post.prior_provenance = "weighted prior over " + std::to_string(weighted.size()) + " support points";
    return post;
}

Posterior condition_with_prior(const std::map<std::string, JointSplittingTable>& tables,
                               const std::map<std::string, double>& prior, ExitSide side) {
    std::vector<std::pair<double, JointSplittingTable>> weighted;
    weighted.reserve(prior.size());
    for (const auto& [label, w] : prior) {
        auto it = tables.find(label);
        if (it == tables.end()) throw MissingTable("no table for prior support point y0=" + label);
        weighted.emplace_back(w, it->second);
    }
    return condition_with_prior(weighted, side);
}

}  // namespace splitprob
