#include "splitprob/models.hpp"

#include "splitprob/bayes.hpp"
#include "splitprob/spectral.hpp"

namespace splitprob::models {

namespace {

struct TableVisitor {
    double x0;
    const std::string& y0;

    JointSplittingTable operator()(const RipeningModel& m) const {
        const auto es = spectral::ripening_eigensystem(m.params);
        return spectral::decoupled_table(es, m.D, m.iv, x0, es.hidden_space.index_of(y0));
    }
    JointSplittingTable operator()(const OUModel& m) const {
        const OutcomeSpace grid =
            m.grid.size() > 0 ? m.grid : spectral::ou_default_grid(m.params);
        return spectral::ou_table(m.params, m.D, m.iv, x0, std::stod(y0), m.n_modes, grid);
    }
    JointSplittingTable operator()(const RnTModel& m) const {
        return rnt::table(m.params, x0, std::stoi(y0));
    }
    JointSplittingTable operator()(const RatchetModel& m) const {
        return ratchet::table(m.params, x0, y0 == "on");
    }
    JointSplittingTable operator()(const ResettingModel& m) const {
        if (y0 != "0") throw Error("resetting starts with zero resets; y0 must be \"0\"");
        return resetting::table(m.params, x0, m.n_max);
    }
};

}  // namespace

JointSplittingTable joint_table(const ModelSpec& model, double x0, const std::string& y0) {
    return std::visit(TableVisitor{x0, y0}, model);
}

double side_marginal(const ModelSpec& model, double x0,
                     const std::map<std::string, double>& prior, ExitSide side) {
    double m = 0.0;
    for (const auto& [label, w] : prior)
        m += w * joint_table(model, x0, label).side_marginal(side);
    return m;
}

Posterior single_event_posterior(const ModelSpec& model, double x0,
                                 const std::map<std::string, double>& prior, ExitSide side) {
    std::vector<std::pair<double, JointSplittingTable>> weighted;
    weighted.reserve(prior.size());
    for (const auto& [label, w] : prior)
        weighted.emplace_back(w, joint_table(model, x0, label));
    return condition_with_prior(weighted, side);
}

const char* model_name(const ModelSpec& model) {
    struct Name {
        const char* operator()(const RipeningModel&) const { return "ripening"; }
        const char* operator()(const OUModel&) const { return "ou"; }
        const char* operator()(const RnTModel&) const { return "rnt"; }
        const char* operator()(const RatchetModel&) const { return "ratchet"; }
        const char* operator()(const ResettingModel&) const { return "resetting"; }
    };
    return std::visit(Name{}, model);
}

}  // namespace splitprob::models
