#include "splitprob/inference.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "splitprob/io.hpp"

namespace splitprob::infer {

HypothesisSet HypothesisSet::with_prior(std::vector<std::string> labels,
                                        const Eigen::ArrayXd& prior) {
    if (labels.size() < 2) throw Error("a hypothesis set needs at least two hypotheses");
    if (Eigen::Index(labels.size()) != prior.size())
        throw Error("prior size does not match hypothesis count");
    if ((prior < 0.0).any() || !(prior.sum() > 0.0))
        throw Error("prior weights must be non-negative and not all zero");
    HypothesisSet hs;
    hs.labels = std::move(labels);
    hs.log_weights = (prior / prior.sum()).log();
    return hs;
}

HypothesisSet HypothesisSet::uniform(std::vector<std::string> labels) {
    const Eigen::Index n = Eigen::Index(labels.size());
    return with_prior(std::move(labels), Eigen::ArrayXd::Constant(n, 1.0));
}

Eigen::ArrayXd HypothesisSet::weights() const {
    const double m = log_weights.maxCoeff();
    Eigen::ArrayXd w(log_weights.size());
    for (Eigen::Index i = 0; i < w.size(); ++i)
        w(i) = std::exp(log_weights(i) - m);  // exact 0 for -inf log-weights
    return w / w.sum();
}

double HypothesisSet::weight_of(const std::string& label) const {
    for (Eigen::Index i = 0; i < size(); ++i)
        if (labels[size_t(i)] == label) return weights()(i);
    throw Error("unknown hypothesis label: " + label);
}

HypothesisSet posterior_update(const HypothesisSet& hs, ExitSide /*observed*/,
                               const Eigen::ArrayXd& likelihoods) {
    if (likelihoods.size() != hs.size())
        throw Error("likelihood vector size does not match hypothesis count");
    if ((likelihoods < 0.0).any() || (likelihoods > 1.0).any())
        throw Error("likelihoods must lie in [0, 1]");
    if (!(likelihoods.maxCoeff() > 0.0))
        throw AllZeroLikelihood("every hypothesis assigns zero probability to the event");
    HypothesisSet out = hs;
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out.log_weights(i) += likelihoods(i) > 0.0
                                  ? std::log(likelihoods(i))
                                  : -std::numeric_limits<double>::infinity();
    return out;
}

HypothesisSet compound_events(const HypothesisSet& hs, const std::vector<ExitSide>& events,
                              const Eigen::ArrayX2d& side_probs) {
    if (side_probs.rows() != hs.size())
        throw Error("side_probs rows must match hypothesis count");
    HypothesisSet out = hs;
    for (const ExitSide side : events) {
        const Eigen::ArrayXd lik = side == ExitSide::Left
                                       ? side_probs.col(0)
                                       : side_probs.col(1);
        out = posterior_update(out, side, lik);
    }
    return out;
}

double exit_kl(double p_left_truth, double p_left_other) {
    auto term = [](double p, double q) { return p > 0.0 ? p * std::log(p / q) : 0.0; };
    return term(p_left_truth, p_left_other) +
           term(1.0 - p_left_truth, 1.0 - p_left_other);
}

std::vector<ExitEvent> read_event_stream(std::istream& in) {
    std::vector<ExitEvent> events;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // header row: trial_index,side
            header_seen = true;
            if (line.find("side") != std::string::npos) continue;
        }
        std::istringstream row(line);
        std::string index_field, side_field;
        if (!std::getline(row, index_field, ',') || !std::getline(row, side_field, ','))
            throw Error("malformed event row: " + line);
        ExitEvent ev;
        if (side_field == "left" || side_field == "-1")
            ev.side = ExitSide::Left;
        else if (side_field == "right" || side_field == "+1" || side_field == "1")
            ev.side = ExitSide::Right;
        else
            throw Error("unknown exit side in event row: " + line);
        events.push_back(ev);
    }
    return events;
}

io::Sheet posterior_trace(const HypothesisSet& hs, const std::vector<ExitEvent>& events,
                          const Eigen::ArrayX2d& side_probs) {
    io::Sheet sheet;
    sheet.columns = {"event_index", "hypothesis", "weight"};
    auto emit = [&](long index, const HypothesisSet& state) {
        const Eigen::ArrayXd w = state.weights();
        for (Eigen::Index i = 0; i < state.size(); ++i)
            sheet.rows.push_back({std::to_string(index), state.labels[size_t(i)],
                                  io::format_double(w(i))});
    };
    HypothesisSet state = hs;
    emit(0, state);
    long index = 0;
    for (const ExitEvent& ev : events) {
        const Eigen::ArrayXd lik =
            ev.side == ExitSide::Left ? side_probs.col(0) : side_probs.col(1);
        state = posterior_update(state, ev.side, lik);
        emit(++index, state);
    }
    return sheet;
}

}  // namespace splitprob::infer
