#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "splitprob/types.hpp"

namespace splitprob::io {
struct Sheet;
}

namespace splitprob::infer {

// Discrete set of competing hypotheses about the hidden dynamics, with
// weights accumulated in log space so that thousands of events compound
// without underflow.
struct HypothesisSet {
    std::vector<std::string> labels;
    Eigen::ArrayXd log_weights;

    static HypothesisSet with_prior(std::vector<std::string> labels, const Eigen::ArrayXd& prior);
    static HypothesisSet uniform(std::vector<std::string> labels);

    Eigen::Index size() const { return log_weights.size(); }

    // Normalised posterior weights.
    Eigen::ArrayXd weights() const;
    double weight_of(const std::string& label) const;

    // log(w_i / w_j): the posterior log-odds between two hypotheses.
    double log_odds(Eigen::Index i, Eigen::Index j) const {
        return log_weights(i) - log_weights(j);
    }
};

// One Bayes step: weights *= P(observed side | hypothesis), renormalised
// lazily. likelihoods(i) is the probability the i-th hypothesis assigns to
// the observed exit side. A zero likelihood kills that hypothesis exactly;
// all-zero likelihoods raise AllZeroLikelihood.
HypothesisSet posterior_update(const HypothesisSet& hs, ExitSide observed,
                               const Eigen::ArrayXd& likelihoods);

// Fold over an event stream. Each hypothesis has a fixed per-event exit-side
// distribution {P(left), P(right)} (independent re-initialised trials).
HypothesisSet compound_events(const HypothesisSet& hs, const std::vector<ExitSide>& events,
                              const Eigen::ArrayX2d& side_probs);

// KL divergence between two exit-side Bernoulli distributions: the expected
// per-event log-odds gain when hypothesis `truth` generates the data.
double exit_kl(double p_left_truth, double p_left_other);

// Event-stream wire format: CSV with columns (trial_index, side), side being
// "left"/"right" (or -1/+1). Unparseable rows raise Error.
std::vector<ExitEvent> read_event_stream(std::istream& in);

// Posterior trace after each event, as rows (event_index, hypothesis, weight);
// event_index 0 is the prior.
io::Sheet posterior_trace(const HypothesisSet& hs, const std::vector<ExitEvent>& events,
                          const Eigen::ArrayX2d& side_probs);

}  // namespace splitprob::infer
