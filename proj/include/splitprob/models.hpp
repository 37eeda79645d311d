#pragma once

#include <map>
#include <string>
#include <variant>

#include "splitprob/eigensystem.hpp"
#include "splitprob/ratchet.hpp"
#include "splitprob/resetting.hpp"
#include "splitprob/rnt.hpp"
#include "splitprob/types.hpp"

// Uniform dispatch over the five solvable models: one entry point producing
// joint tables and exit posteriors regardless of the hidden-state mechanics.
namespace splitprob::models {

struct RipeningModel {
    spectral::RipeningParams params;
    double D;
    IntervalSpec iv;
};

struct OUModel {
    spectral::OUParams params;
    double D;
    IntervalSpec iv;
    int n_modes = 40;
    OutcomeSpace grid;  // defaults to ou_default_grid if empty-constructed
};

struct RnTModel {
    rnt::RnTParams params;
};

struct RatchetModel {
    ratchet::RatchetParams params;
};

struct ResettingModel {
    resetting::ResetParams params;
    long n_max = 50;
};

using ModelSpec =
    std::variant<RipeningModel, OUModel, RnTModel, RatchetModel, ResettingModel>;

// Joint table for one initialisation. The initial hidden state is a label:
// ripening "U"/"R"/"S", RnT "-1"/"+1", ratchet "on"/"off", resetting "0",
// OU a numeric string parsed as the initial y value.
JointSplittingTable joint_table(const ModelSpec& model, double x0, const std::string& y0);

// Marginal exit-side probability under a prior over initial hidden states.
double side_marginal(const ModelSpec& model, double x0,
                     const std::map<std::string, double>& prior, ExitSide side);

// Posterior over hidden exit outcomes given the observed side (routes to the
// model's conditional machinery through the shared Bayes layer).
Posterior single_event_posterior(const ModelSpec& model, double x0,
                                 const std::map<std::string, double>& prior, ExitSide side);

const char* model_name(const ModelSpec& model);

}  // namespace splitprob::models
