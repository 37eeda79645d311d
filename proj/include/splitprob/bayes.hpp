#pragma once

#include <map>
#include <utility>
#include <vector>

#include "splitprob/types.hpp"

namespace splitprob {

// Posterior over hidden outcomes given that exit occurred through `side`:
// the table row for that side divided by its marginal.
Posterior condition_on_exit(const JointSplittingTable& table, ExitSide side);

// Prior-weighted conditioning: numerator and denominator assembled by
// summation over the prior support. Each support point carries its own
// table (which fixes that point's x0 and y0).
Posterior condition_with_prior(const std::vector<std::pair<double, JointSplittingTable>>& weighted,
                               ExitSide side);

// Convenience wrapper keyed by initial hidden-state label. Throws
// MissingTable if the prior references a label with no table.
Posterior condition_with_prior(const std::map<std::string, JointSplittingTable>& tables,
                               const std::map<std::string, double>& prior, ExitSide side);

}  // namespace splitprob
