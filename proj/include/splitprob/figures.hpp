#pragma once

#include <string>
#include <vector>

#include "splitprob/io.hpp"

namespace splitprob::figures {

// Monte-Carlo overlay controls for the figures whose reference versions
// carry simulation markers (fig3*, fig5, fig7). trials = 0 disables the
// overlay; the reference protocol is trials = 1e5, dt = 1e-5.
struct FigureOptions {
    long trials = 10000;
    double dt = 1e-5;
    std::uint64_t seed = 2718;
    int threads = 0;
};

// Plot-ready CSV for one catalogue entry. Throws UnknownFigure for ids
// outside the catalogue.
io::Sheet make_figure(const std::string& id, const FigureOptions& opt = {});

const std::vector<std::string>& figure_ids();

}  // namespace splitprob::figures
