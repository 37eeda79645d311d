#pragma once

#include <stdexcept>
#include <string>

namespace splitprob {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Initial position outside the interval, or an otherwise invalid coordinate.
struct OutOfDomain : Error {
    using Error::Error;
};

// Conditioning on an exit event that has probability zero.
struct ZeroMarginal : Error {
    using Error::Error;
};

// Both boundaries reflecting: the process never leaves the interval.
struct NoExitPossible : Error {
    using Error::Error;
};

// A prior support point has no associated splitting table.
struct MissingTable : Error {
    using Error::Error;
};

// Ripening and spoiling rates coincide; the eigenvectors do not span the space.
struct DegenerateRates : Error {
    using Error::Error;
};

// Declared hidden-state grid does not cover the required range.
struct GridTooNarrow : Error {
    using Error::Error;
};

// Ratchet barrier height is (numerically) zero; the piecewise solution
// parameterisation breaks down and the decoupled solver applies instead.
struct ZeroBarrier : Error {
    using Error::Error;
};

// Boundary-matching linear system too ill-conditioned to trust.
struct IllConditioned : Error {
    using Error::Error;
};

// Near-degenerate characteristic roots; the generic exponential basis fails.
struct DegenerateRoots : Error {
    using Error::Error;
};

// Every hypothesis assigns zero likelihood to an observed event.
struct AllZeroLikelihood : Error {
    using Error::Error;
};

// Figure identifier not in the reproduction catalogue.
struct UnknownFigure : Error {
    using Error::Error;
};

// Invalid or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace splitprob
