#pragma once

#include <stdexcept>
#include <string>

namespace qinfer {

// Base class for every toolkit error. Subtypes distinguish bad input
// (invalid parameters, out-of-range targets) from numerical failure
// (non-convergence, precondition violations detected at runtime).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A matrix handed to a Hermitian-only routine was not Hermitian.
struct NotHermitian : Error {
    using Error::Error;
};

// A matrix required to be positive semidefinite had a significantly
// negative eigenvalue.
struct NotPSD : Error {
    using Error::Error;
};

// Tr(rho*M) had an imaginary part beyond tolerance.
struct NonRealExpectation : Error {
    using Error::Error;
};

// A candidate density matrix violated Hermiticity, unit trace or
// positivity.
struct InvalidDensityMatrix : Error {
    using Error::Error;
};

// A target expectation value lies outside the observable's spectrum.
struct MeanOutOfRange : Error {
    using Error::Error;
};

// A (mean, second moment) pair lies outside the attainable set.
struct Infeasible : Error {
    using Error::Error;
};

// Scheme or observable parameters violate their domain constraints.
struct InvalidParams : Error {
    using Error::Error;
};

// A probability vector was negative or not normalized.
struct InvalidDistribution : Error {
    using Error::Error;
};

// An operation requiring distinct eigenvalues received a degenerate
// spectrum.
struct DegenerateSpectrum : Error {
    using Error::Error;
};

// An iterative solver failed to reach its residual target.
struct NonConvergence : Error {
    using Error::Error;
};

// Bad command-line or figure configuration.
struct InvalidConfig : Error {
    using Error::Error;
};

// Failed to read or write a file.
struct IoError : Error {
    using Error::Error;
};

} // namespace qinfer
