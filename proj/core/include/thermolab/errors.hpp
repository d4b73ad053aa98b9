#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thermolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct InvalidState : Error {
    using Error::Error;
};
struct InvalidOperator : Error {
    using Error::Error;
};
struct EmptyWindow : Error {
    using Error::Error;
};
struct InsufficientSpectrum : Error {
    using Error::Error;
};
struct InsufficientStructure : Error {
    using Error::Error;
};
struct ResourceError : Error {
    using Error::Error;
};

// Thrown by simplex_unbiased_basis; carries the subspace indices that
// violate D_j(D_j-1) >= M+1.
struct InfeasibleSubspace : Error {
    std::vector<int> subspaces;
    InfeasibleSubspace(const std::string& msg, std::vector<int> bad)
        : Error(msg), subspaces(std::move(bad)) {}
};

}  // namespace thermolab
