#pragma once

#include <stdexcept>
#include <string>

namespace tcbm {

/// Oscillatory quadrature failed to reach the requested tolerance within the
/// panel budget.
class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// A computed quantity landed outside its feasible range by more than the
/// accuracy budget, or an inversion failed to normalize.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcbm
