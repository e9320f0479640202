#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "heatflow/errors.hpp"

namespace heatflow {

/// Pointwise temperature-to-force map f with f(0) = 0 and Lipschitz
/// constant lipschitz. Built-in laws: "zero", "linear-buoyancy" (f = (0, g t),
/// parameter g), "sin" (f = (0, sin t)).
struct ForcingLaw {
    std::string name;
    std::function<std::array<double, 2>(double)> evaluator;
    double lipschitz = 0.0;
    bool differentiable = true;

    std::array<double, 2> operator()(double theta) const { return evaluator(theta); }
};

ForcingLaw make_forcing_law(const std::string& name, double parameter = 1.0);

/// Registers a custom law under `name`; the factory receives the config
/// parameter. Re-registering a builtin name is rejected.
void register_forcing_law(const std::string& name,
                          std::function<ForcingLaw(double)> factory);

}  // namespace heatflow
