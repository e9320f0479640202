#include "heatflow/forcing.hpp"

#include <cmath>
#include <mutex>

namespace heatflow {

namespace {

std::mutex g_registry_mutex;
std::map<std::string, std::function<ForcingLaw(double)>>& registry() {
    static std::map<std::string, std::function<ForcingLaw(double)>> r;
    return r;
}

ForcingLaw builtin(const std::string& name, double parameter) {
    ForcingLaw law;
    law.name = name;
    if (name == "zero") {
        law.evaluator = [](double) { return std::array<double, 2>{0.0, 0.0}; };
        law.lipschitz = 0.0;
        law.differentiable = true;
        return law;
    }
    if (name == "linear-buoyancy") {
        law.evaluator = [parameter](double t) { return std::array<double, 2>{0.0, parameter * t}; };
        law.lipschitz = std::abs(parameter);
        law.differentiable = true;
        return law;
    }
    if (name == "sin") {
        law.evaluator = [](double t) { return std::array<double, 2>{0.0, std::sin(t)}; };
        law.lipschitz = 1.0;
        law.differentiable = true;
        return law;
    }
    law.name.clear();
    return law;
}

}  // namespace

ForcingLaw make_forcing_law(const std::string& name, double parameter) {
    ForcingLaw law = builtin(name, parameter);
    if (law.name.empty()) {
        std::scoped_lock lock(g_registry_mutex);
        auto it = registry().find(name);
        if (it == registry().end()) raise(Errc::unknown_recipe, "forcing law '" + name + "'");
        law = it->second(parameter);
        law.name = name;
    }
    auto f0 = law.evaluator(0.0);
    if (std::abs(f0[0]) > 1e-14 || std::abs(f0[1]) > 1e-14)
        raise(Errc::invariant_violation, "forcing law must vanish at 0");
    return law;
}

void register_forcing_law(const std::string& name, std::function<ForcingLaw(double)> factory) {
    if (!builtin(name, 0.0).name.empty())
        raise(Errc::invariant_violation, "cannot replace builtin law '" + name + "'");
    std::scoped_lock lock(g_registry_mutex);
    registry()[name] = std::move(factory);
}

}  // namespace heatflow
