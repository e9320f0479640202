#pragma once

#include <stdexcept>
#include <string>

namespace heatflow {

enum class Errc {
    invalid_bandwidth,
    shape_error,
    invalid_time,
    resolution_error,
    invalid_exponent,
    domain_error,
    plan_error,
    degenerate_constants,
    invalid_rate,
    invalid_rates,
    invalid_indices,
    cannot_fit,
    identical_data,
    too_few_nodes,
    oracle_failure,
    numerical_blowup,
    parse_error,
    invariant_violation,
    unknown_recipe,
};

const char* to_string(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace heatflow
