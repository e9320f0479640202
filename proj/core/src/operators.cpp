#include "heatflow/operators.hpp"

namespace heatflow {

const char* to_string(Errc c) {
    switch (c) {
        case Errc::invalid_bandwidth: return "invalid-bandwidth";
        case Errc::shape_error: return "shape-error";
        case Errc::invalid_time: return "invalid-time";
        case Errc::resolution_error: return "resolution-error";
        case Errc::invalid_exponent: return "invalid-exponent";
        case Errc::domain_error: return "domain-error";
        case Errc::plan_error: return "plan-error";
        case Errc::degenerate_constants: return "degenerate-constants";
        case Errc::invalid_rate: return "invalid-rate";
        case Errc::invalid_rates: return "invalid-rates";
        case Errc::invalid_indices: return "invalid-indices";
        case Errc::cannot_fit: return "cannot-fit";
        case Errc::identical_data: return "identical-data";
        case Errc::too_few_nodes: return "too-few-nodes";
        case Errc::oracle_failure: return "oracle-failure";
        case Errc::numerical_blowup: return "numerical-blowup";
        case Errc::parse_error: return "parse-error";
        case Errc::invariant_violation: return "invariant-violation";
        case Errc::unknown_recipe: return "unknown-recipe";
    }
    return "unknown-error";
}

const char* to_string(OperatorKind kind) {
    return kind == OperatorKind::TemperatureLaplacian ? "temperature-laplacian"
                                                      : "stokes-freeslip";
}

DiagonalOperator::DiagonalOperator(OperatorKind kind, int bandwidth)
    : kind_(kind), bandwidth_(bandwidth) {
    if (bandwidth < 1) raise(Errc::invalid_bandwidth, "bandwidth must be >= 1");
    table_.resize(static_cast<std::size_t>(bandwidth) * bandwidth);
    for (int k = 1; k <= bandwidth; ++k)
        for (int l = 1; l <= bandwidth; ++l)
            table_[static_cast<std::size_t>((k - 1) * bandwidth + (l - 1))] =
                double(k) * k + double(l) * l;
    first_ = table_[0];
    for (double v : table_)
        if (v < first_) first_ = v;
}

DiagonalOperator make_operator(OperatorKind kind, int bandwidth) {
    return DiagonalOperator(kind, bandwidth);
}

}  // namespace heatflow
