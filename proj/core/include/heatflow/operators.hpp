#pragma once

#include <vector>

#include "heatflow/errors.hpp"

namespace heatflow {

/// Wavenumber pair on the square (0,pi)^2. Both components start at 1.
struct ModeIndex {
    int k = 1;
    int l = 1;
    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

enum class OperatorKind {
    TemperatureLaplacian,  // Dirichlet Laplacian on the sine basis
    StokesFreeSlip,        // Stokes operator on the stream-function curl basis
};

const char* to_string(OperatorKind kind);

/// Positive diagonal operator on an explicit eigenbasis over (0,pi)^2.
/// Both kinds share the spectrum k^2 + l^2, 1 <= k,l <= bandwidth, so the
/// first eigenvalue is 2. Fractional powers and the semigroup act
/// entrywise on coefficients.
class DiagonalOperator {
  public:
    DiagonalOperator(OperatorKind kind, int bandwidth);

    OperatorKind kind() const { return kind_; }
    int bandwidth() const { return bandwidth_; }
    double first_eigenvalue() const { return first_; }
    int mode_count() const { return bandwidth_ * bandwidth_; }

    double eigenvalue(int k, int l) const {
        check_mode(k, l);
        return table_[static_cast<std::size_t>((k - 1) * bandwidth_ + (l - 1))];
    }
    const std::vector<double>& eigenvalues() const { return table_; }

  private:
    void check_mode(int k, int l) const {
        if (k < 1 || l < 1 || k > bandwidth_ || l > bandwidth_)
            raise(Errc::shape_error, "mode index out of range");
    }

    OperatorKind kind_;
    int bandwidth_;
    double first_;
    std::vector<double> table_;  // k-major, l-minor
};

DiagonalOperator make_operator(OperatorKind kind, int bandwidth);

}  // namespace heatflow
