#include "heatflow/sampling.hpp"

#include <cmath>

namespace heatflow {

double NormalSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on (0,1] uniforms drawn from the raw 64-bit stream.
    auto uniform = [this] {
        return (double(engine_()) + 1.0) / (double(std::mt19937_64::max()) + 2.0);
    };
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Streams are indexed per mode, so widening the bandwidth extends a field
// without redrawing the modes it already had.
template <class Field>
Field sample(int bandwidth, std::uint64_t seed, double damping) {
    Field f(bandwidth);
    for (int k = 1; k <= bandwidth; ++k)
        for (int l = 1; l <= bandwidth; ++l) {
            double lam = double(k) * k + double(l) * l;
            NormalSampler rng(splitmix64(seed ^ (std::uint64_t(k) << 32 | std::uint64_t(l))));
            f.at(k, l) = rng.next() * std::pow(lam, -damping);
        }
    return f;
}

}  // namespace

ScalarField sample_scalar(int bandwidth, std::uint64_t seed, double damping) {
    return sample<ScalarField>(bandwidth, seed, damping);
}

VelocityField sample_velocity(int bandwidth, std::uint64_t seed, double damping) {
    return sample<VelocityField>(bandwidth, seed, damping);
}

template <class Field>
Field normalize_to(const DiagonalOperator& op, double alpha, double target, Field f) {
    if (target < 0.0) raise(Errc::invariant_violation, "target norm must be >= 0");
    if (target == 0.0) {
        scale(f, 0.0);
        return f;
    }
    double cur = fractional_norm(op, alpha, f);
    if (!(cur > 0.0))
        raise(Errc::invariant_violation, "cannot scale a zero field to a nonzero norm");
    scale(f, target / cur);
    return f;
}

template ScalarField normalize_to<ScalarField>(const DiagonalOperator&, double, double,
                                               ScalarField);
template VelocityField normalize_to<VelocityField>(const DiagonalOperator&, double, double,
                                                   VelocityField);

}  // namespace heatflow
