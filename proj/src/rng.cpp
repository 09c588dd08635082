#include "textnet/rng.hpp"

#include <cmath>

#include "textnet/mathfn.hpp"

namespace textnet {

double rng::normal(double mean, double stddev) {
    return mean + stddev * inverse_normal_cdf(uniform01_open());
}

// Marsaglia-Tsang squeeze method; shape < 1 boosted via the standard power trick.
double rng::gamma(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0)
        throw validation_error("rng::gamma: shape and scale must be positive");
    if (shape < 1.0) {
        double u = uniform01_open();
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform01_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

}  // namespace textnet
