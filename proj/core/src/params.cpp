#include "fraclap/params.hpp"
#include "fraclap/error.hpp"

#include <cmath>
#include <string>

namespace fraclap {

SolverParams make_params(int n, double s, std::uint32_t grid_size,
                         double box_length) {
    if (n != 2 && n != 3)
        throw ConfigError("unsupported dimension n=" + std::to_string(n) +
                          " (supported: 2, 3)");
    if (!(s > 0.0) || !(s < 1.0) || !std::isfinite(s))
        throw ConfigError("s out of open interval (0,1): s=" +
                          std::to_string(s));
    if (grid_size < 16 || (grid_size & (grid_size - 1)) != 0)
        throw ConfigError("grid_size must be a power of two >= 16, got " +
                          std::to_string(grid_size));
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw ConfigError("box_length must be positive");
    return SolverParams(n, s, grid_size, box_length);
}

double c_delta(int n, double s) {
    return std::pow(4.0, s) * std::tgamma(0.5 * n + s) /
           (2.0 * std::pow(M_PI, 0.5 * n) * std::abs(std::tgamma(-s)));
}

double c_riesz(int n, double sigma) {
    return std::tgamma(0.5 * (n - sigma)) /
           (std::pow(2.0, sigma) * std::pow(M_PI, 0.5 * n) *
            std::tgamma(0.5 * sigma));
}

} // namespace fraclap
