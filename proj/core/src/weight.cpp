#include "nslab/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace nslab {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("weight parameter alpha must lie in (0, 1)");
}

}  // namespace

double weight(double alpha, double rho) {
    check_alpha(alpha);
    const double threshold = std::tan(alpha * pi / 2.0);
    if (rho <= threshold) return 1.0;
    return (pi / 2.0 - std::atan(rho)) / ((1.0 - alpha) * pi / 2.0);
}

double weight_derivative(double alpha, double rho, double rho_dot) {
    check_alpha(alpha);
    const double threshold = std::tan(alpha * pi / 2.0);
    if (rho <= threshold) return 0.0;
    return -2.0 * rho_dot / ((1.0 - alpha) * pi * (1.0 + rho * rho));
}

}  // namespace nslab
