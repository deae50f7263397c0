#pragma once

namespace nslab {

/// Cutoff weight p(alpha, rho) in [0, 1]:
///   1 for rho <= tan(alpha pi/2),
///   (pi/2 - arctan rho) / ((1 - alpha) pi/2) above.
/// Continuous, weakly decreasing in rho, -> 0 as rho -> inf; equal to 1
/// exactly on [0, threshold]. alpha must lie in (0, 1).
double weight(double alpha, double rho);

/// d/dt p(alpha, rho(t)) by the chain rule:
///   -2 rho_dot / ((1 - alpha) pi (1 + rho^2)) where rho > threshold,
///   0 elsewhere (the weight is flat below the threshold).
double weight_derivative(double alpha, double rho, double rho_dot);

}  // namespace nslab
