#pragma once

namespace kolmo::numeric {

/// Standard normal CDF.
double normal_cdf(double x);

/// Upper tail 1 - Phi(x), accurate far into the tail.
double normal_sf(double x);

/// Inverse standard normal CDF (Wichura's AS 241, relative error ~1e-16).
/// Returns -inf at 0 and +inf at 1; p outside [0, 1] is a DomainError.
double normal_quantile(double p);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_sf(double x, double dof);

}  // namespace kolmo::numeric
