#pragma once

namespace egocr {

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

/// Inverse of normal_cdf on (0, 1); throws Error outside that interval.
double normal_quantile(double p);

}  // namespace egocr
