#pragma once

#include <cmath>
#include <span>

namespace homnet {

/// Tie-corrected Kendall tau-b in O(n log n) (merge-sort discordance count).
/// Requires equal lengths >= 2. A constant input vector makes tau-b
/// undefined; NaN is returned as the Undefined marker.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

inline bool tau_undefined(double tau) { return std::isnan(tau); }

}  // namespace homnet
