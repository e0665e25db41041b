#pragma once

#include <map>
#include <string>
#include <vector>

#include "homnet/network.hpp"
#include "homnet/rewiring.hpp"

namespace homnet {

enum class CountMode : std::uint8_t { StayWeighted, DistinctPairs };

const char* to_string(CountMode m);

/// Row-major (guest group x host group) frequency matrix; frequencies sum
/// to 1 over the included-node subnetwork.
struct PairingMatrix {
    Attribute attribute = Attribute::Gender;
    int n_guest_groups = 0;
    int n_host_groups = 0;
    std::vector<double> freq;
    std::int64_t total_counted = 0;

    double at(int guest_group, int host_group) const {
        return freq[static_cast<std::size_t>(guest_group) * n_host_groups + host_group];
    }
};

/// Throws EmptyView when no edge has both endpoints included.
PairingMatrix pairing_frequencies(const BipartiteNetwork& net, const AttributeView& view,
                                  CountMode mode = CountMode::StayWeighted);
PairingMatrix pairing_frequencies(std::span<const Edge> edges, const AttributeView& view,
                                  CountMode mode = CountMode::StayWeighted);
PairingMatrix pairing_frequencies(const RewireState& state, const AttributeView& view,
                                  CountMode mode = CountMode::StayWeighted);

struct IntervalEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
};

/// Empirical (1-level)/2 and (1+level)/2 percentiles per group pair, linear
/// interpolation at rank h = (n-1)p. Requires >= 2 matrices.
std::vector<IntervalEstimate> ensemble_intervals(const std::vector<PairingMatrix>& ensemble,
                                                 double level = 0.95);

enum class ExpressionLabel : std::uint8_t { Over, Under, Compatible };

const char* to_string(ExpressionLabel label);

ExpressionLabel classify(double observed, const IntervalEstimate& interval);

/// Percentile with linear interpolation between order statistics at
/// h = (n-1)p. Exposed for interval tests; sorts a copy.
double percentile_linear(std::vector<double> values, double p);

/// Per-attribute population shares over known-attribute nodes, hosts and
/// guests separately.
struct DemographySummary {
    struct Shares {
        std::vector<std::string> group_names;
        std::vector<double> host_share;
        std::vector<double> guest_share;
        std::size_t known_hosts = 0, known_guests = 0;
    };
    Shares gender;
    Shares race;
    Shares age_quintile;
    QuintileBins host_age_bins, guest_age_bins;
};

DemographySummary demography_summary(const BipartiteNetwork& net, double min_conf = 0.0);

}  // namespace homnet
