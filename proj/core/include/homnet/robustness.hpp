#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "homnet/analysis.hpp"
#include "homnet/ingestion.hpp"

namespace homnet {

/// Random race relabeling: a fraction of the source group, drawn without
/// replacement, gets a fair draw between the target groups.
struct PerturbationSpec {
    double fraction = 0.05;
    Race source_group = Race::White;
    std::vector<Race> target_groups = {Race::Black, Race::Asian};
    std::uint64_t seed = 0;
};

/// Relabels exactly round(fraction * |source group|) nodes (round half up),
/// guests and hosts alike; everything else, including the edge set, is
/// untouched. Throws EmptySourceGroup.
BipartiteNetwork perturb_labels(const BipartiteNetwork& net, const PerturbationSpec& spec);

struct TercileResult {
    BipartiteNetwork network;  // middle-price hosts, incident edges, non-isolated guests
    bool degenerate = false;   // all prices equal: every host kept
    std::size_t hosts_kept = 0, hosts_dropped = 0;
};

/// Keeps hosts with weekly_price within the middle third of the price
/// distribution (nearest-rank, boundary-inclusive). Requires >= 3 priced
/// hosts, else throws InsufficientPriceData.
TercileResult tercile_filter(const BipartiteNetwork& net);

struct MatchedPair {
    std::uint32_t white_host = 0;
    std::uint32_t nonwhite_host = 0;
    double distance = 0.0;
};

/// Greedy minimum-distance matching without replacement of White against
/// non-White hosts on z-scored (num_properties, weekly_price), pairs over
/// the caliper discarded. Deterministic: ties break by host id.
/// Throws NoMatchablePairs when no pair fits the caliper.
std::vector<MatchedPair> matched_pairs(const BipartiteNetwork& net, double caliper = 0.2,
                                       double min_conf = 0.0);

/// Share of the host's known-race stay weight coming from White guests.
/// Throws NoKnownRaceStays.
double white_guest_rate(const BipartiteNetwork& net, std::uint32_t host,
                        double min_conf = 0.0);

struct MatchedPairResult {
    std::vector<MatchedPair> pairs;
    std::vector<double> white_rates;     // per matched White host
    std::vector<double> nonwhite_rates;  // per matched non-White host
    double rate_white_hosts = 0.0;       // stay-weighted group rates
    double rate_nonwhite_hosts = 0.0;
    int n_pairs = 0;
    std::int64_t n_stays = 0;
    double t_stat = 0.0;
    double p_value = 1.0;
    std::vector<std::string> warnings;
};

/// Paired two-sided t-test on the per-pair rate differences. All-zero
/// differences report p = 1.0 (DegenerateDifferences warning); zero
/// variance with nonzero mean reports p = 0 (DegenerateVariance warning).
/// Requires >= 2 pairs.
MatchedPairResult rate_t_test(const std::vector<MatchedPair>& pairs,
                              const std::vector<double>& white_rates,
                              const std::vector<double>& nonwhite_rates);

/// matched_pairs + white_guest_rate + rate_t_test in one call; pairs whose
/// hosts have no known-race stays are dropped. Fills the stay-weighted
/// group rates and stay counts.
MatchedPairResult matched_pair_analysis(const BipartiteNetwork& net, double caliper = 0.2,
                                        double min_conf = 0.0);

struct ConfidenceRerunSlice {
    SliceCounts baseline_counts, rerun_counts;
    ExpressionReport baseline_report, rerun_report;
    std::vector<std::string> label_changes;  // "FF: over -> compatible"
};

struct ConfidenceRerun {
    double baseline_threshold = 0.3;
    double rerun_threshold = 0.5;
    std::map<SliceKey, ConfidenceRerunSlice> slices;
};

/// Repeats the analysis with the attribute view restricted to
/// confidence >= threshold and reports the per-slice deltas against the
/// baseline threshold.
ConfidenceRerun rerun_with_confidence(const Dataset& dataset, const AnalyzeOptions& options,
                                      double threshold = 0.5, double baseline = 0.3);

}  // namespace homnet
