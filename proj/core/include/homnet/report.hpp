#pragma once

#include <string>
#include <vector>

#include "homnet/analysis.hpp"
#include "homnet/robustness.hpp"

namespace homnet {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything needed to reproduce a run. Reports embed the manifest that
/// produced them; --jobs is deliberately not part of it since the output
/// does not depend on it.
struct RunManifest {
    std::string nodes_path;
    std::string edges_path;
    std::string city;           // empty = all cities
    std::string property_type;  // "full", "shared", or empty = both
    Attribute attribute = Attribute::Gender;
    double min_conf = 0.3;
    CountMode mode = CountMode::StayWeighted;
    RewireConfig rewire;
    double level = 0.95;
    std::string out_dir = ".";
    std::vector<std::string> formats = {"json", "md"};
};

std::string manifest_to_json(const RunManifest& manifest);
/// Throws ParseError on malformed input; absent fields keep their defaults.
RunManifest manifest_from_json(const std::string& text);

/// Full-precision JSON document: tool version, manifest, ensemble metadata,
/// one record per group pair. Byte-stable for a fixed seed.
std::string report_json(const ExpressionReport& report, const RunManifest& manifest);

/// Bracket-interval table, one row per guest group, one column per host
/// group: "[29.39; 29.44]% 30.23%" plus an up/down arrow for the
/// over/under verdicts.
std::string report_markdown(const ExpressionReport& report);

/// Flat table: slice, attribute, guest group, host group, lower, upper,
/// observed, label.
std::string report_csv(const ExpressionReport& report);

std::string demography_markdown(const SliceKey& slice, const DemographySummary& summary);

/// One summary row per slice: City, Property, White/White rate,
/// non-White/White rate, Pairs, Stays, p-value.
std::string matched_pair_markdown(
    const std::vector<std::pair<SliceKey, MatchedPairResult>>& results);
std::string matched_pair_json(
    const std::vector<std::pair<SliceKey, MatchedPairResult>>& results,
    const RunManifest& manifest);

std::string confidence_rerun_markdown(const ConfidenceRerun& rerun);

}  // namespace homnet
