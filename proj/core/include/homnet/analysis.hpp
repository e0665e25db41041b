#pragma once

#include <string>
#include <vector>

#include "homnet/pairing.hpp"
#include "homnet/rewiring.hpp"

namespace homnet {

struct AnalyzeOptions {
    Attribute attribute = Attribute::Gender;
    double min_conf = 0.3;
    CountMode mode = CountMode::StayWeighted;
    RewireConfig rewire;
    double level = 0.95;
    int jobs = 1;
};

struct PairResult {
    std::string guest_group;
    std::string host_group;
    double observed = 0.0;
    IntervalEstimate interval;
    ExpressionLabel label = ExpressionLabel::Compatible;
};

/// One analysed (slice, attribute): observed frequencies vs the null
/// ensemble's intervals, with the over/under/compatible verdicts. Labels
/// are stored independently per pair.
struct ExpressionReport {
    SliceKey slice;
    Attribute attribute = Attribute::Gender;
    CountMode mode = CountMode::StayWeighted;
    double min_conf = 0.0;
    double level = 0.95;
    std::vector<PairResult> pairs;
    EnsembleSummary ensemble;
    std::vector<std::string> warnings;
};

/// Full pipeline on one network: attribute view, observed frequencies,
/// null ensemble, intervals, classification.
ExpressionReport analyze(const BipartiteNetwork& net, const AnalyzeOptions& options);

}  // namespace homnet
