#include "homnet/analysis.hpp"

namespace homnet {

ExpressionReport analyze(const BipartiteNetwork& net, const AnalyzeOptions& options) {
    AttributeView view = attribute_view(net, options.attribute, options.min_conf);
    if (view.empty())
        throw Error(Errc::EmptyView, "no included node for attribute " +
                                         std::string(to_string(options.attribute)) +
                                         " in slice " + to_string(net.slice()));

    PairingMatrix observed = pairing_frequencies(net, view, options.mode);

    std::vector<PairingMatrix> ensemble(
        static_cast<std::size_t>(options.rewire.n_configs));
    EnsembleSummary summary = generate_ensemble(
        net, options.rewire,
        [&](int r, const RewireState& state) {
            ensemble[static_cast<std::size_t>(r)] =
                pairing_frequencies(state, view, options.mode);
        },
        options.jobs);

    std::vector<IntervalEstimate> intervals = ensemble_intervals(ensemble, options.level);

    ExpressionReport report;
    report.slice = net.slice();
    report.attribute = options.attribute;
    report.mode = options.mode;
    report.min_conf = options.min_conf;
    report.level = options.level;
    report.ensemble = summary;
    report.warnings = view.warnings;

    const int ng = view.num_groups();
    report.pairs.reserve(static_cast<std::size_t>(ng) * ng);
    for (int g = 0; g < ng; ++g)
        for (int h = 0; h < ng; ++h) {
            PairResult pr;
            pr.guest_group = view.group_names[static_cast<std::size_t>(g)];
            pr.host_group = view.group_names[static_cast<std::size_t>(h)];
            pr.observed = observed.at(g, h);
            pr.interval = intervals[static_cast<std::size_t>(g) * ng + h];
            pr.label = classify(pr.observed, pr.interval);
            report.pairs.push_back(std::move(pr));
        }
    return report;
}

}  // namespace homnet
