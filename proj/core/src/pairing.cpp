#include "homnet/pairing.hpp"

#include <algorithm>
#include <cmath>

namespace homnet {

const char* to_string(CountMode m) {
    return m == CountMode::StayWeighted ? "stay_weighted" : "distinct_pairs";
}

const char* to_string(ExpressionLabel label) {
    switch (label) {
        case ExpressionLabel::Over: return "over";
        case ExpressionLabel::Under: return "under";
        default: return "compatible";
    }
}

namespace {

PairingMatrix tally(std::span<const Edge> edges, const AttributeView& view, CountMode mode) {
    const int ng = view.num_groups();
    PairingMatrix m;
    m.attribute = view.attribute;
    m.n_guest_groups = ng;
    m.n_host_groups = ng;
    m.freq.assign(static_cast<std::size_t>(ng) * ng, 0.0);

    std::int64_t total = 0;
    for (const Edge& e : edges) {
        const std::int8_t gg = view.guest_group[e.guest];
        const std::int8_t hg = view.host_group[e.host];
        if (gg < 0 || hg < 0) continue;
        const std::int64_t count = mode == CountMode::StayWeighted ? e.weight : 1;
        m.freq[static_cast<std::size_t>(gg) * ng + hg] += static_cast<double>(count);
        total += count;
    }
    if (total == 0)
        throw Error(Errc::EmptyView, "no edge with both endpoints included for attribute " +
                                         std::string(to_string(view.attribute)));
    for (double& f : m.freq) f /= static_cast<double>(total);
    m.total_counted = total;
    return m;
}

}  // namespace

PairingMatrix pairing_frequencies(const BipartiteNetwork& net, const AttributeView& view,
                                  CountMode mode) {
    return tally(net.edges(), view, mode);
}

PairingMatrix pairing_frequencies(std::span<const Edge> edges, const AttributeView& view,
                                  CountMode mode) {
    return tally(edges, view, mode);
}

PairingMatrix pairing_frequencies(const RewireState& state, const AttributeView& view,
                                  CountMode mode) {
    if (mode == CountMode::StayWeighted) {
        // O(W) over stay units, avoiding edge aggregation.
        const int ng = view.num_groups();
        PairingMatrix m;
        m.attribute = view.attribute;
        m.n_guest_groups = ng;
        m.n_host_groups = ng;
        m.freq.assign(static_cast<std::size_t>(ng) * ng, 0.0);
        std::int64_t total = 0;
        for (const UnitStay& u : state.units()) {
            const std::int8_t gg = view.guest_group[u.guest];
            const std::int8_t hg = view.host_group[u.host];
            if (gg < 0 || hg < 0) continue;
            m.freq[static_cast<std::size_t>(gg) * ng + hg] += 1.0;
            ++total;
        }
        if (total == 0)
            throw Error(Errc::EmptyView, "no included stay units");
        for (double& f : m.freq) f /= static_cast<double>(total);
        m.total_counted = total;
        return m;
    }
    return tally(state.snapshot_edges(), view, mode);
}

double percentile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw Error(Errc::InsufficientData, "percentile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<IntervalEstimate> ensemble_intervals(const std::vector<PairingMatrix>& ensemble,
                                                 double level) {
    if (ensemble.size() < 2)
        throw Error(Errc::InsufficientEnsemble,
                    "need >= 2 null matrices, got " + std::to_string(ensemble.size()));
    const std::size_t n_pairs = ensemble.front().freq.size();
    for (const auto& m : ensemble)
        if (m.freq.size() != n_pairs)
            throw Error(Errc::InsufficientEnsemble, "mismatched matrix shapes in ensemble");

    const double p_lo = (1.0 - level) / 2.0;
    const double p_hi = 1.0 - p_lo;
    std::vector<IntervalEstimate> intervals(n_pairs);
    std::vector<double> buffer(ensemble.size());
    for (std::size_t pair = 0; pair < n_pairs; ++pair) {
        for (std::size_t r = 0; r < ensemble.size(); ++r) buffer[r] = ensemble[r].freq[pair];
        intervals[pair].lower = percentile_linear(buffer, p_lo);
        intervals[pair].upper = percentile_linear(buffer, p_hi);
        intervals[pair].level = level;
    }
    return intervals;
}

ExpressionLabel classify(double observed, const IntervalEstimate& interval) {
    if (observed > interval.upper) return ExpressionLabel::Over;
    if (observed < interval.lower) return ExpressionLabel::Under;
    return ExpressionLabel::Compatible;
}

namespace {

DemographySummary::Shares side_shares(const BipartiteNetwork& net, const AttributeView& view) {
    DemographySummary::Shares s;
    s.group_names = view.group_names;
    const auto ng = static_cast<std::size_t>(view.num_groups());
    s.host_share.assign(ng, 0.0);
    s.guest_share.assign(ng, 0.0);
    for (std::int8_t g : view.host_group)
        if (g >= 0) {
            s.host_share[static_cast<std::size_t>(g)] += 1.0;
            ++s.known_hosts;
        }
    for (std::int8_t g : view.guest_group)
        if (g >= 0) {
            s.guest_share[static_cast<std::size_t>(g)] += 1.0;
            ++s.known_guests;
        }
    if (s.known_hosts > 0)
        for (double& v : s.host_share) v /= static_cast<double>(s.known_hosts);
    if (s.known_guests > 0)
        for (double& v : s.guest_share) v /= static_cast<double>(s.known_guests);
    return s;
}

}  // namespace

DemographySummary demography_summary(const BipartiteNetwork& net, double min_conf) {
    DemographySummary d;
    d.gender = side_shares(net, attribute_view(net, Attribute::Gender, min_conf));
    d.race = side_shares(net, attribute_view(net, Attribute::Race, min_conf));
    auto age_view = attribute_view(net, Attribute::AgeQuintile, min_conf);
    d.age_quintile = side_shares(net, age_view);
    d.host_age_bins = age_view.host_bins;
    d.guest_age_bins = age_view.guest_bins;
    return d;
}

}  // namespace homnet
