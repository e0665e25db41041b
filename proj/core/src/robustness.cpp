#include "homnet/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "homnet/rng.hpp"
#include "homnet/stats.hpp"

namespace homnet {

BipartiteNetwork perturb_labels(const BipartiteNetwork& net, const PerturbationSpec& spec) {
    if (spec.fraction <= 0.0 || spec.fraction > 1.0)
        throw Error(Errc::RangeError, "perturbation fraction must lie in (0,1]");
    if (spec.target_groups.empty())
        throw Error(Errc::InvalidSpec, "no target groups");

    // Candidates in deterministic order: guests by index, then hosts.
    struct Candidate {
        bool is_host;
        std::uint32_t index;
    };
    std::vector<Candidate> candidates;
    for (std::uint32_t i = 0; i < net.num_guests(); ++i)
        if (net.guest_attrs(i).race == spec.source_group) candidates.push_back({false, i});
    for (std::uint32_t i = 0; i < net.num_hosts(); ++i)
        if (net.host_attrs(i).race == spec.source_group) candidates.push_back({true, i});
    if (candidates.empty())
        throw Error(Errc::EmptySourceGroup,
                    std::string("no node with race ") + to_string(spec.source_group));

    const auto k = static_cast<std::size_t>(
        std::floor(spec.fraction * static_cast<double>(candidates.size()) + 0.5));

    auto rng = make_stream(spec.seed, 0);
    // Partial Fisher-Yates: the first k entries become the sample.
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
        std::swap(candidates[i], candidates[pick(rng)]);
    }

    std::vector<AttributeSet> guest_attrs, host_attrs;
    guest_attrs.reserve(net.num_guests());
    host_attrs.reserve(net.num_hosts());
    for (std::uint32_t i = 0; i < net.num_guests(); ++i) guest_attrs.push_back(net.guest_attrs(i));
    for (std::uint32_t i = 0; i < net.num_hosts(); ++i) host_attrs.push_back(net.host_attrs(i));

    std::uniform_int_distribution<std::size_t> pick_target(0, spec.target_groups.size() - 1);
    for (std::size_t i = 0; i < k; ++i) {
        const Race target = spec.target_groups[pick_target(rng)];
        auto& attrs = candidates[i].is_host ? host_attrs[candidates[i].index]
                                            : guest_attrs[candidates[i].index];
        attrs.race = target;
    }
    return net.with_attributes(std::move(guest_attrs), std::move(host_attrs));
}

TercileResult tercile_filter(const BipartiteNetwork& net) {
    std::vector<std::pair<double, std::uint32_t>> priced;
    for (std::uint32_t i = 0; i < net.num_hosts(); ++i)
        if (net.host_profile(i)) priced.push_back({net.host_profile(i)->weekly_price, i});
    if (priced.size() < 3)
        throw Error(Errc::InsufficientPriceData,
                    "need >= 3 priced hosts, got " + std::to_string(priced.size()));

    std::sort(priced.begin(), priced.end());
    const std::size_t n = priced.size();
    const std::size_t third = n / 3;
    const double lo = priced[third].first;           // rank third+1, 1-based
    const double hi = priced[n - third - 1].first;   // rank n-third

    TercileResult result;
    result.degenerate = priced.front().first == priced.back().first;

    std::vector<bool> keep_host(net.num_hosts(), false);
    for (const auto& [price, idx] : priced)
        if (result.degenerate || (price >= lo && price <= hi)) keep_host[idx] = true;
    result.hosts_kept = static_cast<std::size_t>(
        std::count(keep_host.begin(), keep_host.end(), true));
    result.hosts_dropped = net.num_hosts() - result.hosts_kept;

    std::vector<bool> keep_guest(net.num_guests(), false);
    std::vector<EdgeInput> edges;
    for (const Edge& e : net.edges())
        if (keep_host[e.host]) {
            keep_guest[e.guest] = true;
            edges.push_back({net.guest_id(e.guest), net.host_id(e.host), e.weight});
        }

    std::vector<NodeInput> nodes;
    for (std::uint32_t i = 0; i < net.num_guests(); ++i)
        if (keep_guest[i]) nodes.push_back({net.guest_id(i), false, net.guest_attrs(i), {}});
    for (std::uint32_t i = 0; i < net.num_hosts(); ++i)
        if (keep_host[i])
            nodes.push_back({net.host_id(i), true, net.host_attrs(i), net.host_profile(i)});
    result.network = build_network(nodes, edges, net.slice());
    return result;
}

namespace {

bool race_in_group(const AttributeSet& a, double min_conf, bool want_white) {
    if (a.race == Race::Unknown || a.race_conf < min_conf) return false;
    return want_white == (a.race == Race::White);
}

}  // namespace

std::vector<MatchedPair> matched_pairs(const BipartiteNetwork& net, double caliper,
                                       double min_conf) {
    std::vector<std::uint32_t> white, nonwhite;
    for (std::uint32_t i = 0; i < net.num_hosts(); ++i) {
        if (!net.host_profile(i)) continue;
        if (race_in_group(net.host_attrs(i), min_conf, true)) white.push_back(i);
        else if (race_in_group(net.host_attrs(i), min_conf, false)) nonwhite.push_back(i);
    }
    if (white.empty() || nonwhite.empty())
        throw Error(Errc::NoMatchablePairs, "one of the host groups is empty");

    // z-scores over the pooled covariates; a constant covariate drops out.
    std::vector<std::uint32_t> pool = white;
    pool.insert(pool.end(), nonwhite.begin(), nonwhite.end());
    auto covariate = [&](std::uint32_t h, int c) {
        const HostProfile& p = *net.host_profile(h);
        return c == 0 ? static_cast<double>(p.num_properties) : p.weekly_price;
    };
    double mean[2] = {0, 0}, sd[2] = {0, 0};
    for (int c = 0; c < 2; ++c) {
        for (auto h : pool) mean[c] += covariate(h, c);
        mean[c] /= static_cast<double>(pool.size());
        for (auto h : pool) sd[c] += (covariate(h, c) - mean[c]) * (covariate(h, c) - mean[c]);
        sd[c] = std::sqrt(sd[c] / static_cast<double>(pool.size()));
    }
    auto z = [&](std::uint32_t h, int c) {
        return sd[c] > 0 ? (covariate(h, c) - mean[c]) / sd[c] : 0.0;
    };
    auto distance = [&](std::uint32_t a, std::uint32_t b) {
        const double d0 = z(a, 0) - z(b, 0), d1 = z(a, 1) - z(b, 1);
        return std::sqrt(d0 * d0 + d1 * d1);
    };

    struct Link {
        double dist;
        std::uint32_t w, nw;
    };
    std::vector<Link> links;
    for (auto w : white)
        for (auto nw : nonwhite) {
            const double d = distance(w, nw);
            if (d <= caliper) links.push_back({d, w, nw});
        }
    std::sort(links.begin(), links.end(), [&](const Link& a, const Link& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (net.host_id(a.w) != net.host_id(b.w)) return net.host_id(a.w) < net.host_id(b.w);
        return net.host_id(a.nw) < net.host_id(b.nw);
    });

    std::vector<bool> used_w(net.num_hosts(), false), used_nw(net.num_hosts(), false);
    std::vector<MatchedPair> pairs;
    for (const Link& l : links) {
        if (used_w[l.w] || used_nw[l.nw]) continue;
        used_w[l.w] = used_nw[l.nw] = true;
        pairs.push_back({l.w, l.nw, l.dist});
    }
    if (pairs.empty())
        throw Error(Errc::NoMatchablePairs, "no cross-group host pair within the caliper");
    return pairs;
}

double white_guest_rate(const BipartiteNetwork& net, std::uint32_t host, double min_conf) {
    std::int64_t white = 0, known = 0;
    for (const Edge& e : net.edges()) {
        if (e.host != host) continue;
        const AttributeSet& a = net.guest_attrs(e.guest);
        if (a.race == Race::Unknown || a.race_conf < min_conf) continue;
        known += e.weight;
        if (a.race == Race::White) white += e.weight;
    }
    if (known == 0)
        throw Error(Errc::NoKnownRaceStays,
                    "host '" + net.host_id(host) + "' has no stay from a known-race guest");
    return static_cast<double>(white) / static_cast<double>(known);
}

MatchedPairResult rate_t_test(const std::vector<MatchedPair>& pairs,
                              const std::vector<double>& white_rates,
                              const std::vector<double>& nonwhite_rates) {
    if (pairs.size() < 2 || white_rates.size() != pairs.size() ||
        nonwhite_rates.size() != pairs.size())
        throw Error(Errc::InsufficientData, "need >= 2 matched pairs with defined rates");

    MatchedPairResult result;
    result.pairs = pairs;
    result.white_rates = white_rates;
    result.nonwhite_rates = nonwhite_rates;
    result.n_pairs = static_cast<int>(pairs.size());
    const auto n = static_cast<double>(pairs.size());
    result.rate_white_hosts =
        std::accumulate(white_rates.begin(), white_rates.end(), 0.0) / n;
    result.rate_nonwhite_hosts =
        std::accumulate(nonwhite_rates.begin(), nonwhite_rates.end(), 0.0) / n;

    std::vector<double> diff(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) diff[i] = white_rates[i] - nonwhite_rates[i];
    const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
    double var = 0.0;
    for (double d : diff) var += (d - mean) * (d - mean);
    var /= (n - 1.0);

    if (var == 0.0) {
        if (mean == 0.0) {
            result.t_stat = 0.0;
            result.p_value = 1.0;
            result.warnings.push_back("DegenerateDifferences");
        } else {
            result.t_stat = mean > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
            result.p_value = 0.0;
            result.warnings.push_back("DegenerateVariance");
        }
        return result;
    }
    result.t_stat = mean / std::sqrt(var / n);
    result.p_value = student_t_two_sided_p(result.t_stat, n - 1.0);
    return result;
}

MatchedPairResult matched_pair_analysis(const BipartiteNetwork& net, double caliper,
                                        double min_conf) {
    auto candidates = matched_pairs(net, caliper, min_conf);

    // Per-host stay tallies for the stay-weighted group rates.
    std::vector<std::int64_t> white_stays(net.num_hosts(), 0), known_stays(net.num_hosts(), 0);
    for (const Edge& e : net.edges()) {
        const AttributeSet& a = net.guest_attrs(e.guest);
        if (a.race == Race::Unknown || a.race_conf < min_conf) continue;
        known_stays[e.host] += e.weight;
        if (a.race == Race::White) white_stays[e.host] += e.weight;
    }

    std::vector<MatchedPair> pairs;
    std::vector<double> wr, nwr;
    std::int64_t w_white = 0, w_known = 0, nw_white = 0, nw_known = 0;
    for (const MatchedPair& p : candidates) {
        if (known_stays[p.white_host] == 0 || known_stays[p.nonwhite_host] == 0)
            continue;  // a pair needs defined rates on both sides
        pairs.push_back(p);
        wr.push_back(static_cast<double>(white_stays[p.white_host]) /
                     static_cast<double>(known_stays[p.white_host]));
        nwr.push_back(static_cast<double>(white_stays[p.nonwhite_host]) /
                      static_cast<double>(known_stays[p.nonwhite_host]));
        w_white += white_stays[p.white_host];
        w_known += known_stays[p.white_host];
        nw_white += white_stays[p.nonwhite_host];
        nw_known += known_stays[p.nonwhite_host];
    }
    if (pairs.size() < 2)
        throw Error(Errc::InsufficientData,
                    "fewer than 2 matched pairs with known-race stays");

    MatchedPairResult result = rate_t_test(pairs, wr, nwr);
    result.rate_white_hosts = static_cast<double>(w_white) / static_cast<double>(w_known);
    result.rate_nonwhite_hosts = static_cast<double>(nw_white) / static_cast<double>(nw_known);
    result.n_stays = w_known + nw_known;
    return result;
}

ConfidenceRerun rerun_with_confidence(const Dataset& dataset, const AnalyzeOptions& options,
                                      double threshold, double baseline) {
    ConfidenceRerun rerun;
    rerun.baseline_threshold = baseline;
    rerun.rerun_threshold = threshold;
    for (const auto& [slice, net] : dataset.slices) {
        ConfidenceRerunSlice out;
        auto counts_at = [&](double conf) {
            AttributeView view = attribute_view(net, options.attribute, conf);
            SliceCounts c;
            for (std::int8_t g : view.host_group) c.hosts += g >= 0;
            for (std::int8_t g : view.guest_group) c.guests += g >= 0;
            for (const Edge& e : net.edges())
                c.pairs += view.guest_group[e.guest] >= 0 && view.host_group[e.host] >= 0;
            return c;
        };
        out.baseline_counts = counts_at(baseline);
        out.rerun_counts = counts_at(threshold);

        AnalyzeOptions base_opts = options;
        base_opts.min_conf = baseline;
        out.baseline_report = analyze(net, base_opts);
        AnalyzeOptions rerun_opts = options;
        rerun_opts.min_conf = threshold;
        out.rerun_report = analyze(net, rerun_opts);

        for (std::size_t i = 0; i < out.baseline_report.pairs.size(); ++i) {
            const auto& b = out.baseline_report.pairs[i];
            const auto& r = out.rerun_report.pairs[i];
            if (b.label != r.label)
                out.label_changes.push_back(b.guest_group + b.host_group + ": " +
                                            to_string(b.label) + " -> " + to_string(r.label));
        }
        rerun.slices.emplace(slice, std::move(out));
    }
    return rerun;
}

}  // namespace homnet
