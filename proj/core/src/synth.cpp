#include "homnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "homnet/rng.hpp"

namespace homnet {

namespace {

std::string padded_id(char prefix, std::size_t i, std::size_t n) {
    std::size_t width = 1;
    for (std::size_t v = n > 0 ? n - 1 : 0; v >= 10; v /= 10) ++width;
    std::string digits = std::to_string(i);
    return prefix + std::string(width - digits.size(), '0') + digits;
}

AttributeSet group_attrs(int group, std::size_t n_groups) {
    AttributeSet a;
    if (n_groups == 2) {
        a.gender = group == 0 ? Gender::Female : Gender::Male;
        a.gender_conf = 1.0;
    } else {
        a.race = static_cast<Race>(group);
        a.race_conf = 1.0;
    }
    return a;
}

int draw_group(const std::vector<double>& shares, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng), cum = 0.0;
    for (std::size_t g = 0; g + 1 < shares.size(); ++g) {
        cum += shares[g];
        if (x < cum) return static_cast<int>(g);
    }
    return static_cast<int>(shares.size()) - 1;
}

// Index into a cumulative-weight table by a uniform draw.
std::size_t sample_cumulative(const std::vector<double>& cum, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, cum.back());
    auto it = std::upper_bound(cum.begin(), cum.end(), u(rng));
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cum.begin(), static_cast<std::ptrdiff_t>(cum.size()) - 1));
}

}  // namespace

SynthResult generate(const SynthSpec& spec) {
    if (spec.n_guests == 0 || spec.n_hosts == 0)
        throw Error(Errc::InvalidSpec, "n_guests and n_hosts must be positive");
    if (spec.group_shares.size() != 2 && spec.group_shares.size() != 3)
        throw Error(Errc::InvalidSpec, "need 2 (gender) or 3 (race) group shares");
    double sum = 0.0;
    for (double s : spec.group_shares) {
        if (s < 0.0) throw Error(Errc::InvalidSpec, "negative group share");
        sum += s;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw Error(Errc::InvalidSpec, "group shares must sum to 1");
    if (spec.bias < -1.0) throw Error(Errc::InvalidSpec, "bias must be >= -1");
    if (spec.activity.kind == ActivityModel::Kind::Constant && spec.activity.constant <= 0)
        throw Error(Errc::InvalidSpec, "constant activity must be positive");
    if (spec.activity.kind == ActivityModel::Kind::PowerLaw && spec.activity.alpha <= 1.0)
        throw Error(Errc::InvalidSpec, "activity exponent must exceed 1");

    auto rng = make_stream(spec.seed, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t n_groups = spec.group_shares.size();

    std::vector<int> guest_group(spec.n_guests), host_group(spec.n_hosts);
    for (auto& g : guest_group) g = draw_group(spec.group_shares, rng);
    for (auto& g : host_group) g = draw_group(spec.group_shares, rng);

    std::vector<double> attract(spec.n_hosts, 1.0);
    if (spec.attractiveness.kind == AttractivenessModel::Kind::PowerLaw)
        for (auto& a : attract)
            a = std::pow(1.0 - u(rng), -1.0 / (spec.attractiveness.alpha - 1.0));

    // One cumulative host-weight table per guest group.
    std::vector<std::vector<double>> cum_by_group(n_groups);
    std::vector<std::vector<std::uint32_t>> hosts_by_group(n_groups);
    if (spec.same_group_only) {
        for (std::uint32_t h = 0; h < spec.n_hosts; ++h)
            hosts_by_group[static_cast<std::size_t>(host_group[h])].push_back(h);
        for (std::size_t g = 0; g < n_groups; ++g) {
            double cum = 0.0;
            for (std::uint32_t h : hosts_by_group[g])
                cum_by_group[g].push_back(cum += attract[h]);
        }
    } else {
        for (std::size_t g = 0; g < n_groups; ++g) {
            double cum = 0.0;
            for (std::uint32_t h = 0; h < spec.n_hosts; ++h) {
                const double w =
                    attract[h] *
                    (host_group[h] == static_cast<int>(g) ? 1.0 + spec.bias : 1.0);
                cum_by_group[g].push_back(cum += w);
            }
        }
    }

    GroundTruth truth;
    truth.bias = spec.bias;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> counts;
    for (std::size_t i = 0; i < spec.n_guests; ++i) {
        const auto g = static_cast<std::size_t>(guest_group[i]);
        int stays = spec.activity.constant;
        if (spec.activity.kind == ActivityModel::Kind::PowerLaw) {
            const double x = std::pow(1.0 - u(rng), -1.0 / (spec.activity.alpha - 1.0));
            stays = std::min(spec.activity.cap, static_cast<int>(x));
            if (stays < 1) stays = 1;
        }
        const std::vector<double>* cum = &cum_by_group[g];
        const std::vector<std::uint32_t>* pool =
            spec.same_group_only ? &hosts_by_group[g] : nullptr;
        if (spec.same_group_only && cum->empty()) {
            // No same-group host exists: fall back to attractiveness only.
            cum = &cum_by_group[0];
            for (std::size_t gg = 0; gg < n_groups && cum->empty(); ++gg) {
                cum = &cum_by_group[gg];
                pool = &hosts_by_group[gg];
            }
        }
        for (int s = 0; s < stays; ++s) {
            const std::size_t pick = sample_cumulative(*cum, rng);
            const std::uint32_t h = pool ? (*pool)[pick] : static_cast<std::uint32_t>(pick);
            counts[{static_cast<std::uint32_t>(i), h}] += 1;
            truth.total_stays += 1;
            if (host_group[h] == guest_group[i]) truth.same_group_stays += 1;
        }
    }

    std::vector<NodeInput> nodes;
    nodes.reserve(spec.n_guests + spec.n_hosts);
    for (std::size_t i = 0; i < spec.n_guests; ++i)
        nodes.push_back({padded_id('g', i, spec.n_guests), false,
                         group_attrs(guest_group[i], n_groups), {}});
    for (std::size_t i = 0; i < spec.n_hosts; ++i)
        nodes.push_back({padded_id('h', i, spec.n_hosts), true,
                         group_attrs(host_group[i], n_groups),
                         HostProfile{1, 100.0}});
    std::vector<EdgeInput> edges;
    edges.reserve(counts.size());
    for (const auto& [key, w] : counts)
        edges.push_back({padded_id('g', key.first, spec.n_guests),
                         padded_id('h', key.second, spec.n_hosts), w});

    SynthResult result;
    result.network = build_network(nodes, edges, spec.slice);
    // Node ids sort in index order by construction, so the group vectors
    // line up with the network's tables as-is.
    result.truth = std::move(truth);
    result.truth.guest_groups = std::move(guest_group);
    result.truth.host_groups = std::move(host_group);
    return result;
}

BipartiteNetwork generate_confounded(const ConfoundSpec& spec) {
    if (spec.n_guests == 0 || spec.n_hosts == 0 || spec.stays_per_guest <= 0)
        throw Error(Errc::InvalidSpec, "sizes and stays must be positive");
    if (spec.choice_scale <= 0.0)
        throw Error(Errc::InvalidSpec, "choice_scale must be positive");

    auto rng = make_stream(spec.seed, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<bool> host_white(spec.n_hosts);
    std::vector<double> log_price(spec.n_hosts);
    for (std::size_t h = 0; h < spec.n_hosts; ++h) {
        host_white[h] = u(rng) < spec.white_host_share;
        const double mu = host_white[h] ? spec.log_price_white : spec.log_price_nonwhite;
        log_price[h] = mu + spec.log_price_sd * gauss(rng);
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> counts;
    std::vector<bool> guest_white(spec.n_guests);
    std::vector<double> cum(spec.n_hosts);
    for (std::size_t i = 0; i < spec.n_guests; ++i) {
        guest_white[i] = u(rng) < spec.white_guest_share;
        const double mu = guest_white[i] ? spec.log_price_white : spec.log_price_nonwhite;
        const double budget = mu + spec.budget_sd * gauss(rng);
        double acc = 0.0;
        for (std::size_t h = 0; h < spec.n_hosts; ++h) {
            const double d = (log_price[h] - budget) / spec.choice_scale;
            cum[h] = acc += std::exp(-0.5 * d * d);
        }
        for (int s = 0; s < spec.stays_per_guest; ++s) {
            const auto h = static_cast<std::uint32_t>(sample_cumulative(cum, rng));
            counts[{static_cast<std::uint32_t>(i), h}] += 1;
        }
    }

    auto race_attrs = [](bool white) {
        AttributeSet a;
        a.race = white ? Race::White : Race::Black;
        a.race_conf = 1.0;
        return a;
    };
    std::vector<NodeInput> nodes;
    for (std::size_t i = 0; i < spec.n_guests; ++i)
        nodes.push_back({padded_id('g', i, spec.n_guests), false, race_attrs(guest_white[i]), {}});
    for (std::size_t h = 0; h < spec.n_hosts; ++h)
        nodes.push_back({padded_id('h', h, spec.n_hosts), true, race_attrs(host_white[h]),
                         HostProfile{1, std::exp(log_price[h])}});
    std::vector<EdgeInput> edges;
    for (const auto& [key, w] : counts)
        edges.push_back({padded_id('g', key.first, spec.n_guests),
                         padded_id('h', key.second, spec.n_hosts), w});
    return build_network(nodes, edges, spec.slice);
}

}  // namespace homnet
