#include "homnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace homnet {

const char* to_string(Gender g) {
    switch (g) {
        case Gender::Female: return "F";
        case Gender::Male: return "M";
        default: return "Unknown";
    }
}

const char* to_string(Race r) {
    switch (r) {
        case Race::White: return "W";
        case Race::Asian: return "A";
        case Race::Black: return "B";
        default: return "Unknown";
    }
}

const char* to_string(PropertyType p) {
    return p == PropertyType::Full ? "full" : "shared";
}

std::string to_string(const SliceKey& key) {
    return key.city + "/" + to_string(key.property_type);
}

const char* to_string(Attribute a) {
    switch (a) {
        case Attribute::Gender: return "gender";
        case Attribute::Race: return "race";
        default: return "age_quintile";
    }
}

const char* to_string(Errc code) {
    switch (code) {
        case Errc::UnknownEndpoint: return "UnknownEndpoint";
        case Errc::DuplicateNodeId: return "DuplicateNodeId";
        case Errc::NonPositiveWeight: return "NonPositiveWeight";
        case Errc::UnknownNode: return "UnknownNode";
        case Errc::InsufficientData: return "InsufficientData";
        case Errc::ParseError: return "ParseError";
        case Errc::ReferentialError: return "ReferentialError";
        case Errc::ConflictingNodeRow: return "ConflictingNodeRow";
        case Errc::RangeError: return "RangeError";
        case Errc::NotRewirable: return "NotRewirable";
        case Errc::DegenerateInput: return "DegenerateInput";
        case Errc::EmptyView: return "EmptyView";
        case Errc::InsufficientEnsemble: return "InsufficientEnsemble";
        case Errc::EmptySourceGroup: return "EmptySourceGroup";
        case Errc::InsufficientPriceData: return "InsufficientPriceData";
        case Errc::NoMatchablePairs: return "NoMatchablePairs";
        case Errc::NoKnownRaceStays: return "NoKnownRaceStays";
        case Errc::DegenerateDifferences: return "DegenerateDifferences";
        case Errc::InvalidSpec: return "InvalidSpec";
        case Errc::IoError: return "IoError";
    }
    return "Error";
}

std::uint32_t BipartiteNetwork::guest_index(const NodeId& id) const {
    auto it = guest_lookup_.find(id);
    if (it == guest_lookup_.end())
        throw Error(Errc::UnknownNode, "no guest with id '" + id + "'");
    return it->second;
}

std::uint32_t BipartiteNetwork::host_index(const NodeId& id) const {
    auto it = host_lookup_.find(id);
    if (it == host_lookup_.end())
        throw Error(Errc::UnknownNode, "no host with id '" + id + "'");
    return it->second;
}

std::int64_t BipartiteNetwork::out_strength(const NodeId& guest) const {
    return out_strength_[guest_index(guest)];
}

std::int64_t BipartiteNetwork::in_strength(const NodeId& host) const {
    return in_strength_[host_index(host)];
}

BipartiteNetwork build_network(std::span<const NodeInput> nodes,
                               std::span<const EdgeInput> edge_rows,
                               const SliceKey& slice) {
    BipartiteNetwork net;
    net.slice_ = slice;

    // Sort ids per side so that row order cannot influence the result.
    std::vector<const NodeInput*> guests, hosts;
    for (const auto& n : nodes) {
        if (n.id.empty())
            throw Error(Errc::ParseError, "empty node id");
        (n.is_host ? hosts : guests).push_back(&n);
    }
    auto by_id = [](const NodeInput* a, const NodeInput* b) { return a->id < b->id; };
    std::sort(guests.begin(), guests.end(), by_id);
    std::sort(hosts.begin(), hosts.end(), by_id);

    auto index_side = [](const std::vector<const NodeInput*>& side, const char* name,
                         std::unordered_map<NodeId, std::uint32_t>& lookup) {
        for (std::size_t i = 0; i < side.size(); ++i) {
            if (i > 0 && side[i]->id == side[i - 1]->id)
                throw Error(Errc::DuplicateNodeId,
                            std::string(name) + " id '" + side[i]->id + "' declared twice");
            lookup.emplace(side[i]->id, static_cast<std::uint32_t>(i));
        }
    };
    index_side(guests, "guest", net.guest_lookup_);
    index_side(hosts, "host", net.host_lookup_);

    for (const auto* g : guests) {
        net.guest_ids_.push_back(g->id);
        net.guest_attrs_.push_back(g->attrs);
    }
    for (const auto* h : hosts) {
        net.host_ids_.push_back(h->id);
        net.host_attrs_.push_back(h->attrs);
        net.host_profiles_.push_back(h->profile);
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> merged;
    std::size_t row = 0;
    for (const auto& e : edge_rows) {
        ++row;
        if (e.weight < 1)
            throw Error(Errc::NonPositiveWeight,
                        "edge row " + std::to_string(row) + " (" + e.guest + "," + e.host +
                            ") has weight " + std::to_string(e.weight));
        auto gi = net.guest_lookup_.find(e.guest);
        if (gi == net.guest_lookup_.end())
            throw Error(Errc::UnknownEndpoint,
                        "edge row " + std::to_string(row) + " references undeclared guest '" +
                            e.guest + "'");
        auto hi = net.host_lookup_.find(e.host);
        if (hi == net.host_lookup_.end())
            throw Error(Errc::UnknownEndpoint,
                        "edge row " + std::to_string(row) + " references undeclared host '" +
                            e.host + "'");
        merged[{gi->second, hi->second}] += e.weight;
    }

    net.out_strength_.assign(net.guest_ids_.size(), 0);
    net.in_strength_.assign(net.host_ids_.size(), 0);
    net.edges_.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        net.edges_.push_back({key.first, key.second, w});
        net.out_strength_[key.first] += w;
        net.in_strength_[key.second] += w;
        net.total_weight_ += w;
    }
    return net;
}

BipartiteNetwork BipartiteNetwork::with_attributes(
    std::vector<AttributeSet> guest_attrs, std::vector<AttributeSet> host_attrs) const {
    if (guest_attrs.size() != guest_attrs_.size() || host_attrs.size() != host_attrs_.size())
        throw Error(Errc::InvalidSpec, "attribute table size mismatch");
    BipartiteNetwork net = *this;
    net.guest_attrs_ = std::move(guest_attrs);
    net.host_attrs_ = std::move(host_attrs);
    return net;
}

int QuintileBins::bin(int age) const {
    for (int i = 0; i < 4; ++i)
        if (age < boundaries[i]) return i;
    // Collapsed boundaries: the tied population is reported in Q1.
    if (degenerate && age == boundaries[0]) return 0;
    return 4;
}

QuintileBins quintile_bins(std::vector<int> ages) {
    if (ages.size() < 5)
        throw Error(Errc::InsufficientData,
                    "need at least 5 known ages, got " + std::to_string(ages.size()));
    std::sort(ages.begin(), ages.end());
    const auto n = ages.size();
    QuintileBins bins;
    for (int k = 1; k <= 4; ++k) {
        // Nearest-rank percentile; the boundary element itself opens bin k+1.
        const std::size_t idx = (static_cast<std::size_t>(k) * n + 4) / 5;
        bins.boundaries[k - 1] = ages[std::min(idx, n - 1)];
    }
    bins.degenerate = !(bins.boundaries[0] < bins.boundaries[1] &&
                        bins.boundaries[1] < bins.boundaries[2] &&
                        bins.boundaries[2] < bins.boundaries[3]);
    return bins;
}

bool AttributeView::empty() const {
    auto known = [](const std::vector<std::int8_t>& v) {
        return std::any_of(v.begin(), v.end(), [](std::int8_t g) { return g >= 0; });
    };
    return !known(guest_group) || !known(host_group);
}

namespace {

template <typename GroupFn>
void fill_groups(std::vector<std::int8_t>& out, std::size_t n, GroupFn&& fn) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(static_cast<std::uint32_t>(i));
}

}  // namespace

AttributeView attribute_view(const BipartiteNetwork& net, Attribute attribute,
                             double min_conf) {
    if (min_conf < 0.0 || min_conf > 1.0)
        throw Error(Errc::RangeError, "min_conf must lie in [0,1]");
    AttributeView view;
    view.attribute = attribute;
    view.min_conf = min_conf;

    switch (attribute) {
        case Attribute::Gender: {
            view.group_names = {"F", "M"};
            auto group = [&](const AttributeSet& a) -> std::int8_t {
                if (a.gender == Gender::Unknown || a.gender_conf < min_conf) return -1;
                return a.gender == Gender::Female ? 0 : 1;
            };
            fill_groups(view.guest_group, net.num_guests(),
                        [&](std::uint32_t i) { return group(net.guest_attrs(i)); });
            fill_groups(view.host_group, net.num_hosts(),
                        [&](std::uint32_t i) { return group(net.host_attrs(i)); });
            break;
        }
        case Attribute::Race: {
            view.group_names = {"W", "A", "B"};
            auto group = [&](const AttributeSet& a) -> std::int8_t {
                if (a.race == Race::Unknown || a.race_conf < min_conf) return -1;
                return static_cast<std::int8_t>(a.race);
            };
            fill_groups(view.guest_group, net.num_guests(),
                        [&](std::uint32_t i) { return group(net.guest_attrs(i)); });
            fill_groups(view.host_group, net.num_hosts(),
                        [&](std::uint32_t i) { return group(net.host_attrs(i)); });
            break;
        }
        case Attribute::AgeQuintile: {
            view.group_names = {"Q1", "Q2", "Q3", "Q4", "Q5"};
            auto collect = [&](auto attrs_of, std::size_t n) {
                std::vector<int> ages;
                for (std::size_t i = 0; i < n; ++i) {
                    const AttributeSet& a = attrs_of(static_cast<std::uint32_t>(i));
                    if (a.age_years && a.age_conf >= min_conf) ages.push_back(*a.age_years);
                }
                return ages;
            };
            auto guest_ages =
                collect([&](std::uint32_t i) -> const AttributeSet& { return net.guest_attrs(i); },
                        net.num_guests());
            auto host_ages =
                collect([&](std::uint32_t i) -> const AttributeSet& { return net.host_attrs(i); },
                        net.num_hosts());
            auto bins_or_warn = [&](std::vector<int> ages, const char* side) {
                QuintileBins bins;
                if (ages.size() < 5) {
                    bins.degenerate = true;
                    view.warnings.push_back(std::string("InsufficientAges:") + side);
                } else {
                    bins = quintile_bins(std::move(ages));
                    if (bins.degenerate)
                        view.warnings.push_back(std::string("DegenerateBins:") + side);
                }
                return bins;
            };
            view.guest_bins = bins_or_warn(std::move(guest_ages), "guest");
            view.host_bins = bins_or_warn(std::move(host_ages), "host");
            auto group = [&](const AttributeSet& a, const QuintileBins& bins) -> std::int8_t {
                if (!a.age_years || a.age_conf < min_conf) return -1;
                return static_cast<std::int8_t>(bins.bin(*a.age_years));
            };
            fill_groups(view.guest_group, net.num_guests(), [&](std::uint32_t i) {
                return group(net.guest_attrs(i), view.guest_bins);
            });
            fill_groups(view.host_group, net.num_hosts(), [&](std::uint32_t i) {
                return group(net.host_attrs(i), view.host_bins);
            });
            break;
        }
    }
    if (view.empty()) view.warnings.push_back("EmptyView");
    return view;
}

}  // namespace homnet
