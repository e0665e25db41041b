#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "homnet/types.hpp"

namespace homnet {

/// Input row for build_network. `is_host` selects the side.
struct NodeInput {
    NodeId id;
    bool is_host = false;
    AttributeSet attrs;
    std::optional<HostProfile> profile;  // host side only
};

struct EdgeInput {
    NodeId guest;
    NodeId host;
    std::int64_t weight = 1;
};

/// Aggregated directed guest->host edge; indices into the network's node tables.
struct Edge {
    std::uint32_t guest = 0;
    std::uint32_t host = 0;
    std::int64_t weight = 0;

    bool operator==(const Edge&) const = default;
};

/// Immutable weighted bipartite network for one (city, property type) slice.
/// Nodes are sorted by id per side, edges by (guest, host), so construction
/// is order-insensitive.
class BipartiteNetwork {
public:
    BipartiteNetwork() = default;

    const SliceKey& slice() const { return slice_; }
    std::size_t num_guests() const { return guest_ids_.size(); }
    std::size_t num_hosts() const { return host_ids_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::int64_t total_weight() const { return total_weight_; }

    const NodeId& guest_id(std::uint32_t i) const { return guest_ids_[i]; }
    const NodeId& host_id(std::uint32_t i) const { return host_ids_[i]; }
    const AttributeSet& guest_attrs(std::uint32_t i) const { return guest_attrs_[i]; }
    const AttributeSet& host_attrs(std::uint32_t i) const { return host_attrs_[i]; }
    const std::optional<HostProfile>& host_profile(std::uint32_t i) const {
        return host_profiles_[i];
    }

    std::span<const Edge> edges() const { return edges_; }

    /// Index lookup; throws UnknownNode for ids absent from the side.
    std::uint32_t guest_index(const NodeId& id) const;
    std::uint32_t host_index(const NodeId& id) const;
    bool has_guest(const NodeId& id) const { return guest_lookup_.count(id) != 0; }
    bool has_host(const NodeId& id) const { return host_lookup_.count(id) != 0; }

    std::int64_t out_strength(const NodeId& guest) const;
    std::int64_t in_strength(const NodeId& host) const;
    std::int64_t out_strength_at(std::uint32_t guest) const { return out_strength_[guest]; }
    std::int64_t in_strength_at(std::uint32_t host) const { return in_strength_[host]; }

    friend BipartiteNetwork build_network(std::span<const NodeInput> nodes,
                                          std::span<const EdgeInput> edge_rows,
                                          const SliceKey& slice);

    /// Copy with replaced attribute tables (same topology). Used by the
    /// robustness perturbation; sizes must match.
    BipartiteNetwork with_attributes(std::vector<AttributeSet> guest_attrs,
                                     std::vector<AttributeSet> host_attrs) const;

private:
    SliceKey slice_;
    std::vector<NodeId> guest_ids_, host_ids_;
    std::vector<AttributeSet> guest_attrs_, host_attrs_;
    std::vector<std::optional<HostProfile>> host_profiles_;
    std::vector<Edge> edges_;
    std::vector<std::int64_t> out_strength_, in_strength_;
    std::int64_t total_weight_ = 0;
    std::unordered_map<NodeId, std::uint32_t> guest_lookup_, host_lookup_;
};

/// Validates endpoints/weights, merges duplicate (g,h) rows by weight
/// summation. Throws UnknownEndpoint, DuplicateNodeId, NonPositiveWeight.
BipartiteNetwork build_network(std::span<const NodeInput> nodes,
                               std::span<const EdgeInput> edge_rows,
                               const SliceKey& slice);

/// Age quintile boundaries at the nearest-rank 20/40/60/80th percentiles.
/// Bins are half-open: Q1 = age < b[0], Q2 = [b[0], b[1]), ..., Q5 = age >= b[3].
/// When every age is equal the boundaries collapse; `degenerate` is set and
/// the whole population is assigned to Q1.
struct QuintileBins {
    std::array<int, 4> boundaries{};
    bool degenerate = false;

    int bin(int age) const;
};

/// Requires at least 5 known ages, else throws InsufficientData.
QuintileBins quintile_bins(std::vector<int> ages);

enum class Attribute : std::uint8_t { Gender, Race, AgeQuintile };

const char* to_string(Attribute a);

/// Grouped view of a network for one attribute at a confidence threshold.
/// Excluded nodes (value Unknown/missing, or confidence below min_conf)
/// carry group -1 and contribute no weight to pairing denominators.
struct AttributeView {
    Attribute attribute = Attribute::Gender;
    double min_conf = 0.0;
    std::vector<std::int8_t> guest_group;  // -1 = excluded
    std::vector<std::int8_t> host_group;
    std::vector<std::string> group_names;
    QuintileBins guest_bins, host_bins;  // age attribute only
    std::vector<std::string> warnings;

    int num_groups() const { return static_cast<int>(group_names.size()); }
    bool empty() const;
};

AttributeView attribute_view(const BipartiteNetwork& net, Attribute attribute,
                             double min_conf);

}  // namespace homnet
