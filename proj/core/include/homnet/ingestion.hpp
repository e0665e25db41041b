#pragma once

#include <map>
#include <string>
#include <vector>

#include "homnet/network.hpp"

namespace homnet {

/// One row of nodes.csv. Empty strings mean "missing".
struct NodeRecord {
    NodeId node_id;
    bool is_host = false;
    std::string city;
    AttributeSet attrs;
    std::optional<HostProfile> profile;
};

/// One row of edges.csv.
struct EdgeRecord {
    NodeId guest_id;
    NodeId host_id;
    std::int64_t weight = 1;
    std::string city;
    PropertyType property_type = PropertyType::Full;
};

struct ValidationEntry {
    Errc code;
    std::size_t line = 0;  // 1-based line in the offending file, 0 = cross-file
    std::string file;      // "nodes" or "edges"
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationEntry> entries;

    bool clean() const { return entries.empty(); }
    std::string to_text() const;
};

struct Dataset {
    std::map<SliceKey, BipartiteNetwork> slices;
    std::vector<std::string> warnings;
};

/// Per-slice structure counts in the layout of the summary table
/// (hosts, guests, host-guest pairs).
struct SliceCounts {
    std::size_t hosts = 0, guests = 0, pairs = 0;
};

SliceCounts slice_counts(const BipartiteNetwork& net);

extern const char* const kNodesHeader;  // node_id,side,city,...
extern const char* const kEdgesHeader;  // guest_id,host_id,weight,city,property_type

std::vector<NodeRecord> parse_nodes(const std::string& path);
std::vector<EdgeRecord> parse_edges(const std::string& path);

/// Builds one network per (city, property_type) pair present in the edge
/// file. Throws on the first hard violation; run validate_dataset for a
/// full listing.
Dataset load_dataset(const std::string& nodes_path, const std::string& edges_path);

/// Collects every violation instead of throwing; empty report iff
/// load_dataset succeeds with no warnings.
ValidationReport validate_dataset(const std::vector<NodeRecord>& nodes,
                                  const std::vector<EdgeRecord>& edges);
ValidationReport validate_files(const std::string& nodes_path, const std::string& edges_path);

/// Serializes a dataset back to the nodes/edges CSV schema (round-trip
/// inverse of load_dataset).
void write_dataset(const Dataset& ds, const std::string& nodes_path,
                   const std::string& edges_path);

}  // namespace homnet
