#include "homnet/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "homnet/csv.hpp"

namespace homnet {

const char* const kNodesHeader =
    "node_id,side,city,gender,gender_conf,race,race_conf,age_years,age_conf,"
    "num_properties,weekly_price";
const char* const kEdgesHeader = "guest_id,host_id,weight,city,property_type";

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fmt_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

[[noreturn]] void parse_fail(const std::string& file, std::size_t line, std::size_t col,
                             const std::string& reason) {
    throw Error(Errc::ParseError, file + ":" + std::to_string(line) + ":" +
                                      std::to_string(col + 1) + ": " + reason);
}

double parse_real(const std::string& s, const std::string& file, std::size_t line,
                  std::size_t col) {
    double v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        parse_fail(file, line, col, "expected a number, got '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s, const std::string& file, std::size_t line,
                       std::size_t col) {
    std::int64_t v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        parse_fail(file, line, col, "expected an integer, got '" + s + "'");
    return v;
}

Gender parse_gender(const std::string& raw, const std::string& file, std::size_t line,
                    std::size_t col) {
    std::string s = lower(raw);
    if (s.empty() || s == "unknown") return Gender::Unknown;
    if (s == "f" || s == "female") return Gender::Female;
    if (s == "m" || s == "male") return Gender::Male;
    parse_fail(file, line, col, "unknown gender '" + raw + "'");
}

Race parse_race(const std::string& raw, const std::string& file, std::size_t line,
                std::size_t col) {
    std::string s = lower(raw);
    if (s.empty() || s == "unknown") return Race::Unknown;
    if (s == "w" || s == "white") return Race::White;
    if (s == "a" || s == "asian") return Race::Asian;
    if (s == "b" || s == "black") return Race::Black;
    parse_fail(file, line, col, "unknown race '" + raw + "'");
}

void check_header(const csv::Row& row, const char* expected, const std::string& file) {
    std::stringstream ss(expected);
    std::vector<std::string> want;
    std::string tok;
    while (std::getline(ss, tok, ',')) want.push_back(tok);
    if (row.fields.size() != want.size())
        parse_fail(file, row.line, 0, "header has " + std::to_string(row.fields.size()) +
                                          " columns, expected '" + expected + "'");
    for (std::size_t i = 0; i < want.size(); ++i)
        if (lower(row.fields[i]) != want[i])
            parse_fail(file, row.line, i, "header column '" + row.fields[i] + "', expected '" +
                                              want[i] + "'");
}

// Attribute value present but confidence blank: treat as fully confident,
// so min_conf filters only act on explicitly low-confidence annotations.
double conf_or_default(const std::string& raw, bool value_present, const std::string& file,
                       std::size_t line, std::size_t col) {
    if (raw.empty()) return value_present ? 1.0 : 0.0;
    return parse_real(raw, file, line, col);
}

}  // namespace

std::vector<NodeRecord> parse_nodes(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw Error(Errc::ParseError, path + ": missing header row");
    check_header(rows.front(), kNodesHeader, path);
    std::vector<NodeRecord> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 11)
            parse_fail(path, row.line, 0,
                       "expected 11 fields, got " + std::to_string(row.fields.size()));
        NodeRecord rec;
        rec.node_id = row.fields[0];
        if (rec.node_id.empty()) parse_fail(path, row.line, 0, "empty node_id");
        std::string side = lower(row.fields[1]);
        if (side == "host")
            rec.is_host = true;
        else if (side == "guest")
            rec.is_host = false;
        else
            parse_fail(path, row.line, 1, "side must be guest or host, got '" + row.fields[1] + "'");
        rec.city = row.fields[2];
        rec.attrs.gender = parse_gender(row.fields[3], path, row.line, 3);
        rec.attrs.gender_conf =
            conf_or_default(row.fields[4], rec.attrs.gender != Gender::Unknown, path, row.line, 4);
        rec.attrs.race = parse_race(row.fields[5], path, row.line, 5);
        rec.attrs.race_conf =
            conf_or_default(row.fields[6], rec.attrs.race != Race::Unknown, path, row.line, 6);
        if (!row.fields[7].empty())
            rec.attrs.age_years = static_cast<int>(parse_int(row.fields[7], path, row.line, 7));
        rec.attrs.age_conf =
            conf_or_default(row.fields[8], rec.attrs.age_years.has_value(), path, row.line, 8);
        if (rec.is_host && (!row.fields[9].empty() || !row.fields[10].empty())) {
            HostProfile p;
            p.num_properties = row.fields[9].empty()
                                   ? 1
                                   : static_cast<int>(parse_int(row.fields[9], path, row.line, 9));
            p.weekly_price =
                row.fields[10].empty() ? 0.0 : parse_real(row.fields[10], path, row.line, 10);
            rec.profile = p;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<EdgeRecord> parse_edges(const std::string& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw Error(Errc::ParseError, path + ": missing header row");
    check_header(rows.front(), kEdgesHeader, path);
    std::vector<EdgeRecord> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 5)
            parse_fail(path, row.line, 0,
                       "expected 5 fields, got " + std::to_string(row.fields.size()));
        EdgeRecord rec;
        rec.guest_id = row.fields[0];
        rec.host_id = row.fields[1];
        if (rec.guest_id.empty() || rec.host_id.empty())
            parse_fail(path, row.line, 0, "empty endpoint id");
        rec.weight = row.fields[2].empty() ? 1 : parse_int(row.fields[2], path, row.line, 2);
        rec.city = row.fields[3];
        std::string pt = lower(row.fields[4]);
        if (pt == "full")
            rec.property_type = PropertyType::Full;
        else if (pt == "shared")
            rec.property_type = PropertyType::Shared;
        else
            parse_fail(path, row.line, 4,
                       "property_type must be full or shared, got '" + row.fields[4] + "'");
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

struct NodeKey {
    bool is_host;
    std::string city;
    NodeId id;
    auto operator<=>(const NodeKey&) const = default;
};

std::map<NodeKey, const NodeRecord*> index_nodes(const std::vector<NodeRecord>& nodes,
                                                 ValidationReport* report) {
    std::map<NodeKey, const NodeRecord*> index;
    std::size_t row = 1;
    for (const auto& n : nodes) {
        ++row;
        NodeKey key{n.is_host, n.city, n.node_id};
        auto [it, inserted] = index.emplace(key, &n);
        if (!inserted) {
            const NodeRecord& prev = *it->second;
            bool conflicting = !(prev.attrs == n.attrs) || !(prev.profile == n.profile);
            if (conflicting) {
                if (!report)
                    throw Error(Errc::ConflictingNodeRow,
                                "node '" + n.node_id + "' (" + n.city +
                                    ") declared twice with different attributes");
                report->entries.push_back({Errc::ConflictingNodeRow, row, "nodes",
                                           "node '" + n.node_id + "' (" + n.city +
                                               ") declared twice with different attributes"});
            }
        }
    }
    return index;
}

}  // namespace

SliceCounts slice_counts(const BipartiteNetwork& net) {
    return {net.num_hosts(), net.num_guests(), net.num_edges()};
}

Dataset load_dataset(const std::string& nodes_path, const std::string& edges_path) {
    auto nodes = parse_nodes(nodes_path);
    auto edges = parse_edges(edges_path);
    Dataset ds;
    if (edges.empty()) {
        ds.warnings.push_back("edge file contains no data rows; no networks built");
        return ds;
    }
    auto index = index_nodes(nodes, nullptr);

    std::map<SliceKey, std::vector<const EdgeRecord*>> by_slice;
    for (const auto& e : edges) by_slice[{e.city, e.property_type}].push_back(&e);

    for (const auto& [slice, slice_edges] : by_slice) {
        // A slice's network contains exactly the nodes incident to its edges.
        std::map<NodeKey, const NodeRecord*> used;
        std::vector<EdgeInput> edge_inputs;
        edge_inputs.reserve(slice_edges.size());
        for (const EdgeRecord* e : slice_edges) {
            NodeKey gk{false, slice.city, e->guest_id};
            NodeKey hk{true, slice.city, e->host_id};
            auto gi = index.find(gk);
            if (gi == index.end())
                throw Error(Errc::ReferentialError, "edge (" + e->guest_id + "," + e->host_id +
                                                        ") cites unknown guest '" + e->guest_id +
                                                        "' in city '" + slice.city + "'");
            auto hi = index.find(hk);
            if (hi == index.end())
                throw Error(Errc::ReferentialError, "edge (" + e->guest_id + "," + e->host_id +
                                                        ") cites unknown host '" + e->host_id +
                                                        "' in city '" + slice.city + "'");
            used.emplace(gk, gi->second);
            used.emplace(hk, hi->second);
            edge_inputs.push_back({e->guest_id, e->host_id, e->weight});
        }
        std::vector<NodeInput> node_inputs;
        node_inputs.reserve(used.size());
        for (const auto& [key, rec] : used)
            node_inputs.push_back({rec->node_id, rec->is_host, rec->attrs, rec->profile});
        ds.slices.emplace(slice, build_network(node_inputs, edge_inputs, slice));
    }
    return ds;
}

ValidationReport validate_dataset(const std::vector<NodeRecord>& nodes,
                                  const std::vector<EdgeRecord>& edges) {
    ValidationReport report;
    auto index = index_nodes(nodes, &report);

    std::size_t row = 1;
    for (const auto& n : nodes) {
        ++row;
        auto check_conf = [&](double v, const char* name) {
            if (v < 0.0 || v > 1.0)
                report.entries.push_back({Errc::RangeError, row, "nodes",
                                          std::string(name) + "=" + fmt_double(v) +
                                              " outside [0,1] for node '" + n.node_id + "'"});
        };
        check_conf(n.attrs.gender_conf, "gender_conf");
        check_conf(n.attrs.race_conf, "race_conf");
        check_conf(n.attrs.age_conf, "age_conf");
        if (n.attrs.age_years && *n.attrs.age_years < 0)
            report.entries.push_back({Errc::RangeError, row, "nodes",
                                      "negative age_years for node '" + n.node_id + "'"});
        if (n.profile) {
            if (n.profile->num_properties < 1)
                report.entries.push_back({Errc::RangeError, row, "nodes",
                                          "num_properties < 1 for host '" + n.node_id + "'"});
            if (n.profile->weekly_price <= 0.0)
                report.entries.push_back({Errc::RangeError, row, "nodes",
                                          "weekly_price <= 0 for host '" + n.node_id + "'"});
        }
    }

    row = 1;
    for (const auto& e : edges) {
        ++row;
        if (e.weight < 1)
            report.entries.push_back({Errc::NonPositiveWeight, row, "edges",
                                      "weight " + std::to_string(e.weight) + " on edge (" +
                                          e.guest_id + "," + e.host_id + ")"});
        if (!index.count({false, e.city, e.guest_id}))
            report.entries.push_back({Errc::ReferentialError, row, "edges",
                                      "unknown guest '" + e.guest_id + "' in city '" + e.city +
                                          "'"});
        if (!index.count({true, e.city, e.host_id}))
            report.entries.push_back({Errc::ReferentialError, row, "edges",
                                      "unknown host '" + e.host_id + "' in city '" + e.city +
                                          "'"});
    }
    return report;
}

ValidationReport validate_files(const std::string& nodes_path, const std::string& edges_path) {
    return validate_dataset(parse_nodes(nodes_path), parse_edges(edges_path));
}

std::string ValidationReport::to_text() const {
    std::ostringstream os;
    for (const auto& e : entries)
        os << e.file << ".csv:" << e.line << ": " << to_string(e.code) << ": " << e.message
           << '\n';
    return os.str();
}

void write_dataset(const Dataset& ds, const std::string& nodes_path,
                   const std::string& edges_path) {
    std::ofstream nf(nodes_path, std::ios::binary);
    std::ofstream ef(edges_path, std::ios::binary);
    if (!nf || !ef) throw Error(Errc::IoError, "cannot open output CSV files");
    nf << kNodesHeader << '\n';
    ef << kEdgesHeader << '\n';

    std::map<std::tuple<std::string, bool, NodeId>, std::pair<const BipartiteNetwork*, std::uint32_t>>
        seen;
    for (const auto& [slice, net] : ds.slices) {
        for (std::uint32_t i = 0; i < net.num_guests(); ++i)
            seen.emplace(std::tuple{slice.city, false, net.guest_id(i)},
                         std::pair{&net, i});
        for (std::uint32_t i = 0; i < net.num_hosts(); ++i)
            seen.emplace(std::tuple{slice.city, true, net.host_id(i)}, std::pair{&net, i});
    }
    for (const auto& [key, where] : seen) {
        const auto& [city, is_host, id] = key;
        const auto& [net, idx] = where;
        const AttributeSet& a = is_host ? net->host_attrs(idx) : net->guest_attrs(idx);
        nf << csv::escape(id) << ',' << (is_host ? "host" : "guest") << ',' << csv::escape(city)
           << ',';
        nf << (a.gender == Gender::Unknown ? "" : to_string(a.gender)) << ','
           << (a.gender == Gender::Unknown ? "" : fmt_double(a.gender_conf)) << ',';
        nf << (a.race == Race::Unknown ? "" : to_string(a.race)) << ','
           << (a.race == Race::Unknown ? "" : fmt_double(a.race_conf)) << ',';
        nf << (a.age_years ? std::to_string(*a.age_years) : "") << ','
           << (a.age_years ? fmt_double(a.age_conf) : "") << ',';
        if (is_host && net->host_profile(idx)) {
            const HostProfile& p = *net->host_profile(idx);
            nf << p.num_properties << ',' << fmt_double(p.weekly_price);
        } else {
            nf << ',';
        }
        nf << '\n';
    }
    for (const auto& [slice, net] : ds.slices) {
        for (const Edge& e : net.edges())
            ef << csv::escape(net.guest_id(e.guest)) << ',' << csv::escape(net.host_id(e.host))
               << ',' << e.weight << ',' << csv::escape(slice.city) << ','
               << to_string(slice.property_type) << '\n';
    }
}

}  // namespace homnet
