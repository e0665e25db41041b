#include "homnet/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace homnet {

namespace {

using nlohmann::json;

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
    return buf;
}

const char* marker(ExpressionLabel label) {
    switch (label) {
        case ExpressionLabel::Over: return "↑";
        case ExpressionLabel::Under: return "↓";
        case ExpressionLabel::Compatible: return "—";
    }
    return "?";
}

const char* property_name(PropertyType p) {
    return p == PropertyType::Full ? "full" : "shared";
}

json burn_in_json(const BurnIn& b) {
    json j;
    j["mode"] = b.mode == BurnIn::Mode::Fixed ? "fixed" : "auto_kendall";
    if (b.mode == BurnIn::Mode::Fixed) {
        j["fixed_swaps"] = b.fixed_swaps;
    } else {
        j["tau_stop"] = b.tau_stop;
        j["probe_interval"] = b.probe_interval;
        j["max_swaps"] = b.max_swaps;
    }
    return j;
}

BurnIn burn_in_from_json(const json& j) {
    BurnIn b;
    const std::string mode = j.value("mode", "auto_kendall");
    if (mode == "fixed") {
        b = BurnIn::fixed(j.value("fixed_swaps", std::int64_t{0}));
    } else if (mode == "auto_kendall") {
        b = BurnIn::auto_kendall(j.value("tau_stop", 0.05),
                                 j.value("probe_interval", std::int64_t{0}),
                                 j.value("max_swaps", std::int64_t{0}));
    } else {
        throw Error(Errc::ParseError, "unknown burn-in mode '" + mode + "'");
    }
    return b;
}

json manifest_json(const RunManifest& m) {
    json j;
    j["nodes"] = m.nodes_path;
    j["edges"] = m.edges_path;
    j["city"] = m.city;
    j["property_type"] = m.property_type;
    j["attribute"] = to_string(m.attribute);
    j["min_conf"] = m.min_conf;
    j["mode"] = to_string(m.mode);
    j["configs"] = m.rewire.n_configs;
    j["seed"] = m.rewire.master_seed;
    j["burn_in"] = burn_in_json(m.rewire.burn_in);
    j["level"] = m.level;
    j["out"] = m.out_dir;
    j["formats"] = m.formats;
    return j;
}

}  // namespace

std::string manifest_to_json(const RunManifest& manifest) {
    return manifest_json(manifest).dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
    }
    try {
        RunManifest m;
        m.nodes_path = j.value("nodes", "");
        m.edges_path = j.value("edges", "");
        m.city = j.value("city", "");
        m.property_type = j.value("property_type", "");
        if (j.contains("attribute")) {
            const std::string a = j["attribute"];
            if (a == "gender") m.attribute = Attribute::Gender;
            else if (a == "race") m.attribute = Attribute::Race;
            else if (a == "age_quintile") m.attribute = Attribute::AgeQuintile;
            else throw Error(Errc::ParseError, "unknown attribute '" + a + "'");
        }
        m.min_conf = j.value("min_conf", 0.3);
        if (j.contains("mode")) {
            const std::string mo = j["mode"];
            if (mo == "stay_weighted") m.mode = CountMode::StayWeighted;
            else if (mo == "distinct_pairs") m.mode = CountMode::DistinctPairs;
            else throw Error(Errc::ParseError, "unknown count mode '" + mo + "'");
        }
        m.rewire.n_configs = j.value("configs", 1000);
        m.rewire.master_seed = j.value("seed", std::uint64_t{0});
        if (j.contains("burn_in")) m.rewire.burn_in = burn_in_from_json(j["burn_in"]);
        m.level = j.value("level", 0.95);
        m.out_dir = j.value("out", ".");
        if (j.contains("formats")) m.formats = j["formats"].get<std::vector<std::string>>();
        return m;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("manifest: ") + e.what());
    }
}

std::string report_json(const ExpressionReport& report, const RunManifest& manifest) {
    json j;
    j["tool_version"] = kToolVersion;
    j["manifest"] = manifest_json(manifest);
    j["city"] = report.slice.city;
    j["property_type"] = property_name(report.slice.property_type);
    j["attribute"] = to_string(report.attribute);
    j["mode"] = to_string(report.mode);
    j["min_conf"] = report.min_conf;
    j["level"] = report.level;
    j["ensemble"] = {{"configs", report.ensemble.n_configs},
                     {"burn_in_swaps", report.ensemble.burn_in_swaps},
                     {"master_seed", report.ensemble.master_seed},
                     {"warnings", report.ensemble.warnings}};
    j["warnings"] = report.warnings;
    json pairs = json::array();
    for (const PairResult& p : report.pairs)
        pairs.push_back({{"guest_group", p.guest_group},
                         {"host_group", p.host_group},
                         {"observed", p.observed},
                         {"lower", p.interval.lower},
                         {"upper", p.interval.upper},
                         {"label", to_string(p.label)}});
    j["pairs"] = std::move(pairs);
    return j.dump(2) + "\n";
}

std::string report_markdown(const ExpressionReport& report) {
    std::vector<std::string> guests, hosts;
    for (const PairResult& p : report.pairs) {
        if (std::find(guests.begin(), guests.end(), p.guest_group) == guests.end())
            guests.push_back(p.guest_group);
        if (std::find(hosts.begin(), hosts.end(), p.host_group) == hosts.end())
            hosts.push_back(p.host_group);
    }
    auto find = [&](const std::string& g, const std::string& h) -> const PairResult* {
        for (const PairResult& p : report.pairs)
            if (p.guest_group == g && p.host_group == h) return &p;
        return nullptr;
    };

    std::ostringstream out;
    out << "## " << report.slice.city << " (" << property_name(report.slice.property_type)
        << "), " << to_string(report.attribute) << "\n\n";
    out << "| guest \\ host |";
    for (const auto& h : hosts) out << " " << h << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < hosts.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& g : guests) {
        out << "| " << g << " |";
        for (const auto& h : hosts) {
            const PairResult* p = find(g, h);
            out << " [" << pct(p->interval.lower) << "; " << pct(p->interval.upper) << "]% "
                << pct(p->observed) << "% " << marker(p->label) << " |";
        }
        out << "\n";
    }
    return out.str();
}

std::string report_csv(const ExpressionReport& report) {
    std::ostringstream out;
    out << "city,property_type,attribute,guest_group,host_group,lower,upper,observed,label\n";
    out.precision(17);
    for (const PairResult& p : report.pairs)
        out << report.slice.city << ',' << property_name(report.slice.property_type) << ','
            << to_string(report.attribute) << ',' << p.guest_group << ',' << p.host_group
            << ',' << p.interval.lower << ',' << p.interval.upper << ',' << p.observed << ','
            << to_string(p.label) << "\n";
    return out.str();
}

std::string demography_markdown(const SliceKey& slice, const DemographySummary& summary) {
    std::ostringstream out;
    out << "## " << slice.city << " (" << property_name(slice.property_type)
        << "), demography\n\n";
    out << "| attribute | group | hosts | guests |\n|---|---|---|---|\n";
    auto rows = [&](const char* name, const DemographySummary::Shares& s) {
        for (std::size_t i = 0; i < s.group_names.size(); ++i)
            out << "| " << name << " | " << s.group_names[i] << " | " << pct(s.host_share[i])
                << "% | " << pct(s.guest_share[i]) << "% |\n";
    };
    rows("gender", summary.gender);
    rows("race", summary.race);
    rows("age", summary.age_quintile);
    return out.str();
}

std::string matched_pair_markdown(
    const std::vector<std::pair<SliceKey, MatchedPairResult>>& results) {
    std::ostringstream out;
    out << "| City | Property | White/White rate | non-White/White rate | Pairs | Stays | "
           "p-value |\n|---|---|---|---|---|---|---|\n";
    for (const auto& [slice, r] : results) {
        char p[32];
        std::snprintf(p, sizeof(p), "%.4f", r.p_value);
        out << "| " << slice.city << " | " << property_name(slice.property_type) << " | "
            << pct(r.rate_white_hosts) << "% | " << pct(r.rate_nonwhite_hosts) << "% | "
            << r.n_pairs << " | " << r.n_stays << " | " << p << " |\n";
    }
    return out.str();
}

std::string matched_pair_json(
    const std::vector<std::pair<SliceKey, MatchedPairResult>>& results,
    const RunManifest& manifest) {
    json j;
    j["tool_version"] = kToolVersion;
    j["manifest"] = manifest_json(manifest);
    json rows = json::array();
    for (const auto& [slice, r] : results)
        rows.push_back({{"city", slice.city},
                        {"property_type", property_name(slice.property_type)},
                        {"rate_white_hosts", r.rate_white_hosts},
                        {"rate_nonwhite_hosts", r.rate_nonwhite_hosts},
                        {"pairs", r.n_pairs},
                        {"stays", r.n_stays},
                        {"t_stat", r.t_stat},
                        {"p_value", r.p_value},
                        {"warnings", r.warnings}});
    j["slices"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string confidence_rerun_markdown(const ConfidenceRerun& rerun) {
    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "baseline conf >= %.2f vs rerun conf >= %.2f",
                  rerun.baseline_threshold, rerun.rerun_threshold);
    out << "## Confidence-threshold rerun: " << buf << "\n\n";
    out << "| City | Property | hosts | guests | pairs | label changes |\n"
           "|---|---|---|---|---|---|\n";
    for (const auto& [slice, s] : rerun.slices) {
        out << "| " << slice.city << " | " << property_name(slice.property_type) << " | "
            << s.baseline_counts.hosts << " -> " << s.rerun_counts.hosts << " | "
            << s.baseline_counts.guests << " -> " << s.rerun_counts.guests << " | "
            << s.baseline_counts.pairs << " -> " << s.rerun_counts.pairs << " | ";
        if (s.label_changes.empty()) {
            out << "none";
        } else {
            for (std::size_t i = 0; i < s.label_changes.size(); ++i)
                out << (i ? "; " : "") << s.label_changes[i];
        }
        out << " |\n";
    }
    return out.str();
}

}  // namespace homnet
