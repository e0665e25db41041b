#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "homnet/ingestion.hpp"
#include "homnet/report.hpp"
#include "homnet/robustness.hpp"
#include "homnet/synth.hpp"

namespace fs = std::filesystem;
using namespace homnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    out << content;
}

std::string read_file_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Attribute parse_attribute(const std::string& name) {
    if (name == "gender") return Attribute::Gender;
    if (name == "race") return Attribute::Race;
    if (name == "age_quintile" || name == "age") return Attribute::AgeQuintile;
    throw CLI::ValidationError("--attribute", "unknown attribute '" + name + "'");
}

std::string slice_stem(const SliceKey& slice) {
    std::string city = slice.city;
    for (char& c : city)
        if (c == ' ' || c == '/') c = '_';
    return city + "_" + (slice.property_type == PropertyType::Full ? "full" : "shared");
}

bool slice_selected(const SliceKey& slice, const RunManifest& m) {
    if (!m.city.empty() && slice.city != m.city) return false;
    if (m.property_type == "full" && slice.property_type != PropertyType::Full) return false;
    if (m.property_type == "shared" && slice.property_type != PropertyType::Shared)
        return false;
    return true;
}

std::vector<std::pair<SliceKey, const BipartiteNetwork*>> selected_slices(
    const Dataset& ds, const RunManifest& m) {
    std::vector<std::pair<SliceKey, const BipartiteNetwork*>> out;
    for (const auto& [slice, net] : ds.slices)
        if (slice_selected(slice, m)) out.push_back({slice, &net});
    if (out.empty())
        throw Error(Errc::EmptyView, "no slice matches the city/property-type filter");
    return out;
}

struct CommonFlags {
    RunManifest manifest;
    std::string manifest_path;
    std::int64_t fixed_swaps = -1;  // >= 0 selects fixed burn-in
    double tau_stop = 0.05;
    int jobs = 1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool need_inputs = true) {
    auto* nodes = cmd->add_option("--nodes", f.manifest.nodes_path, "nodes.csv path");
    auto* edges = cmd->add_option("--edges", f.manifest.edges_path, "edges.csv path");
    auto* manifest = cmd->add_option("--manifest", f.manifest_path,
                                     "manifest JSON; its fields override the flags");
    if (need_inputs) {
        nodes->required(false);
        edges->required(false);
        manifest->check(CLI::ExistingFile);
    }
    cmd->add_option("--city", f.manifest.city, "restrict to one city");
    cmd->add_option("--property-type", f.manifest.property_type, "full or shared")
        ->check(CLI::IsMember({"full", "shared"}));
    cmd->add_option_function<std::string>(
           "--attribute",
           [&f](const std::string& v) { f.manifest.attribute = parse_attribute(v); },
           "gender, race, or age_quintile")
        ->check(CLI::IsMember({"gender", "race", "age_quintile", "age"}));
    cmd->add_option("--min-conf", f.manifest.min_conf, "annotation confidence threshold");
    cmd->add_option("--configs", f.manifest.rewire.n_configs, "ensemble size")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.manifest.rewire.master_seed, "master seed");
    cmd->add_option("--tau-stop", f.tau_stop, "burn-in Kendall tau threshold");
    cmd->add_option("--burn-in", f.fixed_swaps, "fixed burn-in swap count");
    cmd->add_option_function<std::string>(
           "--mode",
           [&f](const std::string& v) {
               f.manifest.mode = v == "distinct_pairs" ? CountMode::DistinctPairs
                                                       : CountMode::StayWeighted;
           },
           "stay_weighted or distinct_pairs")
        ->check(CLI::IsMember({"stay_weighted", "distinct_pairs"}));
    cmd->add_option("--level", f.manifest.level, "interval level");
    cmd->add_option("--out", f.manifest.out_dir, "output directory");
    cmd->add_option("--format", f.manifest.formats, "json, md, csv")
        ->check(CLI::IsMember({"json", "md", "csv"}));
    cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

RunManifest resolve_manifest(CommonFlags& f) {
    if (f.fixed_swaps >= 0)
        f.manifest.rewire.burn_in = BurnIn::fixed(f.fixed_swaps);
    else
        f.manifest.rewire.burn_in = BurnIn::auto_kendall(f.tau_stop);
    if (!f.manifest_path.empty())
        return manifest_from_json(read_file_or_throw(f.manifest_path));
    return f.manifest;
}

AnalyzeOptions to_options(const RunManifest& m, int jobs) {
    AnalyzeOptions o;
    o.attribute = m.attribute;
    o.min_conf = m.min_conf;
    o.mode = m.mode;
    o.rewire = m.rewire;
    o.level = m.level;
    o.jobs = jobs;
    return o;
}

bool wants(const RunManifest& m, const char* fmt) {
    return std::find(m.formats.begin(), m.formats.end(), fmt) != m.formats.end();
}

int cmd_validate(const std::string& nodes, const std::string& edges) {
    ValidationReport report = validate_files(nodes, edges);
    if (report.clean()) {
        std::cout << "ok\n";
        return kExitOk;
    }
    std::cout << report.to_text();
    return kExitDomain;
}

int cmd_analyze(CommonFlags& flags) {
    const RunManifest manifest = resolve_manifest(flags);
    Dataset ds = load_dataset(manifest.nodes_path, manifest.edges_path);
    for (const auto& [slice, net] : selected_slices(ds, manifest)) {
        ExpressionReport report = analyze(*net, to_options(manifest, flags.jobs));
        const fs::path base = fs::path(manifest.out_dir) /
                              (slice_stem(slice) + "_" + to_string(manifest.attribute));
        if (wants(manifest, "json"))
            write_file(base.string() + ".json", report_json(report, manifest));
        if (wants(manifest, "md")) write_file(base.string() + ".md", report_markdown(report));
        if (wants(manifest, "csv")) write_file(base.string() + ".csv", report_csv(report));
        std::cout << report_markdown(report) << "\n";
    }
    return kExitOk;
}

int cmd_matchpair(CommonFlags& flags, double caliper) {
    const RunManifest manifest = resolve_manifest(flags);
    Dataset ds = load_dataset(manifest.nodes_path, manifest.edges_path);
    std::vector<std::pair<SliceKey, MatchedPairResult>> rows;
    for (const auto& [slice, net] : selected_slices(ds, manifest))
        rows.push_back({slice, matched_pair_analysis(*net, caliper, manifest.min_conf)});
    const std::string md = matched_pair_markdown(rows);
    if (wants(manifest, "md"))
        write_file(fs::path(manifest.out_dir) / "matched_pairs.md", md);
    if (wants(manifest, "json"))
        write_file(fs::path(manifest.out_dir) / "matched_pairs.json",
                   matched_pair_json(rows, manifest));
    std::cout << md;
    return kExitOk;
}

int cmd_robustness(CommonFlags& flags, const std::string& procedure, double threshold,
                   double fraction, std::uint64_t perturb_seed, double caliper) {
    const RunManifest manifest = resolve_manifest(flags);
    if (procedure == "matchpair") return cmd_matchpair(flags, caliper);

    Dataset ds = load_dataset(manifest.nodes_path, manifest.edges_path);
    const AnalyzeOptions options = to_options(manifest, flags.jobs);

    if (procedure == "confidence") {
        Dataset filtered;
        for (const auto& [slice, net] : selected_slices(ds, manifest))
            filtered.slices.emplace(slice, *net);
        ConfidenceRerun rerun =
            rerun_with_confidence(filtered, options, threshold, manifest.min_conf);
        const std::string md = confidence_rerun_markdown(rerun);
        write_file(fs::path(manifest.out_dir) / "confidence_rerun.md", md);
        std::cout << md;
        return kExitOk;
    }

    std::ostringstream out;
    for (const auto& [slice, net] : selected_slices(ds, manifest)) {
        if (procedure == "perturb") {
            PerturbationSpec spec;
            spec.fraction = fraction;
            spec.seed = perturb_seed;
            BipartiteNetwork perturbed = perturb_labels(*net, spec);
            ExpressionReport base = analyze(*net, options);
            ExpressionReport alt = analyze(perturbed, options);
            out << "## " << to_string(slice) << ", label perturbation\n\n";
            std::size_t changes = 0;
            for (std::size_t i = 0; i < base.pairs.size(); ++i)
                if (base.pairs[i].label != alt.pairs[i].label) {
                    ++changes;
                    out << "- " << base.pairs[i].guest_group << base.pairs[i].host_group
                        << ": " << to_string(base.pairs[i].label) << " -> "
                        << to_string(alt.pairs[i].label) << "\n";
                }
            if (changes == 0) out << "no label changes\n";
            out << "\n" << report_markdown(alt) << "\n";
        } else {  // tercile
            TercileResult filtered = tercile_filter(*net);
            out << "## " << to_string(slice) << ", middle price tercile ("
                << filtered.hosts_kept << " hosts kept, " << filtered.hosts_dropped
                << " dropped)\n\n";
            ExpressionReport report = analyze(filtered.network, options);
            out << report_markdown(report) << "\n";
        }
    }
    const std::string md = out.str();
    write_file(fs::path(manifest.out_dir) / (procedure + ".md"), md);
    std::cout << md;
    return kExitOk;
}

SynthSpec synth_spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("synth spec: ") + e.what());
    }
    SynthSpec spec;
    spec.n_guests = j.value("n_guests", spec.n_guests);
    spec.n_hosts = j.value("n_hosts", spec.n_hosts);
    if (j.contains("group_shares"))
        spec.group_shares = j["group_shares"].get<std::vector<double>>();
    spec.bias = j.value("bias", 0.0);
    spec.same_group_only = j.value("same_group_only", false);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.slice.city = j.value("city", spec.slice.city);
    if (j.value("property_type", "full") == std::string("shared"))
        spec.slice.property_type = PropertyType::Shared;
    if (j.contains("activity")) {
        const auto& a = j["activity"];
        if (a.value("kind", "constant") == std::string("power_law"))
            spec.activity = ActivityModel::power_law(a.value("alpha", 2.5), a.value("cap", 1000));
        else
            spec.activity = ActivityModel::constant_stays(a.value("constant", 2));
    }
    if (j.contains("attractiveness")) {
        const auto& a = j["attractiveness"];
        if (a.value("kind", "uniform") == std::string("power_law")) {
            spec.attractiveness.kind = AttractivenessModel::Kind::PowerLaw;
            spec.attractiveness.alpha = a.value("alpha", 2.5);
        }
    }
    return spec;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
    const SynthSpec spec = synth_spec_from_json(read_file_or_throw(spec_path));
    SynthResult result = generate(spec);

    Dataset ds;
    ds.slices.emplace(spec.slice, result.network);
    fs::create_directories(out_dir);
    write_dataset(ds, (fs::path(out_dir) / "nodes.csv").string(),
                  (fs::path(out_dir) / "edges.csv").string());

    nlohmann::json truth;
    truth["bias"] = result.truth.bias;
    truth["seed"] = spec.seed;
    truth["same_group_stays"] = result.truth.same_group_stays;
    truth["total_stays"] = result.truth.total_stays;
    truth["same_group_share"] = result.truth.same_group_share();
    truth["guest_groups"] = result.truth.guest_groups;
    truth["host_groups"] = result.truth.host_groups;
    nlohmann::json counts;
    counts["hosts"] = result.network.num_hosts();
    counts["guests"] = result.network.num_guests();
    counts["pairs"] = result.network.num_edges();
    truth["counts"] = counts;
    write_file(fs::path(out_dir) / "ground_truth.json", truth.dump(2) + "\n");
    std::cout << "wrote " << result.network.num_guests() << " guests, "
              << result.network.num_hosts() << " hosts, " << result.network.num_edges()
              << " pairs to " << out_dir << "\n";
    return kExitOk;
}

int cmd_report(const std::string& input, const std::string& format) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file_or_throw(input));
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("report: ") + e.what());
    }
    ExpressionReport report;
    try {
        report.slice.city = j.at("city");
        report.slice.property_type = j.at("property_type") == std::string("shared")
                                         ? PropertyType::Shared
                                         : PropertyType::Full;
        const std::string a = j.at("attribute");
        report.attribute = a == "race"           ? Attribute::Race
                           : a == "age_quintile" ? Attribute::AgeQuintile
                                                 : Attribute::Gender;
        report.level = j.value("level", 0.95);
        for (const auto& p : j.at("pairs")) {
            PairResult pr;
            pr.guest_group = p.at("guest_group");
            pr.host_group = p.at("host_group");
            pr.observed = p.at("observed");
            pr.interval = {p.at("lower"), p.at("upper"), report.level};
            const std::string label = p.at("label");
            pr.label = label == "over"    ? ExpressionLabel::Over
                       : label == "under" ? ExpressionLabel::Under
                                          : ExpressionLabel::Compatible;
            report.pairs.push_back(std::move(pr));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, std::string("report: ") + e.what());
    }
    std::cout << (format == "csv" ? report_csv(report) : report_markdown(report));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group pairing analysis on weighted bipartite stay networks"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "check a nodes/edges CSV pair");
    std::string v_nodes, v_edges;
    validate->add_option("--nodes", v_nodes, "nodes.csv path")->required();
    validate->add_option("--edges", v_edges, "edges.csv path")->required();

    CommonFlags analyze_flags;
    auto* analyze_cmd =
        app.add_subcommand("analyze", "observed pairing frequencies vs the null ensemble");
    add_common_flags(analyze_cmd, analyze_flags);

    CommonFlags robust_flags;
    std::string procedure;
    double threshold = 0.5, fraction = 0.05, caliper = 0.2;
    std::uint64_t perturb_seed = 0;
    auto* robust_cmd = app.add_subcommand("robustness", "sensitivity checks");
    robust_cmd->add_option("--procedure", procedure, "confidence, perturb, tercile, matchpair")
        ->required()
        ->check(CLI::IsMember({"confidence", "perturb", "tercile", "matchpair"}));
    robust_cmd->add_option("--threshold", threshold, "confidence rerun threshold");
    robust_cmd->add_option("--fraction", fraction, "perturbed fraction of the source group");
    robust_cmd->add_option("--perturb-seed", perturb_seed, "relabeling seed");
    robust_cmd->add_option("--caliper", caliper, "matching caliper");
    add_common_flags(robust_cmd, robust_flags);

    CommonFlags match_flags;
    double match_caliper = 0.2;
    auto* match_cmd = app.add_subcommand("matchpair", "matched-pair host comparison");
    match_cmd->add_option("--caliper", match_caliper, "matching caliper");
    add_common_flags(match_cmd, match_flags);

    std::string synth_spec_path, synth_out = ".";
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
    synth_cmd->add_option("--spec", synth_spec_path, "generator spec JSON")
        ->required()
        ->check(CLI::ExistingFile);
    synth_cmd->add_option("--out", synth_out, "output directory");

    std::string report_input, report_format = "md";
    auto* report_cmd = app.add_subcommand("report", "reformat a JSON report");
    report_cmd->add_option("--input", report_input, "report JSON path")->required();
    report_cmd->add_option("--format", report_format, "md or csv")
        ->check(CLI::IsMember({"md", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(v_nodes, v_edges);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze_flags);
        if (robust_cmd->parsed())
            return cmd_robustness(robust_flags, procedure, threshold, fraction, perturb_seed,
                                  caliper);
        if (match_cmd->parsed()) return cmd_matchpair(match_flags, match_caliper);
        if (synth_cmd->parsed()) return cmd_synth(synth_spec_path, synth_out);
        if (report_cmd->parsed()) return cmd_report(report_input, report_format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (e.code() == Errc::ParseError || e.code() == Errc::IoError) ? kExitUsage
                                                                           : kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
