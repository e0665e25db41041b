#include "doctest.h"
#include "helpers.hpp"
#include "homnet/analysis.hpp"
#include "homnet/synth.hpp"

using namespace homnet;
using namespace homnet::test;

namespace {

AnalyzeOptions quick_options(int configs, std::int64_t burn, std::uint64_t seed) {
    AnalyzeOptions o;
    o.rewire.n_configs = configs;
    o.rewire.burn_in = BurnIn::fixed(burn);
    o.rewire.master_seed = seed;
    return o;
}

}  // namespace

TEST_CASE("analyze emits one row per group pair") {
    SynthSpec spec;
    spec.n_guests = 50;
    spec.n_hosts = 10;
    spec.seed = 4;
    auto net = generate(spec).network;
    auto report = analyze(net, quick_options(10, 100, 1));
    REQUIRE(report.pairs.size() == 4);
    CHECK(report.pairs[0].guest_group == "F");
    CHECK(report.pairs[0].host_group == "F");
    CHECK(report.pairs[3].guest_group == "M");
    CHECK(report.pairs[3].host_group == "M");
    for (const auto& p : report.pairs) {
        CHECK(p.interval.lower <= p.interval.upper);
        CHECK(p.observed >= 0.0);
        CHECK(p.observed <= 1.0);
    }
    CHECK(report.ensemble.n_configs == 10);
    CHECK(report.ensemble.burn_in_swaps == 100);
}

TEST_CASE("analyze is deterministic for a fixed master seed") {
    SynthSpec spec;
    spec.n_guests = 80;
    spec.n_hosts = 12;
    spec.seed = 9;
    auto net = generate(spec).network;
    auto a = analyze(net, quick_options(50, 200, 42));
    AnalyzeOptions opts = quick_options(50, 200, 42);
    opts.jobs = 3;
    auto b = analyze(net, opts);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        CHECK(a.pairs[i].observed == b.pairs[i].observed);
        CHECK(a.pairs[i].interval.lower == b.pairs[i].interval.lower);
        CHECK(a.pairs[i].interval.upper == b.pairs[i].interval.upper);
        CHECK(a.pairs[i].label == b.pairs[i].label);
    }
}

TEST_CASE("null matrices mostly fall inside their own intervals") {
    SynthSpec spec;
    spec.n_guests = 100;
    spec.n_hosts = 15;
    spec.seed = 21;
    auto net = generate(spec).network;
    auto view = attribute_view(net, Attribute::Gender, 0.3);

    RewireConfig config;
    config.n_configs = 200;
    config.burn_in = BurnIn::fixed(400);
    config.master_seed = 5;
    std::vector<PairingMatrix> ens(200);
    generate_ensemble(net, config, [&](int r, const RewireState& s) {
        ens[static_cast<std::size_t>(r)] = pairing_frequencies(s, view);
    });
    auto intervals = ensemble_intervals(ens);
    for (int g = 0; g < 2; ++g)
        for (int h = 0; h < 2; ++h) {
            const auto& iv = intervals[static_cast<std::size_t>(g) * 2 + h];
            int inside = 0;
            for (const auto& m : ens)
                inside += m.at(g, h) >= iv.lower && m.at(g, h) <= iv.upper;
            CHECK(inside >= static_cast<int>((0.95 - 2.0 / 200) * 200));
        }
}

TEST_CASE("analyze with an empty view throws") {
    auto net = make_net({guest("g"), host("h")}, {{"g", "h", 1}});
    CHECK_THROWS_AS(analyze(net, quick_options(10, 10, 0)), Error);
}
