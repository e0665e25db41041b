#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "homnet/network.hpp"

using namespace homnet;
using namespace homnet::test;

TEST_CASE("build_network sorts, merges duplicates, computes strengths") {
    auto net = make_net({guest("g2"), guest("g1"), host("h1"), host("h2")},
                        {{"g2", "h1", 2}, {"g1", "h2", 1}, {"g2", "h1", 3}, {"g1", "h1", 1}});
    CHECK(net.num_guests() == 2);
    CHECK(net.num_hosts() == 2);
    CHECK(net.num_edges() == 3);  // (g2,h1) merged
    CHECK(net.guest_id(0) == "g1");
    CHECK(net.out_strength("g2") == 5);
    CHECK(net.out_strength("g1") == 2);
    CHECK(net.in_strength("h1") == 6);
    CHECK(net.in_strength("h2") == 1);
    CHECK(net.total_weight() == 7);
}

TEST_CASE("build_network input order does not matter") {
    std::vector<NodeInput> nodes = {guest("a"), guest("b"), host("x"), host("y")};
    std::vector<EdgeInput> edges = {{"a", "x", 1}, {"b", "y", 2}, {"a", "y", 3}};
    auto n1 = make_net(nodes, edges);
    std::mt19937 rng(42);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    std::shuffle(edges.begin(), edges.end(), rng);
    auto n2 = make_net(nodes, edges);
    REQUIRE(n1.num_edges() == n2.num_edges());
    for (std::size_t i = 0; i < n1.num_edges(); ++i) CHECK(n1.edges()[i] == n2.edges()[i]);
    for (std::uint32_t i = 0; i < n1.num_guests(); ++i)
        CHECK(n1.guest_id(i) == n2.guest_id(i));
}

TEST_CASE("build_network error paths") {
    CHECK_THROWS_WITH_AS(make_net({guest("g"), host("h")}, {{"g", "nope", 1}}),
                         doctest::Contains("UnknownEndpoint"), Error);
    CHECK_THROWS_AS(make_net({guest("g"), guest("g"), host("h")}, {}), Error);
    CHECK_THROWS_AS(make_net({guest("g"), host("h")}, {{"g", "h", 0}}), Error);
    CHECK_THROWS_AS(make_net({guest("g"), host("h")}, {{"g", "h", -2}}), Error);
    // Same id on opposite sides is allowed (distinct node spaces).
    auto net = make_net({guest("n"), host("n")}, {{"n", "n", 1}});
    CHECK(net.num_edges() == 1);
}

TEST_CASE("strength oracle: brute-force recount on random networks") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int ng = 2 + static_cast<int>(rng() % 10), nh = 2 + static_cast<int>(rng() % 10);
        std::vector<NodeInput> nodes;
        for (int i = 0; i < ng; ++i) nodes.push_back(guest("g" + std::to_string(i)));
        for (int i = 0; i < nh; ++i) nodes.push_back(host("h" + std::to_string(i)));
        std::vector<EdgeInput> edges;
        const int m = 1 + static_cast<int>(rng() % 40);
        for (int e = 0; e < m; ++e)
            edges.push_back({"g" + std::to_string(rng() % ng),
                             "h" + std::to_string(rng() % nh),
                             1 + static_cast<std::int64_t>(rng() % 5)});
        auto net = make_net(nodes, edges);

        std::map<std::string, std::int64_t> out, in;
        for (const auto& e : edges) {
            out[e.guest] += e.weight;
            in[e.host] += e.weight;
        }
        for (const auto& [id, w] : out) CHECK(net.out_strength(id) == w);
        for (const auto& [id, w] : in) CHECK(net.in_strength(id) == w);
    }
}

TEST_CASE("quintile boundaries match the sort-and-count oracle") {
    SUBCASE("five distinct ages") {
        auto bins = quintile_bins({5, 3, 1, 4, 2});
        CHECK(bins.boundaries == std::array<int, 4>{2, 3, 4, 5});
        CHECK_FALSE(bins.degenerate);
        CHECK(bins.bin(1) == 0);
        CHECK(bins.bin(2) == 1);
        CHECK(bins.bin(4) == 3);
        CHECK(bins.bin(5) == 4);
        CHECK(bins.bin(99) == 4);
    }
    SUBCASE("balanced occupancy on a large distinct population") {
        std::vector<int> ages(1000);
        for (int i = 0; i < 1000; ++i) ages[i] = 18 + i;
        auto bins = quintile_bins(ages);
        std::array<int, 5> occupancy{};
        for (int a : ages) occupancy[static_cast<std::size_t>(bins.bin(a))] += 1;
        for (int c : occupancy) CHECK(std::abs(c - 200) <= 1);
    }
    SUBCASE("all ages equal is degenerate and maps to Q1") {
        auto bins = quintile_bins({30, 30, 30, 30, 30, 30});
        CHECK(bins.degenerate);
        CHECK(bins.bin(30) == 0);
    }
    SUBCASE("fewer than five known ages") {
        CHECK_THROWS_AS(quintile_bins({1, 2, 3, 4}), Error);
    }
}

TEST_CASE("attribute_view matches a linear-scan filter oracle") {
    std::vector<NodeInput> nodes = {
        guest("g1", Gender::Female, Race::White, 0.9),
        guest("g2", Gender::Male, Race::Unknown, 0.4),
        guest("g3", Gender::Female, Race::Black, 0.2),
        host("h1", Gender::Male, Race::Asian, 0.95),
        host("h2", Gender::Unknown, Race::White, 0.5),
    };
    auto net = make_net(nodes, {{"g1", "h1", 1}, {"g2", "h2", 1}, {"g3", "h1", 1}});

    auto view = attribute_view(net, Attribute::Gender, 0.3);
    REQUIRE(view.group_names == std::vector<std::string>{"F", "M"});
    // Oracle: a node is included iff value known and conf >= 0.3.
    CHECK(view.guest_group[net.guest_index("g1")] == 0);
    CHECK(view.guest_group[net.guest_index("g2")] == 1);
    CHECK(view.guest_group[net.guest_index("g3")] == -1);  // conf 0.2 < 0.3
    CHECK(view.host_group[net.host_index("h1")] == 1);
    CHECK(view.host_group[net.host_index("h2")] == -1);  // unknown gender

    auto race = attribute_view(net, Attribute::Race, 0.3);
    REQUIRE(race.group_names == std::vector<std::string>{"W", "A", "B"});
    CHECK(race.guest_group[net.guest_index("g1")] == 0);
    CHECK(race.guest_group[net.guest_index("g2")] == -1);
    CHECK(race.host_group[net.host_index("h1")] == 1);
    CHECK(race.host_group[net.host_index("h2")] == 0);
}

TEST_CASE("raising min_conf only ever removes nodes from the view") {
    std::mt19937 rng(11);
    std::vector<NodeInput> nodes;
    std::vector<EdgeInput> edges;
    for (int i = 0; i < 30; ++i) {
        auto g = guest("g" + std::to_string(i), rng() % 2 ? Gender::Female : Gender::Male,
                       Race::Unknown, (rng() % 100) / 100.0);
        nodes.push_back(g);
    }
    for (int i = 0; i < 10; ++i)
        nodes.push_back(host("h" + std::to_string(i),
                             rng() % 2 ? Gender::Female : Gender::Male, Race::Unknown,
                             (rng() % 100) / 100.0));
    for (int i = 0; i < 30; ++i)
        edges.push_back({"g" + std::to_string(i), "h" + std::to_string(rng() % 10), 1});
    auto net = make_net(nodes, edges);
    for (double lo : {0.0, 0.2, 0.5}) {
        auto a = attribute_view(net, Attribute::Gender, lo);
        auto b = attribute_view(net, Attribute::Gender, lo + 0.3);
        for (std::size_t i = 0; i < a.guest_group.size(); ++i)
            if (b.guest_group[i] >= 0) CHECK(a.guest_group[i] == b.guest_group[i]);
        for (std::size_t i = 0; i < a.host_group.size(); ++i)
            if (b.host_group[i] >= 0) CHECK(a.host_group[i] == b.host_group[i]);
    }
}

TEST_CASE("age view bins hosts and guests separately") {
    std::vector<NodeInput> nodes;
    std::vector<EdgeInput> edges;
    for (int i = 0; i < 10; ++i) {
        NodeInput g = guest("g" + std::to_string(i));
        g.attrs.age_years = 20 + i;
        g.attrs.age_conf = 1.0;
        nodes.push_back(g);
        NodeInput h = host("h" + std::to_string(i));
        h.attrs.age_years = 40 + 2 * i;
        h.attrs.age_conf = 1.0;
        nodes.push_back(h);
        edges.push_back({g.id, h.id, 1});
    }
    auto net = make_net(nodes, edges);
    auto view = attribute_view(net, Attribute::AgeQuintile, 0.3);
    REQUIRE(view.num_groups() == 5);
    CHECK(view.guest_group[net.guest_index("g0")] == 0);
    CHECK(view.guest_group[net.guest_index("g9")] == 4);
    CHECK(view.host_group[net.host_index("h0")] == 0);
    CHECK(view.host_group[net.host_index("h9")] == 4);
    // Same age lands in different quintiles per side: guest 28 is old for
    // guests, host 42 is young for hosts.
    CHECK(view.guest_group[net.guest_index("g8")] == 4);
    CHECK(view.host_group[net.host_index("h1")] == 0);
}
