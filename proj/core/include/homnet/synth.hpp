#pragma once

#include <cstdint>
#include <vector>

#include "homnet/network.hpp"

namespace homnet {

/// Guest stay-count distribution.
struct ActivityModel {
    enum class Kind { Constant, PowerLaw } kind = Kind::Constant;
    int constant = 2;          // Constant: every guest makes this many stays
    double alpha = 2.5;        // PowerLaw: P(k) ~ k^-alpha, k >= 1
    int cap = 1000;            // PowerLaw tail cap

    static ActivityModel constant_stays(int k) { return {Kind::Constant, k, 0.0, 0}; }
    static ActivityModel power_law(double alpha, int cap = 1000) {
        return {Kind::PowerLaw, 0, alpha, cap};
    }
};

struct AttractivenessModel {
    enum class Kind { Uniform, PowerLaw } kind = Kind::Uniform;
    double alpha = 2.5;  // PowerLaw: Pareto tail exponent
};

/// Generator parameters. Two group shares produce a gender attribute (F/M),
/// three produce a race attribute (W/A/B). bias multiplies a same-group
/// host's selection weight by (1 + bias); bias = 0 is the exact null and
/// same_group_only is the bias -> infinity limit.
struct SynthSpec {
    std::size_t n_guests = 1000;
    std::size_t n_hosts = 100;
    std::vector<double> group_shares = {0.6, 0.4};
    ActivityModel activity;
    AttractivenessModel attractiveness;
    double bias = 0.0;
    bool same_group_only = false;
    std::uint64_t seed = 0;
    SliceKey slice{"synthville", PropertyType::Full};
};

struct GroundTruth {
    double bias = 0.0;
    std::vector<int> guest_groups;
    std::vector<int> host_groups;  // both indexed like the returned network
    std::int64_t same_group_stays = 0;
    std::int64_t total_stays = 0;

    double same_group_share() const {
        return total_stays > 0
                   ? static_cast<double>(same_group_stays) / static_cast<double>(total_stays)
                   : 0.0;
    }
};

struct SynthResult {
    BipartiteNetwork network;
    GroundTruth truth;
};

/// Deterministic given spec.seed. Throws InvalidSpec.
SynthResult generate(const SynthSpec& spec);

/// Price-confounded scenario: host race correlates with price, guests pick
/// hosts by price proximity to a race-correlated budget, with no racial
/// preference at equal price. Exercises the matched-pair control.
struct ConfoundSpec {
    std::size_t n_guests = 400;
    std::size_t n_hosts = 60;
    double white_host_share = 0.5;
    double white_guest_share = 0.5;
    double log_price_white = 5.0;     // mean log weekly price, White hosts
    double log_price_nonwhite = 4.6;  // mean log weekly price, non-White hosts
    double log_price_sd = 0.35;
    double budget_sd = 0.2;           // log-budget spread around the group mean
    double choice_scale = 0.15;       // log-price proximity kernel width
    int stays_per_guest = 3;
    std::uint64_t seed = 0;
    SliceKey slice{"synthville", PropertyType::Full};
};

BipartiteNetwork generate_confounded(const ConfoundSpec& spec);

}  // namespace homnet
