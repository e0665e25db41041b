#include "homnet/rewiring.hpp"

#include <algorithm>
#include <thread>

#include "homnet/kendall.hpp"
#include "homnet/rng.hpp"

namespace homnet {

namespace {

constexpr std::size_t kDenseCellLimit = std::size_t{1} << 22;
constexpr std::uint64_t kCalibrationStream = 0xCA11B7A7E0000000ULL;

inline std::uint64_t cell_key(std::uint32_t g, std::uint32_t h) {
    return (static_cast<std::uint64_t>(g) << 32) | h;
}

inline std::int64_t pairs2(std::int64_t n) { return n * (n - 1) / 2; }

}  // namespace

RewireState::RewireState(const BipartiteNetwork& net)
    : num_guests_(net.num_guests()), num_hosts_(net.num_hosts()) {
    units_.reserve(static_cast<std::size_t>(net.total_weight()));
    dense_ = num_guests_ * num_hosts_ <= kDenseCellLimit;
    if (dense_) dense_weights_.assign(num_guests_ * num_hosts_, 0);

    std::uint32_t first_guest = 0, first_host = 0;
    bool multi_guest = false, multi_host = false;
    bool first = true;
    for (const Edge& e : net.edges()) {
        for (std::int64_t u = 0; u < e.weight; ++u) units_.push_back({e.guest, e.host});
        if (dense_)
            dense_weights_[static_cast<std::size_t>(e.guest) * num_hosts_ + e.host] =
                static_cast<std::int32_t>(e.weight);
        else
            sparse_weights_[cell_key(e.guest, e.host)] = e.weight;
        same_cell_pairs_ += pairs2(e.weight);
        if (first) {
            first_guest = e.guest;
            first_host = e.host;
            first = false;
        } else {
            multi_guest |= e.guest != first_guest;
            multi_host |= e.host != first_host;
        }
    }
    // An admissible move exists iff the edges span >= 2 guests and >= 2 hosts.
    rewirable_ = multi_guest && multi_host;

    for (std::uint32_t g = 0; g < num_guests_; ++g)
        degenerate_base_ += pairs2(net.out_strength_at(g));
    for (std::uint32_t h = 0; h < num_hosts_; ++h)
        degenerate_base_ += pairs2(net.in_strength_at(h));
    slot_pairs_ = pairs2(total_weight());
}

std::int64_t RewireState::weight(std::uint32_t guest, std::uint32_t host) const {
    if (dense_) return dense_weights_[static_cast<std::size_t>(guest) * num_hosts_ + host];
    auto it = sparse_weights_.find(cell_key(guest, host));
    return it == sparse_weights_.end() ? 0 : it->second;
}

void RewireState::add_unit_weight(std::uint32_t guest, std::uint32_t host, std::int64_t delta) {
    if (dense_) {
        dense_weights_[static_cast<std::size_t>(guest) * num_hosts_ + host] +=
            static_cast<std::int32_t>(delta);
    } else {
        auto [it, inserted] = sparse_weights_.try_emplace(cell_key(guest, host), 0);
        it->second += delta;
        if (it->second == 0) sparse_weights_.erase(it);
    }
}

bool RewireState::xswap_step(std::mt19937_64& rng) {
    if (!rewirable_)
        throw Error(Errc::NotRewirable, "no admissible xSwap move exists");

    const std::size_t w = units_.size();
    std::uniform_int_distribution<std::size_t> pick(0, w - 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    for (;;) {
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j) continue;
        const auto [g1, h1] = units_[i];
        const auto [g2, h2] = units_[j];
        if (g1 == g2 || h1 == h2) continue;  // degenerate draw: redraw, uncounted

        const std::int64_t w11 = weight(g1, h1), w22 = weight(g2, h2);
        const std::int64_t w12 = weight(g1, h2), w21 = weight(g2, h1);
        const std::int64_t fwd = w11 * w22;
        const std::int64_t rev = (w12 + 1) * (w21 + 1);
        const std::int64_t ndeg = slot_pairs_ - degenerate_base_ + same_cell_pairs_;
        const std::int64_t s2_after = same_cell_pairs_ - (w11 - 1) - (w22 - 1) + w12 + w21;
        const std::int64_t ndeg_after = slot_pairs_ - degenerate_base_ + s2_after;

        const double accept = (static_cast<double>(rev) * static_cast<double>(ndeg)) /
                              (static_cast<double>(fwd) * static_cast<double>(ndeg_after));
        if (accept < 1.0 && u01(rng) >= accept) return false;  // counted rejection

        units_[i].host = h2;
        units_[j].host = h1;
        add_unit_weight(g1, h1, -1);
        add_unit_weight(g2, h2, -1);
        add_unit_weight(g1, h2, +1);
        add_unit_weight(g2, h1, +1);
        same_cell_pairs_ = s2_after;
        return true;
    }
}

std::vector<Edge> RewireState::snapshot_edges() const {
    std::vector<Edge> edges;
    if (dense_) {
        for (std::uint32_t g = 0; g < num_guests_; ++g)
            for (std::uint32_t h = 0; h < num_hosts_; ++h) {
                auto v = dense_weights_[static_cast<std::size_t>(g) * num_hosts_ + h];
                if (v > 0) edges.push_back({g, h, v});
            }
    } else {
        edges.reserve(sparse_weights_.size());
        for (const auto& [key, v] : sparse_weights_)
            edges.push_back({static_cast<std::uint32_t>(key >> 32),
                             static_cast<std::uint32_t>(key & 0xffffffffu), v});
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.guest, a.host) < std::tie(b.guest, b.host);
        });
    }
    return edges;
}

double kendall_probe(const BipartiteNetwork& original, const RewireState& state) {
    std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::int64_t>> joined;
    joined.reserve(original.num_edges() * 2);
    for (const Edge& e : original.edges()) joined[cell_key(e.guest, e.host)].first = e.weight;
    for (const Edge& e : state.snapshot_edges())
        joined[cell_key(e.guest, e.host)].second = e.weight;

    std::vector<double> a, b;
    a.reserve(joined.size());
    b.reserve(joined.size());
    for (const auto& [key, w] : joined) {
        a.push_back(static_cast<double>(w.first));
        b.push_back(static_cast<double>(w.second));
    }
    return kendall_tau_b(a, b);
}

namespace {

struct ResolvedBurnIn {
    std::int64_t swaps = 0;
    std::vector<std::string> warnings;
};

ResolvedBurnIn resolve_burn_in(const BipartiteNetwork& net, const RewireConfig& config) {
    ResolvedBurnIn r;
    if (config.burn_in.mode == BurnIn::Mode::Fixed) {
        r.swaps = config.burn_in.fixed_swaps;
    } else {
        r.swaps = calibrate_burn_in(net, config, &r.warnings);
    }
    return r;
}

}  // namespace

std::int64_t calibrate_burn_in(const BipartiteNetwork& net, const RewireConfig& config,
                               std::vector<std::string>* warnings) {
    const BurnIn& b = config.burn_in;
    if (b.mode != BurnIn::Mode::AutoKendall)
        throw Error(Errc::InvalidSpec, "calibrate_burn_in requires AutoKendall mode");
    if (b.tau_stop <= 0.0 || b.tau_stop > 1.0)
        throw Error(Errc::RangeError, "tau_stop must lie in (0,1]");

    const auto n_edges = static_cast<std::int64_t>(net.num_edges());
    const std::int64_t probe = b.probe_interval > 0 ? b.probe_interval : 2 * n_edges;
    const std::int64_t max_swaps = b.max_swaps > 0 ? b.max_swaps : 20 * n_edges;

    RewireState state(net);
    if (!state.rewirable())
        throw Error(Errc::NotRewirable, "network has no admissible xSwap move");

    auto rng = make_stream(config.master_seed, kCalibrationStream);
    std::int64_t done = 0;
    while (done < max_swaps) {
        std::int64_t target = std::min(done + probe, max_swaps);
        for (; done < target; ++done) state.xswap_step(rng);
        double tau = kendall_probe(net, state);
        if (tau_undefined(tau)) {
            if (warnings) warnings->push_back("DegenerateInput: tau undefined at probe");
            return done;
        }
        if (tau <= b.tau_stop) return done;
    }
    if (warnings)
        warnings->push_back("NotConverged: tau above tau_stop after " +
                            std::to_string(max_swaps) + " swaps");
    return max_swaps;
}

EnsembleSummary generate_ensemble(const BipartiteNetwork& net, const RewireConfig& config,
                                  const std::function<void(int, const RewireState&)>& consumer,
                                  int jobs) {
    if (config.n_configs < 1)
        throw Error(Errc::InvalidSpec, "n_configs must be positive");

    ResolvedBurnIn burn = resolve_burn_in(net, config);

    const RewireState initial(net);
    if (burn.swaps > 0 && !initial.rewirable())
        throw Error(Errc::NotRewirable, "network has no admissible xSwap move");

    auto run_replicate = [&](int r) {
        RewireState state = initial;
        auto rng = make_stream(config.master_seed, static_cast<std::uint64_t>(r));
        for (std::int64_t s = 0; s < burn.swaps; ++s) state.xswap_step(rng);
        consumer(r, state);
    };

    jobs = std::max(1, jobs);
    if (jobs == 1 || config.n_configs == 1) {
        for (int r = 0; r < config.n_configs; ++r) run_replicate(r);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                for (int r = t; r < config.n_configs; r += jobs) run_replicate(r);
            });
        for (auto& th : pool) th.join();
    }

    EnsembleSummary summary;
    summary.n_configs = config.n_configs;
    summary.burn_in_swaps = burn.swaps;
    summary.master_seed = config.master_seed;
    summary.warnings = std::move(burn.warnings);
    return summary;
}

}  // namespace homnet
