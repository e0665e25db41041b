#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "homnet/network.hpp"

namespace homnet {

struct BurnIn {
    enum class Mode { Fixed, AutoKendall };
    Mode mode = Mode::AutoKendall;
    std::int64_t fixed_swaps = 0;      // Fixed mode
    double tau_stop = 0.05;            // AutoKendall
    std::int64_t probe_interval = 0;   // 0 = 2 * |edges|
    std::int64_t max_swaps = 0;        // 0 = 20 * |edges|

    static BurnIn fixed(std::int64_t swaps) { return {Mode::Fixed, swaps}; }
    static BurnIn auto_kendall(double tau_stop = 0.05, std::int64_t probe_interval = 0,
                               std::int64_t max_swaps = 0) {
        return {Mode::AutoKendall, 0, tau_stop, probe_interval, max_swaps};
    }
};

struct RewireConfig {
    int n_configs = 1000;
    BurnIn burn_in = BurnIn::auto_kendall();
    std::uint64_t master_seed = 0;
};

/// One stay unit: a single unit of edge weight.
struct UnitStay {
    std::uint32_t guest = 0;
    std::uint32_t host = 0;
};

/// Mutable randomization state. The network is held as a flat vector of
/// stay units so a swap move is O(1); aggregated cell weights are kept in
/// step for the Metropolis acceptance ratio and for probes.
///
/// The move kernel proposes a unit-slot pair uniformly (an edge of weight w
/// occupies w slots), redraws degenerate pairs (same guest or same host)
/// without counting them, and accepts with a Metropolis-Hastings factor so
/// that the chain's stationary distribution is exactly uniform over the
/// non-negative integer weight matrices with the original row/column sums.
/// Rejected proposals count as effective swaps. Every state preserves all
/// guest out-strengths and host in-strengths exactly.
class RewireState {
public:
    explicit RewireState(const BipartiteNetwork& net);

    bool rewirable() const { return rewirable_; }
    std::size_t num_guests() const { return num_guests_; }
    std::size_t num_hosts() const { return num_hosts_; }
    std::int64_t total_weight() const { return static_cast<std::int64_t>(units_.size()); }

    std::span<const UnitStay> units() const { return units_; }
    std::int64_t weight(std::uint32_t guest, std::uint32_t host) const;

    /// One effective swap step; returns true if the proposal was accepted
    /// (state mutated), false on Metropolis rejection (state unchanged).
    /// Throws NotRewirable when no admissible move exists.
    bool xswap_step(std::mt19937_64& rng);

    /// Aggregated edges sorted by (guest, host); zero-weight cells omitted.
    std::vector<Edge> snapshot_edges() const;

private:
    std::size_t num_guests_ = 0, num_hosts_ = 0;
    bool rewirable_ = false;
    std::vector<UnitStay> units_;

    // Dense weight table when the cell grid is small, hash map otherwise.
    bool dense_ = false;
    std::vector<std::int32_t> dense_weights_;
    std::unordered_map<std::uint64_t, std::int64_t> sparse_weights_;

    std::int64_t same_cell_pairs_ = 0;   // sum over cells of C(w,2)
    std::int64_t degenerate_base_ = 0;   // sum_g C(s_g,2) + sum_h C(s_h,2), invariant
    std::int64_t slot_pairs_ = 0;        // C(W,2)

    std::int64_t& cell(std::uint32_t guest, std::uint32_t host);
    void add_unit_weight(std::uint32_t guest, std::uint32_t host, std::int64_t delta);
};

/// Tau-b between the original and current edge-weight vectors over the
/// union of their edge keys (absent edge = 0).
double kendall_probe(const BipartiteNetwork& original, const RewireState& state);

/// Smallest probed swap count with tau <= tau_stop; max_swaps with a
/// NotConverged warning otherwise. AutoKendall mode only.
std::int64_t calibrate_burn_in(const BipartiteNetwork& net, const RewireConfig& config,
                               std::vector<std::string>* warnings = nullptr);

struct EnsembleSummary {
    int n_configs = 0;
    std::int64_t burn_in_swaps = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::string> warnings;
};

/// Runs n_configs independent replicates. Each replicate r restarts from
/// the original network and burns in with the RNG stream derived from
/// (master_seed, r); the consumer is then handed (r, state). With jobs > 1
/// replicates run concurrently; the consumer must accept concurrent calls
/// for distinct r. Results are independent of the degree of parallelism.
EnsembleSummary generate_ensemble(const BipartiteNetwork& net, const RewireConfig& config,
                                  const std::function<void(int, const RewireState&)>& consumer,
                                  int jobs = 1);

}  // namespace homnet
