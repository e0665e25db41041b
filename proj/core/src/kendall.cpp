#include "homnet/kendall.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "homnet/types.hpp"

namespace homnet {

namespace {

// Counts exchanges needed to sort `v` ascending (number of inversions).
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& tmp, std::size_t lo,
                          std::size_t hi) {
    if (hi - lo < 2) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t count = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            count += mid - i;
            tmp[k++] = v[j++];
        } else {
            tmp[k++] = v[i++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
              tmp.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

}  // namespace

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(Errc::DegenerateInput, "kendall_tau_b: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw Error(Errc::DegenerateInput, "kendall_tau_b: need length >= 2");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (a[i] != a[j]) return a[i] < a[j];
        return b[i] < b[j];
    });

    auto pairs = [](std::uint64_t t) { return t * (t - 1) / 2; };
    const std::uint64_t n0 = pairs(n);

    // Tie counts: within a (n1), within b (n2), joint (n3).
    std::uint64_t n1 = 0, n3 = 0;
    {
        std::uint64_t run_a = 1, run_ab = 1;
        for (std::size_t i = 1; i < n; ++i) {
            if (a[order[i]] == a[order[i - 1]]) {
                ++run_a;
                if (b[order[i]] == b[order[i - 1]])
                    ++run_ab;
                else {
                    n3 += pairs(run_ab);
                    run_ab = 1;
                }
            } else {
                n1 += pairs(run_a);
                n3 += pairs(run_ab);
                run_a = run_ab = 1;
            }
        }
        n1 += pairs(run_a);
        n3 += pairs(run_ab);
    }

    std::vector<double> bv(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i) bv[i] = b[order[i]];
    const std::uint64_t discordant_swaps = merge_count(bv, tmp, 0, n);  // bv is now sorted

    std::uint64_t n2 = 0;
    {
        std::uint64_t run = 1;
        for (std::size_t i = 1; i < n; ++i) {
            if (bv[i] == bv[i - 1])
                ++run;
            else {
                n2 += pairs(run);
                run = 1;
            }
        }
        n2 += pairs(run);
    }

    if (n0 == n1 || n0 == n2)  // constant vector
        return std::numeric_limits<double>::quiet_NaN();

    const double con_minus_dis = static_cast<double>(n0) - static_cast<double>(n1) -
                                 static_cast<double>(n2) + static_cast<double>(n3) -
                                 2.0 * static_cast<double>(discordant_swaps);
    const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                         std::sqrt(static_cast<double>(n0 - n2));
    double tau = con_minus_dis / denom;
    return std::clamp(tau, -1.0, 1.0);
}

}  // namespace homnet
