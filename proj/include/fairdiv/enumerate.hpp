#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/instance.hpp"

namespace fairdiv {

// Caps for the exhaustive oracles. Every exhaustive operation checks its cap
// before running.
struct EnumerationBudget {
    long long max_states = 20'000'000;  // cap on n^m
    long long max_subsets = 16384;      // cap on 2^m (APS)
};

// n^m, or nullopt on overflow past `cap`.
inline std::optional<long long> allocation_count(int n, int m, long long cap) {
    long long count = 1;
    for (int e = 0; e < m; ++e) {
        if (count > cap / n) return std::nullopt;
        count *= n;
    }
    return count;
}

inline long long checked_allocation_count(int n, int m, const EnumerationBudget& budget) {
    auto count = allocation_count(n, m, budget.max_states);
    if (!count || *count > budget.max_states)
        throw BudgetExceededError("n^m exceeds enumeration budget of " +
                                  std::to_string(budget.max_states) + " states");
    return *count;
}

// Visits all n^m complete allocations exactly once, as item->agent assignment
// vectors in base-n counting order (item 0 is the most significant digit).
// The visitor returns false to stop early.
template <class Visitor>
void for_each_allocation(int n, int m, const EnumerationBudget& budget, Visitor&& visit) {
    checked_allocation_count(n, m, budget);
    std::vector<int> assignment(m, 0);
    for (;;) {
        if (!visit(static_cast<const std::vector<int>&>(assignment))) return;
        int pos = m - 1;
        while (pos >= 0 && assignment[pos] == n - 1) assignment[pos--] = 0;
        if (pos < 0) return;
        ++assignment[pos];
    }
}

// Integer view of an instance for exhaustive scans. Each agent's cost row is
// scaled by the LCM of its denominators; weights become numerators over a
// common denominator. Valid for any check that compares only within one
// agent's cost scale (all WEF-family notions, WPROP, Pareto dominance).
struct CompiledCosts {
    int n = 0, m = 0;
    std::vector<std::vector<std::int64_t>> cost;  // per-agent scaled rows
    std::vector<std::int64_t> weight_num;         // weights over a common denominator
};

inline std::optional<CompiledCosts> compile_costs(const Instance& inst) {
    const int n = inst.agent_count(), m = inst.item_count();
    constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 4;

    BigInt weight_lcm = 1;
    for (int i = 0; i < n; ++i) weight_lcm = lcm(weight_lcm, denominator(inst.weight(i)));
    std::vector<std::int64_t> wnum(n);
    BigInt max_wnum = 0;
    for (int i = 0; i < n; ++i) {
        BigInt a = numerator(inst.weight(i)) * (weight_lcm / denominator(inst.weight(i)));
        if (a > kLimit) return std::nullopt;
        wnum[i] = a.convert_to<std::int64_t>();
        max_wnum = std::max(max_wnum, a);
    }

    CompiledCosts out;
    out.n = n;
    out.m = m;
    out.weight_num = std::move(wnum);
    out.cost.resize(n);
    for (int i = 0; i < n; ++i) {
        BigInt row_lcm = 1;
        for (int e = 0; e < m; ++e) row_lcm = lcm(row_lcm, denominator(inst.cost(i, e)));
        BigInt row_sum = 0;
        out.cost[i].resize(m);
        for (int e = 0; e < m; ++e) {
            BigInt v = numerator(inst.cost(i, e)) * (row_lcm / denominator(inst.cost(i, e)));
            row_sum += v;
            if (v > kLimit) return std::nullopt;
            out.cost[i][e] = v.convert_to<std::int64_t>();
        }
        // Bundle sums get cross-multiplied by weight numerators in the checks.
        if (row_sum * max_wnum > kLimit) return std::nullopt;
    }
    return out;
}

}  // namespace fairdiv
