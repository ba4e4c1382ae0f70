#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "fairdiv/config.hpp"
#include "fairdiv/enumerate.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

namespace two_agent_detail {

inline void require_two_agents(const Instance& inst) {
    if (inst.agent_count() != 2)
        throw WrongAgentCountError("operation requires exactly two agents, got " +
                                   std::to_string(inst.agent_count()));
}

}  // namespace two_agent_detail

// Items ordered by non-decreasing cost ratio c_first(e)/c_second(e).
// Zero-denominator items sort as ratio +infinity; items costing zero to both
// agents sort last among those. All remaining ties break by item index.
struct RatioOrder {
    std::vector<int> permutation;
};

inline RatioOrder ratio_order(const Instance& inst, int first = 0, int second = 1) {
    two_agent_detail::require_two_agents(inst);
    const int m = inst.item_count();
    auto rank = [&](int e) {
        if (inst.cost(second, e) > 0) return 0;  // finite ratio
        return inst.cost(first, e) > 0 ? 1 : 2;  // +infinity, then 0/0
    };
    RatioOrder order;
    order.permutation.resize(m);
    std::iota(order.permutation.begin(), order.permutation.end(), 0);
    std::stable_sort(order.permutation.begin(), order.permutation.end(), [&](int a, int b) {
        const int ra = rank(a), rb = rank(b);
        if (ra != rb) return ra < rb;
        if (ra != 0) return false;  // within a degenerate class, keep index order
        // cross-multiplied ratio comparison; denominators are positive here
        return inst.cost(first, a) * inst.cost(second, b) <
               inst.cost(first, b) * inst.cost(second, a);
    });
    return order;
}

// Diagnostics from a weighted adjusted winner run, in the internally
// normalized frame. cheap_bundle_cost_1/2 are the paper's A = c_1(O_1) and
// B = c_2(O_2) for the orientation actually used.
struct AdjustedWinnerTrace {
    bool zero_row = false;     // some agent costs the whole item set 0
    bool early_exit = false;   // the social-cost minimizer O was already WEF1
    bool swapped = false;      // agent roles were reversed for the cut search
    std::vector<int> order;    // ratio order in the oriented frame
    int threshold = -1;        // the cut index f (1-based position in `order`)
    Rational cheap_bundle_cost_1, cheap_bundle_cost_2;
    Allocation optimal;        // O, on the original agent indexing
    Allocation result;
};

// Weighted adjusted winner for two agents. Returns the social-cost minimizer
// O = ({c_1 < c_2}, {c_1 >= c_2}) when it is WEF1; otherwise orients the
// agents so the cheap side satisfies c_1(O_1)/w_1 <= c_2(O_2)/w_2 (reversing
// agent and item roles if not) and cuts the ratio order at the largest f with
// c_2(R(f+1))/w_2 > c_2(L(f-1))/w_1. The output is WEF1 with social cost at
// most (4+alpha)/4 times the optimum, alpha being the weight ratio.
inline AdjustedWinnerTrace weighted_adjusted_winner_trace(const Instance& raw) {
    two_agent_detail::require_two_agents(raw);
    const int m = raw.item_count();
    AdjustedWinnerTrace trace;

    // An agent with an all-zero row takes everything: nobody envies an empty
    // bundle and the social cost is zero. Normalization needs positive rows.
    for (int i = 0; i < 2; ++i)
        if (raw.total_cost(i) == 0) {
            std::vector<int> owner(m, i);
            trace.zero_row = true;
            trace.result = Allocation::from_assignment(2, owner);
            trace.optimal = trace.result;
            return trace;
        }

    const Instance inst = normalize_costs(raw);
    std::vector<int> opt_owner(m);
    for (int e = 0; e < m; ++e) opt_owner[e] = inst.cost(0, e) < inst.cost(1, e) ? 0 : 1;
    trace.optimal = Allocation::from_assignment(2, opt_owner);
    if (check_wef1(inst, trace.optimal).passed()) {
        trace.early_exit = true;
        trace.result = trace.optimal;
        return trace;
    }

    const Rational cost_cheap_0 = inst.bundle_cost(0, trace.optimal.bundle(0));
    const Rational cost_cheap_1 = inst.bundle_cost(1, trace.optimal.bundle(1));
    trace.swapped = cost_cheap_0 / inst.weight(0) > cost_cheap_1 / inst.weight(1);
    const int first = trace.swapped ? 1 : 0;
    const int second = 1 - first;
    trace.cheap_bundle_cost_1 = trace.swapped ? cost_cheap_1 : cost_cheap_0;
    trace.cheap_bundle_cost_2 = trace.swapped ? cost_cheap_0 : cost_cheap_1;

    trace.order = ratio_order(inst, first, second).permutation;
    // prefix[t] = c_second(L(t)) over the oriented order
    std::vector<Rational> prefix(m + 1, Rational(0));
    for (int t = 1; t <= m; ++t) prefix[t] = prefix[t - 1] + inst.cost(second, trace.order[t - 1]);

    for (int f = m; f >= 1; --f) {
        const Rational right = prefix[m] - prefix[f];  // c_second(R(f+1))
        const Rational left = prefix[f - 1];           // c_second(L(f-1))
        if (right / inst.weight(second) > left / inst.weight(first)) {
            trace.threshold = f;
            break;
        }
    }
    if (trace.threshold < 1)
        throw InvariantViolationError("adjusted-winner-threshold", 0);

    std::vector<int> owner(m, second);
    for (int t = 0; t < trace.threshold; ++t) owner[trace.order[t]] = first;
    trace.result = Allocation::from_assignment(2, owner);
    if constexpr (kRuntimeChecks) {
        if (!check_wef1(inst, trace.result).passed())
            throw InvariantViolationError("adjusted-winner-wef1", 0);
    }
    return trace;
}

inline Allocation weighted_adjusted_winner(const Instance& inst) {
    return weighted_adjusted_winner_trace(inst).result;
}

// WEF1 + PO for two agents via the goods reduction: value the chores as goods,
// swap the weights, take a goods-WEF1 and Pareto-optimal allocation there, and
// give each agent the other's goods bundle. The goods side is solved
// exhaustively: first allocation in base-2 counting order that is goods-WEF1
// and undominated among all 2^m splits.
inline Allocation wef1_po_two_agents(const Instance& inst, const EnumerationBudget& budget = {}) {
    two_agent_detail::require_two_agents(inst);
    const int m = inst.item_count();
    const long long cap = std::min<long long>(budget.max_states, 1LL << 20);
    auto states = allocation_count(2, m, cap);
    if (!states || *states > cap)
        throw BudgetExceededError("2^m exceeds the goods search budget");

    // Goods instance: v_i = c_i, weights swapped.
    const Rational goods_weight_0 = inst.weight(1), goods_weight_1 = inst.weight(0);

    // Subset sums and maxima via low/high halves, O(1) per mask.
    const int low_bits = m / 2, high_bits = m - low_bits;
    const std::uint32_t low_mask = (1u << low_bits) - 1;
    auto build = [&](int agent, bool maxima) {
        std::vector<std::vector<Rational>> half(2);
        for (int part = 0; part < 2; ++part) {
            const int bits = part == 0 ? low_bits : high_bits;
            const int base = part == 0 ? 0 : low_bits;
            auto& table = half[part];
            table.assign(1u << bits, Rational(0));
            for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
                const int bit = std::countr_zero(mask);
                const Rational& v = inst.cost(agent, base + bit);
                const Rational& rest = table[mask & (mask - 1)];
                table[mask] = maxima ? std::max(rest, v) : rest + v;
            }
        }
        return half;
    };
    const auto sum0 = build(0, false), sum1 = build(1, false);
    const auto max0 = build(0, true), max1 = build(1, true);
    auto sum_of = [&](const std::vector<std::vector<Rational>>& t, std::uint32_t mask) {
        return t[0][mask & low_mask] + t[1][mask >> low_bits];
    };
    auto max_of = [&](const std::vector<std::vector<Rational>>& t, std::uint32_t mask) {
        return std::max(t[0][mask & low_mask], t[1][mask >> low_bits]);
    };

    const std::uint32_t full = m == 0 ? 0 : ((1u << m) - 1);
    const Rational total0 = inst.total_cost(0), total1 = inst.total_cost(1);

    // Pareto frontier over utility pairs (v_0(S), v_1(M\S)).
    std::vector<std::uint32_t> by_u0(full + 1);
    std::iota(by_u0.begin(), by_u0.end(), 0);
    std::vector<Rational> u0(full + 1), u1(full + 1);
    for (std::uint32_t s = 0; s <= full; ++s) {
        u0[s] = sum_of(sum0, s);
        u1[s] = total1 - sum_of(sum1, s);
    }
    std::sort(by_u0.begin(), by_u0.end(),
              [&](std::uint32_t a, std::uint32_t b) { return u0[a] > u0[b]; });
    // dominated(s) iff max{u1 : u0' > u0[s]} >= u1[s] or max{u1 : u0' = u0[s]} > u1[s]
    std::vector<bool> dominated(full + 1, false);
    {
        Rational best_above = -1;  // max u1 among strictly larger u0
        std::size_t pos = 0;
        while (pos < by_u0.size()) {
            std::size_t tie_end = pos;
            Rational tie_max = -1;
            while (tie_end < by_u0.size() && u0[by_u0[tie_end]] == u0[by_u0[pos]]) {
                tie_max = std::max(tie_max, u1[by_u0[tie_end]]);
                ++tie_end;
            }
            for (std::size_t idx = pos; idx < tie_end; ++idx) {
                const std::uint32_t s = by_u0[idx];
                dominated[s] = (best_above >= u1[s] && best_above >= 0) || tie_max > u1[s];
            }
            best_above = std::max(best_above, tie_max);
            pos = tie_end;
        }
    }

    // Scan goods allocations in base-2 counting order (item 0 most
    // significant, agent 0 first), so the first qualifying subset is the
    // lexicographically smallest assignment vector.
    auto goods_wef1 = [&](std::uint32_t s) {
        const std::uint32_t rest = full & ~s;
        // agent 0 towards agent 1 (agent 1 holds `rest`)
        if (rest != 0) {
            const Rational drop = max_of(max0, rest);
            if (u0[s] / goods_weight_0 < (sum_of(sum0, rest) - drop) / goods_weight_1)
                return false;
        }
        if (s != 0) {
            const Rational drop = max_of(max1, s);
            if (u1[s] / goods_weight_1 < (sum_of(sum1, s) - drop) / goods_weight_0)
                return false;
        }
        return true;
    };
    (void)total0;

    std::uint32_t chosen = 0;
    bool found = false;
    for (std::uint64_t counter = 0; counter <= full && !found; ++counter) {
        // assignment digit of item e is bit (m-1-e) of counter; agent 0 owns
        // the 0 digits, i.e. goods bundle S of agent 0 has bit e set iff the
        // digit is 0.
        std::uint32_t s = 0;
        for (int e = 0; e < m; ++e)
            if (((counter >> (m - 1 - e)) & 1u) == 0) s |= 1u << e;
        if (!dominated[s] && goods_wef1(s)) {
            chosen = s;
            found = true;
        }
    }
    if (!found) throw InvariantViolationError("goods-wef1-po-exists", 0);

    // Chores allocation: each agent takes the other's goods bundle.
    std::vector<int> owner(m);
    for (int e = 0; e < m; ++e) owner[e] = (chosen >> e) & 1u ? 1 : 0;
    Allocation result = Allocation::from_assignment(2, owner);
    if constexpr (kRuntimeChecks) {
        if (!check_wef1(inst, result).passed())
            throw InvariantViolationError("two-agent-wef1", 0);
    }
    return result;
}

}  // namespace fairdiv
