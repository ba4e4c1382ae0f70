#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairdiv/enumerate.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"
#include "fairdiv/simplex.hpp"

namespace fairdiv {

struct OptResult {
    Rational cost;
    Allocation allocation;
};

// Unconstrained optimal social cost: every item goes to an agent of minimum
// cost, lowest index on ties.
inline OptResult opt_social_cost(const Instance& inst) {
    const int n = inst.agent_count(), m = inst.item_count();
    std::vector<int> owner(m, 0);
    Rational total = 0;
    for (int e = 0; e < m; ++e) {
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (inst.cost(i, e) < inst.cost(best, e)) best = i;
        owner[e] = best;
        total += inst.cost(best, e);
    }
    return {total, Allocation::from_assignment(n, owner)};
}

namespace oracle_detail {

// WEF1 check of a raw assignment vector against integer-compiled costs.
inline bool wef1_on_assignment(const CompiledCosts& cc, const std::vector<int>& assignment,
                               std::vector<std::int64_t>& bundle_cost,
                               std::vector<std::int64_t>& max_item) {
    const int n = cc.n, m = cc.m;
    std::fill(bundle_cost.begin(), bundle_cost.end(), 0);
    std::fill(max_item.begin(), max_item.end(), 0);
    for (int e = 0; e < m; ++e) {
        const int owner = assignment[e];
        for (int i = 0; i < n; ++i) bundle_cost[i * n + owner] += cc.cost[i][e];
        max_item[owner] = std::max(max_item[owner], cc.cost[owner][e]);
    }
    for (int i = 0; i < n; ++i) {
        const std::int64_t reduced = bundle_cost[i * n + i] - max_item[i];
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (reduced * cc.weight_num[j] > bundle_cost[i * n + j] * cc.weight_num[i])
                return false;
        }
    }
    return true;
}

inline bool wef1_on_assignment(const Instance& inst, const std::vector<int>& assignment) {
    const int n = inst.agent_count(), m = inst.item_count();
    std::vector<Rational> bundle(n * n, Rational(0));
    std::vector<Rational> max_item(n, Rational(0));
    for (int e = 0; e < m; ++e) {
        const int owner = assignment[e];
        for (int i = 0; i < n; ++i) bundle[i * n + owner] += inst.cost(i, e);
        max_item[owner] = std::max(max_item[owner], inst.cost(owner, e));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if ((bundle[i * n + i] - max_item[i]) / inst.weight(i) >
                bundle[i * n + j] / inst.weight(j))
                return false;
        }
    return true;
}

}  // namespace oracle_detail

// First WEF1 assignment in base-n counting order over the compiled view, or
// nullopt if none exists. This is the scan core behind wef1_exists; exhaustive
// sweeps can feed it precompiled instances directly.
inline std::optional<std::vector<int>> wef1_exists_compiled(const CompiledCosts& cc) {
    std::vector<std::int64_t> bundle_cost(cc.n * cc.n), max_item(cc.n);
    std::vector<int> assignment(cc.m, 0);
    for (;;) {
        if (oracle_detail::wef1_on_assignment(cc, assignment, bundle_cost, max_item))
            return assignment;
        int pos = cc.m - 1;
        while (pos >= 0 && assignment[pos] == cc.n - 1) assignment[pos--] = 0;
        if (pos < 0) return std::nullopt;
        ++assignment[pos];
    }
}

// First WEF1 allocation in enumeration order. The existence theorem says one
// always exists; not finding one means the checker or the theorem is broken.
inline Allocation wef1_exists(const Instance& inst, const EnumerationBudget& budget = {}) {
    const int n = inst.agent_count(), m = inst.item_count();
    checked_allocation_count(n, m, budget);
    std::optional<std::vector<int>> assignment;
    if (auto compiled = compile_costs(inst)) {
        assignment = wef1_exists_compiled(*compiled);
    } else {
        for_each_allocation(n, m, budget, [&](const std::vector<int>& candidate) {
            if (oracle_detail::wef1_on_assignment(inst, candidate)) {
                assignment = candidate;
                return false;
            }
            return true;
        });
    }
    if (!assignment) throw InvariantViolationError("wef1-existence", 0);
    return Allocation::from_assignment(n, *assignment);
}

// Exact price of fairness for WEF1: the minimum social cost over WEF1
// allocations divided by the optimum, both on the cost-normalized instance.
inline Rational price_of_fairness(const Instance& inst, const EnumerationBudget& budget = {}) {
    const Instance normalized = normalize_costs(inst);
    const int n = normalized.agent_count(), m = normalized.item_count();
    checked_allocation_count(n, m, budget);
    const Rational opt = opt_social_cost(normalized).cost;
    if (opt == 0)
        throw DivisionByZeroError("optimal social cost is zero; price of fairness undefined");

    std::optional<Rational> best;
    std::vector<Rational> bundle_cost(n, Rational(0));
    for_each_allocation(n, m, budget, [&](const std::vector<int>& assignment) {
        if (oracle_detail::wef1_on_assignment(normalized, assignment)) {
            for (auto& c : bundle_cost) c = 0;
            for (int e = 0; e < m; ++e)
                bundle_cost[assignment[e]] += normalized.cost(assignment[e], e);
            Rational sc = 0;
            for (const auto& c : bundle_cost) sc += c;
            if (!best || sc < *best) best = sc;
        }
        return true;
    });
    if (!best) throw InvariantViolationError("wef1-existence", 0);
    return *best / opt;
}

// Exact AnyPrice Share of one agent.
//
// APS_i = max_r min { c_i(S) : r(S) >= w_i c_i(M) } over reward vectors
// r >= 0 with r(M) = c_i(M). A target t is achievable iff rewards exist
// keeping every subset cheaper than t strictly below w_i c_i(M); that strict
// feasibility is decided exactly by maximizing the margin delta, via the LP
// dual (m+1 rows, one column per maximal cheap subset).
inline Rational aps_exact(const Instance& inst, int agent, const EnumerationBudget& budget = {}) {
    const int m = inst.item_count();
    if (m > 62 || (1LL << m) > budget.max_subsets)
        throw BudgetExceededError("2^m exceeds the subset budget of " +
                                  std::to_string(budget.max_subsets));
    const std::uint64_t subsets = 1ULL << m;
    const Rational total = inst.total_cost(agent);
    const Rational threshold = inst.weight(agent) * total;

    std::vector<Rational> cost(subsets, Rational(0));
    for (std::uint64_t s = 1; s < subsets; ++s) {
        const int bit = std::countr_zero(s);
        cost[s] = cost[s & (s - 1)] + inst.cost(agent, bit);
    }
    std::vector<Rational> candidates = cost;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto achievable = [&](const Rational& target) {
        // Maximal subsets with cost < target; constraints on supersets are
        // implied by r >= 0.
        std::vector<std::uint64_t> maximal;
        for (std::uint64_t s = 0; s < subsets; ++s) {
            if (cost[s] >= target) continue;
            bool is_max = true;
            for (int e = 0; e < m && is_max; ++e)
                if (!((s >> e) & 1) && cost[s | (1ULL << e)] < target) is_max = false;
            if (is_max) maximal.push_back(s);
        }
        if (maximal.empty()) return true;

        // Primal: max delta s.t. r(S) + delta <= threshold for each maximal S,
        // sum r = total, r >= 0, delta >= 0. Solved through its dual
        //   min threshold * sum y + total * z
        //   s.t. sum_{S contains e} y_S + z >= 0 for every item e,
        //        sum y_S >= 1, y >= 0, z free,
        // which always has a feasible point; unboundedness below means the
        // primal is infeasible. Encoded for lp_maximize by negating.
        const int vars = static_cast<int>(maximal.size()) + 2;  // y..., z+, z-
        std::vector<Rational> objective(vars, -threshold);
        objective[vars - 2] = -total;
        objective[vars - 1] = total;
        std::vector<std::vector<Rational>> rows;
        std::vector<Rational> rhs;
        for (int e = 0; e < m; ++e) {
            std::vector<Rational> row(vars, Rational(0));
            for (std::size_t s = 0; s < maximal.size(); ++s)
                if ((maximal[s] >> e) & 1) row[s] = -1;
            row[vars - 2] = -1;
            row[vars - 1] = 1;
            rows.push_back(std::move(row));
            rhs.push_back(0);
        }
        {
            std::vector<Rational> row(vars, Rational(-1));
            row[vars - 2] = 0;
            row[vars - 1] = 0;
            rows.push_back(std::move(row));
            rhs.push_back(-1);
        }
        const LpResult dual = lp_maximize(objective, rows, rhs);
        if (dual.status == LpResult::Status::Unbounded) return false;  // primal infeasible
        if (dual.status != LpResult::Status::Optimal)
            throw InvariantViolationError("aps-dual-feasible", 0);
        // optimal margin = -dual.value; strict feasibility needs it positive
        return -dual.value > 0;
    };

    // Achievability is downward closed over the sorted candidate targets.
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (achievable(candidates[mid]))
            lo = mid;
        else
            hi = mid - 1;
    }
    return candidates[lo];
}

// alpha-APS audit: every agent's own bundle cost is at most alpha times her
// AnyPrice Share.
inline FairnessReport check_alpha_aps(const Instance& inst, const Allocation& alloc,
                                      const Rational& alpha,
                                      const EnumerationBudget& budget = {}) {
    require_complete(inst, alloc);
    const std::string notion = "alpha-aps(" + to_string(alpha) + ")";
    for (int i = 0; i < inst.agent_count(); ++i) {
        const Rational share = aps_exact(inst, i, budget);
        if (inst.bundle_cost(i, alloc.bundle(i)) > alpha * share)
            return detail::fail(notion, {.envious = i});
    }
    return detail::pass(notion);
}

}  // namespace fairdiv
