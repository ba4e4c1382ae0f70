#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/enumerate.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class Verdict { Pass, Fail };

// A failing check always carries a witness that re-verifies as a violation.
struct Witness {
    int envious = -1;  // agent i (or the lone agent for proportionality notions)
    int envied = -1;   // agent j, where applicable
    int item = -1;     // the extremal removable/transferable item, where applicable
    std::optional<Allocation> dominator;  // for the PO check
};

struct FairnessReport {
    std::string notion;
    Verdict verdict = Verdict::Pass;
    std::optional<Witness> witness;
    bool passed() const { return verdict == Verdict::Pass; }
};

namespace detail {

// c_i(X_j) for all pairs, one pass per agent row.
inline std::vector<std::vector<Rational>> cross_bundle_costs(const Instance& inst,
                                                             const Allocation& alloc) {
    const int n = inst.agent_count();
    std::vector<std::vector<Rational>> value(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) value[i][j] = inst.bundle_cost(i, alloc.bundle(j));
    return value;
}

// Item of maximum own-cost in agent `viewer`'s eyes within `bundle`; lowest
// index on ties. Returns -1 for an empty bundle.
inline int max_cost_item(const Instance& inst, int viewer, const std::vector<int>& bundle) {
    int best = -1;
    for (int e : bundle)
        if (best == -1 || inst.cost(viewer, e) > inst.cost(viewer, best)) best = e;
    return best;
}

inline int min_cost_item(const Instance& inst, int viewer, const std::vector<int>& bundle) {
    int best = -1;
    for (int e : bundle)
        if (best == -1 || inst.cost(viewer, e) < inst.cost(viewer, best)) best = e;
    return best;
}

inline FairnessReport pass(std::string notion) { return {std::move(notion), Verdict::Pass, {}}; }

inline FairnessReport fail(std::string notion, Witness w) {
    return {std::move(notion), Verdict::Fail, std::move(w)};
}

}  // namespace detail

// WEF: c_i(X_i)/w_i <= c_i(X_j)/w_j for all ordered pairs.
inline FairnessReport check_wef(const Instance& inst, const Allocation& alloc) {
    require_complete(inst, alloc);
    auto cost = detail::cross_bundle_costs(inst, alloc);
    const int n = inst.agent_count();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (cost[i][i] / inst.weight(i) > cost[i][j] / inst.weight(j))
                return detail::fail("wef", {.envious = i, .envied = j});
        }
    return detail::pass("wef");
}

// WEF(x,y): exists e in X_i with (c_i(X_i) - x c_i(e))/w_i <= (c_i(X_j) + y c_i(e))/w_j.
// Additivity makes the max-cost item of X_i the best candidate for both sides,
// so one extremal item decides each pair. Empty X_i passes vacuously
// (0 <= c_i(X_j)/w_j always holds).
inline FairnessReport check_wefxy(const Instance& inst, const Allocation& alloc,
                                  const Rational& x, const Rational& y) {
    if (x < 0 || x > 1 || y < 0 || y > 1)
        throw InvalidSpecError("wef(x,y) requires x,y in [0,1]");
    require_complete(inst, alloc);
    const std::string notion = "wef(" + to_string(x) + "," + to_string(y) + ")";
    auto cost = detail::cross_bundle_costs(inst, alloc);
    const int n = inst.agent_count();
    for (int i = 0; i < n; ++i) {
        if (alloc.bundle(i).empty()) continue;
        const int e = detail::max_cost_item(inst, i, alloc.bundle(i));
        const Rational& ce = inst.cost(i, e);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if ((cost[i][i] - x * ce) / inst.weight(i) > (cost[i][j] + y * ce) / inst.weight(j))
                return detail::fail(notion, {.envious = i, .envied = j, .item = e});
        }
    }
    return detail::pass(notion);
}

// WEF1 = WEF(1,0): either X_i is empty or dropping the costliest chore kills the envy.
inline FairnessReport check_wef1(const Instance& inst, const Allocation& alloc) {
    auto report = check_wefxy(inst, alloc, 1, 0);
    report.notion = "wef1";
    return report;
}

// WEF1T = WEF(1,1).
inline FairnessReport check_wef1t(const Instance& inst, const Allocation& alloc) {
    auto report = check_wefxy(inst, alloc, 1, 1);
    report.notion = "wef1t";
    return report;
}

// WWEF1: for every pair, agent i is WEF(1,0) or WEF(0,1) towards j.
inline FairnessReport check_wwef1(const Instance& inst, const Allocation& alloc) {
    require_complete(inst, alloc);
    auto cost = detail::cross_bundle_costs(inst, alloc);
    const int n = inst.agent_count();
    for (int i = 0; i < n; ++i) {
        if (alloc.bundle(i).empty()) continue;
        const int e = detail::max_cost_item(inst, i, alloc.bundle(i));
        const Rational& ce = inst.cost(i, e);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool remove_ok =
                (cost[i][i] - ce) / inst.weight(i) <= cost[i][j] / inst.weight(j);
            const bool add_ok =
                cost[i][i] / inst.weight(i) <= (cost[i][j] + ce) / inst.weight(j);
            if (!remove_ok && !add_ok)
                return detail::fail("wwef1", {.envious = i, .envied = j, .item = e});
        }
    }
    return detail::pass("wwef1");
}

// WPROP1: c_i(X_i - e) <= w_i c_i(M) for the costliest e in X_i.
inline FairnessReport check_wprop1(const Instance& inst, const Allocation& alloc) {
    require_complete(inst, alloc);
    for (int i = 0; i < inst.agent_count(); ++i) {
        if (alloc.bundle(i).empty()) continue;
        const int e = detail::max_cost_item(inst, i, alloc.bundle(i));
        Rational own = inst.bundle_cost(i, alloc.bundle(i));
        if (own - inst.cost(i, e) > inst.weight(i) * inst.total_cost(i))
            return detail::fail("wprop1", {.envious = i, .item = e});
    }
    return detail::pass("wprop1");
}

// WPROPX: the same bound must hold after removing ANY item, so the cheapest
// item of each non-empty bundle is the binding one.
inline FairnessReport check_wpropx(const Instance& inst, const Allocation& alloc) {
    require_complete(inst, alloc);
    for (int i = 0; i < inst.agent_count(); ++i) {
        if (alloc.bundle(i).empty()) continue;
        const int e = detail::min_cost_item(inst, i, alloc.bundle(i));
        Rational own = inst.bundle_cost(i, alloc.bundle(i));
        if (own - inst.cost(i, e) > inst.weight(i) * inst.total_cost(i))
            return detail::fail("wpropx", {.envious = i, .item = e});
    }
    return detail::pass("wpropx");
}

// Goods-side WEF1, with the cost matrix read as valuations:
// v_i(X_i)/w_i >= v_i(X_j - e)/w_j for some e in X_j.
inline FairnessReport check_goods_wef1(const Instance& inst, const Allocation& alloc) {
    require_complete(inst, alloc);
    auto value = detail::cross_bundle_costs(inst, alloc);
    const int n = inst.agent_count();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (alloc.bundle(j).empty()) continue;
            const int e = detail::max_cost_item(inst, i, alloc.bundle(j));
            if (value[i][i] / inst.weight(i) <
                (value[i][j] - inst.cost(i, e)) / inst.weight(j))
                return detail::fail("goods-wef1", {.envious = i, .envied = j, .item = e});
        }
    return detail::pass("goods-wef1");
}

namespace detail {

// Depth-first scan for a Pareto-dominating allocation in base-n order.
// Branches where any agent already exceeds her baseline cost are pruned.
template <class Cost, class Row>
std::optional<std::vector<int>> find_dominator(int n, int m, const std::vector<Row>& cost,
                                               const std::vector<Cost>& baseline) {
    std::vector<Cost> partial(n, Cost(0));
    std::vector<int> assignment(m, 0);
    std::optional<std::vector<int>> result;
    auto search = [&](auto&& self, int depth) -> bool {
        if (depth == m) {
            for (int i = 0; i < n; ++i)
                if (partial[i] < baseline[i]) {
                    result = assignment;
                    return true;
                }
            return false;
        }
        for (int agent = 0; agent < n; ++agent) {
            partial[agent] += cost[agent][depth];
            if (partial[agent] <= baseline[agent]) {
                assignment[depth] = agent;
                if (self(self, depth + 1)) return true;
            }
            partial[agent] -= cost[agent][depth];
        }
        return false;
    };
    search(search, 0);
    return result;
}

}  // namespace detail

// Exhaustive Pareto-optimality check. Fails with the first dominating
// allocation in enumeration order.
inline FairnessReport check_po_bruteforce(const Instance& inst, const Allocation& alloc,
                                          const EnumerationBudget& budget = {}) {
    require_complete(inst, alloc);
    const int n = inst.agent_count(), m = inst.item_count();
    checked_allocation_count(n, m, budget);

    std::optional<std::vector<int>> dominator;
    if (auto compiled = compile_costs(inst)) {
        std::vector<std::int64_t> baseline(n, 0);
        for (int i = 0; i < n; ++i)
            for (int e : alloc.bundle(i)) baseline[i] += compiled->cost[i][e];
        dominator = detail::find_dominator<std::int64_t>(n, m, compiled->cost, baseline);
    } else {
        std::vector<Rational> baseline(n, Rational(0));
        for (int i = 0; i < n; ++i) baseline[i] = inst.bundle_cost(i, alloc.bundle(i));
        dominator = detail::find_dominator<Rational>(n, m, inst.cost_matrix(), baseline);
    }
    if (dominator) {
        Witness w;
        w.dominator = Allocation::from_assignment(n, *dominator);
        return detail::fail("po-bruteforce", std::move(w));
    }
    return detail::pass("po-bruteforce");
}

}  // namespace fairdiv
