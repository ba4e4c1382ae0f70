#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// A chore-division instance: agent weights plus a cost matrix.
// Weights are normalized to sum 1 on construction; the raw sum is kept so
// callers can recover the scale. Agents and items are 0-indexed internally
// and 1-indexed in the file format and reports.
class Instance {
public:
    Instance(std::vector<Rational> raw_weights, std::vector<std::vector<Rational>> costs) {
        const int n = static_cast<int>(raw_weights.size());
        if (n < 1) throw DimensionMismatchError("instance needs at least one agent");
        if (static_cast<int>(costs.size()) != n)
            throw DimensionMismatchError("cost matrix has " + std::to_string(costs.size()) +
                                         " rows for " + std::to_string(n) + " agents");
        const int m = static_cast<int>(costs.empty() ? 0 : costs.front().size());
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(costs[i].size()) != m)
                throw DimensionMismatchError("cost row " + std::to_string(i + 1) + " has " +
                                             std::to_string(costs[i].size()) + " entries, expected " +
                                             std::to_string(m));
            for (int e = 0; e < m; ++e)
                if (costs[i][e] < 0) throw NegativeCostError(i, e);
        }
        Rational total = 0;
        for (int i = 0; i < n; ++i) {
            if (raw_weights[i] <= 0) throw NonPositiveWeightError(i);
            total += raw_weights[i];
        }
        weights_.reserve(n);
        for (auto& w : raw_weights) weights_.push_back(w / total);
        weight_scale_ = total;
        costs_ = std::move(costs);
        m_ = m;
        row_totals_.reserve(n);
        for (int i = 0; i < n; ++i)
            row_totals_.push_back(std::accumulate(costs_[i].begin(), costs_[i].end(), Rational(0)));
    }

    int agent_count() const { return static_cast<int>(weights_.size()); }
    int item_count() const { return m_; }

    const Rational& weight(int agent) const { return weights_[agent]; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& cost(int agent, int item) const { return costs_[agent][item]; }
    const std::vector<Rational>& cost_row(int agent) const { return costs_[agent]; }
    const std::vector<std::vector<Rational>>& cost_matrix() const { return costs_; }

    // c_i(M)
    const Rational& total_cost(int agent) const { return row_totals_[agent]; }

    // Sum of the raw weights supplied at construction.
    const Rational& weight_scale() const { return weight_scale_; }

    template <class ItemRange>
    Rational bundle_cost(int agent, const ItemRange& items) const {
        Rational sum = 0;
        for (int e : items) sum += costs_[agent][e];
        return sum;
    }

    // Equality is on normalized content; the recorded scale is metadata.
    friend bool operator==(const Instance& a, const Instance& b) {
        return a.weights_ == b.weights_ && a.costs_ == b.costs_;
    }

private:
    std::vector<Rational> weights_;
    std::vector<std::vector<Rational>> costs_;
    std::vector<Rational> row_totals_;
    Rational weight_scale_;
    int m_ = 0;
};

// A complete n-partition of the items. Bundles are disjoint, cover all items,
// and are stored sorted.
class Allocation {
public:
    static Allocation from_bundles(int agent_count, int item_count,
                                   std::vector<std::vector<int>> bundles) {
        if (static_cast<int>(bundles.size()) != agent_count)
            throw DimensionMismatchError("allocation has " + std::to_string(bundles.size()) +
                                         " bundles for " + std::to_string(agent_count) + " agents");
        std::vector<int> owner(item_count, -1);
        for (int i = 0; i < agent_count; ++i) {
            for (int e : bundles[i]) {
                if (e < 0 || e >= item_count)
                    throw IncompleteAllocationError("item " + std::to_string(e + 1) +
                                                    " out of range");
                if (owner[e] != -1)
                    throw IncompleteAllocationError("item " + std::to_string(e + 1) +
                                                    " assigned twice");
                owner[e] = i;
            }
        }
        for (int e = 0; e < item_count; ++e)
            if (owner[e] == -1)
                throw IncompleteAllocationError("item " + std::to_string(e + 1) + " unassigned");
        Allocation alloc;
        alloc.bundles_ = std::move(bundles);
        for (auto& bundle : alloc.bundles_) std::sort(bundle.begin(), bundle.end());
        alloc.owner_ = std::move(owner);
        return alloc;
    }

    static Allocation from_assignment(int agent_count, const std::vector<int>& item_to_agent) {
        std::vector<std::vector<int>> bundles(agent_count);
        for (int e = 0; e < static_cast<int>(item_to_agent.size()); ++e) {
            int i = item_to_agent[e];
            if (i < 0 || i >= agent_count)
                throw IncompleteAllocationError("agent index " + std::to_string(i) +
                                                " out of range");
            bundles[i].push_back(e);
        }
        Allocation alloc;
        alloc.bundles_ = std::move(bundles);
        alloc.owner_ = item_to_agent;
        return alloc;
    }

    int agent_count() const { return static_cast<int>(bundles_.size()); }
    int item_count() const { return static_cast<int>(owner_.size()); }
    const std::vector<int>& bundle(int agent) const { return bundles_[agent]; }
    const std::vector<std::vector<int>>& bundles() const { return bundles_; }
    int owner(int item) const { return owner_[item]; }

    friend bool operator==(const Allocation& a, const Allocation& b) {
        return a.owner_ == b.owner_;
    }

private:
    std::vector<std::vector<int>> bundles_;
    std::vector<int> owner_;
};

inline void require_complete(const Instance& inst, const Allocation& alloc) {
    if (alloc.agent_count() != inst.agent_count() || alloc.item_count() != inst.item_count())
        throw IncompleteAllocationError("allocation shape does not match instance");
}

// sc(X) = sum_i c_i(X_i)
inline Rational social_cost(const Instance& inst, const Allocation& alloc) {
    require_complete(inst, alloc);
    Rational sum = 0;
    for (int i = 0; i < inst.agent_count(); ++i) sum += inst.bundle_cost(i, alloc.bundle(i));
    return sum;
}

// Scales each agent's row so that c_i(M) = 1. Used where the analysis assumes
// normalized costs (price of fairness, adjusted winner).
inline Instance normalize_costs(const Instance& inst) {
    std::vector<std::vector<Rational>> costs = inst.cost_matrix();
    for (int i = 0; i < inst.agent_count(); ++i) {
        const Rational& total = inst.total_cost(i);
        if (total == 0) throw ZeroTotalCostError(i);
        for (auto& c : costs[i]) c /= total;
    }
    return Instance(inst.weights(), std::move(costs));
}

// Multiplies all raw weights by a positive constant. Fairness notions depend
// only on weight ratios, so this is a no-op after normalization; kept as an
// explicit operation for the invariance tests.
inline Instance scale_weights(const Instance& inst, const Rational& factor) {
    if (factor <= 0) throw InvalidSpecError("weight scale factor must be positive");
    std::vector<Rational> weights = inst.weights();
    for (auto& w : weights) w *= factor;
    return Instance(std::move(weights), inst.cost_matrix());
}

}  // namespace fairdiv
