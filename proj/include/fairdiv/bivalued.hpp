#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// A bi-valued instance rescaled so every cost is 1 or k with k > 1, and every
// agent has at least one cost-1 item. M+ holds the consistently large items
// (cost k to all agents), M- the rest.
struct BivaluedProfile {
    Rational low = 1;
    Rational high;  // k > 1
    Instance rescaled;
    std::vector<std::vector<bool>> large;  // large[i][e] iff rescaled cost is k
    std::vector<int> consistently_large;   // M+
    std::vector<int> other;                // M-

    BivaluedProfile(Rational high_, Instance rescaled_)
        : high(std::move(high_)), rescaled(std::move(rescaled_)) {}
};

// Detects the two-value structure {a,b} with 0 < a < b, rescales globally to
// {1,k}, then divides any all-k row by k. Instances whose rescaled costs
// collapse to a single value are rejected: they are cost-uniform for every
// agent and need none of the market machinery.
inline std::optional<BivaluedProfile> classify_bivalued(const Instance& inst) {
    const int n = inst.agent_count(), m = inst.item_count();
    std::set<Rational> values;
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < m; ++e) {
            values.insert(inst.cost(i, e));
            if (values.size() > 2) return std::nullopt;
        }
    if (values.size() != 2) return std::nullopt;
    const Rational low = *values.begin();
    const Rational high = *values.rbegin();
    if (low <= 0) return std::nullopt;
    const Rational k = high / low;

    std::vector<std::vector<Rational>> costs = inst.cost_matrix();
    for (auto& row : costs)
        for (auto& c : row) c /= low;
    for (auto& row : costs) {
        bool all_large = true;
        for (auto& c : row) all_large = all_large && c == k;
        if (all_large)
            for (auto& c : row) c /= k;
    }

    bool any_large = false;
    std::vector<std::vector<bool>> large(n, std::vector<bool>(m, false));
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < m; ++e) {
            large[i][e] = costs[i][e] == k;
            any_large = any_large || large[i][e];
        }
    if (!any_large) return std::nullopt;  // every row was uniform

    BivaluedProfile profile(k, Instance(inst.weights(), std::move(costs)));
    profile.large = std::move(large);
    for (int e = 0; e < m; ++e) {
        bool all = true;
        for (int i = 0; i < n; ++i) all = all && profile.large[i][e];
        (all ? profile.consistently_large : profile.other).push_back(e);
    }
    return profile;
}

}  // namespace fairdiv
