#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fairdiv/bivalued.hpp"
#include "fairdiv/config.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// The market invariant proofs are exactly a runtime-checkable contract, so
// they are asserted after every round whenever kRuntimeChecks is on.
inline constexpr bool kMarketInvariantChecks = kRuntimeChecks;

struct AgentGroup {
    std::vector<int> members;  // sorted
    int representative;        // b_r
};

struct Transfer {
    int item, from, to;
};

struct RoundRecord {
    int round;
    int big = -1, least = -1;
    int raised_group = -1;  // group index whose prices were raised this round
    std::vector<Transfer> transfers;
};

// Fisher-market state for the bi-valued pipeline: allocation, {1,k} prices,
// MPB ratios, agent groups with representatives, the unraised set, and a
// transfer log. The instance inside is the rescaled one from classification.
struct MarketState {
    Instance market;
    Rational k;
    std::vector<std::vector<int>> bundles;          // current X, sorted
    std::vector<Rational> prices;                   // per item, in {1,k}
    std::vector<Rational> mpb_ratio;                // alpha_i maintained by the algorithms
    std::vector<AgentGroup> groups;                 // N_1 .. N_R (highest first)
    std::vector<int> group_of;                      // agent -> group index
    std::vector<char> group_raised;                 // per group
    std::vector<char> unraised;                     // per agent, 1 iff in U
    std::vector<std::vector<int>> initial_bundles;  // X^0 after the initial equilibrium
    int rounds = 0;                                 // Algorithm-3 rounds executed
    int path_rounds = 0;                            // path resolutions in the initial phase
    std::vector<RoundRecord> log;

    MarketState(Instance market_, Rational k_) : market(std::move(market_)), k(std::move(k_)) {}

    int agent_count() const { return market.agent_count(); }
    int item_count() const { return market.item_count(); }

    Rational bundle_price(int agent) const {
        Rational sum = 0;
        for (int e : bundles[agent]) sum += prices[e];
        return sum;
    }

    // Weighted spending p(X_i)/w_i.
    Rational spending(int agent) const { return bundle_price(agent) / market.weight(agent); }

    // Spending after dropping the priciest held item; 0 for an empty bundle.
    Rational p_hat(int agent) const {
        if (bundles[agent].empty()) return 0;
        Rational sum = 0, top = 0;
        for (int e : bundles[agent]) {
            sum += prices[e];
            top = std::max(top, prices[e]);
        }
        return (sum - top) / market.weight(agent);
    }

    // alpha_i recomputed from scratch.
    Rational recompute_alpha(int agent) const {
        Rational best = -1;
        for (int e = 0; e < item_count(); ++e) {
            Rational ratio = market.cost(agent, e) / prices[e];
            if (best < 0 || ratio < best) best = ratio;
        }
        return best;
    }

    bool is_mpb(int agent, int item) const {
        return market.cost(agent, item) / prices[item] == recompute_alpha(agent);
    }

    Allocation allocation() const {
        return Allocation::from_bundles(agent_count(), item_count(), bundles);
    }
};

struct SpenderView {
    int big = -1;    // argmax p_hat, lowest index on ties
    int least = -1;  // argmin spending, lowest index on ties
    std::vector<Rational> p_hat;
    std::vector<Rational> spending;
};

inline SpenderView spender_view(const MarketState& state) {
    SpenderView view;
    const int n = state.agent_count();
    view.p_hat.reserve(n);
    view.spending.reserve(n);
    for (int i = 0; i < n; ++i) {
        view.p_hat.push_back(state.p_hat(i));
        view.spending.push_back(state.spending(i));
        if (view.big == -1 || view.p_hat[i] > view.p_hat[view.big]) view.big = i;
        if (view.least == -1 || view.spending[i] < view.spending[view.least]) view.least = i;
    }
    return view;
}

struct EquilibriumCheck {
    bool ok = true;
    int agent = -1, item = -1;  // first held non-MPB item when not ok
};

// The standalone certificate check: every agent holds only minimum
// pain-per-buck items under the recomputed ratios. An equilibrium allocation
// minimizes sum_i c_i(X_i)/alpha_i, hence is fractionally Pareto optimal.
inline EquilibriumCheck verify_equilibrium(const Instance& inst, const MarketState& state) {
    for (int i = 0; i < inst.agent_count(); ++i) {
        Rational alpha = -1;
        for (int e = 0; e < inst.item_count(); ++e) {
            Rational ratio = inst.cost(i, e) / state.prices[e];
            if (alpha < 0 || ratio < alpha) alpha = ratio;
        }
        for (int e : state.bundles[i])
            if (inst.cost(i, e) / state.prices[e] != alpha) return {false, i, e};
    }
    return {};
}

// pWEF1 over all ordered pairs: nobody strongly envies anybody.
inline FairnessReport check_pwef1(const MarketState& state) {
    const int n = state.agent_count();
    std::vector<Rational> p_hat(n), spending(n);
    for (int i = 0; i < n; ++i) {
        p_hat[i] = state.p_hat(i);
        spending[i] = state.spending(i);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (p_hat[i] > spending[j])
                return detail::fail("pwef1", {.envious = i, .envied = j});
        }
    return detail::pass("pwef1");
}

// Reduced test: the big spender does not strongly envy the least spender.
// Equivalent to the full scan on any equilibrium.
inline bool pwef1_reduced(const MarketState& state) {
    auto view = spender_view(state);
    return view.p_hat[view.big] <= view.spending[view.least];
}

namespace market_detail {

inline void bundle_insert(std::vector<int>& bundle, int item) {
    bundle.insert(std::lower_bound(bundle.begin(), bundle.end(), item), item);
}

inline void bundle_erase(std::vector<int>& bundle, int item) {
    bundle.erase(std::lower_bound(bundle.begin(), bundle.end(), item));
}

inline bool bundle_contains(const std::vector<int>& bundle, int item) {
    return std::binary_search(bundle.begin(), bundle.end(), item);
}

// MPB edges j -> i iff agent i holds an MPB item of agent j.
inline std::vector<std::vector<bool>> mpb_edges(const MarketState& state) {
    const int n = state.agent_count();
    std::vector<Rational> alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = state.recompute_alpha(i);
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            for (int e : state.bundles[i])
                if (state.market.cost(j, e) / state.prices[e] == alpha[j]) {
                    edge[j][i] = true;
                    break;
                }
        }
    return edge;
}

// BFS distances towards `target` along MPB edges, restricted to `eligible`.
inline std::vector<int> distances_to(const std::vector<std::vector<bool>>& edge, int target,
                                     const std::vector<char>& eligible) {
    const int n = static_cast<int>(edge.size());
    std::vector<int> dist(n, -1);
    dist[target] = 0;
    std::deque<int> queue{target};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u = 0; u < n; ++u)
            if (eligible[u] && dist[u] == -1 && edge[u][v]) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

// Lexicographically smallest shortest path from `start` to the BFS target,
// following edges towards decreasing distance, lowest index first.
inline std::vector<int> reconstruct_path(const std::vector<std::vector<bool>>& edge,
                                         const std::vector<int>& dist, int start) {
    std::vector<int> path{start};
    int current = start;
    while (dist[current] > 0) {
        for (int next = 0; next < static_cast<int>(edge.size()); ++next)
            if (edge[current][next] && dist[next] == dist[current] - 1) {
                path.push_back(next);
                current = next;
                break;
            }
    }
    return path;
}

inline void invariant(bool condition, const char* name, int round) {
    if (!condition) throw InvariantViolationError(name, round);
}

}  // namespace market_detail

// All six invariants of the bi-valued pipeline, checked from scratch against
// the state. `past_least` carries the least-spender history for the
// big-spender invariant; `prev_least_spending` the previous round's least
// spending for the monotonicity invariant. The big-spender invariant is
// guaranteed only while the algorithm keeps running, so it is checked only
// when the state still has strong envy.
inline void assert_market_invariants(const MarketState& state, const std::set<int>& past_least,
                                     const std::optional<Rational>& prev_least_spending,
                                     int round) {
    using market_detail::invariant;
    const int n = state.agent_count();

    // Equilibrium: X_i subseteq MPB_i, and the maintained alpha matches.
    auto eq = verify_equilibrium(state.market, state);
    invariant(eq.ok, "equilibrium", round);
    for (int i = 0; i < n; ++i)
        invariant(state.recompute_alpha(i) == state.mpb_ratio[i], "equilibrium-alpha", round);

    // Prices stay in {1, k}.
    for (const Rational& p : state.prices)
        invariant(p == 1 || p == state.k, "price-range", round);

    std::vector<Rational> p_hat(n), spending(n);
    for (int i = 0; i < n; ++i) {
        p_hat[i] = state.p_hat(i);
        spending[i] = state.spending(i);
    }

    // Every group is internally pWEF1.
    for (const AgentGroup& group : state.groups)
        for (int i : group.members)
            for (int j : group.members) {
                if (i == j) continue;
                invariant(p_hat[i] <= spending[j], "group-pwef1", round);
            }

    // Raised groups form a prefix, each raised exactly once; raised agents
    // keep alpha = 1/k and only lose items, unraised keep alpha = 1 and only
    // gain items.
    const int R = static_cast<int>(state.groups.size());
    int boundary = 0;
    while (boundary < R && state.group_raised[boundary]) ++boundary;
    for (int r = boundary; r < R; ++r)
        invariant(!state.group_raised[r], "raised-prefix", round);
    for (int i = 0; i < n; ++i) {
        const bool raised = state.group_raised[state.group_of[i]];
        invariant(raised == !state.unraised[i], "raised-prefix", round);
        if (raised) {
            invariant(state.mpb_ratio[i] == Rational(1) / state.k, "raised-alpha", round);
            invariant(std::includes(state.initial_bundles[i].begin(),
                                    state.initial_bundles[i].end(), state.bundles[i].begin(),
                                    state.bundles[i].end()),
                      "raised-no-gain", round);
        } else {
            invariant(state.mpb_ratio[i] == 1, "unraised-alpha", round);
            invariant(std::includes(state.bundles[i].begin(), state.bundles[i].end(),
                                    state.initial_bundles[i].begin(),
                                    state.initial_bundles[i].end()),
                      "unraised-no-loss", round);
        }
    }

    int big = 0, least = 0;
    for (int i = 1; i < n; ++i) {
        if (p_hat[i] > p_hat[big]) big = i;
        if (spending[i] < spending[least]) least = i;
    }

    // Least spending never decreases across rounds.
    if (prev_least_spending)
        invariant(spending[least] >= *prev_least_spending, "least-spending-monotone", round);

    // The big spender was never a least spender; for an unraised big spender
    // this extends to her whole group. Applies only while the big spender
    // still strongly envies the least spender.
    if (p_hat[big] > spending[least]) {
        invariant(!past_least.count(big), "big-spender-history", round);
        if (state.unraised[big])
            for (int i : state.groups[state.group_of[big]].members)
                invariant(!past_least.count(i), "big-spender-history", round);
    }
}

// Algorithm: initial price, allocation and agent groups.
//
// Prices are the per-item minimum costs (1 on M-, k on M+). The allocation
// starts social-cost minimizing: each M- item to the lowest-index agent that
// finds it small, all of M+ to the last agent. MPB paths i_k -> ... -> i_0
// with p_hat(i_0) > spending(i_k) are then resolved by transferring max-price
// MPB items backward, always choosing the path maximizing p_hat(i_0) (ties:
// shortest path, then lexicographically smallest path). Groups are peeled off
// by repeatedly taking the big spender among remaining agents together with
// everyone that reaches her via MPB paths among the remaining agents.
inline MarketState initial_equilibrium(const Instance& inst, const BivaluedProfile& profile) {
    const int n = profile.rescaled.agent_count(), m = profile.rescaled.item_count();
    (void)inst;
    MarketState state(profile.rescaled, profile.high);
    state.prices.assign(m, Rational(1));
    for (int e : profile.consistently_large) state.prices[e] = state.k;
    state.bundles.assign(n, {});
    state.mpb_ratio.assign(n, Rational(1));
    state.unraised.assign(n, 1);

    for (int e : profile.other)
        for (int i = 0; i < n; ++i)
            if (!profile.large[i][e]) {
                state.bundles[i].push_back(e);
                break;
            }
    for (int e : profile.consistently_large) state.bundles[n - 1].push_back(e);
    for (auto& bundle : state.bundles) std::sort(bundle.begin(), bundle.end());

    // Path resolution. Prices are fixed here, so MPB sets never change; only
    // the bundles (and with them the edges) do.
    const std::vector<char> everyone(n, 1);
    const Rational round_cap = state.k * n * m;
    for (;;) {
        auto edge = market_detail::mpb_edges(state);
        std::vector<Rational> p_hat(n), spending(n);
        for (int i = 0; i < n; ++i) {
            p_hat[i] = state.p_hat(i);
            spending[i] = state.spending(i);
        }
        std::vector<int> ends(n);
        for (int i = 0; i < n; ++i) ends[i] = i;
        std::sort(ends.begin(), ends.end(), [&](int a, int b) {
            if (p_hat[a] != p_hat[b]) return p_hat[a] > p_hat[b];
            return a < b;
        });

        std::vector<int> best_path;
        Rational best_p_hat;
        for (int end : ends) {
            if (!best_path.empty() && p_hat[end] < best_p_hat) break;
            auto dist = market_detail::distances_to(edge, end, everyone);
            int start = -1;
            for (int u = 0; u < n; ++u) {
                if (u == end || dist[u] < 0 || spending[u] >= p_hat[end]) continue;
                if (start == -1 || dist[u] < dist[start]) start = u;
            }
            if (start == -1) continue;
            auto path = market_detail::reconstruct_path(edge, dist, start);
            if (best_path.empty() ||
                path.size() < best_path.size() ||
                (path.size() == best_path.size() && path < best_path)) {
                best_path = std::move(path);
                best_p_hat = p_hat[end];
            }
        }
        if (best_path.empty()) break;

        // best_path runs start = i_k, ..., end = i_0; items flow from the end
        // side towards the start.
        for (int pos = static_cast<int>(best_path.size()) - 1; pos > 0; --pos) {
            const int from = best_path[pos], to = best_path[pos - 1];
            const Rational alpha_to = state.recompute_alpha(to);
            int pick = -1;
            for (int e : state.bundles[from])
                if (state.market.cost(to, e) / state.prices[e] == alpha_to &&
                    (pick == -1 || state.prices[e] > state.prices[pick]))
                    pick = e;
            market_detail::invariant(pick >= 0, "initial-path-edge", state.path_rounds);
            market_detail::bundle_erase(state.bundles[from], pick);
            market_detail::bundle_insert(state.bundles[to], pick);
        }
        ++state.path_rounds;
        market_detail::invariant(Rational(state.path_rounds) <= round_cap, "initial-termination",
                                 state.path_rounds);
    }

    // Agent groups, peeled off the remaining set by descending p_hat.
    {
        auto edge = market_detail::mpb_edges(state);
        std::vector<Rational> p_hat(n);
        for (int i = 0; i < n; ++i) p_hat[i] = state.p_hat(i);
        std::vector<char> remaining(n, 1);
        int assigned = 0;
        state.group_of.assign(n, -1);
        while (assigned < n) {
            int rep = -1;
            for (int i = 0; i < n; ++i)
                if (remaining[i] && (rep == -1 || p_hat[i] > p_hat[rep])) rep = i;
            auto dist = market_detail::distances_to(edge, rep, remaining);
            AgentGroup group;
            group.representative = rep;
            for (int i = 0; i < n; ++i)
                if (remaining[i] && dist[i] >= 0) {
                    group.members.push_back(i);
                    remaining[i] = 0;
                    state.group_of[i] = static_cast<int>(state.groups.size());
                    ++assigned;
                }
            state.groups.push_back(std::move(group));
        }
        state.group_raised.assign(state.groups.size(), 0);
    }
    state.initial_bundles = state.bundles;

    if constexpr (kMarketInvariantChecks) {
        using market_detail::invariant;
        auto eq = verify_equilibrium(state.market, state);
        invariant(eq.ok, "initial-equilibrium", 0);
        for (int i = 0; i < n; ++i)
            invariant(state.recompute_alpha(i) == 1, "initial-alpha-one", 0);
        // Lower groups see every higher-group item as large.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (state.group_of[i] < state.group_of[j])
                    for (int e : state.bundles[i])
                        invariant(state.market.cost(j, e) == state.k, "initial-cross-group-cost",
                                  0);
        for (int e : profile.consistently_large)
            invariant(state.group_of[state.allocation().owner(e)] ==
                          static_cast<int>(state.groups.size()) - 1,
                      "initial-mplus-lowest-group", 0);
        std::set<int> no_history;
        assert_market_invariants(state, no_history, std::nullopt, 0);
    }
    return state;
}

struct SolveResult {
    Allocation allocation;
    MarketState state;
};

// Find a WEF1 and PO allocation for a bi-valued instance.
//
// Each round identifies the big spender b and least spender l. If b does not
// strongly envy l the equilibrium is pWEF1 and we are done. Otherwise an item
// moves from b to l: directly when l is unraised (raising b's group first if
// needed), or through an unraised intermediary holding one of l's initial
// items when l is already raised.
inline SolveResult solve_wef1_po(const Instance& inst) {
    auto profile = classify_bivalued(inst);
    if (!profile) throw NotBivaluedError("instance is not bi-valued");
    MarketState state = initial_equilibrium(inst, *profile);
    const int n = state.agent_count(), m = state.item_count();
    const int round_cap = n * m;

    std::set<int> past_least;
    std::optional<Rational> prev_least_spending;

    for (;;) {
        auto view = spender_view(state);
        const int b = view.big, l = view.least;
        if constexpr (kMarketInvariantChecks) {
            if (prev_least_spending)
                market_detail::invariant(view.spending[l] >= *prev_least_spending,
                                         "least-spending-monotone", state.rounds);
        }
        prev_least_spending = view.spending[l];
        if (view.p_hat[b] <= view.spending[l]) break;

        market_detail::invariant(state.rounds < round_cap, "termination", state.rounds);
        RoundRecord record;
        record.round = state.rounds;
        record.big = b;
        record.least = l;
        market_detail::invariant(state.group_of[b] != state.group_of[l], "distinct-groups",
                                 state.rounds);

        std::vector<Rational> spending_before;
        if constexpr (kMarketInvariantChecks) {
            spending_before = view.spending;
        }

        if (state.unraised[l]) {
            if (state.unraised[b]) {
                const int r = state.group_of[b];
                if constexpr (kMarketInvariantChecks) {
                    // b must sit in the lowest-indexed unraised group.
                    for (int g = 0; g < r; ++g)
                        market_detail::invariant(state.group_raised[g], "raise-prefix",
                                                 state.rounds);
                }
                for (int i : state.groups[r].members)
                    for (int e : state.bundles[i]) {
                        market_detail::invariant(state.prices[e] == 1, "raise-price-one",
                                                 state.rounds);
                        state.prices[e] *= state.k;
                    }
                for (int i : state.groups[r].members) {
                    state.unraised[i] = 0;
                    state.mpb_ratio[i] = Rational(1) / state.k;
                }
                state.group_raised[r] = 1;
                record.raised_group = r;
            }
            if constexpr (kMarketInvariantChecks) {
                const Rational alpha_l = state.recompute_alpha(l);
                for (int e : state.bundles[b])
                    market_detail::invariant(
                        state.market.cost(l, e) / state.prices[e] == alpha_l, "xb-in-mpb-l",
                        state.rounds);
            }
            const int e = state.bundles[b].front();
            market_detail::bundle_erase(state.bundles[b], e);
            market_detail::bundle_insert(state.bundles[l], e);
            record.transfers.push_back({e, b, l});
        } else {
            market_detail::invariant(!state.unraised[b], "b-raised-when-l-raised", state.rounds);
            int via = -1, e2 = -1;
            for (int i = 0; i < n && via == -1; ++i) {
                if (!state.unraised[i]) continue;
                for (int e : state.bundles[i])
                    if (market_detail::bundle_contains(state.initial_bundles[l], e)) {
                        via = i;
                        e2 = e;
                        break;
                    }
            }
            market_detail::invariant(via >= 0, "unraised-intermediary-exists", state.rounds);
            const Rational alpha_via = state.recompute_alpha(via);
            int e1 = -1;
            for (int e : state.bundles[b])
                if (state.market.cost(via, e) / state.prices[e] == alpha_via) {
                    e1 = e;
                    break;
                }
            market_detail::invariant(e1 >= 0, "xb-mpb-intermediary", state.rounds);
            market_detail::bundle_erase(state.bundles[b], e1);
            market_detail::bundle_insert(state.bundles[via], e1);
            market_detail::bundle_erase(state.bundles[via], e2);
            market_detail::bundle_insert(state.bundles[l], e2);
            record.transfers.push_back({e1, b, via});
            record.transfers.push_back({e2, via, l});
        }

        ++state.rounds;
        state.log.push_back(record);
        past_least.insert(l);
        if constexpr (kMarketInvariantChecks) {
            // Only b, l and just-raised agents may change weighted spending.
            for (int i = 0; i < n; ++i) {
                if (i == b || i == l) continue;
                if (record.raised_group >= 0 && state.group_of[i] == record.raised_group) continue;
                market_detail::invariant(state.spending(i) == spending_before[i],
                                         "spending-stability", state.rounds);
            }
            assert_market_invariants(state, past_least, prev_least_spending, state.rounds);
        }
    }

    if constexpr (kMarketInvariantChecks) {
        market_detail::invariant(state.rounds <= round_cap, "termination", state.rounds);
        market_detail::invariant(check_pwef1(state).passed(), "final-pwef1", state.rounds);
        market_detail::invariant(verify_equilibrium(state.market, state).ok, "final-equilibrium",
                                 state.rounds);
    }
    return {state.allocation(), std::move(state)};
}

}  // namespace fairdiv
