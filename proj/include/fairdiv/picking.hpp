#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class Direction { Forward, Reversed };

// A forward sequence sigma plus the end agents actually pick from. The
// reversed direction means agents pick in order sigma(m), ..., sigma(1).
struct PickingSequence {
    std::vector<int> order;  // forward sequence, length m
    Direction direction = Direction::Reversed;
};

// s_i(t): weighted number of appearances of agent i in the first t slots.
// values[t][i] = s_i(t); s_i(0) = 0 and exactly one agent grows per step,
// by 1/w_i.
struct SizeTrajectory {
    std::vector<std::vector<Rational>> values;  // (m+1) x n
    const Rational& at(int t, int agent) const { return values[t][agent]; }
};

inline SizeTrajectory size_trajectory(const std::vector<int>& order,
                                      const std::vector<Rational>& weights) {
    const int n = static_cast<int>(weights.size());
    const int m = static_cast<int>(order.size());
    SizeTrajectory traj;
    traj.values.assign(m + 1, std::vector<Rational>(n, Rational(0)));
    for (int t = 1; t <= m; ++t) {
        traj.values[t] = traj.values[t - 1];
        const int agent = order[t - 1];
        traj.values[t][agent] += Rational(1) / weights[agent];
    }
    return traj;
}

struct RwpsResult {
    PickingSequence sequence;
    SizeTrajectory sizes;
};

// Phase 1 of the reversed weighted picking sequence algorithm: round t picks
// the agent with minimum size s_i (lowest index on ties), then grows s_i by
// 1/w_i. The sequence is marked reversed, which is what phase 2 executes.
inline RwpsResult generate_rwps_sequence(const Instance& inst) {
    const int n = inst.agent_count(), m = inst.item_count();
    std::vector<Rational> size(n, Rational(0));
    RwpsResult result;
    result.sequence.direction = Direction::Reversed;
    result.sequence.order.reserve(m);
    result.sizes.values.assign(m + 1, std::vector<Rational>(n, Rational(0)));
    for (int t = 1; t <= m; ++t) {
        int pick = 0;
        for (int i = 1; i < n; ++i)
            if (size[i] < size[pick]) pick = i;
        size[pick] += Rational(1) / inst.weight(pick);
        result.sequence.order.push_back(pick);
        result.sizes.values[t] = size;
    }
    return result;
}

// The WEF(x,y) sequence for x+y >= 1: round t picks
// argmin_i { s_i + (1-x)/w_i }, lowest index on ties. This choice always
// satisfies s_i* + (1-x)/w_i* <= s_j + y/w_j, so the resulting reversed
// execution is WEF(x,y). At (x,y) = (1,0) it coincides with the RWPS sequence.
inline PickingSequence generate_wefxy_sequence(const Instance& inst, const Rational& x,
                                               const Rational& y) {
    if (x < 0 || x > 1 || y < 0 || y > 1)
        throw InfeasibleParametersError("wef(x,y) sequence requires x,y in [0,1]");
    if (x + y < 1)
        throw InfeasibleParametersError("wef(x,y) sequence requires x+y >= 1, got x=" +
                                        to_string(x) + ", y=" + to_string(y));
    const int n = inst.agent_count(), m = inst.item_count();
    std::vector<Rational> size(n, Rational(0));
    PickingSequence seq;
    seq.direction = Direction::Reversed;
    seq.order.reserve(m);
    const Rational shift_num = Rational(1) - x;
    for (int t = 1; t <= m; ++t) {
        int pick = 0;
        Rational best = size[0] + shift_num / inst.weight(0);
        for (int i = 1; i < n; ++i) {
            Rational key = size[i] + shift_num / inst.weight(i);
            if (key < best) {
                best = key;
                pick = i;
            }
        }
        size[pick] += Rational(1) / inst.weight(pick);
        seq.order.push_back(pick);
    }
    return seq;
}

struct SequenceConditionResult {
    bool holds = true;
    int t = -1, envious = -1, envied = -1;  // earliest violating triple
};

// The iff condition for a reversed picking sequence to produce WEF(x,y)
// allocations: s_i(t) - x/w_i <= s_j(t) + y/w_j for all t in 1..m and all
// ordered pairs.
inline SequenceConditionResult check_sequence_condition(const PickingSequence& seq,
                                                        const std::vector<Rational>& weights,
                                                        const Rational& x, const Rational& y) {
    const int n = static_cast<int>(weights.size());
    const int m = static_cast<int>(seq.order.size());
    SizeTrajectory traj = size_trajectory(seq.order, weights);
    for (int t = 1; t <= m; ++t)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (traj.at(t, i) - x / weights[i] > traj.at(t, j) + y / weights[j])
                    return {false, t, i, j};
            }
    return {};
}

// The instance exhibiting the necessity direction of the iff theorem: t items
// costing 1 to every agent followed by m-t items costing 0. A sequence whose
// condition fails at round t yields a WEF(x,y) violation when executed here.
inline Instance witness_instance(const PickingSequence& seq, const std::vector<Rational>& weights,
                                 int t) {
    const int m = static_cast<int>(seq.order.size());
    if (t < 1 || t > m) throw InvalidSpecError("witness round index out of range");
    std::vector<std::vector<Rational>> costs(weights.size(), std::vector<Rational>(m, Rational(0)));
    for (auto& row : costs)
        for (int e = 0; e < t; ++e) row[e] = 1;
    return Instance(weights, std::move(costs));
}

enum class PickObjective { MinCost, MaxValue };

// Phase 2: agents pick in sequence order (reversed first when direction is
// Reversed). Each picks the unallocated item minimizing (chores) or
// maximizing (goods) her own cost, lowest item index on ties.
inline Allocation execute_picking(const Instance& inst, const PickingSequence& seq,
                                  PickObjective objective = PickObjective::MinCost) {
    const int n = inst.agent_count(), m = inst.item_count();
    if (static_cast<int>(seq.order.size()) != m)
        throw DimensionMismatchError("picking sequence length does not match item count");
    std::vector<bool> taken(m, false);
    std::vector<int> owner(m, -1);
    for (int step = 0; step < m; ++step) {
        const int slot = seq.direction == Direction::Reversed ? m - 1 - step : step;
        const int agent = seq.order[slot];
        int pick = -1;
        for (int e = 0; e < m; ++e) {
            if (taken[e]) continue;
            if (pick == -1) {
                pick = e;
                continue;
            }
            const bool better = objective == PickObjective::MinCost
                                    ? inst.cost(agent, e) < inst.cost(agent, pick)
                                    : inst.cost(agent, e) > inst.cost(agent, pick);
            if (better) pick = e;
        }
        assert(pick >= 0);
        taken[pick] = true;
        owner[pick] = agent;
    }
    return Allocation::from_assignment(n, owner);
}

// The forward weighted picking sequence protocol for goods: same sequence as
// RWPS, executed forward with max-value picks. Satisfies goods-WEF1.
inline Allocation goods_weighted_protocol(const Instance& inst) {
    PickingSequence seq = generate_rwps_sequence(inst).sequence;
    seq.direction = Direction::Forward;
    return execute_picking(inst, seq, PickObjective::MaxValue);
}

}  // namespace fairdiv
