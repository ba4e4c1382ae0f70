#pragma once

#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

// Small dense exact-rational linear programming:
//   maximize c.x  subject to  A x <= b,  x >= 0.
// Two-phase tableau simplex with Bland's rule, so it terminates on degenerate
// problems and never rounds. Meant for desk-scale problems (tens of rows).
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Optimal;
    Rational value;
    std::vector<Rational> x;
};

namespace simplex_detail {

struct Tableau {
    int rows = 0, cols = 0;  // cols excludes the rhs cell
    std::vector<std::vector<Rational>> a;  // rows x (cols+1), rhs last
    std::vector<int> basis;                // basic column per row
    std::vector<Rational> rc;              // reduced-cost row, cols entries
    Rational value;                        // objective value of current basis
    std::vector<char> banned;              // columns excluded from entering

    void pivot(int prow, int pcol) {
        const Rational inv = Rational(1) / a[prow][pcol];
        for (auto& cell : a[prow]) cell *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == prow || a[r][pcol] == 0) continue;
            const Rational factor = a[r][pcol];
            for (int cidx = 0; cidx <= cols; ++cidx) a[r][cidx] -= factor * a[prow][cidx];
        }
        if (rc[pcol] != 0) {
            const Rational factor = rc[pcol];
            for (int cidx = 0; cidx < cols; ++cidx) rc[cidx] -= factor * a[prow][cidx];
            value += factor * a[prow][cols];
        }
        basis[prow] = pcol;
    }

    // Prices out `objective` (a coefficient per column) against the current
    // basis, rebuilding the reduced-cost row and objective value.
    void price_out(const std::vector<Rational>& objective) {
        rc = objective;
        value = 0;
        for (int r = 0; r < rows; ++r) {
            const Rational coeff = objective[basis[r]];
            if (coeff == 0) continue;
            for (int cidx = 0; cidx < cols; ++cidx) rc[cidx] -= coeff * a[r][cidx];
            value += coeff * a[r][cols];
        }
    }

    // Bland: entering = smallest improving column, leaving = min ratio with
    // smallest basic variable on ties. Returns false when optimal, throws
    // nothing; unboundedness is reported through the out-parameter.
    bool iterate(bool& unbounded) {
        int enter = -1;
        for (int cidx = 0; cidx < cols; ++cidx)
            if (!banned[cidx] && rc[cidx] > 0) {
                enter = cidx;
                break;
            }
        if (enter == -1) return false;
        int leave = -1;
        Rational best_ratio;
        for (int r = 0; r < rows; ++r) {
            if (a[r][enter] <= 0) continue;
            Rational ratio = a[r][cols] / a[r][enter];
            if (leave == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == -1) {
            unbounded = true;
            return false;
        }
        pivot(leave, enter);
        return true;
    }
};

}  // namespace simplex_detail

inline LpResult lp_maximize(const std::vector<Rational>& objective,
                            const std::vector<std::vector<Rational>>& constraints,
                            const std::vector<Rational>& rhs) {
    const int r = static_cast<int>(constraints.size());
    const int nv = static_cast<int>(objective.size());
    if (static_cast<int>(rhs.size()) != r)
        throw InvalidSpecError("lp: constraint/rhs size mismatch");

    int artificials = 0;
    for (int i = 0; i < r; ++i)
        if (rhs[i] < 0) ++artificials;

    simplex_detail::Tableau t;
    t.rows = r;
    t.cols = nv + r + artificials;
    t.a.assign(r, std::vector<Rational>(t.cols + 1, Rational(0)));
    t.basis.assign(r, -1);
    t.banned.assign(t.cols, 0);

    int next_artificial = nv + r;
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(constraints[i].size()) != nv)
            throw InvalidSpecError("lp: constraint width mismatch");
        const bool flip = rhs[i] < 0;
        for (int j = 0; j < nv; ++j) t.a[i][j] = flip ? -constraints[i][j] : constraints[i][j];
        t.a[i][nv + i] = flip ? -1 : 1;  // slack
        t.a[i][t.cols] = flip ? -rhs[i] : rhs[i];
        if (flip) {
            t.a[i][next_artificial] = 1;
            t.basis[i] = next_artificial++;
        } else {
            t.basis[i] = nv + i;
        }
    }

    if (artificials > 0) {
        std::vector<Rational> phase1(t.cols, Rational(0));
        for (int j = nv + r; j < t.cols; ++j) phase1[j] = -1;
        t.price_out(phase1);
        bool unbounded = false;
        while (t.iterate(unbounded)) {
        }
        if (t.value != 0) return {LpResult::Status::Infeasible, {}, {}};
        // Drive leftover artificials out of the basis; rows that cannot pivot
        // are redundant and get dropped.
        for (int i = static_cast<int>(t.basis.size()) - 1; i >= 0; --i) {
            if (t.basis[i] < nv + r) continue;
            int pcol = -1;
            for (int j = 0; j < nv + r && pcol == -1; ++j)
                if (t.a[i][j] != 0) pcol = j;
            if (pcol != -1) {
                t.pivot(i, pcol);
            } else {
                t.a.erase(t.a.begin() + i);
                t.basis.erase(t.basis.begin() + i);
                --t.rows;
            }
        }
        for (int j = nv + r; j < t.cols; ++j) t.banned[j] = 1;
    }

    std::vector<Rational> phase2(t.cols, Rational(0));
    for (int j = 0; j < nv; ++j) phase2[j] = objective[j];
    t.price_out(phase2);
    bool unbounded = false;
    while (t.iterate(unbounded)) {
    }
    if (unbounded) return {LpResult::Status::Unbounded, {}, {}};

    LpResult result;
    result.status = LpResult::Status::Optimal;
    result.value = t.value;
    result.x.assign(nv, Rational(0));
    for (int i = 0; i < t.rows; ++i)
        if (t.basis[i] < nv) result.x[t.basis[i]] = t.a[i][t.cols];
    return result;
}

}  // namespace fairdiv
