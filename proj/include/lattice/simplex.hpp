#pragma once

#include "lattice/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lattice {

/// Finds x >= 0 with A x = b in exact arithmetic, or reports that none
/// exists. Phase-1 simplex on the artificial-variable problem, Bland's rule
/// for both entering and leaving choices so it cannot cycle. The returned
/// point is the basic feasible solution the method stops at.
class ExactFeasibility {
public:
    using Row = std::vector<Rational>;

    ExactFeasibility(std::vector<Row> a, Row b) : a_(std::move(a)), b_(std::move(b)) {
        if (a_.size() != b_.size()) throw std::invalid_argument("row count mismatch");
        n_ = a_.empty() ? 0 : a_.front().size();
        for (const auto& r : a_)
            if (r.size() != n_) throw std::invalid_argument("ragged constraint matrix");
    }

    std::optional<Row> solve() {
        const std::size_t m = a_.size();
        const std::size_t cols = n_ + m;  // originals then artificials
        // tableau rows: [coeffs..., rhs]
        std::vector<Row> t(m, Row(cols + 1, Rational(0)));
        basis_.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            const bool flip = b_[i] < 0;
            for (std::size_t j = 0; j < n_; ++j) t[i][j] = flip ? Rational(-a_[i][j]) : a_[i][j];
            t[i][n_ + i] = Rational(1);
            t[i][cols] = flip ? Rational(-b_[i]) : b_[i];
            basis_[i] = n_ + i;
        }
        // objective: minimize sum of artificials; reduced costs of originals
        // are minus the column sums
        Row cost(cols + 1, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j <= cols; ++j)
                if (j < n_ || j == cols) cost[j] -= t[i][j];

        pivots_ = 0;
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j)
                if (cost[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == cols) break;

            std::size_t leave = m;
            Rational best_ratio;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (leave == m) throw std::logic_error("phase-1 problem cannot be unbounded");
            pivot(t, cost, leave, enter);
            ++pivots_;
        }
        if (cost[cols] != 0) return std::nullopt;  // -(sum of artificials) at optimum

        Row x(n_, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if (basis_[i] < n_) x[basis_[i]] = t[i][cols];
        return x;
    }

    std::size_t pivots() const { return pivots_; }

private:
    void pivot(std::vector<Row>& t, Row& cost, std::size_t r, std::size_t c) {
        basis_[r] = c;
        Row& pr = t[r];
        const Rational inv = Rational(1) / pr[c];
        for (auto& v : pr)
            if (v != 0) v *= inv;
        auto eliminate = [&](Row& row) {
            if (row[c] == 0) return;
            const Rational f = row[c];
            for (std::size_t j = 0; j < row.size(); ++j)
                if (pr[j] != 0) row[j] -= f * pr[j];
        };
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != r) eliminate(t[i]);
        eliminate(cost);
    }

    std::vector<Row> a_;
    Row b_;
    std::size_t n_ = 0;
    std::vector<std::size_t> basis_;
    std::size_t pivots_ = 0;
};

}  // namespace lattice
