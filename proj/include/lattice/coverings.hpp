#pragma once

#include "lattice/pattern.hpp"
#include "lattice/quadruples.hpp"
#include "lattice/simplex.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lattice {

/// Weighted quadruples inside I. weights are the convex coefficients c_j of
/// rho_I = sum_j c_j rho_{Q_j}. For an integer uniform covering the weights
/// are all 1/N_Q and multiplicity is the common point count M.
struct Covering {
    std::vector<int> quadruple_indices;
    std::vector<Rational> weights;
    Rational multiplicity{1};
    std::optional<int> cardinality;
};

enum class IntegerSearch { found, none, budget_exceeded };

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Covering> solution;          // from the rational feasibility problem
    std::optional<Covering> integer_covering;  // smallest multiplicity found, if any
    IntegerSearch integer_status = IntegerSearch::none;
};

inline bool covering_relation_check(long n_i, long m, long n_q) {
    if (n_i <= 0 || m <= 0 || n_q <= 0) return false;
    return 4 * n_q == m * n_i;
}

/// Exact check of sum_{Q ni p} c_Q / 4 = chi_I(p) / N_I at every point, plus
/// positivity, normalization and containment.
inline bool verify_decomposition(Pattern I, const Covering& c) {
    if (I.empty() || c.quadruple_indices.empty() || c.quadruple_indices.size() != c.weights.size()) return false;
    const auto& cat = catalog_all();
    std::vector<Rational> load(16, Rational(0));
    Rational total(0);
    for (std::size_t j = 0; j < c.quadruple_indices.size(); ++j) {
        const int q = c.quadruple_indices[j];
        if (q < 0 || static_cast<std::size_t>(q) >= cat.all.size()) return false;
        const auto& w = c.weights[j];
        if (w <= 0) return false;
        if ((cat.all[static_cast<std::size_t>(q)].mask() & ~I.mask()) != 0) return false;
        total += w;
        for (auto p : cat.all[static_cast<std::size_t>(q)].points()) load[static_cast<std::size_t>(p.bit())] += w / 4;
    }
    if (total != 1) return false;
    const Rational target = make_rational(1, I.size());
    for (int b = 0; b < 16; ++b)
        if (load[static_cast<std::size_t>(b)] != (I.contains_bit(b) ? target : Rational(0))) return false;
    return true;
}

namespace detail {

/// Sets of distinct quadruples covering every point of I exactly m times,
/// depth-first with include/exclude branching on the most constrained point.
class ExactMultiCover {
public:
    ExactMultiCover(Pattern I, std::vector<std::uint16_t> quads, long budget)
        : points_(I.points()), quads_(std::move(quads)), budget_(budget) {}

    std::optional<std::vector<int>> solve(int m, bool& exhausted_budget) {
        deficit_.assign(16, 0);
        for (auto p : points_) deficit_[static_cast<std::size_t>(p.bit())] = m;
        state_.assign(quads_.size(), 0);
        chosen_.clear();
        nodes_ = 0;
        over_budget_ = false;
        const bool ok = search();
        exhausted_budget = over_budget_;
        if (!ok) return std::nullopt;
        return chosen_;
    }

private:
    bool fits(std::size_t q) const {
        for (int b = 0; b < 16; ++b)
            if (((quads_[q] >> b) & 1U) && deficit_[static_cast<std::size_t>(b)] == 0) return false;
        return true;
    }

    bool search() {
        if (++nodes_ > budget_) {
            over_budget_ = true;
            return false;
        }
        int pick = -1;
        std::size_t pick_options = 0;
        std::vector<std::size_t> options;
        for (auto p : points_) {
            const int d = deficit_[static_cast<std::size_t>(p.bit())];
            if (d == 0) continue;
            std::vector<std::size_t> opts;
            for (std::size_t q = 0; q < quads_.size(); ++q)
                if (state_[q] == 0 && ((quads_[q] >> p.bit()) & 1U) && fits(q)) opts.push_back(q);
            if (opts.size() < static_cast<std::size_t>(d)) return false;
            if (pick < 0 || opts.size() < pick_options) {
                pick = p.bit();
                pick_options = opts.size();
                options = std::move(opts);
            }
        }
        if (pick < 0) return true;

        const std::size_t q = options.front();
        state_[q] = 1;
        for (int b = 0; b < 16; ++b)
            if ((quads_[q] >> b) & 1U) --deficit_[static_cast<std::size_t>(b)];
        chosen_.push_back(static_cast<int>(q));
        if (search()) return true;
        chosen_.pop_back();
        for (int b = 0; b < 16; ++b)
            if ((quads_[q] >> b) & 1U) ++deficit_[static_cast<std::size_t>(b)];
        if (over_budget_) {
            state_[q] = 0;
            return false;
        }
        state_[q] = 2;
        const bool ok = search();
        state_[q] = 0;
        return ok;
    }

    std::vector<LatticePoint> points_;
    std::vector<std::uint16_t> quads_;
    long budget_;
    std::vector<int> deficit_;
    std::vector<int> state_;  // 0 open, 1 taken, 2 excluded
    std::vector<int> chosen_;
    long nodes_ = 0;
    bool over_budget_ = false;
};

}  // namespace detail

inline constexpr long kIntegerSearchBudget = 200000;

/// Smallest-multiplicity set of distinct quadruples inside I hitting every
/// point of I equally often. Multiplicities m with 4 | m N_I are tried in
/// increasing order up to the smallest through-count.
inline std::optional<Covering> find_integer_covering(Pattern I, IntegerSearch* status = nullptr,
                                                     long budget = kIntegerSearchBudget) {
    const auto inside = quadruples_inside(I);
    const auto& cat = catalog_all();
    auto set_status = [&](IntegerSearch s) {
        if (status) *status = s;
    };
    if (inside.empty()) {
        set_status(IntegerSearch::none);
        return std::nullopt;
    }
    int max_m = 15;
    for (auto p : I.points()) max_m = std::min(max_m, quadruples_through_inside(I, p));
    std::vector<std::uint16_t> masks;
    for (int q : inside) masks.push_back(cat.all[static_cast<std::size_t>(q)].mask());
    detail::ExactMultiCover solver(I, masks, budget);
    bool any_budget_hit = false;
    const int n = I.size();
    for (int m = 1; m <= max_m; ++m) {
        if ((m * n) % 4 != 0) continue;
        bool hit = false;
        auto sel = solver.solve(m, hit);
        any_budget_hit = any_budget_hit || hit;
        if (!sel) continue;
        Covering c;
        const int nq = static_cast<int>(sel->size());
        for (int local : *sel) c.quadruple_indices.push_back(inside[static_cast<std::size_t>(local)]);
        std::sort(c.quadruple_indices.begin(), c.quadruple_indices.end());
        c.weights.assign(c.quadruple_indices.size(), make_rational(1, nq));
        c.multiplicity = Rational(m);
        c.cardinality = nq;
        set_status(IntegerSearch::found);
        return c;
    }
    set_status(any_budget_hit ? IntegerSearch::budget_exceeded : IntegerSearch::none);
    return std::nullopt;
}

/// Rational feasibility of x_Q >= 0, sum_{Q ni p} x_Q = 1 (p in I) over the
/// quadruples inside I; weights c_Q = 4 x_Q / N_I. Also reports the integer
/// uniform covering when one exists.
inline FeasibilityResult find_uniform_covering(Pattern I, bool search_integer = true) {
    if (I.size() < 4) throw std::invalid_argument("pattern has fewer than 4 points");
    FeasibilityResult out;
    const auto inside = quadruples_inside(I);
    if (inside.empty()) return out;

    const auto& cat = catalog_all();
    const auto pts = I.points();
    std::vector<ExactFeasibility::Row> a(pts.size(), ExactFeasibility::Row(inside.size(), Rational(0)));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < inside.size(); ++j)
            if (cat.all[static_cast<std::size_t>(inside[j])].contains(pts[i])) a[i][j] = 1;
    ExactFeasibility lp(std::move(a), ExactFeasibility::Row(pts.size(), Rational(1)));
    const auto x = lp.solve();
    if (!x) return out;

    out.feasible = true;
    Covering c;
    const Rational scale = make_rational(4, I.size());
    for (std::size_t j = 0; j < inside.size(); ++j)
        if ((*x)[j] != 0) {
            c.quadruple_indices.push_back(inside[j]);
            c.weights.push_back((*x)[j] * scale);
        }
    out.solution = std::move(c);
    if (search_integer) out.integer_covering = find_integer_covering(I, &out.integer_status);
    return out;
}

}  // namespace lattice
