#pragma once

#include "lattice/coverings.hpp"
#include "lattice/pattern.hpp"
#include "lattice/quadruples.hpp"
#include "lattice/state.hpp"
#include "lattice/symmetry.hpp"
#include "lattice/witness.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

namespace lattice {

enum class Verdict { npt_entangled, ppt_entangled, separable, undecided };

inline constexpr std::array<Verdict, 4> kVerdicts{Verdict::npt_entangled, Verdict::ppt_entangled, Verdict::separable,
                                                  Verdict::undecided};

inline std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::npt_entangled: return "NPT_ENTANGLED";
        case Verdict::ppt_entangled: return "PPT_ENTANGLED";
        case Verdict::separable: return "SEPARABLE";
        default: return "UNDECIDED";
    }
}

struct ViolatingPoint {
    LatticePoint point;
    int cross_count = 0;
};

struct QuadrupleFreeCertificate {
    LatticePoint point;
    std::optional<double> delta;
};

using Certificate = std::variant<std::monostate, ViolatingPoint, QuadrupleFreeCertificate, Covering>;

struct ClassificationFlags {
    bool ppt = false;
    std::optional<LatticePoint> ppt2_point;
    std::optional<LatticePoint> ppt3_point;
    std::optional<LatticePoint> quadruple_free_point;
    bool lp_feasible = false;
    bool integer_covering = false;
    IntegerSearch integer_status = IntegerSearch::none;
    int min_quadruples_through = 0;  // over points of I
    std::optional<SpectralPpt> spectral;
};

struct Classification {
    Pattern pattern;
    Verdict verdict = Verdict::undecided;
    Certificate certificate;
    ClassificationFlags flags;
};

struct ClassifyOptions {
    bool spectral = false;
    bool integer_search = true;
    bool delta_estimate = false;
    DeltaOptions delta{};
};

/// NPT if the combinatorial PPT test fails, PPT-entangled if some point of I
/// has no quadruple inside I, separable if the exact covering problem is
/// feasible, undecided otherwise. Verdicts use exact arithmetic only; the
/// spectral check is an optional side computation.
inline Classification classify(Pattern I, const ClassifyOptions& opt = {}) {
    if (I.empty()) throw std::invalid_argument("empty pattern");
    Classification c;
    c.pattern = I;
    auto& f = c.flags;

    const auto pc = ppt_combinatorial(I);
    f.ppt = pc.ppt;
    f.ppt2_point = prop_ppt2_point(I);
    f.ppt3_point = prop_ppt3_point(I);
    f.quadruple_free_point = quadruple_free_point(I);
    f.min_quadruples_through = 15;
    for (auto p : I.points()) f.min_quadruples_through = std::min(f.min_quadruples_through, quadruples_through_inside(I, p));
    if (opt.spectral) f.spectral = ppt_spectral(lattice_state(I));

    std::optional<FeasibilityResult> cov;
    // a point with no quadruple inside I already makes the covering problem infeasible
    if (I.size() >= 4 && !f.quadruple_free_point) {
        cov = find_uniform_covering(I, opt.integer_search);
        f.lp_feasible = cov->feasible;
        f.integer_covering = cov->integer_covering.has_value();
        f.integer_status = cov->integer_status;
    }

    if (!pc.ppt) {
        c.verdict = Verdict::npt_entangled;
        c.certificate = ViolatingPoint{*pc.violating, cross_count(profile(I), I, *pc.violating)};
    } else if (f.quadruple_free_point) {
        c.verdict = Verdict::ppt_entangled;
        QuadrupleFreeCertificate q{*f.quadruple_free_point, std::nullopt};
        if (opt.delta_estimate) q.delta = delta_max_estimate(I, q.point, opt.delta);
        c.certificate = q;
    } else if (cov && cov->feasible) {
        c.verdict = Verdict::separable;
        const Covering& chosen = cov->integer_covering ? *cov->integer_covering : *cov->solution;
        if (!verify_decomposition(I, chosen)) throw std::logic_error("covering certificate failed verification");
        c.certificate = chosen;
    } else {
        c.verdict = Verdict::undecided;
    }
    return c;
}

struct CensusOptions {
    bool orbits = false;
    unsigned jobs = 1;
    bool spectral = true;
    bool integer_search = true;
};

struct CensusRow {
    std::uint16_t canonical_mask = 0;
    int n_i = 0;
    Verdict verdict = Verdict::undecided;
    bool ppt = false;
    bool ppt2 = false;
    bool ppt3 = false;
    bool quadruple_free = false;
    bool lp_feasible = false;
    bool integer_covering = false;
    int orbit_size = 0;
    std::string certificate;
};

struct CensusReport {
    std::string mode;  // "raw" or "orbits"
    long total = 0;
    std::map<Verdict, long> verdict_totals;
    std::map<Verdict, long> orbit_totals;
    long orbit_count = 0;

    long spectral_checked = 0;
    long spectral_agreement = 0;
    std::vector<std::uint16_t> spectral_disagreements;

    long ppt_patterns = 0;
    long equivalence_holds = 0;
    std::vector<std::uint16_t> equivalence_counterexamples;

    long separable_not_ppt = 0;
    long orbit_checked = 0;
    long orbit_invariance_violations = 0;
    long lp_without_integer = 0;
    long integer_budget_exceeded = 0;
    long ppt2_without_ppt3 = 0;

    std::vector<CensusRow> rows;  // one per canonical orbit, by canonical mask

    bool equivalence_ok() const { return equivalence_counterexamples.empty() && equivalence_holds == ppt_patterns; }
};

inline std::string certificate_summary(const Classification& c) {
    if (auto* v = std::get_if<ViolatingPoint>(&c.certificate)) return "violating " + v->point.str();
    if (auto* q = std::get_if<QuadrupleFreeCertificate>(&c.certificate)) return "quadruple-free " + q->point.str();
    if (auto* cov = std::get_if<Covering>(&c.certificate)) {
        std::string s = "covering " + std::to_string(cov->quadruple_indices.size()) + " quadruples";
        if (cov->cardinality) s += " M=" + to_string(cov->multiplicity);
        return s;
    }
    return "none";
}

namespace detail {

struct CensusEntry {
    Verdict verdict = Verdict::undecided;
    bool ppt = false, ppt2 = false, ppt3 = false, qfree = false, lp = false, integer = false;
    bool budget = false;
    bool spectral_done = false, spectral_ppt = false;
    std::string certificate;
};

inline CensusEntry census_entry(std::uint16_t mask, const CensusOptions& opt) {
    ClassifyOptions co;
    co.spectral = opt.spectral;
    co.integer_search = opt.integer_search;
    const auto c = classify(Pattern(mask), co);
    CensusEntry e;
    e.verdict = c.verdict;
    e.ppt = c.flags.ppt;
    e.ppt2 = c.flags.ppt2_point.has_value();
    e.ppt3 = c.flags.ppt3_point.has_value();
    e.qfree = c.flags.quadruple_free_point.has_value();
    e.lp = c.flags.lp_feasible;
    e.integer = c.flags.integer_covering;
    e.budget = c.flags.integer_status == IntegerSearch::budget_exceeded;
    if (c.flags.spectral) {
        e.spectral_done = true;
        e.spectral_ppt = c.flags.spectral->ppt;
    }
    e.certificate = certificate_summary(c);
    return e;
}

inline void run_parallel(const std::vector<std::uint16_t>& masks, std::vector<CensusEntry>& out,
                         const CensusOptions& opt) {
    out.assign(masks.size(), {});
    const unsigned jobs = std::max(1U, opt.jobs);
    // the catalog and group are built before threads start
    (void)catalog_all();
    (void)SymmetryGroup::instance();
    auto work = [&](unsigned w) {
        for (std::size_t i = w; i < masks.size(); i += jobs) out[i] = census_entry(masks[i], opt);
    };
    if (jobs == 1) {
        work(0);
        return;
    }
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
}

}  // namespace detail

/// Classifies every nonempty pattern (raw mode) or one representative per
/// symmetry orbit weighted by orbit size (orbit mode).
inline CensusReport census(const CensusOptions& opt = {}) {
    const auto& group = SymmetryGroup::instance();
    std::vector<std::uint16_t> canon(65536);
    std::map<std::uint16_t, int> orbit_size;
    for (std::uint32_t m = 1; m < 65536; ++m) {
        canon[m] = group.canonical_form(Pattern(static_cast<std::uint16_t>(m))).mask();
        ++orbit_size[canon[m]];
    }

    std::vector<std::uint16_t> masks;
    if (opt.orbits)
        for (const auto& [m, n] : orbit_size) masks.push_back(m);
    else
        for (std::uint32_t m = 1; m < 65536; ++m) masks.push_back(static_cast<std::uint16_t>(m));

    std::vector<detail::CensusEntry> entries;
    detail::run_parallel(masks, entries, opt);

    CensusReport r;
    r.mode = opt.orbits ? "orbits" : "raw";
    for (auto v : kVerdicts) {
        r.verdict_totals[v] = 0;
        r.orbit_totals[v] = 0;
    }
    std::vector<int> index_of(65536, -1);
    for (std::size_t i = 0; i < masks.size(); ++i) index_of[masks[i]] = static_cast<int>(i);

    for (std::size_t i = 0; i < masks.size(); ++i) {
        const auto& e = entries[i];
        const long w = opt.orbits ? orbit_size[masks[i]] : 1;
        r.total += w;
        r.verdict_totals[e.verdict] += w;
        if (e.spectral_done) {
            r.spectral_checked += w;
            if (e.spectral_ppt == e.ppt) r.spectral_agreement += w;
            else r.spectral_disagreements.push_back(masks[i]);
        }
        if (e.ppt) {
            r.ppt_patterns += w;
            if ((e.ppt2 || e.ppt3) == e.qfree) r.equivalence_holds += w;
            else r.equivalence_counterexamples.push_back(masks[i]);
            if (e.ppt2 && !e.ppt3) r.ppt2_without_ppt3 += w;
        }
        if (e.verdict == Verdict::separable && !e.ppt) r.separable_not_ppt += w;
        if (e.lp && !e.integer) r.lp_without_integer += w;
        if (e.budget) r.integer_budget_exceeded += w;
        if (!opt.orbits) {
            ++r.orbit_checked;
            if (entries[static_cast<std::size_t>(index_of[canon[masks[i]]])].verdict != e.verdict)
                ++r.orbit_invariance_violations;
        }
    }

    for (const auto& [m, n] : orbit_size) {
        const auto& e = entries[static_cast<std::size_t>(index_of[m])];
        ++r.orbit_count;
        ++r.orbit_totals[e.verdict];
        r.rows.push_back({m, Pattern(m).size(), e.verdict, e.ppt, e.ppt2, e.ppt3, e.qfree, e.lp, e.integer, n,
                          e.certificate});
    }
    return r;
}

/// Final-equivalence check restricted to a list of patterns: over the PPT
/// ones, (PPT2 or PPT3 hit) iff a quadruple-free point exists. NPT patterns
/// are skipped; returns nullopt when none of the inputs is PPT.
inline std::optional<bool> equivalence_check(const std::vector<Pattern>& patterns) {
    std::optional<bool> result;
    for (auto I : patterns) {
        if (!ppt_combinatorial(I).ppt) continue;
        const bool lhs = prop_ppt2_point(I) || prop_ppt3_point(I);
        const bool rhs = quadruple_free_point(I).has_value();
        result = result.value_or(true) && (lhs == rhs);
    }
    return result;
}

}  // namespace lattice
