#pragma once

#include "lattice/classifier.hpp"
#include "lattice/coverings.hpp"
#include "lattice/quadruples.hpp"
#include "lattice/witness.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace lattice {

using json = nlohmann::json;

inline json to_json(LatticePoint p) { return json::array({p.alpha.value(), p.beta.value()}); }

template <class T>
json optional_json(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_same_v<T, LatticePoint>) return to_json(*v);
    else return json(*v);
}

inline json pattern_json(Pattern I) {
    return {{"mask", hex_mask(I)}, {"grid", render(I)}, {"n_i", I.size()}};
}

inline json quadruple_json(int index) {
    const auto& q = catalog_all().all.at(static_cast<std::size_t>(index));
    json pts = json::array();
    for (auto p : q.points()) pts.push_back(to_json(p));
    return {{"index", index}, {"mask", hex_mask(q.pattern())}, {"points", pts}};
}

inline json covering_json(const Covering& c) {
    json qs = json::array();
    for (std::size_t j = 0; j < c.quadruple_indices.size(); ++j) {
        auto q = quadruple_json(c.quadruple_indices[j]);
        q["weight"] = to_string(c.weights[j]);
        qs.push_back(std::move(q));
    }
    return {{"kind", "covering"},
            {"integer", c.cardinality.has_value()},
            {"multiplicity", to_string(c.multiplicity)},
            {"cardinality", optional_json(c.cardinality)},
            {"quadruples", qs}};
}

inline json certificate_json(const Certificate& cert) {
    if (auto* v = std::get_if<ViolatingPoint>(&cert))
        return {{"kind", "violating_point"}, {"point", to_json(v->point)}, {"cross_count", v->cross_count}};
    if (auto* q = std::get_if<QuadrupleFreeCertificate>(&cert))
        return {{"kind", "quadruple_free_point"}, {"point", to_json(q->point)}, {"delta", optional_json(q->delta)}};
    if (auto* c = std::get_if<Covering>(&cert)) return covering_json(*c);
    return {{"kind", "none"}};
}

inline std::string_view integer_status_name(IntegerSearch s) {
    switch (s) {
        case IntegerSearch::found: return "found";
        case IntegerSearch::budget_exceeded: return "budget_exceeded";
        default: return "none";
    }
}

inline json classification_json(const Classification& c) {
    const auto& f = c.flags;
    json spectral = nullptr;
    if (f.spectral) spectral = {{"ppt", f.spectral->ppt}, {"min_eigenvalue", f.spectral->margin}};
    return {{"pattern", pattern_json(c.pattern)},
            {"verdict", verdict_name(c.verdict)},
            {"certificate", certificate_json(c.certificate)},
            {"flags",
             {{"ppt", f.ppt},
              {"ppt2_point", optional_json(f.ppt2_point)},
              {"ppt3_point", optional_json(f.ppt3_point)},
              {"quadruple_free_point", optional_json(f.quadruple_free_point)},
              {"lp_feasible", f.lp_feasible},
              {"integer_covering", f.integer_covering},
              {"integer_search", integer_status_name(f.integer_status)},
              {"min_quadruples_through", f.min_quadruples_through},
              {"spectral", spectral}}}};
}

inline json witness_report_json(const WitnessReport& r) {
    return {{"lhs", to_string(r.lhs)},
            {"threshold", to_string(r.threshold)},
            {"margin", to_string(r.lhs - r.threshold)},
            {"sup_estimate", optional_json(r.sup_estimate)},
            {"verdict", r.verdict == WitnessVerdict::entanglement_certified ? "entanglement_certified" : "inconclusive"}};
}

inline json coefficients_json(const Coefficients& c) {
    json a = json::array();
    for (double x : c) a.push_back(x);
    return a;
}

inline json census_json(const CensusReport& r) {
    json totals, orbit_totals;
    for (const auto& [v, n] : r.verdict_totals) totals[std::string(verdict_name(v))] = n;
    for (const auto& [v, n] : r.orbit_totals) orbit_totals[std::string(verdict_name(v))] = n;
    auto masks = [](const std::vector<std::uint16_t>& v) {
        json a = json::array();
        for (auto m : v) a.push_back(hex_mask(Pattern(m)));
        return a;
    };
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"canonical_mask", hex_mask(Pattern(row.canonical_mask))},
                        {"n_i", row.n_i},
                        {"verdict", verdict_name(row.verdict)},
                        {"ppt", row.ppt},
                        {"ppt2", row.ppt2},
                        {"ppt3", row.ppt3},
                        {"quadruple_free", row.quadruple_free},
                        {"lp_feasible", row.lp_feasible},
                        {"integer_covering", row.integer_covering},
                        {"orbit_size", row.orbit_size},
                        {"certificate", row.certificate}});
    return {{"mode", r.mode},
            {"total", r.total},
            {"verdict_totals", totals},
            {"orbit_count", r.orbit_count},
            {"orbit_totals", orbit_totals},
            {"spectral", {{"checked", r.spectral_checked}, {"agree", r.spectral_agreement},
                          {"disagreements", masks(r.spectral_disagreements)}}},
            {"final_equivalence", {{"ppt_patterns", r.ppt_patterns}, {"holds", r.equivalence_holds},
                                   {"counterexamples", masks(r.equivalence_counterexamples)}}},
            {"separable_not_ppt", r.separable_not_ppt},
            {"orbit_invariance", {{"checked", r.orbit_checked}, {"violations", r.orbit_invariance_violations}}},
            {"lp_without_integer_covering", r.lp_without_integer},
            {"integer_budget_exceeded", r.integer_budget_exceeded},
            {"ppt2_without_ppt3", r.ppt2_without_ppt3},
            {"rows", rows}};
}

inline void write_census_csv(std::ostream& os, const CensusReport& r) {
    os << "canonical_mask,N_I,verdict,ppt,ppt2,ppt3,quadruple_free,lp_feasible,integer_covering,orbit_size,certificate\n";
    auto b = [](bool x) { return x ? "1" : "0"; };
    for (const auto& row : r.rows)
        os << hex_mask(Pattern(row.canonical_mask)) << ',' << row.n_i << ',' << verdict_name(row.verdict) << ','
           << b(row.ppt) << ',' << b(row.ppt2) << ',' << b(row.ppt3) << ',' << b(row.quadruple_free) << ','
           << b(row.lp_feasible) << ',' << b(row.integer_covering) << ',' << row.orbit_size << ",\""
           << row.certificate << "\"\n";
}

}  // namespace lattice
