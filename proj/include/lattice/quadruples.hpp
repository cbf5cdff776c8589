#pragma once

#include "lattice/jacobi.hpp"
#include "lattice/pattern.hpp"
#include "lattice/pauli.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lattice {

/// Four lattice points sorted by bit index.
class Quadruple {
public:
    explicit Quadruple(std::array<LatticePoint, 4> pts) : points_(pts) {
        std::sort(points_.begin(), points_.end(),
                  [](LatticePoint a, LatticePoint b) { return a.bit() < b.bit(); });
        for (int i = 0; i < 3; ++i)
            if (points_[static_cast<std::size_t>(i)] == points_[static_cast<std::size_t>(i + 1)])
                throw std::invalid_argument("quadruple has duplicate points");
    }

    const std::array<LatticePoint, 4>& points() const { return points_; }
    std::uint16_t mask() const {
        std::uint16_t m = 0;
        for (auto p : points_) m |= static_cast<std::uint16_t>(1U << p.bit());
        return m;
    }
    Pattern pattern() const { return Pattern(mask()); }
    bool contains(LatticePoint p) const { return (mask() >> p.bit()) & 1U; }
    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + points_[i].str();
        return s + "}";
    }
    friend bool operator==(const Quadruple& a, const Quadruple& b) { return a.points_ == b.points_; }

private:
    std::array<LatticePoint, 4> points_;
};

inline LatticePoint lp(int alpha, int beta) { return {PauliIndex(alpha), PauliIndex(beta)}; }

/// The 15 special quadruples through (0,0).
inline const std::vector<Quadruple>& q00_catalog() {
    static const std::vector<Quadruple> catalog = [] {
        const int triples[15][3][2] = {
            {{0, 1}, {1, 0}, {1, 1}}, {{0, 2}, {2, 0}, {2, 2}}, {{0, 3}, {3, 0}, {3, 3}},
            {{1, 1}, {2, 2}, {3, 3}}, {{1, 2}, {2, 3}, {3, 1}}, {{0, 1}, {2, 1}, {2, 0}},
            {{0, 2}, {1, 2}, {1, 0}}, {{0, 3}, {1, 3}, {1, 0}}, {{1, 1}, {2, 3}, {3, 2}},
            {{1, 3}, {2, 2}, {3, 1}}, {{0, 1}, {3, 1}, {3, 0}}, {{0, 2}, {3, 2}, {3, 0}},
            {{0, 3}, {2, 3}, {2, 0}}, {{1, 2}, {2, 1}, {3, 3}}, {{1, 3}, {2, 1}, {3, 2}},
        };
        std::vector<Quadruple> out;
        for (const auto& t : triples)
            out.emplace_back(std::array<LatticePoint, 4>{lp(0, 0), lp(t[0][0], t[0][1]), lp(t[1][0], t[1][1]),
                                                         lp(t[2][0], t[2][1])});
        return out;
    }();
    return catalog;
}

namespace detail {

inline std::array<LatticePoint, 4> distinct_points(const std::array<LatticePoint, 4>& pts) {
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (pts[i] == pts[j]) throw std::invalid_argument("is_special: duplicate points");
    return pts;
}

inline std::uint16_t translated_mask(const std::array<LatticePoint, 4>& pts, LatticePoint t) {
    std::uint16_t m = 0;
    for (auto p : pts) m |= static_cast<std::uint16_t>(1U << tau(t, p).bit());
    return m;
}

}  // namespace detail

/// Route 1: translate the first point to the origin and look the set up in
/// the (0,0) catalog.
inline bool is_special_by_catalog(const std::array<LatticePoint, 4>& pts) {
    const auto m = detail::translated_mask(detail::distinct_points(pts), pts[0]);
    for (const auto& q : q00_catalog())
        if (q.mask() == m) return true;
    return false;
}

/// Route 2: after the same translation the four strings pairwise commute.
inline bool is_special_by_commutation(const std::array<LatticePoint, 4>& pts) {
    detail::distinct_points(pts);
    std::array<LatticePoint, 4> t;
    for (std::size_t i = 0; i < 4; ++i) t[i] = tau(pts[0], pts[i]);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (!commutes(t[i], t[j])) return false;
    return true;
}

inline bool is_special(const std::array<LatticePoint, 4>& pts) {
    const bool a = is_special_by_catalog(pts);
    if (a != is_special_by_commutation(pts)) throw std::logic_error("special-quadruple routes disagree");
    return a;
}

/// All 60 special quadruples plus per-point incidence. Quadruples are ordered
/// by mask value; everything else refers to them by index.
struct QuadrupleCatalog {
    std::vector<Quadruple> all;
    std::array<std::vector<int>, 16> through;  // by point bit

    std::optional<int> index_of(std::uint16_t mask) const {
        auto it = std::lower_bound(all.begin(), all.end(), mask,
                                   [](const Quadruple& q, std::uint16_t m) { return q.mask() < m; });
        if (it != all.end() && it->mask() == mask) return static_cast<int>(it - all.begin());
        return std::nullopt;
    }
};

inline const QuadrupleCatalog& catalog_all() {
    static const QuadrupleCatalog cat = [] {
        QuadrupleCatalog c;
        std::vector<std::uint16_t> masks;
        for (int tb = 0; tb < 16; ++tb) {
            const auto t = LatticePoint::from_bit(tb);
            for (const auto& q : q00_catalog()) masks.push_back(detail::translated_mask(q.points(), t));
        }
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        for (auto m : masks) {
            const auto pts = Pattern(m).points();
            c.all.emplace_back(std::array<LatticePoint, 4>{pts[0], pts[1], pts[2], pts[3]});
        }
        for (std::size_t i = 0; i < c.all.size(); ++i)
            for (auto p : c.all[i].points()) c.through[static_cast<std::size_t>(p.bit())].push_back(static_cast<int>(i));
        return c;
    }();
    return cat;
}

/// Catalog indices of quadruples contained in I.
inline std::vector<int> quadruples_inside(Pattern I) {
    const auto& cat = catalog_all();
    std::vector<int> out;
    for (std::size_t i = 0; i < cat.all.size(); ++i)
        if ((cat.all[i].mask() & ~I.mask()) == 0) out.push_back(static_cast<int>(i));
    return out;
}

inline int quadruples_through_inside(Pattern I, LatticePoint p) {
    int n = 0;
    for (int q : catalog_all().through[static_cast<std::size_t>(p.bit())])
        if ((catalog_all().all[static_cast<std::size_t>(q)].mask() & ~I.mask()) == 0) ++n;
    return n;
}

/// First point of I (by bit) through which no special quadruple lies in I.
inline std::optional<LatticePoint> quadruple_free_point(Pattern I) {
    for (auto p : I.points())
        if (quadruples_through_inside(I, p) == 0) return p;
    return std::nullopt;
}

/// <phi| sigma_p |psi> for 4-dimensional psi, phi.
inline std::complex<double> overlap(LatticePoint p, const ComplexVector& phi, const ComplexVector& psi) {
    return dot(phi, dense<std::complex<double>>(p.string()) * psi);
}

struct SaturatingPair {
    ComplexVector psi;
    ComplexVector phi;
};

/// Vectors with (1/4) sum_{p in Q} |<phi|sigma_p|psi>|^2 = 1. psi is the joint
/// +1 eigenvector of two generators of the translated quadruple, phi = sigma_t psi.
inline SaturatingPair saturating_vectors(const Quadruple& q) {
    if (!is_special(q.points())) throw std::invalid_argument("quadruple is not special");
    const LatticePoint t = q.points()[0];
    std::vector<LatticePoint> gens;
    for (auto p : q.points()) {
        const auto s = tau(t, p);
        if (s.bit() != 0) gens.push_back(s);
    }
    const auto id = FloatMatrix::identity(4);
    FloatMatrix proj = id;
    for (std::size_t g = 0; g < 2; ++g) {
        FloatMatrix half = id + dense<std::complex<double>>(gens[g].string());
        half *= std::complex<double>(0.5);
        proj = proj * half;
    }
    ComplexVector best;
    double best_norm = -1;
    for (std::size_t c = 0; c < 4; ++c) {
        ComplexVector e(4);
        e[c] = 1;
        auto v = proj * e;
        if (const double nv = norm(v); nv > best_norm + 1e-12) {
            best_norm = nv;
            best = std::move(v);
        }
    }
    for (auto& x : best) x /= best_norm;
    return {best, dense<std::complex<double>>(t.string()) * best};
}

/// The six 5-sets {(0,i),(0,j),(1,k),(2,k),(3,k)} and their transposes,
/// {i,j,k} = {1,2,3}, as masks.
inline const std::array<std::uint16_t, 6>& k_template_masks() {
    static const std::array<std::uint16_t, 6> masks = [] {
        std::array<std::uint16_t, 6> out{};
        for (int k = 1; k <= 3; ++k) {
            std::vector<LatticePoint> k1, k2;
            for (int x = 1; x <= 3; ++x) {
                if (x != k) {
                    k1.push_back(lp(0, x));
                    k2.push_back(lp(x, 0));
                }
                k1.push_back(lp(x, k));
                k2.push_back(lp(k, x));
            }
            out[static_cast<std::size_t>(k - 1)] = Pattern::from_points(k1).mask();
            out[static_cast<std::size_t>(k + 2)] = Pattern::from_points(k2).mask();
        }
        return out;
    }();
    return masks;
}

inline bool matches_k_template(std::uint16_t mask) {
    for (auto m : k_template_masks())
        if (m == mask) return true;
    return false;
}

inline bool pairwise_anticommuting(const std::vector<LatticePoint>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (commutes(pts[i], pts[j])) return false;
    return true;
}

namespace detail {

inline void grow_anticommuting(const std::vector<LatticePoint>& pool, std::size_t from,
                               std::vector<LatticePoint>& current, std::vector<LatticePoint>& best) {
    if (current.size() > best.size()) best = current;
    if (current.size() + (pool.size() - from) <= best.size()) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
        bool ok = true;
        for (auto c : current)
            if (commutes(c, pool[i])) {
                ok = false;
                break;
            }
        if (!ok) continue;
        current.push_back(pool[i]);
        grow_anticommuting(pool, i + 1, current, best);
        current.pop_back();
    }
}

}  // namespace detail

inline std::vector<LatticePoint> max_anticommuting_subset(const std::vector<LatticePoint>& pool) {
    std::vector<LatticePoint> current, best;
    detail::grow_anticommuting(pool, 0, current, best);
    return best;
}

struct ComplementAnalysis {
    LatticePoint free_point;                 // translated to (0,0)
    std::vector<LatticePoint> complement;    // translated I^c
    int complement_size = 0;
    std::vector<LatticePoint> max_anticommuting_set;
    bool has_k1_or_k2_form = false;
    bool has_3plus1_structure = false;
};

/// Structure of I^c relative to the first quadruple-free point of I.
inline ComplementAnalysis analyze_complement(Pattern I) {
    const auto p = quadruple_free_point(I);
    if (!p) throw std::invalid_argument("pattern has no quadruple-free point");
    ComplementAnalysis out;
    out.free_point = *p;
    for (auto q : I.complement().points()) out.complement.push_back(tau(*p, q));
    std::sort(out.complement.begin(), out.complement.end(),
              [](LatticePoint a, LatticePoint b) { return a.bit() < b.bit(); });
    out.complement_size = static_cast<int>(out.complement.size());
    out.max_anticommuting_set = max_anticommuting_subset(out.complement);

    const auto& c = out.complement;
    const std::size_t n = c.size();
    for (std::size_t a = 0; a < n && !out.has_k1_or_k2_form; ++a)
        for (std::size_t b = a + 1; b < n && !out.has_k1_or_k2_form; ++b)
            for (std::size_t d = b + 1; d < n && !out.has_k1_or_k2_form; ++d)
                for (std::size_t e = d + 1; e < n && !out.has_k1_or_k2_form; ++e)
                    for (std::size_t f = e + 1; f < n && !out.has_k1_or_k2_form; ++f) {
                        std::vector<LatticePoint> five{c[a], c[b], c[d], c[e], c[f]};
                        if (pairwise_anticommuting(five) && matches_k_template(Pattern::from_points(five).mask()))
                            out.has_k1_or_k2_form = true;
                    }

    for (std::size_t a = 0; a < n && !out.has_3plus1_structure; ++a)
        for (std::size_t b = a + 1; b < n && !out.has_3plus1_structure; ++b)
            for (std::size_t d = b + 1; d < n && !out.has_3plus1_structure; ++d) {
                if (!pairwise_anticommuting({c[a], c[b], c[d]})) continue;
                for (std::size_t e = 0; e < n; ++e) {
                    if (e == a || e == b || e == d) continue;
                    const int k = int(commutes(c[e], c[a])) + int(commutes(c[e], c[b])) + int(commutes(c[e], c[d]));
                    if (k == 1) {
                        out.has_3plus1_structure = true;
                        break;
                    }
                }
            }
    return out;
}

}  // namespace lattice
