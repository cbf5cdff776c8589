#pragma once

#include "lattice/pattern.hpp"
#include "lattice/quadruples.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace lattice {

/// Translation tau_t followed by independent relabelings of columns (alpha)
/// and rows (beta).
struct SymmetryElement {
    LatticePoint translation;
    std::array<int, 4> row_perm{0, 1, 2, 3};
    std::array<int, 4> col_perm{0, 1, 2, 3};

    LatticePoint apply(LatticePoint p) const {
        const auto q = tau(translation, p);
        return {PauliIndex(col_perm[static_cast<std::size_t>(q.alpha.value())]),
                PauliIndex(row_perm[static_cast<std::size_t>(q.beta.value())])};
    }

    /// Image of each point bit.
    std::array<std::uint8_t, 16> point_map() const {
        std::array<std::uint8_t, 16> m{};
        for (int b = 0; b < 16; ++b) m[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(apply(LatticePoint::from_bit(b)).bit());
        return m;
    }
};

inline Pattern apply_symmetry(const SymmetryElement& g, Pattern I) {
    std::uint16_t m = 0;
    for (auto p : I.points()) m |= static_cast<std::uint16_t>(1U << g.apply(p).bit());
    return Pattern(m);
}

inline bool preserves_catalog(const SymmetryElement& g) {
    const auto& cat = catalog_all();
    for (const auto& q : cat.all)
        if (!cat.index_of(apply_symmetry(g, q.pattern()).mask())) return false;
    return true;
}

/// Candidates {tau_t} x rows x columns, deduplicated by their action on the
/// lattice and filtered to those mapping every special quadruple to a special
/// quadruple. Each element carries byte lookup tables for fast mask images.
class SymmetryGroup {
public:
    static const SymmetryGroup& instance() {
        static const SymmetryGroup g;
        return g;
    }

    const std::vector<SymmetryElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t candidates_examined() const { return examined_; }

    std::uint16_t image(std::size_t k, std::uint16_t mask) const {
        return static_cast<std::uint16_t>(lo_[k][mask & 0xFF] | hi_[k][mask >> 8]);
    }

    Pattern canonical_form(Pattern I) const {
        std::uint16_t best = I.mask();
        for (std::size_t k = 0; k < elements_.size(); ++k) best = std::min(best, image(k, I.mask()));
        return Pattern(best);
    }

    std::vector<Pattern> orbit(Pattern I) const {
        std::set<std::uint16_t> seen;
        for (std::size_t k = 0; k < elements_.size(); ++k) seen.insert(image(k, I.mask()));
        std::vector<Pattern> out;
        for (auto m : seen) out.emplace_back(m);
        return out;
    }

private:
    SymmetryGroup() {
        std::array<int, 4> perm{0, 1, 2, 3};
        std::vector<std::array<int, 4>> perms;
        do perms.push_back(perm);
        while (std::next_permutation(perm.begin(), perm.end()));

        std::set<std::array<std::uint8_t, 16>> seen;
        for (int t = 0; t < 16; ++t)
            for (const auto& rp : perms)
                for (const auto& cp : perms) {
                    ++examined_;
                    SymmetryElement g{LatticePoint::from_bit(t), rp, cp};
                    const auto map = g.point_map();
                    if (!seen.insert(map).second) continue;
                    if (!preserves_catalog(g)) continue;
                    elements_.push_back(g);
                    std::array<std::uint16_t, 256> lo{}, hi{};
                    for (int byte = 0; byte < 256; ++byte)
                        for (int b = 0; b < 8; ++b)
                            if ((byte >> b) & 1) {
                                lo[static_cast<std::size_t>(byte)] |= static_cast<std::uint16_t>(1U << map[static_cast<std::size_t>(b)]);
                                hi[static_cast<std::size_t>(byte)] |= static_cast<std::uint16_t>(1U << map[static_cast<std::size_t>(b + 8)]);
                            }
                    lo_.push_back(lo);
                    hi_.push_back(hi);
                }
    }

    std::vector<SymmetryElement> elements_;
    std::vector<std::array<std::uint16_t, 256>> lo_, hi_;
    std::size_t examined_ = 0;
};

inline Pattern canonical_form(Pattern I) { return SymmetryGroup::instance().canonical_form(I); }

}  // namespace lattice
