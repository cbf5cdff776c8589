#pragma once

#include "lattice/pauli.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lattice {

/// Subset I of the 4x4 lattice, one bit per point (bit 4*beta + alpha).
class Pattern {
public:
    constexpr Pattern() = default;
    constexpr explicit Pattern(std::uint16_t mask) : mask_(mask) {}

    static Pattern from_points(const std::vector<LatticePoint>& pts) {
        std::uint16_t m = 0;
        for (auto p : pts) m |= static_cast<std::uint16_t>(1U << p.bit());
        return Pattern(m);
    }
    static constexpr Pattern full() { return Pattern(0xFFFF); }

    constexpr std::uint16_t mask() const { return mask_; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool contains(LatticePoint p) const { return (mask_ >> p.bit()) & 1U; }
    constexpr bool contains_bit(int b) const { return (mask_ >> b) & 1U; }
    constexpr Pattern complement() const { return Pattern(static_cast<std::uint16_t>(~mask_)); }

    /// Points in ascending bit order.
    std::vector<LatticePoint> points() const {
        std::vector<LatticePoint> out;
        for (int b = 0; b < 16; ++b)
            if (contains_bit(b)) out.push_back(LatticePoint::from_bit(b));
        return out;
    }

    friend constexpr bool operator==(Pattern, Pattern) = default;

private:
    std::uint16_t mask_ = 0;
};

/// Parse failure; line and column are 1-based and point at the offending
/// character (0 when the error is not positional).
class PatternParseError : public std::invalid_argument {
public:
    PatternParseError(const std::string& what, int line = 0, int column = 0)
        : std::invalid_argument(line ? what + " (line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ")"
                                     : what),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Pattern parse_hex(std::string_view s) {
    std::string_view digits = s.substr(2);
    if (digits.empty() || digits.size() > 4) throw PatternParseError("hex mask needs 1 to 4 digits: '" + std::string(s) + "'");
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw PatternParseError(std::string("bad hex digit '") + c + "'", 1, static_cast<int>(i + 3));
        m = m * 16 + static_cast<std::uint32_t>(v);
    }
    return Pattern(static_cast<std::uint16_t>(m));
}

inline Pattern parse_pairs(std::string_view s) {
    std::uint16_t m = 0;
    std::size_t i = 0;
    auto column = [&] { return static_cast<int>(i + 1); };
    auto skip = [&] {
        while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',' || s[i] == ';')) ++i;
    };
    auto digit = [&]() -> int {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size() || s[i] < '0' || s[i] > '3')
            throw PatternParseError("expected a coordinate in 0..3", 1, column());
        return s[i++] - '0';
    };
    auto expect = [&](char c) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size() || s[i] != c) throw PatternParseError(std::string("expected '") + c + "'", 1, column());
        ++i;
    };
    skip();
    while (i < s.size()) {
        expect('(');
        const int a = digit();
        expect(',');
        const int b = digit();
        expect(')');
        m |= static_cast<std::uint16_t>(1U << (4 * b + a));
        skip();
    }
    return Pattern(m);
}

inline Pattern parse_grid(std::string_view s) {
    std::vector<std::string_view> rows;
    std::vector<int> line_numbers;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find_first_of("\n/", start);
        if (end == std::string_view::npos) end = s.size();
        ++line_no;
        auto row = trim(s.substr(start, end - start));
        if (!row.empty()) {
            rows.push_back(row);
            line_numbers.push_back(line_no);
        }
        start = end + 1;
    }
    if (rows.size() != 4)
        throw PatternParseError("grid needs 4 rows, got " + std::to_string(rows.size()));
    std::uint16_t m = 0;
    for (int r = 0; r < 4; ++r) {
        const auto row = rows[static_cast<std::size_t>(r)];
        if (row.size() != 4)
            throw PatternParseError("grid row needs 4 cells, got " + std::to_string(row.size()),
                                    line_numbers[static_cast<std::size_t>(r)], 1);
        const int beta = 3 - r;
        for (int alpha = 0; alpha < 4; ++alpha) {
            const char c = row[static_cast<std::size_t>(alpha)];
            if (c == 'x' || c == 'X') m |= static_cast<std::uint16_t>(1U << (4 * beta + alpha));
            else if (c != '.')
                throw PatternParseError(std::string("unexpected character '") + c + "' in grid",
                                        line_numbers[static_cast<std::size_t>(r)], alpha + 1);
        }
    }
    return Pattern(m);
}

}  // namespace detail

/// Accepts a 4-row 'x'/'.' grid (top row beta = 3; rows split by newlines or
/// '/'), a hex mask "0xABCD", or a list of "(alpha,beta)" pairs.
inline Pattern parse_pattern(std::string_view text) {
    const auto s = detail::trim(text);
    if (s.empty()) throw PatternParseError("empty pattern input");
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return detail::parse_hex(s);
    if (s.front() == '(') return detail::parse_pairs(s);
    return detail::parse_grid(s);
}

/// Four rows, top row beta = 3, separated by '\n', no trailing newline.
inline std::string render(Pattern p, char on = 'x', char off = '.') {
    std::string out;
    for (int beta = 3; beta >= 0; --beta) {
        for (int alpha = 0; alpha < 4; ++alpha) out += p.contains_bit(4 * beta + alpha) ? on : off;
        if (beta) out += '\n';
    }
    return out;
}

inline std::string hex_mask(Pattern p) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string s = "0x";
    for (int shift = 12; shift >= 0; shift -= 4) s += digits[(p.mask() >> shift) & 0xF];
    return s;
}

struct RowColProfile {
    std::array<int, 4> row_counts{};  // indexed by beta
    std::array<int, 4> col_counts{};  // indexed by alpha
};

inline RowColProfile profile(Pattern I) {
    RowColProfile r;
    for (int b = 0; b < 16; ++b)
        if (I.contains_bit(b)) {
            ++r.row_counts[static_cast<std::size_t>(b / 4)];
            ++r.col_counts[static_cast<std::size_t>(b % 4)];
        }
    return r;
}

/// Points of I on column C_alpha and row R_beta, not counting (alpha, beta).
inline int cross_count(const RowColProfile& prof, Pattern I, LatticePoint p) {
    return prof.col_counts[static_cast<std::size_t>(p.alpha.value())] +
           prof.row_counts[static_cast<std::size_t>(p.beta.value())] - 2 * (I.contains(p) ? 1 : 0);
}

struct PptCombinatorial {
    bool ppt = true;
    std::optional<LatticePoint> violating;
};

/// PPT test on the lattice state: every cross count must be at most N_I/2.
/// The reported violating point is one with the largest cross count (lowest
/// bit on ties).
inline PptCombinatorial ppt_combinatorial(Pattern I) {
    if (I.empty()) throw std::invalid_argument("empty pattern");
    const auto prof = profile(I);
    const int n = I.size();
    PptCombinatorial out;
    int worst = -1;
    for (int b = 0; b < 16; ++b) {
        const auto p = LatticePoint::from_bit(b);
        const int k = cross_count(prof, I, p);
        if (2 * k > n && k > worst) {
            worst = k;
            out.ppt = false;
            out.violating = p;
        }
    }
    return out;
}

/// First point outside I (by bit) whose cross count is exactly 1.
inline std::optional<LatticePoint> prop_ppt2_point(Pattern I) {
    const auto prof = profile(I);
    for (int b = 0; b < 16; ++b) {
        const auto p = LatticePoint::from_bit(b);
        if (!I.contains(p) && cross_count(prof, I, p) == 1) return p;
    }
    return std::nullopt;
}

/// k^{mu nu}: points of I on C_{mu+2} and R_{nu+2} (mod 4), the intersection
/// excluded whether or not it lies in I.
inline int ppt3_k(Pattern I, LatticePoint mu_nu) {
    const LatticePoint shifted{PauliIndex((mu_nu.alpha.value() + 2) % 4), PauliIndex((mu_nu.beta.value() + 2) % 4)};
    return cross_count(profile(I), I, shifted);
}

/// First (mu, nu) by bit with k^{mu nu} = 1.
inline std::optional<LatticePoint> prop_ppt3_point(Pattern I) {
    for (int b = 0; b < 16; ++b) {
        const auto p = LatticePoint::from_bit(b);
        if (ppt3_k(I, p) == 1) return p;
    }
    return std::nullopt;
}

}  // namespace lattice
