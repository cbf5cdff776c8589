#pragma once

#include "lattice/pattern.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace lattice {

struct Fixture {
    std::string_view name;
    std::string_view grid;  // top row beta = 3, '/' between rows
    std::string_view note;
};

// Worked patterns with known verdicts.
inline constexpr std::array<Fixture, 10> kFixtures{{
    {"npt8", ".xx./x..x/.xx./x.x.", "NPT, the cross through (2,2) holds 5 points"},
    {"npt5", "..x./x..x/..x./...x", "NPT, five points"},
    {"ppt2_6", "..xx/x..x/.x.x/....", "PPT entangled, single-point cross at (0,0)"},
    {"ppt2_8", ".xxx/x.xx/..xx/....", "PPT entangled, single-point cross at (0,0)"},
    {"ppt3_10", "x..x/.xx./xx.x/xx.x", "PPT entangled, k at (0,0) equals 1"},
    {"sep10", ".xxx/.xxx/.xxx/x...", "separable, five quadruples each point twice"},
    {"sep8", ".xxx/.x.x/.xxx/....", "separable rank 8, four quadruples"},
    {"cover9", ".xxx/.x.x/.xxx/x...", "separable, nine points"},
    {"cover8", ".xxx/.x.x/.x.x/x...", "separable, eight points"},
    {"rank11", "x..x/xx.x/xxx./xxx.", "PPT rank 11, every point on at least three quadruples, no covering by distinct quadruples"},
}};

inline std::optional<Pattern> fixture_pattern(std::string_view name) {
    for (const auto& f : kFixtures)
        if (f.name == name) return parse_pattern(f.grid);
    return std::nullopt;
}

inline Pattern fixture(std::string_view name) {
    if (auto p = fixture_pattern(name)) return *p;
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace lattice
