#pragma once

#include "lattice/jacobi.hpp"
#include "lattice/pattern.hpp"
#include "lattice/quadruples.hpp"
#include "lattice/state.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lattice {

// Coefficient families on the lattice, indexed by point bit (4*beta + alpha).
using ExactCoefficients = std::array<Rational, 16>;
using Coefficients = std::array<double, 16>;

inline Coefficients to_double(const ExactCoefficients& c) {
    Coefficients out{};
    for (std::size_t b = 0; b < 16; ++b) out[b] = lattice::to_double(c[b]);
    return out;
}

inline Coefficients trace_coefficients() {
    Coefficients c;
    c.fill(0.25);
    return c;
}

enum class WitnessVerdict { entanglement_certified, inconclusive };

struct WitnessReport {
    Rational lhs;
    Rational threshold;
    std::optional<double> sup_estimate;
    WitnessVerdict verdict = WitnessVerdict::inconclusive;
};

/// sum_{p in I} lambda_p against N_I / 4. The verdict stays inconclusive
/// until a sup estimate at most 1 is attached.
inline WitnessReport witness_value(Pattern I, const ExactCoefficients& lam) {
    WitnessReport r;
    r.lhs = Rational(0);
    for (std::size_t b = 0; b < 16; ++b) {
        if (lam[b] < 0) throw std::invalid_argument("negative witness coefficient");
        if (I.contains_bit(static_cast<int>(b))) r.lhs += lam[b];
    }
    r.threshold = make_rational(I.size(), 4);
    return r;
}

inline constexpr double kSupTolerance = 1e-9;

inline void attach_sup(WitnessReport& r, double sup) {
    r.sup_estimate = sup;
    r.verdict = (r.lhs > r.threshold && sup <= 1 + kSupTolerance) ? WitnessVerdict::entanglement_certified
                                                                   : WitnessVerdict::inconclusive;
}

/// sum_s lambda_s |<phi|sigma_s|psi>|^2
inline double bilinear_value(const Coefficients& lam, const ComplexVector& psi, const ComplexVector& phi) {
    double f = 0;
    for (int b = 0; b < 16; ++b) {
        if (lam[static_cast<std::size_t>(b)] == 0) continue;
        f += lam[static_cast<std::size_t>(b)] * std::norm(overlap(LatticePoint::from_bit(b), phi, psi));
    }
    return f;
}

struct SeesawOptions {
    int restarts = 64;
    int max_iterations = 500;
    double tolerance = 1e-12;
    std::uint64_t seed = 0x5EE5A3ULL;
    std::vector<SaturatingPair> seeds;  // tried before the random restarts
};

struct SeesawResult {
    double sup = 0;
    bool monotone = true;
    std::vector<double> run_values;
    std::vector<bool> run_monotone;
};

namespace detail {

inline const std::array<FloatMatrix, 16>& lattice_paulis() {
    static const std::array<FloatMatrix, 16> m = [] {
        std::array<FloatMatrix, 16> out;
        for (int b = 0; b < 16; ++b) out[static_cast<std::size_t>(b)] = dense<std::complex<double>>(LatticePoint::from_bit(b).string());
        return out;
    }();
    return m;
}

// D^v = sum_s lambda_s sigma_s |v><v| sigma_s; returns (top eigenvalue, eigenvector).
inline std::pair<double, ComplexVector> top_of_d(const Coefficients& lam, const ComplexVector& v) {
    FloatMatrix d(4);
    for (std::size_t b = 0; b < 16; ++b) {
        if (lam[b] == 0) continue;
        const auto w = lattice_paulis()[b] * v;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) d(i, j) += lam[b] * w[i] * std::conj(w[j]);
    }
    auto sys = hermitian_eigensystem(d);
    ComplexVector top(4);
    for (std::size_t i = 0; i < 4; ++i) top[i] = sys.vectors(i, 3);
    return {sys.eigenvalues[3], top};
}

inline ComplexVector random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexVector v(4);
    for (auto& x : v) x = {g(rng), g(rng)};
    const double n = norm(v);
    for (auto& x : v) x /= n;
    return v;
}

}  // namespace detail

/// Alternating maximization of sum lambda |<phi|sigma|psi>|^2: phi is the top
/// eigenvector of D^psi, then psi the top eigenvector of D^phi, until the
/// objective gains less than the tolerance. Lower bound on the true sup.
inline SeesawResult seesaw_sup(const Coefficients& lam, const SeesawOptions& opt = {}) {
    if (opt.restarts < 1) throw std::invalid_argument("seesaw needs at least one restart");
    SeesawResult res;
    std::mt19937_64 rng(opt.seed);
    const std::size_t runs = opt.seeds.size() + static_cast<std::size_t>(opt.restarts);
    for (std::size_t run = 0; run < runs; ++run) {
        ComplexVector psi;
        double f = -1;
        if (run < opt.seeds.size()) {
            psi = opt.seeds[run].psi;
            f = bilinear_value(lam, psi, opt.seeds[run].phi);
        } else {
            psi = detail::random_unit(rng);
        }
        bool mono = true;
        auto [g, phi] = detail::top_of_d(lam, psi);
        const double slack = 1e-12 * std::max(1.0, std::abs(g));
        if (g < f - slack) mono = false;
        f = g;
        for (int it = 0; it < opt.max_iterations; ++it) {
            auto [g1, psi1] = detail::top_of_d(lam, phi);
            auto [g2, phi2] = detail::top_of_d(lam, psi1);
            if (g1 < f - slack || g2 < g1 - slack) mono = false;
            psi = std::move(psi1);
            phi = std::move(phi2);
            const double gain = g2 - f;
            f = std::max(f, g2);
            if (gain < opt.tolerance) break;
        }
        res.run_values.push_back(f);
        res.run_monotone.push_back(mono);
        res.monotone = res.monotone && mono;
        res.sup = std::max(res.sup, f);
    }
    return res;
}

/// lambda_p = (1 + delta)/4 at p, 1/4 elsewhere on I, 0 off I.
inline Coefficients single_delta_coefficients(Pattern I, LatticePoint p, double delta) {
    Coefficients c{};
    for (int b = 0; b < 16; ++b)
        if (I.contains_bit(b)) c[static_cast<std::size_t>(b)] = 0.25;
    c[static_cast<std::size_t>(p.bit())] = (1 + delta) / 4;
    return c;
}

inline ExactCoefficients single_delta_coefficients(Pattern I, LatticePoint p, const Rational& delta) {
    ExactCoefficients c;
    c.fill(Rational(0));
    for (int b = 0; b < 16; ++b)
        if (I.contains_bit(b)) c[static_cast<std::size_t>(b)] = make_rational(1, 4);
    c[static_cast<std::size_t>(p.bit())] = (1 + delta) / 4;
    return c;
}

struct DeltaOptions {
    SeesawOptions seesaw{};
    int bisections = 30;
    double smallest = 1e-6;
    double largest = 4;
};

/// Largest delta in (0, 4] for which the seesaw keeps the single-delta family
/// within 1 + 1e-9, by bisection; 0 when even the smallest probe fails.
/// Saturating vectors of every quadruple inside I seed each probe.
inline double delta_max_estimate(Pattern I, LatticePoint p, DeltaOptions opt = {}) {
    if (!I.contains(p)) throw std::invalid_argument("point is not in the pattern");
    for (int q : quadruples_inside(I)) opt.seesaw.seeds.push_back(saturating_vectors(catalog_all().all[static_cast<std::size_t>(q)]));
    auto feasible = [&](double d) { return seesaw_sup(single_delta_coefficients(I, p, d), opt.seesaw).sup <= 1 + kSupTolerance; };
    if (!feasible(opt.smallest)) return 0;
    if (feasible(opt.largest)) return opt.largest;
    double lo = opt.smallest, hi = opt.largest;
    for (int i = 0; i < opt.bisections; ++i) {
        const double mid = (lo + hi) / 2;
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

struct GammaCoefficients {
    double g00 = 0;
    std::array<double, 3> g0i{};  // i = 1, 2, 3
    std::array<double, 3> gi0{};
};

inline GammaCoefficients gamma_t_coefficients(double t) {
    if (t < 0) throw std::invalid_argument("t must be nonnegative");
    const double e = std::exp(-4 * t);
    constexpr std::array<double, 3> eps{1, -1, 1};
    GammaCoefficients g;
    g.g00 = (1 + 3 * e) * (3 + e) / 16;
    for (std::size_t i = 0; i < 3; ++i) {
        g.g0i[i] = eps[i] * (1 + 3 * e) * (1 - e) / 16;
        g.gi0[i] = (1 - e) * (3 + e) / 16;
    }
    return g;
}

/// Smallest scale keeping every shifted coefficient nonnegative, floored at 1/4.
inline double gamma_t_default_mu(double t) { return std::max(0.25, 4 * gamma_t_coefficients(t).g00); }

/// 1/4 - g/mu on (0,0), (0,i), (i,0); 1/4 elsewhere.
inline Coefficients gamma_t_lambda(double t, std::optional<double> mu = std::nullopt) {
    const auto g = gamma_t_coefficients(t);
    const double m = mu.value_or(gamma_t_default_mu(t));
    if (m <= 0) throw std::invalid_argument("mu must be positive");
    Coefficients c;
    c.fill(0.25);
    c[0] = 0.25 - g.g00 / m;
    for (int i = 1; i <= 3; ++i) {
        c[static_cast<std::size_t>(4 * i)] = 0.25 - g.g0i[static_cast<std::size_t>(i - 1)] / m;  // (0, i)
        c[static_cast<std::size_t>(i)] = 0.25 - g.gi0[static_cast<std::size_t>(i - 1)] / m;      // (i, 0)
    }
    for (double x : c)
        if (x < -1e-15) throw std::invalid_argument("mu too small: negative coefficient");
    return c;
}

/// sum_{p in I} lambda_p(t) - N_I / 4; positive values expose entanglement.
inline double gamma_t_expectation(Pattern I, double t, std::optional<double> mu = std::nullopt) {
    const auto c = gamma_t_lambda(t, mu);
    double s = 0;
    for (int b = 0; b < 16; ++b)
        if (I.contains_bit(b)) s += c[static_cast<std::size_t>(b)];
    return s - I.size() / 4.0;
}

/// Coefficients of V on the six strings with exactly one index equal to 2,
/// keyed by point bit.
using PhiVCoefficients = std::map<int, std::complex<double>>;

inline bool phi_v_support(LatticePoint p) { return (p.alpha.value() == 2) != (p.beta.value() == 2); }

inline void require_admissible(const PhiVCoefficients& v) {
    double s = 0;
    for (const auto& [b, z] : v) {
        if (b < 0 || b > 15 || !phi_v_support(LatticePoint::from_bit(b)))
            throw std::invalid_argument("V coefficient outside the (alpha,2)/(2,beta) support");
        s += std::norm(z);
    }
    if (std::abs(s - 1) > 1e-12) throw std::invalid_argument("V coefficients must have unit norm");
}

/// Diagonal part of Tr - T - V^dag X V: 1/2 - |v_s|^2 on the support, 0 elsewhere.
inline Coefficients phi_v_diagonal(const PhiVCoefficients& v) {
    require_admissible(v);
    Coefficients c{};
    for (int b = 0; b < 16; ++b)
        if (phi_v_support(LatticePoint::from_bit(b))) {
            auto it = v.find(b);
            c[static_cast<std::size_t>(b)] = 0.5 - (it == v.end() ? 0.0 : std::norm(it->second));
        }
    return c;
}

/// (id (x) Lambda)[P+] = (1/d) sum_ij |i><j| (x) Lambda(|i><j|).
template <class Map>
FloatMatrix choi_of_map(Map&& map, std::size_t d) {
    FloatMatrix m(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            FloatMatrix e(d);
            e(i, j) = 1;
            const FloatMatrix img = map(e);
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) m(i * d + k, j * d + l) = img(k, l) / static_cast<double>(d);
        }
    return m;
}

inline double trace_product(const FloatMatrix& a, const FloatMatrix& b) {
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < a.dim(); ++k) s += a(i, k) * b(k, i);
    return s.real();
}

struct PhiVValue {
    double closed_form = 0;
    double dense = 0;
};

/// Tr(rho_I (id (x) Phi_V)[P+]) two ways: the diagonal coefficients averaged
/// over I, and the trace against the Choi matrix of the full map
/// X -> Tr(X) 1 - X^T - V^dag X V.
inline PhiVValue phi_v_witness(Pattern I, const PhiVCoefficients& v) {
    const auto diag = phi_v_diagonal(v);
    PhiVValue out;
    for (int b = 0; b < 16; ++b)
        if (I.contains_bit(b)) out.closed_form += diag[static_cast<std::size_t>(b)];
    out.closed_form /= I.size();

    FloatMatrix vm(4);
    for (const auto& [b, z] : v) {
        FloatMatrix s = detail::lattice_paulis()[static_cast<std::size_t>(b)];
        s *= z;
        vm += s;
    }
    const FloatMatrix vd = vm.adjoint();
    auto phi = [&](const FloatMatrix& x) {
        FloatMatrix r = FloatMatrix::identity(4);
        r *= x.trace();
        r -= x.transpose();
        r -= vd * x * vm;
        return r;
    };
    out.dense = trace_product(to_float(density_matrix(lattice_state(I))), choi_of_map(phi, 4));
    if (std::abs(out.dense - out.closed_form) > 1e-10) throw std::logic_error("Phi_V closed form and Choi trace disagree");
    return out;
}

/// sum_s lambda_s sign_s P_s on C^4 (x) C^4; strings indexed by point bit.
inline FloatMatrix choi_matrix(const Coefficients& lam, const std::optional<std::array<int, 16>>& signs = std::nullopt) {
    FloatMatrix m(16);
    for (int b = 0; b < 16; ++b) {
        const double w = lam[static_cast<std::size_t>(b)] * (signs ? (*signs)[static_cast<std::size_t>(b)] : 1);
        if (w == 0) continue;
        const auto v = basis_vector(LatticePoint::from_bit(b).string());
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j) m(i, j) += w * v[i] * std::conj(v[j]);
    }
    return m;
}

/// epsilon_alpha epsilon_beta for each lattice string.
inline std::array<int, 16> transposition_signs() {
    std::array<int, 16> s{};
    for (int b = 0; b < 16; ++b) s[static_cast<std::size_t>(b)] = transposition_sign(LatticePoint::from_bit(b).string());
    return s;
}

}  // namespace lattice
