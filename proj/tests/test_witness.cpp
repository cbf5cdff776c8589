#include "lattice/fixtures.hpp"
#include "lattice/state.hpp"
#include "lattice/witness.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <random>

using namespace lattice;

namespace {

// <phi| sigma_p |psi> computed by explicit 4x4 Kronecker products
std::complex<double> oracle_overlap(LatticePoint p, const ComplexVector& phi, const ComplexVector& psi) {
    const auto m = dense<std::complex<double>>(p.string());
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += std::conj(phi[i]) * m(i, j) * psi[j];
    return s;
}

ComplexVector random_vector(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ComplexVector v(4);
    for (auto& x : v) x = {g(rng), g(rng)};
    const double n = norm(v);
    for (auto& x : v) x /= n;
    return v;
}

}  // namespace

TEST_CASE("trace coefficients saturate at one") {
    const auto r = seesaw_sup(trace_coefficients());
    CHECK(std::abs(r.sup - 1) < 1e-9);
    CHECK(r.monotone);
    // every product pair gives exactly 1 for the trace functional
    std::mt19937_64 rng(1);
    for (int k = 0; k < 50; ++k) CHECK(std::abs(bilinear_value(trace_coefficients(), random_vector(rng), random_vector(rng)) - 1) < 1e-12);
}

TEST_CASE("bilinear value matches the explicit overlap sum") {
    std::mt19937_64 rng(2);
    Coefficients lam{};
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& x : lam) x = u(rng);
    for (int k = 0; k < 20; ++k) {
        const auto psi = random_vector(rng), phi = random_vector(rng);
        double s = 0;
        for (int b = 0; b < 16; ++b)
            s += lam[static_cast<std::size_t>(b)] * std::norm(oracle_overlap(LatticePoint::from_bit(b), phi, psi));
        CHECK(std::abs(bilinear_value(lam, psi, phi) - s) < 1e-12);
        for (int b = 0; b < 16; ++b)
            CHECK(std::abs(overlap(LatticePoint::from_bit(b), phi, psi) - oracle_overlap(LatticePoint::from_bit(b), phi, psi)) < 1e-12);
    }
}

TEST_CASE("seesaw is monotone and bounded by the dominance bound") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        Coefficients lam{};
        double top = 0;
        for (auto& x : lam) {
            x = u(rng);
            top = std::max(top, x);
        }
        SeesawOptions opt;
        opt.restarts = 8;
        opt.seed = static_cast<std::uint64_t>(trial);
        const auto r = seesaw_sup(lam, opt);
        CHECK(r.monotone);
        for (bool m : r.run_monotone) CHECK(m);
        CHECK(r.run_values.size() == 8);
        // sum_p |<phi|sigma_p|psi>|^2 = 4, so the sup is at most 4 max lambda
        CHECK(r.sup <= 4 * top + 1e-9);
        CHECK(r.sup >= 0);
    }
}

TEST_CASE("seesaw is reproducible for a fixed seed") {
    Coefficients lam{};
    for (std::size_t k = 0; k < 16; ++k) lam[k] = 0.01 * static_cast<double>(k);
    SeesawOptions opt;
    opt.restarts = 4;
    CHECK(seesaw_sup(lam, opt).run_values == seesaw_sup(lam, opt).run_values);
    opt.restarts = 0;
    CHECK_THROWS_AS(seesaw_sup(lam, opt), std::invalid_argument);
}

TEST_CASE("quadruple coefficients reach one at their saturating pair") {
    for (const auto& q : catalog_all().all) {
        Coefficients lam{};
        for (auto p : q.points()) lam[static_cast<std::size_t>(p.bit())] = 0.25;
        const auto [psi, phi] = saturating_vectors(q);
        CHECK(std::abs(bilinear_value(lam, psi, phi) - 1) < 1e-10);
    }
}

TEST_CASE("single-delta witness") {
    const auto I = fixture("ppt3_10");
    const auto p = *quadruple_free_point(I);
    const auto lam = single_delta_coefficients(I, p, make_rational(1, 2));
    CHECK(lam[static_cast<std::size_t>(p.bit())] == make_rational(3, 8));
    const auto report = witness_value(I, lam);
    CHECK(report.lhs == make_rational(21, 8));
    CHECK(report.threshold == make_rational(5, 2));
    const auto fl = single_delta_coefficients(I, p, 0.5);
    for (std::size_t k = 0; k < 16; ++k) CHECK(std::abs(fl[k] - to_double(lam[k])) < 1e-15);
}

TEST_CASE("delta estimate is positive at a quadruple-free point and vanishes on covered points") {
    DeltaOptions opt;
    opt.seesaw.restarts = 8;
    opt.bisections = 12;
    const auto I = fixture("ppt3_10");
    CHECK(delta_max_estimate(I, *quadruple_free_point(I), opt) > 0.1);
    const auto J = fixture("sep10");
    for (auto p : J.points()) CHECK(delta_max_estimate(J, p, opt) < 1e-3);
}

TEST_CASE("gamma_t family") {
    const auto g = gamma_t_coefficients(0.01);
    double total = g.g00;
    for (int i = 0; i < 3; ++i) total += g.gi0[static_cast<std::size_t>(i)];
    CHECK(g.g00 > 0.9);
    CHECK(g.g0i[1] < 0);
    CHECK(gamma_t_expectation(fixture("ppt2_6"), 0.01) > 0);
    CHECK(gamma_t_expectation(fixture("ppt2_8"), 0.01) > 0);
    // t = 0 is the identity channel: g00 = 1 and nothing else
    const auto g0 = gamma_t_coefficients(0);
    CHECK(g0.g00 == Catch::Approx(1));
    CHECK(g0.g0i[0] == Catch::Approx(0).margin(1e-15));
    CHECK_THROWS_AS(gamma_t_coefficients(-1), std::invalid_argument);
    CHECK_THROWS_AS(gamma_t_lambda(0.01, 0.1), std::invalid_argument);
    for (double x : gamma_t_lambda(0.01)) CHECK(x >= 0);
}

TEST_CASE("phi_V closed form and dense Choi trace") {
    const auto I = fixture("ppt3_10");
    PhiVCoefficients v{{lp(1, 2).bit(), 1.0}};
    const auto val = phi_v_witness(I, v);
    CHECK(std::abs(val.closed_form + 1.0 / 20) < 1e-12);
    CHECK(std::abs(val.dense - val.closed_form) < 1e-10);
    CHECK_THROWS(phi_v_witness(I, {{lp(1, 1).bit(), 1.0}}));
    CHECK_THROWS(phi_v_witness(I, {{lp(1, 2).bit(), 0.5}}));
}

TEST_CASE("phi_V agrees with the dense trace on random admissible V and random patterns") {
    std::mt19937_64 rng(4);
    std::vector<int> support;
    for (int b = 0; b < 16; ++b)
        if (phi_v_support(LatticePoint::from_bit(b))) support.push_back(b);
    CHECK(support.size() == 6);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 30; ++trial) {
        PhiVCoefficients v;
        double s = 0;
        for (int b : support) {
            v[b] = {g(rng), g(rng)};
            s += std::norm(v[b]);
        }
        for (auto& [b, x] : v) x /= std::sqrt(s);
        Pattern I(static_cast<std::uint16_t>(rng() | 1U));
        const auto val = phi_v_witness(I, v);
        CHECK(std::abs(val.dense - val.closed_form) < 1e-10);
    }
}

TEST_CASE("Choi matrix of the trace functional is the identity") {
    const auto c = choi_matrix(trace_coefficients());
    const auto id = FloatMatrix::identity(c.dim());
    CHECK(max_abs_diff(c, id * std::complex<double>(c.trace().real() / static_cast<double>(c.dim()))) < 1e-12);
}

TEST_CASE("witness_value rejects negative coefficients") {
    ExactCoefficients lam{};
    lam[0] = -1;
    CHECK_THROWS_AS(witness_value(Pattern(1), lam), std::invalid_argument);
}
