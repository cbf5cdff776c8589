#include "lattice/pauli.hpp"

#include <catch_amalgamated.hpp>

using namespace lattice;

namespace {

ExactMatrix scaled(const ExactMatrix& m, Phase p) {
    ExactMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j) * p.exact();
    return out;
}

}  // namespace

TEST_CASE("single-qubit products agree with matrix multiplication") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const auto [c, phase] = pauli_product(a, b);
            const auto lhs = dense(PauliString{a}) * dense(PauliString{b});
            CHECK(lhs == scaled(dense(PauliString{c.value()}), phase));
        }
}

TEST_CASE("product table examples") {
    CHECK(pauli_product(1, 2) == std::pair{PauliIndex(3), Phase::i()});
    CHECK(pauli_product(2, 1) == std::pair{PauliIndex(3), Phase::minus_i()});
    CHECK(pauli_product(3, 1) == std::pair{PauliIndex(2), Phase::i()});
    CHECK(pauli_product(2, 2) == std::pair{PauliIndex(0), Phase::one()});
    CHECK(pauli_product(0, 3) == std::pair{PauliIndex(3), Phase::one()});
}

TEST_CASE("label product is symmetric and cycles") {
    for (int a = 0; a < 4; ++a)
        for (int m = 0; m < 4; ++m) {
            const PauliIndex g = pauli_product(a, m).first;
            CHECK(g == pauli_product(m, a).first);
            CHECK(pauli_product(a, g).first == PauliIndex(m));
        }
}

TEST_CASE("commutation sign agrees with the commutator") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const auto ab = dense(PauliString{a}) * dense(PauliString{b});
            const auto ba = dense(PauliString{b}) * dense(PauliString{a});
            CHECK((ab == ba) == (commutation_sign(a, b) == 1));
            if (commutation_sign(a, b) == -1) CHECK(ab == scaled(ba, Phase::minus_one()));
        }
}

TEST_CASE("transposition sign agrees with the dense transpose") {
    for (std::size_t k = 0; k < 16; ++k) {
        const auto s = PauliString::from_index(k, 2);
        const auto m = dense(s);
        const auto t = m.transpose();
        CHECK(t == (transposition_sign(s) == 1 ? m : scaled(m, Phase::minus_one())));
    }
    CHECK(transposition_sign(PauliString{2, 2}) == 1);
    CHECK(transposition_sign(PauliString{2, 0, 1}) == -1);
}

TEST_CASE("string products and commutation on two and three qubits") {
    for (int n = 2; n <= 3; ++n) {
        const std::size_t count = std::size_t{1} << (2 * n);
        for (std::size_t i = 0; i < count; i += (n == 3 ? 5 : 1))
            for (std::size_t j = 0; j < count; j += (n == 3 ? 7 : 1)) {
                const auto a = PauliString::from_index(i, n);
                const auto b = PauliString::from_index(j, n);
                const auto [c, phase] = string_product(a, b);
                const auto ab = dense(a) * dense(b);
                CHECK(ab == scaled(dense(c), phase));
                CHECK(commutes(a, b) == (ab == dense(b) * dense(a)));
            }
    }
}

TEST_CASE("string operations reject mismatched lengths") {
    CHECK_THROWS_AS(string_product(PauliString{1}, PauliString{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(commutes(PauliString{1}, PauliString{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(PauliIndex(4), std::out_of_range);
    CHECK_THROWS_AS(PauliIndex(-1), std::out_of_range);
}

TEST_CASE("index round trip") {
    for (int n = 1; n <= 3; ++n)
        for (std::size_t k = 0; k < (std::size_t{1} << (2 * n)); ++k) CHECK(PauliString::from_index(k, n).index() == k);
    CHECK(PauliString{2, 3}.index() == 11);
    CHECK(PauliString{2, 3}.str() == "(2,3)");
}

TEST_CASE("pauli_column reads the dense column") {
    for (std::size_t k = 0; k < 64; ++k) {
        const auto s = PauliString::from_index(k, 3);
        const auto m = dense(s);
        for (std::size_t col = 0; col < 8; ++col) {
            const auto [row, phase] = pauli_column(s, col);
            for (std::size_t r = 0; r < 8; ++r)
                CHECK(m(r, col) == (r == row ? phase.exact() : GaussianRational(0)));
        }
    }
}

TEST_CASE("lattice translations") {
    for (int t = 0; t < 16; ++t) {
        const auto tp = LatticePoint::from_bit(t);
        CHECK(tau(tp, tp) == LatticePoint{0, 0});
        for (int p = 0; p < 16; ++p) {
            const auto pp = LatticePoint::from_bit(p);
            CHECK(tau(tp, tau(tp, pp)) == pp);
            CHECK(commutes(pp, tp) == commutes(pp.string(), tp.string()));
        }
    }
    CHECK(LatticePoint{2, 1}.bit() == 6);
    CHECK(LatticePoint::from_bit(6) == LatticePoint{2, 1});
}
