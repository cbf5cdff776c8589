#pragma once

#include "lattice/dense_matrix.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lattice {

/// Pauli label: 0 = identity, 1 = x, 2 = y, 3 = z (sigma_z diagonal).
class PauliIndex {
public:
    constexpr PauliIndex() = default;
    constexpr PauliIndex(int value) : value_(static_cast<std::uint8_t>(value)) {
        if (value < 0 || value > 3) throw std::out_of_range("Pauli index must be in 0..3");
    }
    constexpr int value() const { return value_; }
    constexpr operator int() const { return value_; }
    friend constexpr auto operator<=>(PauliIndex, PauliIndex) = default;

private:
    std::uint8_t value_ = 0;
};

/// Fourth root of unity i^k, k in 0..3.
class Phase {
public:
    constexpr Phase() = default;
    static constexpr Phase from_power(int k) {
        Phase p;
        p.power_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4);
        return p;
    }
    static constexpr Phase one() { return from_power(0); }
    static constexpr Phase i() { return from_power(1); }
    static constexpr Phase minus_one() { return from_power(2); }
    static constexpr Phase minus_i() { return from_power(3); }

    constexpr int power() const { return power_; }
    constexpr bool is_real() const { return (power_ & 1) == 0; }

    friend constexpr Phase operator*(Phase a, Phase b) { return from_power(a.power_ + b.power_); }
    friend constexpr bool operator==(Phase, Phase) = default;
    constexpr Phase conj() const { return from_power(4 - power_); }

    GaussianRational exact() const {
        switch (power_) {
            case 0: return {Rational(1), Rational(0)};
            case 1: return {Rational(0), Rational(1)};
            case 2: return {Rational(-1), Rational(0)};
            default: return {Rational(0), Rational(-1)};
        }
    }
    std::complex<double> to_complex() const {
        constexpr std::array<std::complex<double>, 4> table{
            std::complex<double>{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return table[power_];
    }
    std::string str() const {
        constexpr std::array<const char*, 4> names{"+1", "+i", "-1", "-i"};
        return names[power_];
    }

private:
    std::uint8_t power_ = 0;
};

/// sigma_a sigma_b = phase * sigma_[a,b]. The label part is XOR of the
/// two-bit encodings; [a,.] is therefore an involutive bijection on 0..3.
constexpr std::pair<PauliIndex, Phase> pauli_product(PauliIndex a, PauliIndex b) {
    const int x = a.value(), y = b.value();
    const PauliIndex r(x ^ y);
    if (x == 0 || y == 0 || x == y) return {r, Phase::one()};
    // cyclic order x -> y -> z -> x picks up +i, anticyclic -i
    const bool cyclic = (y - x + 3) % 3 == 1;
    return {r, cyclic ? Phase::i() : Phase::minus_i()};
}

/// Per-factor commutation sign: -1 iff both are non-identity and differ.
constexpr int commutation_sign(PauliIndex a, PauliIndex b) {
    return (a.value() != 0 && b.value() != 0 && a != b) ? -1 : 1;
}

/// sigma^T = eps * sigma, eps = (1, 1, -1, 1).
constexpr int transposition_sign(PauliIndex a) { return a.value() == 2 ? -1 : 1; }

/// Tensor product of single-qubit Pauli labels; length n is the number of
/// qubits per party.
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<PauliIndex> indices) : indices_(std::move(indices)) {
        if (indices_.empty()) throw std::invalid_argument("Pauli string needs at least one factor");
    }
    PauliString(std::initializer_list<int> indices) {
        for (int v : indices) indices_.emplace_back(v);
        if (indices_.empty()) throw std::invalid_argument("Pauli string needs at least one factor");
    }

    /// Inverse of index(): base-4 digits, first factor most significant.
    static PauliString from_index(std::size_t index, int n) {
        std::vector<PauliIndex> v(static_cast<std::size_t>(n));
        for (int i = n - 1; i >= 0; --i) {
            v[static_cast<std::size_t>(i)] = PauliIndex(static_cast<int>(index % 4));
            index /= 4;
        }
        return PauliString(std::move(v));
    }

    int size() const { return static_cast<int>(indices_.size()); }
    PauliIndex operator[](int i) const { return indices_.at(static_cast<std::size_t>(i)); }
    const std::vector<PauliIndex>& indices() const { return indices_; }

    std::size_t index() const {
        std::size_t k = 0;
        for (auto p : indices_) k = 4 * k + static_cast<std::size_t>(p.value());
        return k;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(indices_[i].value());
        }
        return s + ")";
    }

    friend auto operator<=>(const PauliString&, const PauliString&) = default;
    friend bool operator==(const PauliString&, const PauliString&) = default;

private:
    std::vector<PauliIndex> indices_;
};

inline void require_same_length(const PauliString& a, const PauliString& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Pauli string length mismatch");
}

inline std::pair<PauliString, Phase> string_product(const PauliString& a, const PauliString& b) {
    require_same_length(a, b);
    std::vector<PauliIndex> out;
    out.reserve(static_cast<std::size_t>(a.size()));
    Phase phase;
    for (int i = 0; i < a.size(); ++i) {
        auto [idx, ph] = pauli_product(a[i], b[i]);
        out.push_back(idx);
        phase = phase * ph;
    }
    return {PauliString(std::move(out)), phase};
}

inline bool commutes(const PauliString& a, const PauliString& b) {
    require_same_length(a, b);
    int sign = 1;
    for (int i = 0; i < a.size(); ++i) sign *= commutation_sign(a[i], b[i]);
    return sign == 1;
}

inline int transposition_sign(const PauliString& a) {
    int sign = 1;
    for (auto p : a.indices()) sign *= transposition_sign(p);
    return sign;
}

namespace detail {

template <class Scalar>
Scalar unit_scalar(Phase p) {
    if constexpr (std::is_same_v<Scalar, GaussianRational>)
        return p.exact();
    else
        return p.to_complex();
}

template <class Scalar>
DenseMatrix<Scalar> single_pauli(PauliIndex a) {
    DenseMatrix<Scalar> m(2);
    switch (a.value()) {
        case 0:
            m(0, 0) = unit_scalar<Scalar>(Phase::one());
            m(1, 1) = unit_scalar<Scalar>(Phase::one());
            break;
        case 1:
            m(0, 1) = unit_scalar<Scalar>(Phase::one());
            m(1, 0) = unit_scalar<Scalar>(Phase::one());
            break;
        case 2:
            m(0, 1) = unit_scalar<Scalar>(Phase::minus_i());
            m(1, 0) = unit_scalar<Scalar>(Phase::i());
            break;
        default:
            m(0, 0) = unit_scalar<Scalar>(Phase::one());
            m(1, 1) = unit_scalar<Scalar>(Phase::minus_one());
            break;
    }
    return m;
}

}  // namespace detail

/// Kronecker product of the factors, first factor outermost. Entries lie in
/// {0, +-1, +-i}.
template <class Scalar = GaussianRational>
DenseMatrix<Scalar> dense(const PauliString& s) {
    DenseMatrix<Scalar> m = detail::single_pauli<Scalar>(s[0]);
    for (int i = 1; i < s.size(); ++i) m = kron(m, detail::single_pauli<Scalar>(s[i]));
    return m;
}

/// Action of sigma_s on a computational basis state |col>: the unique nonzero
/// entry of column `col` of dense(s), as (row, phase).
inline std::pair<std::size_t, Phase> pauli_column(const PauliString& s, std::size_t col) {
    const int n = s.size();
    std::size_t row = 0;
    Phase phase;
    for (int i = 0; i < n; ++i) {
        const int shift = n - 1 - i;
        const int bit = static_cast<int>((col >> shift) & 1U);
        int out_bit = bit;
        switch (s[i].value()) {
            case 1: out_bit = bit ^ 1; break;
            case 2:
                out_bit = bit ^ 1;
                phase = phase * (bit == 0 ? Phase::i() : Phase::minus_i());
                break;
            case 3:
                if (bit == 1) phase = phase * Phase::minus_one();
                break;
            default: break;
        }
        row |= static_cast<std::size_t>(out_bit) << shift;
    }
    return {row, phase};
}

/// Point (alpha, beta) of the 4x4 lattice; names the two-qubit string
/// sigma_alpha (x) sigma_beta.
struct LatticePoint {
    PauliIndex alpha;
    PauliIndex beta;

    constexpr int bit() const { return 4 * beta.value() + alpha.value(); }
    static constexpr LatticePoint from_bit(int b) { return {PauliIndex(b % 4), PauliIndex(b / 4)}; }
    PauliString string() const { return PauliString{alpha.value(), beta.value()}; }
    std::string str() const {
        return "(" + std::to_string(alpha.value()) + "," + std::to_string(beta.value()) + ")";
    }
    friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

/// tau_t(p) = ([t.alpha, p.alpha], [t.beta, p.beta]); involutive, tau_t(t) = (0,0).
constexpr LatticePoint tau(LatticePoint t, LatticePoint p) {
    return {pauli_product(t.alpha, p.alpha).first, pauli_product(t.beta, p.beta).first};
}

inline bool commutes(LatticePoint a, LatticePoint b) {
    return commutation_sign(a.alpha, b.alpha) * commutation_sign(a.beta, b.beta) == 1;
}

}  // namespace lattice
