#pragma once

#include "lattice/jacobi.hpp"
#include "lattice/pattern.hpp"
#include "lattice/pauli.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lattice {

constexpr std::size_t pow4(int n) { return std::size_t{1} << (2 * n); }

/// sigma-diagonal state sum_mu r_mu P_mu. r is indexed by PauliString::index(),
/// so for n = 2 the string (alpha, beta) sits at 4*alpha + beta.
class SigmaDiagonalState {
public:
    SigmaDiagonalState(int n, std::vector<Rational> r) : n_(n), r_(std::move(r)) {
        if (n < 1 || n > 3) throw std::invalid_argument("n must be in 1..3");
        if (r_.size() != pow4(n)) throw std::invalid_argument("coefficient vector has wrong length");
        Rational total(0);
        for (const auto& x : r_) {
            if (x < 0) throw std::invalid_argument("negative coefficient");
            total += x;
        }
        if (total != 1) throw std::invalid_argument("coefficients must sum to 1");
    }

    int n() const { return n_; }
    const std::vector<Rational>& r() const { return r_; }
    const Rational& r(const PauliString& s) const { return r_.at(s.index()); }

private:
    int n_;
    std::vector<Rational> r_;
};

/// sqrt(2^n) * (1 (x) sigma_m)|Psi+>: entries in {0, +-1, +-i}.
inline std::vector<GaussianRational> scaled_basis_vector(const PauliString& m) {
    const std::size_t d = std::size_t{1} << m.size();
    std::vector<GaussianRational> v(d * d, GaussianRational(0));
    for (std::size_t i = 0; i < d; ++i) {
        auto [row, phase] = pauli_column(m, i);
        v[i * d + row] = phase.exact();
    }
    return v;
}

/// |Psi_m> = (1 (x) sigma_m)|Psi+>, unit norm.
inline ComplexVector basis_vector(const PauliString& m) {
    const std::size_t d = std::size_t{1} << m.size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexVector v(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        auto [row, phase] = pauli_column(m, i);
        v[i * d + row] = phase.to_complex() * scale;
    }
    return v;
}

inline ComplexVector symmetric_vector(int n) { return basis_vector(PauliString::from_index(0, n)); }

/// Exact <Psi_a|Psi_b>.
inline GaussianRational inner_product(const PauliString& a, const PauliString& b) {
    const auto va = scaled_basis_vector(a), vb = scaled_basis_vector(b);
    GaussianRational s(0);
    for (std::size_t k = 0; k < va.size(); ++k) s += conj(va[k]) * vb[k];
    const std::int64_t d = std::int64_t{1} << a.size();
    return s * GaussianRational(make_rational(1, d));
}

/// Exact density matrix. Each P_mu has only d^2 nonzero entries, so the sum
/// is accumulated sparsely.
inline ExactMatrix density_matrix(const SigmaDiagonalState& s) {
    const int n = s.n();
    const std::size_t d = std::size_t{1} << n, dim = d * d;
    ExactMatrix rho(dim);
    std::vector<std::size_t> pos(d);
    std::vector<Phase> ph(d);
    const Rational inv_d = make_rational(1, static_cast<std::int64_t>(d));
    for (std::size_t mu = 0; mu < s.r().size(); ++mu) {
        const Rational& r = s.r()[mu];
        if (r == 0) continue;
        const auto m = PauliString::from_index(mu, n);
        for (std::size_t i = 0; i < d; ++i) {
            auto [row, phase] = pauli_column(m, i);
            pos[i] = i * d + row;
            ph[i] = phase;
        }
        const Rational w = r * inv_d;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const GaussianRational z = (ph[i] * ph[j].conj()).exact();
                rho(pos[i], pos[j]) += GaussianRational(z.re * w, z.im * w);
            }
    }
    return rho;
}

/// Transpose of the second tensor factor: ((i,j),(k,l)) -> ((i,l),(k,j)).
template <class Scalar>
DenseMatrix<Scalar> partial_transpose(const DenseMatrix<Scalar>& m, int n) {
    const std::size_t d = std::size_t{1} << n;
    if (m.dim() != d * d) throw std::invalid_argument("partial transpose: dimension is not 4^n");
    DenseMatrix<Scalar> out(m.dim());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l) out(i * d + l, k * d + j) = m(i * d + j, k * d + l);
    return out;
}

struct SpectralPpt {
    bool ppt = true;
    double margin = 0;  // minimum eigenvalue of the partial transpose
    SpectralReport spectrum;
};

inline constexpr double kPptThreshold = -1e-10;

inline SpectralPpt ppt_spectral(const SigmaDiagonalState& s) {
    SpectralPpt out;
    out.spectrum = hermitian_eigenvalues(partial_transpose(density_matrix(s), s.n()));
    out.margin = out.spectrum.min_eigenvalue;
    out.ppt = out.margin >= kPptThreshold;
    return out;
}

inline SigmaDiagonalState lattice_state(Pattern I) {
    if (I.empty()) throw std::invalid_argument("empty pattern");
    std::vector<Rational> r(16, Rational(0));
    const Rational w = make_rational(1, I.size());
    for (auto p : I.points()) r[static_cast<std::size_t>(4 * p.alpha.value() + p.beta.value())] = w;
    return SigmaDiagonalState(2, std::move(r));
}

using BellVector = std::array<Rational, 4>;

inline void require_normalized(const BellVector& r) {
    Rational t(0);
    for (const auto& x : r) {
        if (x < 0) throw std::invalid_argument("negative Bell coefficient");
        t += x;
    }
    if (t != 1) throw std::invalid_argument("Bell coefficients must sum to 1");
}

/// Partial-transpose eigenvalues of the n = 1 state sum r_mu P_mu; entry alpha
/// is the eigenvalue on |Psi_alpha>, namely 1/2 - r_{[alpha,2]}.
inline BellVector bell_pt_coefficients(const BellVector& r) {
    require_normalized(r);
    BellVector c;
    const Rational half = make_rational(1, 2);
    for (int a = 0; a < 4; ++a) c[static_cast<std::size_t>(a)] = half - r[static_cast<std::size_t>(a ^ 2)];
    return c;
}

inline bool bell_separable(const BellVector& r) {
    require_normalized(r);
    const Rational half = make_rational(1, 2);
    for (const auto& x : r)
        if (x > half) return false;
    return true;
}

}  // namespace lattice
