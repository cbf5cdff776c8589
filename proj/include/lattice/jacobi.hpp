#pragma once

#include "lattice/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lattice {

struct SpectralReport {
    std::vector<double> eigenvalues;  // ascending
    double min_eigenvalue = 0;
    double tolerance = 1e-13;
};

struct EigenSystem {
    std::vector<double> eigenvalues;  // ascending
    FloatMatrix vectors;              // column k belongs to eigenvalues[k]
};

namespace detail {

inline double off_diagonal_norm(const FloatMatrix& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Cyclic complex Jacobi. Each (p,q) step first rotates the phase of a_pq
// away, then applies a real Givens rotation that zeroes it.
inline EigenSystem jacobi(FloatMatrix a, bool want_vectors, double tol) {
    if (!is_hermitian(a, 1e-12)) throw std::invalid_argument("matrix is not Hermitian");
    const std::size_t n = a.dim();
    FloatMatrix v = want_vectors ? FloatMatrix::identity(n) : FloatMatrix();
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) >= tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;
                const std::complex<double> ph = apq / r;  // e^{i phi}
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double theta = (aqq - app) / (2 * r);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;

                // columns: a <- a U with U = diag-phase then rotation
                // U_pp = c, U_pq = s * ph, U_qp = -s * conj(ph), U_qq = c
                const std::complex<double> upq = s * ph, uqp = -s * std::conj(ph);
                for (std::size_t k = 0; k < n; ++k) {
                    const auto akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + uqp * akq;
                    a(k, q) = upq * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const auto apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                if (want_vectors)
                    for (std::size_t k = 0; k < n; ++k) {
                        const auto vkp = v(k, p), vkq = v(k, q);
                        v(k, p) = c * vkp + uqp * vkq;
                        v(k, q) = upq * vkp + c * vkq;
                    }
            }
    }
    // rounding can stall just above tol on large inputs; only a gross miss is fatal
    if (off_diagonal_norm(a) >= 1e-9) throw std::runtime_error("Jacobi iteration did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenSystem out;
    out.eigenvalues.reserve(n);
    for (auto k : order) out.eigenvalues.push_back(a(k, k).real());
    if (want_vectors) {
        out.vectors = FloatMatrix(n);
        for (std::size_t col = 0; col < n; ++col)
            for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
    }
    return out;
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix (Hermitian within 1e-12), ascending.
/// Iterates until the off-diagonal Frobenius norm drops below 1e-13.
inline SpectralReport hermitian_eigenvalues(const FloatMatrix& m) {
    constexpr double tol = 1e-13;
    auto sys = detail::jacobi(m, false, tol);
    SpectralReport r;
    r.eigenvalues = std::move(sys.eigenvalues);
    r.min_eigenvalue = r.eigenvalues.empty() ? 0.0 : r.eigenvalues.front();
    r.tolerance = tol;
    return r;
}

inline SpectralReport hermitian_eigenvalues(const ExactMatrix& m) { return hermitian_eigenvalues(to_float(m)); }

inline EigenSystem hermitian_eigensystem(const FloatMatrix& m) { return detail::jacobi(m, true, 1e-13); }

}  // namespace lattice
