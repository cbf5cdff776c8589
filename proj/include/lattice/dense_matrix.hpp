#pragma once

#include "lattice/rational.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lattice {

/// Square dense matrix, row-major. The scalar type selects the arithmetic
/// mode: GaussianRational is exact, std::complex<double> is the float mode
/// used at the eigensolver boundary.
template <class Scalar>
class DenseMatrix {
public:
    using value_type = Scalar;

    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, Scalar(0)) {}

    static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = Scalar(1);
        return m;
    }

    std::size_t dim() const { return dim_; }

    Scalar& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Scalar& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    DenseMatrix& operator-=(const DenseMatrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    DenseMatrix& operator*=(const Scalar& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, const Scalar& s) { return a *= s; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        a.require_same_dim(b);
        const std::size_t n = a.dim_;
        DenseMatrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const Scalar& aik = a(i, k);
                if (aik == Scalar(0)) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.dim_ == b.dim_ && a.data_ == b.data_;
    }

    DenseMatrix adjoint() const {
        DenseMatrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = conj((*this)(i, j));
        return r;
    }

    DenseMatrix transpose() const {
        DenseMatrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Scalar trace() const {
        Scalar t(0);
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    const std::vector<Scalar>& data() const { return data_; }

private:
    void require_same_dim(const DenseMatrix& o) const {
        if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
    }

    std::size_t dim_ = 0;
    std::vector<Scalar> data_;
};

using ExactMatrix = DenseMatrix<GaussianRational>;
using FloatMatrix = DenseMatrix<std::complex<double>>;
using ComplexVector = std::vector<std::complex<double>>;

inline ComplexVector operator*(const FloatMatrix& m, const ComplexVector& v) {
    if (v.size() != m.dim()) throw std::invalid_argument("matrix-vector dimension mismatch");
    ComplexVector out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

inline std::complex<double> dot(const ComplexVector& a, const ComplexVector& b) {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

inline double norm(const ComplexVector& v) { return std::sqrt(std::abs(dot(v, v))); }

template <class Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    DenseMatrix<Scalar> r(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            if (a(i, j) == Scalar(0)) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
        }
    return r;
}

inline FloatMatrix to_float(const ExactMatrix& m) {
    FloatMatrix r(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = m(i, j).to_complex();
    return r;
}

inline double max_abs_diff(const FloatMatrix& a, const FloatMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
    double d = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
    return d;
}

inline bool is_hermitian(const ExactMatrix& m) { return m.adjoint() == m; }

inline bool is_hermitian(const FloatMatrix& m, double tol) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

}  // namespace lattice
