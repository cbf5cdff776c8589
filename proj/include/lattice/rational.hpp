#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lattice {

/// Arbitrary-precision rational, GMP backed. Expression templates are off so
/// `auto` always binds a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num) / Rational(den);
}

/// Always "numerator/denominator", e.g. "1/5", "0/1", "-3/4".
inline std::string to_string(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Accepts "p", "p/q" and plain decimals such as "0.6" or "-1.25".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw std::invalid_argument("not a rational number: '" + s + "'"); };
    if (s.empty()) fail();
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            Rational num(s.substr(0, slash));
            Rational den(s.substr(slash + 1));
            if (den == 0) fail();
            return num / den;
        }
        if (auto dot = s.find('.'); dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            if (digits.empty() || digits == "-" || digits == "+") fail();
            auto frac_len = s.size() - dot - 1;
            Rational scale(1);
            for (std::size_t i = 0; i < frac_len; ++i) scale *= 10;
            return Rational(digits) / scale;
        }
        return Rational(s);
    } catch (const std::runtime_error&) {
        fail();
    }
    return {};
}

/// Exact complex scalar re + i*im with rational parts.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(std::int64_t r) : re(r), im(0) {}

    static GaussianRational i_unit() { return {Rational(0), Rational(1)}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }
inline std::complex<double> conj(std::complex<double> z) { return std::conj(z); }

}  // namespace lattice
