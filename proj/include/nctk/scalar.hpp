// Exact scalars: rationals (GMP) and Gaussian rationals Q(i).
#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nctk {

using Q = mpq_class;

/** @brief Gaussian rational re + im*i with both parts in lowest terms. */
struct QI {
    Q re;
    Q im;

    QI() = default;
    QI(const Q& r) : re(r), im(0) {}                       // NOLINT: implicit embedding
    QI(long r) : re(r), im(0) {}                           // NOLINT
    QI(const Q& r, const Q& i) : re(r), im(i) {}

    QI operator+(const QI& o) const { return {re + o.re, im + o.im}; }
    QI operator-(const QI& o) const { return {re - o.re, im - o.im}; }
    QI operator-() const { return {-re, -im}; }
    QI operator*(const QI& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QI operator/(const QI& o) const;
    QI& operator+=(const QI& o) { re += o.re; im += o.im; return *this; }
    QI& operator-=(const QI& o) { re -= o.re; im -= o.im; return *this; }
    QI& operator*=(const QI& o) { *this = *this * o; return *this; }
    bool operator==(const QI& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QI& o) const { return !(*this == o); }
};

inline QI conj(const QI& x) { return {x.re, -x.im}; }
inline Q conj(const Q& x) { return x; }

inline bool is_zero(const Q& x) { return sgn(x) == 0; }
inline bool is_zero(const QI& x) { return sgn(x.re) == 0 && sgn(x.im) == 0; }
inline bool is_real(const QI& x) { return sgn(x.im) == 0; }

/// Parses "p", "p/q", "-p/q". Throws nctk::Error(ParseError) on bad input.
Q parse_rational(std::string_view s);
/// Parses "a", "b*i", "a+b*i", "a-b*i", "i", "-i" with rational a, b.
QI parse_gaussian(std::string_view s);

std::string to_string(const Q& x);
std::string to_string(const QI& x);

}  // namespace nctk
