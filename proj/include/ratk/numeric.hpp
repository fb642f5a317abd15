#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ratk {

/// Arbitrary-precision integer. Expression templates are disabled so the
/// type behaves like a plain value inside Eigen expressions.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Arbitrary-precision rational, always stored in lowest terms.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntMatrix = DenseMatrix<Integer>;
using RatMatrix = DenseMatrix<Rational>;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;

/// Malformed user input (documents, CLI flags, invalid algebraic data).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two independent routes produced contradictory answers.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline bool fits_int64(const Integer& v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

inline Integer parse_integer(const std::string& text) {
    if (text.empty()) throw InputError("empty integer literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw InputError("malformed integer literal '" + text + "'");
    for (std::size_t k = i; k < text.size(); ++k)
        if (text[k] < '0' || text[k] > '9')
            throw InputError("malformed integer literal '" + text + "'");
    return Integer(text[0] == '+' ? text.substr(1) : text);
}

/// Accepts "p", "p/q" with q != 0.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(num, den);
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b < a) ++q;
    return q;
}

template <typename Scalar>
DenseMatrix<Rational> to_rational(const DenseMatrix<Scalar>& m) {
    return m.unaryExpr([](const Scalar& x) { return Rational(x); });
}

} // namespace ratk
