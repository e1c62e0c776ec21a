#ifndef LIFTCOAL_RATIONAL_HPP
#define LIFTCOAL_RATIONAL_HPP

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace liftcoal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(long long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    BigInt r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

// n!! for n >= -1; by convention (-1)!! = 0!! = 1.
inline BigInt double_factorial(long long n) {
    if (n < -1) throw std::invalid_argument("double_factorial: argument < -1");
    BigInt r = 1;
    for (long long i = n; i >= 2; i -= 2) r *= i;
    return r;
}

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline BigInt catalan(long long n) {
    if (n < 0) throw std::invalid_argument("catalan: negative argument");
    return factorial(2 * n) / (factorial(n) * factorial(n + 1));
}

// Number of plane-oriented recursive trees on n labeled nodes: (2(n-1)-1)!!
inline BigInt port_count(long long n) {
    if (n < 1) throw std::invalid_argument("port_count: n must be >= 1");
    return double_factorial(2 * (n - 1) - 1);
}

inline std::string to_fraction_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r);
}

}  // namespace liftcoal

#endif
