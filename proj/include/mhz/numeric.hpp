#pragma once

// Exact scalar types shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mhz {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Raised when caller-supplied data violates an operation's contract.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a checked identity that must hold does not.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a table, enumeration or truncation would exceed a hard cap.
class CapExceeded : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline Int ipow(const Int& base, unsigned exp)
{
    Int r = 1;
    Int b = base;
    while (exp != 0) {
        if (exp & 1u) {
            r *= b;
        }
        exp >>= 1;
        if (exp != 0) {
            b *= b;
        }
    }
    return r;
}

inline Rational rpow(const Rational& base, int exp)
{
    if (exp >= 0) {
        return Rational(boost::multiprecision::pow(numerator(base), static_cast<unsigned>(exp)),
                        boost::multiprecision::pow(denominator(base), static_cast<unsigned>(exp)));
    }
    if (base == 0) {
        throw std::domain_error("negative power of zero");
    }
    return 1 / rpow(base, -exp);
}

inline Int binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    Int r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("int64 overflow in addition");
    }
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("int64 overflow in multiplication");
    }
    return r;
}

inline std::int64_t ipow64(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r = checked_mul(r, base);
    }
    return r;
}

inline std::string to_string(const Rational& r)
{
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

} // namespace mhz
