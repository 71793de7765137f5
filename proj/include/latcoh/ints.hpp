#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>

#include "latcoh/error.hpp"

namespace latcoh {

using i64 = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

// Overflow-checked i64 arithmetic. All exact linear algebra runs on these by
// default and escalates to BigInt when a computation throws errc::overflow.

inline i64 num_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) fail(errc::overflow, "i64 add overflow");
    return r;
}
inline i64 num_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) fail(errc::overflow, "i64 sub overflow");
    return r;
}
inline i64 num_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) fail(errc::overflow, "i64 mul overflow");
    return r;
}
inline i64 num_neg(i64 a) { return num_sub(0, a); }
inline i64 num_abs(i64 a) { return a < 0 ? num_neg(a) : a; }
inline bool num_is_zero(i64 a) { return a == 0; }
inline int num_sign(i64 a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }
inline i64 num_gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline BigInt num_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt num_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt num_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt num_neg(const BigInt& a) { return -a; }
inline BigInt num_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline bool num_is_zero(const BigInt& a) { return a.is_zero(); }
inline int num_sign(const BigInt& a) { return a.sign(); }
inline BigInt num_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

// Exact quotient; the caller guarantees divisibility.
template <class S>
S num_divexact(const S& a, const S& b) {
    if (num_is_zero(b)) fail(errc::invalid_input, "division by zero");
    S q = a / b;
    if (!num_is_zero(S(a - q * b))) fail(errc::construction_error, "inexact division in exact solve");
    return q;
}

// g = gcd(a,b) > 0 with x*a + y*b = g. Coefficients stay below max(|a|,|b|),
// so plain ops are safe for i64 inputs.
template <class S>
S num_gcdext(const S& a, const S& b, S& x, S& y) {
    S old_r = a, r = b;
    S old_x = S(1), cur_x = S(0);
    S old_y = S(0), cur_y = S(1);
    while (!num_is_zero(r)) {
        S q = old_r / r;
        S t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * cur_x; old_x = cur_x; cur_x = t;
        t = old_y - q * cur_y; old_y = cur_y; cur_y = t;
    }
    if (num_sign(old_r) < 0) { old_r = num_neg(old_r); old_x = num_neg(old_x); old_y = num_neg(old_y); }
    x = old_x;
    y = old_y;
    return old_r;
}

inline i64 to_i64(i64 v) { return v; }
inline i64 to_i64(const BigInt& v) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        fail(errc::overflow, "exact result exceeds 64-bit range");
    return static_cast<i64>(v);
}

inline i64 checked_pow(i64 base, int exp) {
    i64 r = 1;
    for (int k = 0; k < exp; ++k) r = num_mul(r, base);
    return r;
}

} // namespace latcoh
