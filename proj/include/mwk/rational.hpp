#pragma once

#include "mwk/errors.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace mwk {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer product out of range");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer sum out of range");
    return r;
}

// Exact rational on checked 64-bit integers, always reduced, den > 0.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw ZeroElement("zero denominator");
        if (num == 0) { den = 1; return; }
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        num /= g;
        den /= g;
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }
    int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                   checked_mul(a.den, b.den));
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(checked_add(checked_mul(a.num, b.den), -checked_mul(b.num, a.den)),
                   checked_mul(a.den, b.den));
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw ZeroElement("division by zero");
        return Rat(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
    }
    Rat operator-() const { Rat r(*this); r.num = -r.num; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

// Trial division up to `bound`; the leftover cofactor is accepted as prime when it is
// provably prime (≤ bound²), otherwise the element is rejected.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n, std::int64_t bound) {
    if (n == 0) throw ZeroElement("factorize(0)");
    if (n < 0) n = -n;
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p <= bound && p * p <= n; p == 2 ? p = 3 : p += 2) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        if (n > bound && n > bound * bound)
            throw FactorBoundExceeded("cofactor " + std::to_string(n) +
                                      " not certifiably prime within factor bound " +
                                      std::to_string(bound));
        out.emplace_back(n, 1);
    }
    return out;
}

// Signed squarefree part of n (n / largest-square-divisor), via factorization.
inline std::int64_t squarefree_part(std::int64_t n, std::int64_t bound) {
    int s = n < 0 ? -1 : 1;
    std::int64_t r = 1;
    for (auto [p, e] : factorize(n, bound))
        if (e & 1) r = checked_mul(r, p);
    return s * r;
}

// Squarefree part of two squarefree factors: ab ~ (a/g)(b/g) with g = gcd.
inline std::int64_t squarefree_mul(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    return checked_mul(a / g, b / g);
}

inline std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = (std::int64_t)std::sqrt((double)n);
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square_int(std::int64_t n) {
    if (n < 0) return false;
    std::int64_t r = isqrt64(n);
    return r * r == n;
}

inline bool is_square_rat(const Rat& q) {
    return q.num >= 0 && is_square_int(q.num) && is_square_int(q.den);
}

// p-adic valuation of a nonzero rational.
inline int valuation(const Rat& q, std::int64_t p) {
    if (q.is_zero()) throw ZeroElement("valuation of 0");
    int v = 0;
    for (std::int64_t n = q.num < 0 ? -q.num : q.num; n % p == 0; n /= p) ++v;
    for (std::int64_t d = q.den; d % p == 0; d /= p) --v;
    return v;
}

// Unit part of q at p (q / p^v) reduced mod p, in 1..p-1.
inline std::int64_t unit_mod_p(const Rat& q, std::int64_t p) {
    std::int64_t n = q.num, d = q.den;
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
    n %= p; if (n < 0) n += p;
    d %= p;
    // d^(p-2) mod p
    std::int64_t inv = 1, base = d, e = p - 2;
    while (e) {
        if (e & 1) inv = (__int128)inv * base % p;
        base = (__int128)base * base % p;
        e >>= 1;
    }
    return (__int128)n * inv % p;
}

} // namespace mwk
