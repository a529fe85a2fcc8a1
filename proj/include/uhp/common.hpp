#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace uhp {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Division by zero, out-of-domain root extraction, bad group element tags.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Result would carry fewer guaranteed digits than the configured floor.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& what) : Error(what) {}
};

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// p^e as u64; throws on overflow.
inline u64 ipow(u64 p, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p) throw Error("ipow overflow");
        r *= p;
    }
    return r;
}

// p-adic valuation of n (n != 0).
inline int vp_of(u64 n, u64 p) {
    if (n == 0) throw DomainError("vp_of(0)");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline i64 igcd(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { i64 t = a % b; a = b; b = t; }
    return a;
}

}  // namespace uhp
