#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hnpcount {

using i64 = long long;
using i128 = __int128;

inline i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }

inline i64 powmod(i64 a, i64 e, i64 m) {
    if (m == 1) return 0;
    i64 r = 1;
    a %= m;
    if (a < 0) a += m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// a^e as 64-bit, saturating past `cap` (returns cap+1 when the exact value exceeds it).
inline i64 pow_capped(i64 a, int e, i64 cap) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= a;
        if (r > cap) return cap + 1;
    }
    return static_cast<i64>(r);
}

// True iff base^e <= bound, computed exactly.
inline bool pow_le(i64 base, int e, i64 bound) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
        if (r > bound) return false;
    }
    return true;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
        if (n % d == 0) return n == d;
    }
    for (i64 d = 17; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline std::vector<i64> primes_up_to(i64 n) {
    std::vector<bool> comp(static_cast<size_t>(n + 1), false);
    std::vector<i64> out;
    for (i64 i = 2; i <= n; ++i) {
        if (!comp[static_cast<size_t>(i)]) {
            out.push_back(i);
            for (i64 j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
        }
    }
    return out;
}

inline i64 euler_phi_prime_power(i64 p, int k) {
    i64 r = p - 1;
    for (int i = 1; i < k; ++i) r *= p;
    return r;
}

inline i64 valuation(i64 n, i64 p) {
    i64 v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Least r >= 2 generating (Z/p^k Z)^*, p odd prime.
inline i64 least_primitive_root(i64 p, int k = 1) {
    i64 mod = 1;
    for (int i = 0; i < k; ++i) mod *= p;
    i64 phi = euler_phi_prime_power(p, k);
    auto fac = factorize(phi);
    for (i64 r = 2; ; ++r) {
        if (r % p == 0) continue;
        bool ok = true;
        for (auto& [q, e] : fac) {
            (void)e;
            if (powmod(r, phi / q, mod) == 1) { ok = false; break; }
        }
        if (ok) return r;
    }
}

inline i64 sqfree_kernel(i64 n) {
    if (n == 0) throw std::domain_error("sqfree_kernel(0)");
    i64 sign = n < 0 ? -1 : 1;
    n = n < 0 ? -n : n;
    i64 k = 1;
    for (auto& [p, e] : factorize(n))
        if (e % 2) k *= p;
    return sign * k;
}

// Legendre symbol (a|p) for odd prime p.
inline int legendre(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

} // namespace hnpcount
