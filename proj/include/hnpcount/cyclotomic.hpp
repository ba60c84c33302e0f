#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "hnpcount/numth.hpp"
#include "hnpcount/rational.hpp"

namespace hnpcount {

// Cyclotomic polynomial Phi_N, integer coefficients, computed by dividing
// x^N - 1 by the Phi_d for proper divisors d.
inline std::vector<i64> cyclotomic_polynomial(i64 N) {
    std::vector<std::vector<i64>> phi(static_cast<size_t>(N) + 1);
    for (i64 n = 1; n <= N; ++n) {
        if (N % n != 0) continue;
        std::vector<i64> num(static_cast<size_t>(n) + 1, 0);
        num[0] = -1;
        num[static_cast<size_t>(n)] = 1;  // x^n - 1
        for (i64 d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            // exact polynomial division by phi[d]
            const auto& div = phi[static_cast<size_t>(d)];
            std::vector<i64> quot(num.size() - div.size() + 1, 0);
            std::vector<i64> rem = num;
            for (size_t i = quot.size(); i-- > 0;) {
                i64 c = rem[i + div.size() - 1] / div.back();
                quot[i] = c;
                for (size_t j = 0; j < div.size(); ++j) rem[i + j] -= c * div[j];
            }
            num = quot;
        }
        phi[static_cast<size_t>(n)] = num;
    }
    return phi[static_cast<size_t>(N)];
}

// Exact element of Q(zeta_N), stored as sum_k c[k] zeta_N^k with rational
// coefficients (not reduced; reduction happens on comparisons).
struct CycSum {
    i64 N = 1;
    std::vector<Rat> c;

    CycSum() : N(1), c(1) {}
    explicit CycSum(i64 n) : N(n), c(static_cast<size_t>(n)) {}

    static CycSum root(i64 n, i64 k) {
        CycSum s(n);
        k %= n;
        if (k < 0) k += n;
        s.c[static_cast<size_t>(k)] = Rat(1);
        return s;
    }
    static CycSum rational(i64 n, Rat r) {
        CycSum s(n);
        s.c[0] = r;
        return s;
    }

    CycSum& operator+=(const CycSum& o) {
        for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
        return *this;
    }
    CycSum& scale(Rat r) {
        for (auto& x : c) x *= r;
        return *this;
    }
    CycSum& mul_root(i64 k) {
        k %= N;
        if (k < 0) k += N;
        std::vector<Rat> nc(c.size());
        for (size_t i = 0; i < c.size(); ++i) nc[(i + static_cast<size_t>(k)) % c.size()] = c[i];
        c = std::move(nc);
        return *this;
    }

    std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            double a = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(N);
            z += c[k].to_double() * std::complex<double>(std::cos(a), std::sin(a));
        }
        return z;
    }

    // canonical representative: remainder mod Phi_N (monic), degree < phi(N)
    std::vector<Rat> reduced() const {
        auto phi = cyclotomic_polynomial(N);
        size_t deg = phi.size() - 1;
        std::vector<Rat> rem(c);
        for (size_t i = rem.size(); i-- > deg;) {
            if (rem[i].is_zero()) continue;
            Rat q = rem[i];  // phi is monic
            for (size_t j = 0; j < phi.size(); ++j) rem[i - deg + j] -= q * Rat(phi[j]);
        }
        rem.resize(std::max<size_t>(deg, 1), Rat(0));
        return rem;
    }

    bool equals_rational(Rat r) const {
        auto red = reduced();
        if (red.empty()) return r.is_zero();  // N = 1 edge: phi has degree 1
        if (red[0] != r) return false;
        for (size_t k = 1; k < red.size(); ++k)
            if (!red[k].is_zero()) return false;
        return true;
    }

    std::optional<Rat> as_rational() const {
        auto red = reduced();
        for (size_t k = 1; k < red.size(); ++k)
            if (!red[k].is_zero()) return std::nullopt;
        return red.empty() ? Rat(0) : red[0];
    }

    bool is_zero() const { return equals_rational(Rat(0)); }
};

inline CycSum operator*(const CycSum& a, const CycSum& b) {
    CycSum out(a.N);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            out.c[(i + j) % out.c.size()] += a.c[i] * b.c[j];
        }
    }
    return out;
}

} // namespace hnpcount
