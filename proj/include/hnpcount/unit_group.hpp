#pragma once

#include <stdexcept>
#include <vector>

#include "hnpcount/numth.hpp"

namespace hnpcount {

// One CRT block of (Z/mZ)^*: the factor (Z/p^k Z)^* with its canonical
// generators. Odd p: one fixed least primitive root. p = 2: trivial for k=1,
// <-1> for k=2, <-1> x <5> for k >= 3.
struct UnitBlock {
    i64 p = 0;
    int k = 0;
    i64 pk = 1;
    // generator residues mod p^k, and their orders
    std::vector<i64> gen_residues;
    std::vector<i64> gen_orders;
};

inline UnitBlock unit_block(i64 p, int k) {
    UnitBlock b;
    b.p = p;
    b.k = k;
    b.pk = 1;
    for (int i = 0; i < k; ++i) b.pk *= p;
    if (p == 2) {
        if (k == 2) {
            b.gen_residues = {3};
            b.gen_orders = {2};
        } else if (k >= 3) {
            b.gen_residues = {b.pk - 1, 5};
            b.gen_orders = {2, b.pk / 4};
        }
        return b;
    }
    i64 g = least_primitive_root(p, k);
    b.gen_residues = {g};
    b.gen_orders = {euler_phi_prime_power(p, k)};
    return b;
}

// Conductor exponent of a character of the block whose generator images have
// the given orders (the smallest level p^c the character factors through).
inline int block_conductor_exponent(const UnitBlock& b, const std::vector<i64>& image_orders) {
    if (b.p == 2) {
        if (b.k == 2) return image_orders[0] > 1 ? 2 : 0;
        if (b.k >= 3) {
            i64 dw = image_orders[1];
            if (dw > 1) return static_cast<int>(valuation(dw, 2)) + 2;
            return image_orders[0] > 1 ? 2 : 0;
        }
        return 0;
    }
    i64 d = image_orders[0];
    if (d == 1) return 0;
    return 1 + static_cast<int>(valuation(d, b.p));
}

// (Z/mZ)^* with canonical deterministic generators, lifted through CRT so
// each generator is 1 in every other block.
struct UnitGroupStructure {
    i64 m = 1;
    std::vector<UnitBlock> blocks;       // primes ascending
    std::vector<i64> gen_residues;       // CRT-lifted, block by block
    std::vector<i64> gen_orders;
    std::vector<size_t> gen_block;       // block index of each generator

    i64 phi() const {
        i64 f = 1;
        for (i64 o : gen_orders) f *= o;
        return f;
    }
};

inline UnitGroupStructure unit_group(i64 m) {
    if (m < 1) throw std::invalid_argument("unit_group: modulus must be >= 1");
    UnitGroupStructure u;
    u.m = m;
    for (auto& [p, k] : factorize(m)) u.blocks.push_back(unit_block(p, k));
    for (size_t bi = 0; bi < u.blocks.size(); ++bi) {
        const UnitBlock& b = u.blocks[bi];
        i64 rest = m / b.pk;
        for (size_t gi = 0; gi < b.gen_residues.size(); ++gi) {
            i64 a = b.gen_residues[gi] % b.pk;
            i64 lifted;
            if (rest == 1) {
                lifted = a;
            } else {
                // x = a mod p^k, x = 1 mod rest
                i64 inv = 1;
                while (mulmod(b.pk % rest, inv, rest) != 1 % rest) ++inv;
                i64 t = mulmod(((1 - a) % rest + rest) % rest, inv, rest);
                lifted = (a + static_cast<i64>(static_cast<i128>(b.pk) * t % m)) % m;
            }
            u.gen_residues.push_back(lifted);
            u.gen_orders.push_back(b.gen_orders[gi]);
            u.gen_block.push_back(bi);
        }
    }
    return u;
}

// Exponents of `a` over the block generators (brute-force dlog; used by
// oracles and small-modulus paths only).
inline std::vector<i64> unit_decompose(const UnitGroupStructure& u, i64 a) {
    a %= u.m;
    if (a < 0) a += u.m;
    if (std::gcd(a, u.m) != 1) throw std::invalid_argument("unit_decompose: not a unit");
    std::vector<i64> exps;
    for (const UnitBlock& b : u.blocks) {
        i64 r = a % b.pk;
        if (b.p == 2 && b.k >= 3) {
            i64 s = 0;
            if (r % 4 == 3) {
                s = 1;
                r = b.pk - r;
            }
            i64 e = 0, cur = 1;
            while (cur != r) {
                cur = cur * 5 % b.pk;
                if (++e > b.pk) throw std::logic_error("unit_decompose: dlog failed");
            }
            exps.push_back(s);
            exps.push_back(e);
        } else if (b.p == 2 && b.k == 2) {
            exps.push_back(r == 3 ? 1 : 0);
        } else if (b.p == 2 && b.k == 1) {
            // trivial block, no generators
        } else {
            i64 g = b.gen_residues[0];
            i64 e = 0, cur = 1;
            while (cur != r) {
                cur = mulmod(cur, g, b.pk);
                if (++e > b.pk) throw std::logic_error("unit_decompose: dlog failed");
            }
            exps.push_back(e);
        }
    }
    return exps;
}

} // namespace hnpcount
