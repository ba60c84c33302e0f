#pragma once

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "hnpcount/numth.hpp"

namespace hnpcount {

// Dense integer matrix, row-major. Sizes here are tiny (group ranks), so no
// attention is paid to sparsity or entry growth beyond 64 bits.
using Mat = std::vector<std::vector<i64>>;

inline Mat mat_identity(size_t n) {
    Mat m(n, std::vector<i64>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline size_t mat_rows(const Mat& m) { return m.size(); }
inline size_t mat_cols(const Mat& m) { return m.empty() ? 0 : m[0].size(); }

inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = mat_rows(a), k = mat_cols(a), c = mat_cols(b);
    assert(k == mat_rows(b));
    Mat r(n, std::vector<i64>(c, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (size_t l = 0; l < c; ++l) r[i][l] += a[i][j] * b[j][l];
        }
    return r;
}

// Hermite normal form of the row lattice of `rows` (each row a generator of a
// full-rank lattice in Z^k). Returns the unique k x k upper-triangular basis
// with positive pivots and entries above each pivot reduced mod the pivot.
inline Mat row_hnf(Mat rows, size_t k) {
    for (auto& r : rows) assert(r.size() == k);
    size_t nr = rows.size();
    for (size_t col = 0, top = 0; col < k; ++col, ++top) {
        if (top >= nr) throw std::invalid_argument("row_hnf: lattice not full rank");
        // gcd-eliminate column `col` among rows top..nr-1
        while (true) {
            size_t best = nr;
            for (size_t r = top; r < nr; ++r)
                if (rows[r][col] != 0 && (best == nr || std::abs(rows[r][col]) < std::abs(rows[best][col])))
                    best = r;
            if (best == nr) throw std::invalid_argument("row_hnf: lattice not full rank");
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (size_t r = top + 1; r < nr; ++r) {
                if (rows[r][col] == 0) continue;
                i64 q = rows[r][col] / rows[top][col];
                for (size_t c = 0; c < k; ++c) rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[top][col] < 0)
            for (size_t c = 0; c < k; ++c) rows[top][c] = -rows[top][c];
        // reduce entries above the pivot
        for (size_t r = 0; r < top; ++r) {
            i64 q = rows[r][col] / rows[top][col];
            if (rows[r][col] % rows[top][col] < 0) --q;
            if (q != 0)
                for (size_t c = 0; c < k; ++c) rows[r][c] -= q * rows[top][c];
        }
    }
    rows.resize(k);
    return rows;
}

struct SmithResult {
    Mat D;     // diagonal, d1 | d2 | ...
    Mat U, V;  // unimodular, D = U * A * V
    Mat Vinv;  // inverse of V
};

// Smith normal form with transforms. Works for any rectangular matrix.
inline SmithResult smith(const Mat& A) {
    size_t n = mat_rows(A), m = mat_cols(A);
    SmithResult res;
    res.D = A;
    res.U = mat_identity(n);
    res.V = mat_identity(m);
    res.Vinv = mat_identity(m);
    Mat& D = res.D;

    auto row_add = [&](size_t dst, size_t src, i64 t) {
        for (size_t c = 0; c < m; ++c) D[dst][c] += t * D[src][c];
        for (size_t c = 0; c < n; ++c) res.U[dst][c] += t * res.U[src][c];
    };
    auto col_add = [&](size_t dst, size_t src, i64 t) {
        for (size_t r = 0; r < n; ++r) D[r][dst] += t * D[r][src];
        for (size_t r = 0; r < m; ++r) res.V[r][dst] += t * res.V[r][src];
        for (size_t c = 0; c < m; ++c) res.Vinv[src][c] -= t * res.Vinv[dst][c];
    };
    auto row_swap = [&](size_t a, size_t b) {
        if (a == b) return;
        std::swap(D[a], D[b]);
        std::swap(res.U[a], res.U[b]);
    };
    auto col_swap = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t r = 0; r < n; ++r) std::swap(D[r][a], D[r][b]);
        for (size_t r = 0; r < m; ++r) std::swap(res.V[r][a], res.V[r][b]);
        std::swap(res.Vinv[a], res.Vinv[b]);
    };
    auto row_neg = [&](size_t r) {
        for (size_t c = 0; c < m; ++c) D[r][c] = -D[r][c];
        for (size_t c = 0; c < n; ++c) res.U[r][c] = -res.U[r][c];
    };

    size_t t = std::min(n, m);
    for (size_t s = 0; s < t; ++s) {
        while (true) {
            // locate smallest nonzero entry in the trailing block
            size_t pr = n, pc = m;
            for (size_t i = s; i < n; ++i)
                for (size_t j = s; j < m; ++j)
                    if (D[i][j] != 0 && (pr == n || std::abs(D[i][j]) < std::abs(D[pr][pc]))) { pr = i; pc = j; }
            if (pr == n) break;  // block is zero
            row_swap(s, pr);
            col_swap(s, pc);
            bool again = false;
            for (size_t i = s + 1; i < n; ++i)
                if (D[i][s] != 0) { row_add(i, s, -(D[i][s] / D[s][s])); again = again || D[i][s] != 0; }
            for (size_t j = s + 1; j < m; ++j)
                if (D[s][j] != 0) { col_add(j, s, -(D[s][j] / D[s][s])); again = again || D[s][j] != 0; }
            if (again) continue;
            // enforce divisibility of the remaining block by the pivot
            bool fixed = true;
            for (size_t i = s + 1; i < n && fixed; ++i)
                for (size_t j = s + 1; j < m && fixed; ++j)
                    if (D[i][j] % D[s][s] != 0) { row_add(s, i, 1); fixed = false; }
            if (fixed) break;
        }
        if (s < n && s < m && D[s][s] < 0) row_neg(s);
    }
    return res;
}

inline std::vector<i64> smith_diagonal(const Mat& A) {
    auto r = smith(A);
    std::vector<i64> d;
    size_t t = std::min(mat_rows(r.D), mat_cols(r.D));
    for (size_t i = 0; i < t; ++i) d.push_back(r.D[i][i]);
    return d;
}

} // namespace hnpcount
