#include "morava/zpmatrix.hpp"

#include <algorithm>

namespace morava {

std::vector<u64> ZpMat::apply(const std::vector<u64>& x) const {
    std::vector<u64> y(rows, 0);
    for (int i = 0; i < rows; ++i) {
        u128 acc = 0;
        for (int j = 0; j < cols; ++j) {
            acc += (u128)at(i, j) * x[j] % ctx.mod;
        }
        y[i] = (u64)(acc % ctx.mod);
    }
    return y;
}

ZpMat ZpMat::mul(const ZpMat& o) const {
    ZpMat r(ctx, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            u64 x = at(i, k);
            if (!x) continue;
            for (int j = 0; j < o.cols; ++j)
                r.at(i, j) = ctx.add(r.at(i, j), ctx.mul(x, o.at(k, j)));
        }
    return r;
}

ZpMat ZpMat::identity(const PadicCtx& c, int n) {
    ZpMat m(c, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % c.mod;
    return m;
}

ZpSolver::ZpSolver(const ZpMat& A) : A_(A) {
    const PadicCtx& c = A_.ctx;
    int m = A_.rows, n = A_.cols;
    rowp_.resize(m);
    colp_.resize(n);
    for (int i = 0; i < m; ++i) rowp_[i] = i;
    for (int j = 0; j < n; ++j) colp_[j] = j;
    // work on a permuted copy held in A_ directly (swap rows/cols physically)
    int steps = std::min(m, n);
    for (int s = 0; s < steps; ++s) {
        int bi = -1, bj = -1, bv = c.N;
        for (int i = s; i < m && bv > 0; ++i)
            for (int j = s; j < n; ++j) {
                int v = c.val(A_.at(i, j));
                if (v < bv) { bv = v; bi = i; bj = j; if (v == 0) break; }
            }
        if (bi < 0) break;
        if (bi != s) {
            for (int j = 0; j < n; ++j) std::swap(A_.at(s, j), A_.at(bi, j));
            std::swap(rowp_[s], rowp_[bi]);
        }
        if (bj != s) {
            for (int i = 0; i < m; ++i) std::swap(A_.at(i, s), A_.at(i, bj));
            std::swap(colp_[s], colp_[bj]);
        }
        u64 piv = A_.at(s, s);
        u64 unit = c.inv(c.div_pk(piv, bv) % c.mod);
        pivval_.push_back(bv);
        pivinv_.push_back(unit);
        for (int i = s + 1; i < m; ++i) {
            u64 e = A_.at(i, s);
            if (!e) continue;
            // e has valuation >= bv by the pivot choice
            u64 f = c.mul(c.div_pk(e, bv), unit);
            A_.at(i, s) = f;  // L multiplier
            for (int j = s + 1; j < n; ++j)
                A_.at(i, j) = c.sub(A_.at(i, j), c.mul(f, A_.at(s, j)));
        }
        rank_ = s + 1;
    }
}

int ZpSolver::det_valuation() const {
    int v = 0;
    for (int x : pivval_) v += x;
    return full_rank() ? v : A_.ctx.N * A_.rows;
}

int ZpSolver::max_pivot_valuation() const {
    int v = 0;
    for (int x : pivval_) v = std::max(v, x);
    return v;
}

std::optional<std::vector<u64>> ZpSolver::solve(const std::vector<u64>& b0) const {
    const PadicCtx& c = A_.ctx;
    int m = A_.rows, n = A_.cols;
    std::vector<u64> b(m);
    for (int i = 0; i < m; ++i) b[i] = b0[rowp_[i]];
    // forward: apply L^{-1}
    for (int s = 0; s < rank_; ++s) {
        if (!b[s]) continue;
        for (int i = s + 1; i < m; ++i) {
            u64 f = A_.at(i, s);
            if (f) b[i] = c.sub(b[i], c.mul(f, b[s]));
        }
    }
    for (int i = rank_; i < m; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<u64> y(n, 0);
    for (int s = rank_ - 1; s >= 0; --s) {
        u64 t = b[s];
        for (int j = s + 1; j < rank_; ++j)
            if (y[j]) t = c.sub(t, c.mul(A_.at(s, j), y[j]));
        int k = pivval_[s];
        if (c.val(t) < k) return std::nullopt;
        y[s] = c.mul(c.div_pk(t, k), pivinv_[s]);
    }
    std::vector<u64> x(n, 0);
    for (int j = 0; j < n; ++j) x[colp_[j]] = y[j];
    return x;
}

ZpMat ZpSolver::inverse() const {
    if (!unit_determinant()) throw InvariantViolation("matrix is not invertible over Z_p");
    int n = A_.rows;
    ZpMat inv(A_.ctx, n, n);
    std::vector<u64> e(n, 0);
    for (int j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), 0);
        e[j] = 1 % A_.ctx.mod;
        auto x = solve(e);
        for (int i = 0; i < n; ++i) inv.at(i, j) = (*x)[i];
    }
    return inv;
}

}  // namespace morava
