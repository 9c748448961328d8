#pragma once

#include <optional>
#include <vector>

#include "morava/padic.hpp"

namespace morava {

// Dense matrix over Z/p^N, row-major.
struct ZpMat {
    PadicCtx ctx;
    int rows = 0, cols = 0;
    std::vector<u64> a;

    ZpMat() = default;
    ZpMat(const PadicCtx& c, int r, int k) : ctx(c), rows(r), cols(k), a((size_t)r * k, 0) {}

    u64& at(int i, int j) { return a[(size_t)i * cols + j]; }
    u64 at(int i, int j) const { return a[(size_t)i * cols + j]; }
    std::vector<u64> apply(const std::vector<u64>& x) const;
    ZpMat mul(const ZpMat& o) const;
    static ZpMat identity(const PadicCtx& c, int n);
};

// Elimination with full pivoting on the entry of least valuation. Over a
// discrete valuation ring this gives a Smith-like triangular form, so
// back substitution loses at most max(pivot valuation) digits.
class ZpSolver {
public:
    explicit ZpSolver(const ZpMat& A);

    int rank() const { return rank_; }
    bool full_rank() const { return rank_ == A_.cols && rank_ == A_.rows; }
    // Sum of pivot valuations; meaningful when full_rank().
    int det_valuation() const;
    int max_pivot_valuation() const;
    bool unit_determinant() const { return full_rank() && det_valuation() == 0; }

    // Solves A x = b. Returns nullopt when b is not in the image at this
    // precision. Entries of x are correct mod p^(N - max_pivot_valuation()).
    std::optional<std::vector<u64>> solve(const std::vector<u64>& b) const;
    ZpMat inverse() const;  // requires unit_determinant()

private:
    ZpMat A_;  // holds L below the diagonal and U on and above it
    std::vector<int> rowp_, colp_;
    std::vector<int> pivval_;
    std::vector<u64> pivinv_;  // inverse of the unit part of each pivot
    int rank_ = 0;
};

}  // namespace morava
