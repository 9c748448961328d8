#pragma once

#include <memory>
#include <string>
#include <vector>

#include "morava/padic.hpp"

namespace morava {

// E0 = Z/p^N [u_1..u_{n-1}] / (u)^Du, stored on the basis of u-monomials of
// total degree < Du in graded order. Du = 1 (or n = 1) collapses E0 to Z/p^N.
class E0Ring {
public:
    static std::shared_ptr<const E0Ring> make(const PadicCtx& pc, int n, int Du);

    const PadicCtx& pc() const { return pc_; }
    int n() const { return n_; }
    int Du() const { return Du_; }
    int M() const { return (int)mons_.size(); }
    const std::vector<std::vector<int>>& monomials() const { return mons_; }
    int monomial_index(const std::vector<int>& e) const;
    int monomial_degree(int i) const { return deg_[i]; }
    // Index of u_i (1 <= i <= n-1), or -1 when it is truncated away.
    int u_index(int i) const;
    bool scalar() const { return mons_.size() == 1; }
    // Residues fit in 32 bits, so products can be summed unreduced in 128 bits.
    bool fast() const { return pc_.mod < ((u64)1 << 32); }

    struct Term { int a, b, c; };
    const std::vector<Term>& table() const { return table_; }

    void mul(u64* out, const u64* a, const u64* b) const;
    void inv(u64* out, const u64* a) const;  // throws NonUnit
    bool is_unit(const u64* a) const { return pc_.is_unit(a[0]); }
    bool is_zero(const u64* a) const;
    // Lies in the maximal ideal (p, u).
    bool in_max_ideal(const u64* a) const { return a[0] % pc_.p == 0; }
    // Reduce mod (p, u_1..u_{n-1}), giving the residue-field value.
    u64 residue(const u64* a) const { return a[0] % pc_.p; }
    // Least p-adic valuation over all u-coefficients (N when zero).
    int min_val(const u64* a) const;

    std::shared_ptr<const E0Ring> with_precision(int N) const;
    bool same_shape(const E0Ring& o) const { return n_ == o.n_ && Du_ == o.Du_ && pc_.p == o.pc_.p; }
    bool operator==(const E0Ring& o) const { return same_shape(o) && pc_.N == o.pc_.N; }

private:
    E0Ring() = default;
    PadicCtx pc_;
    int n_ = 1, Du_ = 1;
    std::vector<std::vector<int>> mons_;
    std::vector<int> deg_;
    std::vector<Term> table_;
};

using E0Ptr = std::shared_ptr<const E0Ring>;

class E0Elem {
public:
    E0Elem() = default;
    explicit E0Elem(E0Ptr R) : R_(std::move(R)), c_(R_->M(), 0) {}
    E0Elem(E0Ptr R, i64 v) : E0Elem(std::move(R)) { c_[0] = R_->pc().from_int(v); }
    E0Elem(E0Ptr R, const u64* c) : R_(std::move(R)), c_(c, c + R_->M()) {}
    static E0Elem u(E0Ptr R, int i);  // u_i; u_n is 1

    const E0Ptr& ring() const { return R_; }
    const std::vector<u64>& coeffs() const { return c_; }
    std::vector<u64>& coeffs() { return c_; }
    const u64* data() const { return c_.data(); }
    PadicInt constant() const { return PadicInt::from_residue(R_->pc(), c_[0]); }

    bool is_zero() const { return R_->is_zero(c_.data()); }
    bool is_unit() const { return R_->is_unit(c_.data()); }
    E0Elem operator+(const E0Elem& o) const;
    E0Elem operator-(const E0Elem& o) const;
    E0Elem operator*(const E0Elem& o) const;
    E0Elem operator-() const;
    E0Elem inv() const;
    bool operator==(const E0Elem& o) const { return c_ == o.c_; }
    bool operator!=(const E0Elem& o) const { return c_ != o.c_; }
    std::string to_string() const;

private:
    E0Ptr R_;
    std::vector<u64> c_;
};

// Truncation data shared by all series of one computation.
struct PrecisionCtx {
    E0Ptr e0;
    int Dx = 1;

    PrecisionCtx() = default;
    PrecisionCtx(u64 p, int N, int n, int Du, int Dx_)
        : e0(E0Ring::make(PadicCtx(p, N), n, Du)), Dx(Dx_) {}
    PrecisionCtx(E0Ptr R, int Dx_) : e0(std::move(R)), Dx(Dx_) {}

    u64 p() const { return e0->pc().p; }
    int N() const { return e0->pc().N; }
    int n() const { return e0->n(); }
    int Du() const { return e0->Du(); }
    // (p, u)^K vanishes in E0 for K = N + Du - 1.
    int nilpotency() const { return N() + (n() > 1 ? Du() : 1) - 1; }
};

}  // namespace morava
