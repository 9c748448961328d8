#pragma once

#include <map>
#include <memory>
#include <vector>

#include "morava/e0.hpp"

namespace morava {

// Truncated product out = a*b (lengths in coefficients, each M wide).
void series_mul_into(const E0Ring& R, const u64* a, int la, const u64* b, int lb, u64* out, int lout);

// Univariate truncated power series over E0; coefficients of x^0..x^{len-1}.
class USeries {
public:
    USeries() = default;
    USeries(E0Ptr R, int len) : R_(std::move(R)), len_(len), c_((size_t)len * R_->M(), 0) {}
    static USeries x(E0Ptr R, int len);
    static USeries constant(E0Ptr R, int len, i64 v);
    static USeries constant(int len, const E0Elem& v);
    static USeries monomial(int len, int k, const E0Elem& v);

    const E0Ptr& ring() const { return R_; }
    int len() const { return len_; }
    int M() const { return R_->M(); }
    u64* at(int i) { return c_.data() + (size_t)i * R_->M(); }
    const u64* at(int i) const { return c_.data() + (size_t)i * R_->M(); }
    const std::vector<u64>& raw() const { return c_; }
    std::vector<u64>& raw() { return c_; }
    E0Elem coeff(int i) const { return E0Elem(R_, at(i)); }
    void set(int i, const E0Elem& v);
    // Constant p-adic part of coefficient i.
    u64 scalar(int i) const { return at(i)[0]; }

    bool is_zero() const;
    bool coeff_zero(int i) const { return R_->is_zero(at(i)); }
    int order() const;  // first nonzero index, len() when zero

    USeries operator+(const USeries& o) const;
    USeries operator-(const USeries& o) const;
    USeries operator*(const USeries& o) const;
    USeries operator-() const;
    USeries scaled(const E0Elem& a) const;
    USeries scaled(i64 a) const;
    bool operator==(const USeries& o) const { return len_ == o.len_ && c_ == o.c_; }
    bool operator!=(const USeries& o) const { return !(*this == o); }

    USeries truncated(int L) const;  // resize to length L (padding with 0)
    USeries shift_down(int k) const;  // drop x^0..x^{k-1}, divide by x^k
    USeries shift_up(int k) const;    // multiply by x^k
    USeries derivative() const;
    USeries pow(u64 e) const;
    // Same residues read in a ring of another precision (lift or reduce).
    USeries recast(E0Ptr R2) const;

private:
    E0Ptr R_;
    int len_ = 0;
    std::vector<u64> c_;
};

USeries compose(const USeries& f, const USeries& g);
USeries reversion(const USeries& f);
USeries unit_invert(const USeries& f);

// Monomial sets: total degree < totcap, optionally also x_i-degree < cap_i.
class MonoSet {
public:
    static std::shared_ptr<const MonoSet> total(int d, int Dx);
    static std::shared_ptr<const MonoSet> box(const std::vector<int>& caps);

    int d() const { return d_; }
    int totcap() const { return totcap_; }
    const std::vector<int>& caps() const { return caps_; }
    int size() const { return (int)exps_.size(); }
    const std::vector<int>& exps(int i) const { return exps_[i]; }
    int deg(int i) const { return deg_[i]; }
    // number of monomials of total degree < k
    int prefix(int k) const;
    int index(const std::vector<int>& e) const;  // -1 when outside
    int sum_index(int i, int j) const {
        if (box_) {
            for (int k = 0; k < d_; ++k)
                if (exps_[i][k] + exps_[j][k] >= caps_[k]) return -1;
        }
        u64 c = code_[i] + code_[j];
        return c < lookup_.size() ? lookup_[c] : -1;
    }
    bool is_box() const { return box_; }

private:
    void build();
    int d_ = 0, totcap_ = 0;
    bool box_ = false;
    std::vector<int> caps_;
    std::vector<std::vector<int>> exps_;
    std::vector<int> deg_, prefix_;
    std::vector<u64> code_, radix_;
    std::vector<int> lookup_;
};

using MonoPtr = std::shared_ptr<const MonoSet>;

class MSeries {
public:
    MSeries() = default;
    MSeries(E0Ptr R, MonoPtr S) : R_(std::move(R)), S_(std::move(S)), c_((size_t)S_->size() * R_->M(), 0) {}
    static MSeries var(E0Ptr R, MonoPtr S, int i);
    static MSeries constant(E0Ptr R, MonoPtr S, i64 v);

    const E0Ptr& ring() const { return R_; }
    const MonoPtr& shape() const { return S_; }
    int arity() const { return S_->d(); }
    u64* at(int i) { return c_.data() + (size_t)i * R_->M(); }
    const u64* at(int i) const { return c_.data() + (size_t)i * R_->M(); }
    const std::vector<u64>& raw() const { return c_; }
    E0Elem coeff(const std::vector<int>& e) const;
    void set(const std::vector<int>& e, const E0Elem& v);
    void add_term(const std::vector<int>& e, const E0Elem& v);
    bool is_zero() const;
    bool coeff_zero(int i) const { return R_->is_zero(at(i)); }

    MSeries operator+(const MSeries& o) const;
    MSeries operator-(const MSeries& o) const;
    MSeries operator*(const MSeries& o) const;
    MSeries operator-() const;
    MSeries scaled(const E0Elem& a) const;
    bool operator==(const MSeries& o) const { return c_ == o.c_; }
    bool operator!=(const MSeries& o) const { return c_ != o.c_; }
    MSeries pow(u64 e) const;
    MSeries truncated_total(int K) const;  // zero all terms of total degree >= K
    MSeries unit_invert() const;
    MSeries recast(E0Ptr R2) const;
    // Coefficients with exponents permuted: result(e) = this(e o perm).
    MSeries permuted(const std::vector<int>& perm) const;

private:
    E0Ptr R_;
    MonoPtr S_;
    std::vector<u64> c_;
};

// F(a_1, .., a_k) with all a_i in one target shape; a_i must vanish at 0.
MSeries substitute(const MSeries& F, const std::vector<MSeries>& args);
// Bivariate F(a(x), b(x)) for univariate a, b with zero constant term.
USeries substitute2(const MSeries& F, const USeries& a, const USeries& b);
// x-series embedded as variable i of a multivariate shape.
MSeries embed(const USeries& f, E0Ptr R, MonoPtr S, int i);

MSeries elementary_symmetric(E0Ptr R, MonoPtr S, int k);

// Polynomial in sigma_1..sigma_d: exponent vector beta -> coefficient.
struct SigmaPoly {
    int d = 0;
    std::map<std::vector<int>, E0Elem> terms;
};

SigmaPoly symmetrize_to_elementary(const MSeries& s);
MSeries expand_sigma(const SigmaPoly& phi, E0Ptr R, MonoPtr S);

enum class SymKind { SigmaMonomial, OrbitSum };
// Ordered by total degree, then lex-descending.
std::vector<std::vector<int>> invariant_basis(int d, int N, SymKind kind);
// Number of sigma-monomials of total degree < N: C(N+d-1, d).
u64 binomial(u64 n, u64 k);

}  // namespace morava
