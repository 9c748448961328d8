#pragma once

#include <string>
#include <vector>

#include "morava/weierstrass.hpp"
#include "morava/zpmatrix.hpp"

namespace morava {

// E0[[x]]/modulus for a monic polynomial, on the basis 1, x, .., x^{rank-1}.
class QuotientRing {
public:
    QuotientRing() = default;
    QuotientRing(std::string var, USeries modulus);

    const std::string& var() const { return var_; }
    const USeries& modulus() const { return mod_; }
    int rank() const { return rank_; }
    const E0Ptr& ring() const { return mod_.ring(); }

    // Truncated series -> class (certified by reduce_series).
    USeries reduce(const USeries& f) const;
    // Exact polynomial -> class.
    USeries reduce_poly(const USeries& f) const;
    USeries mul(const USeries& a, const USeries& b) const;
    USeries pow(const USeries& a, u64 e) const;
    USeries one() const;
    USeries gen() const;
    // Coefficients of x^k mod the modulus for k < count.
    std::vector<USeries> power_table(int count) const;

private:
    std::string var_;
    USeries mod_;
    int rank_ = 0;
};

// E0(BC_m): modulus g_r with p^r || m; rank p^{nr}.
QuotientRing cyclic_ring(i64 m, const FGL& F);

// Tensor product of quotient rings, elements dense in mixed radix (first
// variable most significant), each slot M wide.
class TensorRing {
public:
    using Elem = std::vector<u64>;

    TensorRing() = default;
    explicit TensorRing(std::vector<QuotientRing> factors);

    int d() const { return (int)f_.size(); }
    size_t dim() const { return dim_; }
    const E0Ptr& ring() const { return R_; }
    const QuotientRing& factor(int j) const { return f_[j]; }
    const std::vector<int>& ranks() const { return ranks_; }
    size_t index(const std::vector<int>& e) const;
    std::vector<int> exps(size_t i) const;

    Elem zero() const { return Elem(dim_ * R_->M(), 0); }
    Elem one() const;
    Elem var(int j) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem scaled(const Elem& a, const E0Elem& c) const;
    Elem mul_var(const Elem& a, int j) const;
    Elem mul(const Elem& a, const Elem& b) const;
    bool is_zero(const Elem& a) const;
    // Class of a truncated multivariate series; PrecisionExhausted when the
    // truncation is too short to be harmless.
    Elem from_series(const MSeries& f) const;

private:
    std::vector<QuotientRing> f_;
    std::vector<int> ranks_;
    std::vector<size_t> stride_;
    size_t dim_ = 1;
    E0Ptr R_;
};

// E0(B prod C_{m_i}) restricted to the p-parts.
struct AbelianRing {
    std::vector<i64> orders;
    TensorRing ring;
    u64 rank() const { return ring.dim(); }
};
AbelianRing abelian_ring(const std::vector<i64>& orders, const FGL& F);

// E0(BT_d)^{Sigma_d} inside the d-fold tensor power of E0[[x]]/g_v, N = p^{nv}.
class TorusRing {
public:
    TorusRing(const FGL& F, int d, int v);

    int d() const { return T_.d(); }
    int N() const { return N_; }
    int v() const { return v_; }
    const TensorRing& tensor() const { return T_; }
    const QuotientRing& base() const { return T_.factor(0); }
    int rank() const { return (int)sigma_.size(); }
    const std::vector<std::vector<int>>& sigma_basis() const { return sigma_; }
    const std::vector<std::vector<int>>& orbit_basis() const { return orbit_; }

    TensorRing::Elem elementary(int k) const;
    TensorRing::Elem sigma_monomial(const std::vector<int>& beta) const;
    bool is_symmetric(const TensorRing::Elem& a) const;
    // Coordinates on the orbit-sum basis; NotSymmetric if a is not invariant.
    std::vector<u64> orbit_coords(const TensorRing::Elem& a) const;
    // Column b = orbit coordinates of sigma^{beta_b}.
    ZpMat change_of_basis() const;

private:
    TensorRing T_;
    int N_ = 0, v_ = 0;
    std::vector<std::vector<int>> sigma_, orbit_;
    std::vector<size_t> orbit_index_;
};

TorusRing torus_invariant_ring(int d, int v, const FGL& F);

// E0(BSigma_p) as the Aut(C_p)-invariants of E0[[w]]/g_1.
struct SigmaPModel {
    QuotientRing base;      // E0(BC_p), variable w
    USeries W;              // Weierstrass polynomial of <p>(w), degree p^n - 1
    USeries dElem;          // -w^{p-1} in the base
    USeries transfer_cp;    // <p>(w) in the base
    USeries fPoly;          // f(d) with <p>(w) = f(d); f(0) = p
    int f_degree = 0;       // (p^n - 1)/(p - 1)
    int rank = 0;           // f_degree + 1
    QuotientRing dring;     // E0[d]/(d f(d)) made monic
    USeries transfer_sigma; // (p-1)! f(d)
    // Image of a polynomial in d inside the base.
    USeries d_to_base(const USeries& poly_in_d) const;
};

SigmaPModel sigma_p_ring(const FGL& F);

// Finite commutative F_p-algebra with basis[0] = 1 and the maximal ideal
// spanned by the remaining basis vectors.
class FiniteAlgebra {
public:
    FiniteAlgebra(u64 p, std::vector<std::string> labels, std::vector<std::vector<u64>> table);

    u64 p() const { return p_; }
    int dim() const { return (int)labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    // Coordinates of b_i b_j.
    const std::vector<u64>& prod(int i, int j) const { return table_[(size_t)i * dim() + j]; }
    std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const;

    // F_p[x_1..x_d]/(x_i^k), monomial basis in graded lex-descending order.
    static FiniteAlgebra truncated_poly(u64 p, int d, int k);

private:
    u64 p_;
    std::vector<std::string> labels_;
    std::vector<std::vector<u64>> table_;
};

std::vector<std::vector<u64>> socle(const FiniteAlgebra& A);
struct FrobeniusReport {
    int socle_dim = 0;
    bool pairing_nondegenerate = false;
    bool ok() const { return socle_dim == 1 && pairing_nondegenerate; }
};
FrobeniusReport frobenius_check(const FiniteAlgebra& A);

// Basis permutations acting by algebra automorphisms; the group is the
// closure of perms. Orbit sums give the fixed subalgebra.
FiniteAlgebra orbit_sum_subalgebra(const FiniteAlgebra& A, const std::vector<std::vector<int>>& perms);
// As above, refusing groups of order divisible by p.
FiniteAlgebra invariant_subalgebra(const FiniteAlgebra& A, const std::vector<std::vector<int>>& perms);
// Permutations of the truncated polynomial basis induced by swapping variables.
std::vector<std::vector<int>> variable_permutations(int d, int k, const std::vector<std::vector<int>>& var_perms);

// Rank and null space over F_p.
int rank_mod_p(std::vector<std::vector<u64>> rows, u64 p);
std::vector<std::vector<u64>> null_space_mod_p(std::vector<std::vector<u64>> rows, int cols, u64 p);

}  // namespace morava
