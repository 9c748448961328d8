#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morava/smallrings.hpp"

namespace morava {

// Dimension-p data for GL_p(F_q) with v = v_p(q - 1) >= 1. Everything here
// runs over scalar coefficients: n = 1, or the u_i set to zero for n >= 2.
struct GLpParams {
    u64 p = 3;
    int n = 1;
    i64 q = 4;
    int v = 1;
    int N = 2;      // (p^{n(v+1)} - p^{nv}) / p
    int pnv = 3;    // p^{nv}
    int Nout = 2;   // digits kept in the structure constants
    int Nw = 7;     // working digits
    int Dx = 73;    // series length on the D side
    PrecisionCtx ctx;

    static GLpParams make(u64 p, int n, i64 q, int Nout = 2);
    // v_p(det M_t) expected from the norm of [p^v](x); equals p^{nv}.
    int predicted_det_val() const { return pnv; }
    int K() const { return ctx.nilpotency(); }
};

struct DModel {
    USeries g_v, g_v1, g;   // g = g_{v+1} / g_v, degree N p
    QuotientRing ring;      // D = E0[x]/g
    USeries y;              // prod_k [1 + k p^v](x) in D
    USeries pv;             // [p^v](x) in D
    std::vector<USeries> ypow;  // y^0 .. y^N in D
    std::shared_ptr<ZpSolver> basis;  // columns x^i y^j at i N + j
    int Np = 0, N = 0, p = 0;

    // Coordinates on {x^i y^j}; index i N + j.
    std::vector<u64> coords(const USeries& a) const;
};

struct DGammaModel {
    USeries h;              // monic of degree N in y
    QuotientRing ring;      // E0[y]/h
    // D-element lying in the y-subring -> polynomial in y; NotInGammaInvariants otherwise.
    USeries to_y(const DModel& D, const USeries& a) const;
    USeries lift(const DModel& D, const USeries& ypoly) const;
};

DModel build_D(const GLpParams& P, const FGL& F);
DGammaModel build_D_gamma(const GLpParams& P, const DModel& D);

struct PairElem {
    TensorRing::Elem left;  // torus invariants
    USeries right;          // D^Gamma, polynomial in y
    bool symmetrized = false;  // built from the elementary-symmetric expansion
};

// Element of a presented target ring: coordinates on the monomial basis of a
// tensor product of quotient rings (first variable most significant).
struct RingElement {
    std::string target;
    std::vector<std::string> vars;
    std::vector<int> ranks;
    std::vector<u64> coeffs;
    PadicCtx pc;
    bool is_zero() const;
};

enum class PsiTarget { T, SigmaDelta, A };
PsiTarget parse_psi_target(const std::string& s);

struct PsiGenerator {
    std::string name;          // d, c_p, b, t
    std::vector<int> alpha;    // for b
};
PsiGenerator parse_psi_generator(const std::string& s);

// h(d, y) = sum_{j<J, m<dcount} coeff[j][m] d^m y^j over E0[[d,y]]/f(d).
struct H2Series {
    int J = 0, dcount = 0;
    std::vector<std::vector<u64>> coeff;
    PadicCtx pc;
    int digits = 0;          // base-y digits extracted
    int x_len = 0;           // starting x-truncation
    int x_valid = 0;         // length at which the reconstruction was checked
    int max_division_steps = 0;
};

struct TRelationReport {
    bool torus = false, sigma_delta = false, d_gamma = false;
    bool ok() const { return torus && sigma_delta && d_gamma; }
};

struct CRTWitness {
    USeries A, B;          // A g_v + B g = p
    int slack = 0;         // max pivot valuation of the linear solve
    int digits = 0;        // digits certified
    bool identity_ok = false;
    bool canonical_ok = false;  // <p>([p^v](x)) = p mod [p^v](x)
    u64 value_at_zero = 0;
};

struct GLPAlgebra {
    u64 p = 3;
    int n = 1, v = 1, N = 0, pnv = 0;
    i64 q = 0;
    int Nw = 0;
    PadicCtx out;           // precision of the structure constants
    int rank_T = 0, rank = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> sigma_exps;
    std::vector<u64> sc;    // sc[(a rank + b) rank + c]
    int cp_index = 0, t_index = 0;
    int det_Mt_val = 0, Mt_max_pivot = 0;
    bool Mt_independent = false;
    bool beta_surjective = false;   // change of basis has unit determinant
    bool alpha_hits_y = false;      // alpha(sigma_p) = y
    bool ker_product_zero = false;
    int ker_products_checked = 0;
    int rational_preimages = 0, rational_trials = 0;
    std::vector<u64> h_coeffs;      // h(y) at output precision

    std::vector<u64> unit(int i) const;
    std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const;
    std::vector<u64> pow(const std::vector<u64>& a, int e) const;
};

struct KReport {
    int first_vanishing = -1;       // least k with c_p^k = 0
    int expected_index = 0;         // N + p^{nv} - 1
    bool top_nonzero = false, next_zero = false;
    int ideal_dim = 0;
    bool ideal_cyclic = false;
    bool t_equals_power = false;
    bool ok() const { return top_nonzero && next_zero && ideal_cyclic && t_equals_power; }
};

struct KAlgebra {
    FiniteAlgebra algebra;
    KReport report;
};

class GLpChain {
public:
    explicit GLpChain(GLpParams P, u64 seed = 1);

    const GLpParams& params() const { return P_; }
    const FGL& fgl() const { return F_; }
    const DModel& D() const { return D_; }
    const DGammaModel& DG() const { return DG_; }
    const TorusRing& torus() const;
    const SigmaPModel& sigma() const;

    USeries alpha_sigma(int i) const;           // y-polynomial
    USeries alpha_sigma_in_D(int i) const;      // before re-expression
    TensorRing::Elem beta_sigma(int i) const;
    USeries alpha_t() const;                    // [p^v](x)^p re-expressed in y
    PairElem build_t() const;

    RingElement psi(const PsiGenerator& gen, PsiTarget target) const;
    H2Series build_h2() const;
    TRelationReport verify_t_relation() const;
    GLPAlgebra algebra() const;
    CRTWitness crt_witness() const;

private:
    GLpParams P_;
    u64 seed_;
    FGL F_;
    DModel D_;
    DGammaModel DG_;
    mutable std::optional<TorusRing> torus_;
    mutable std::optional<SigmaPModel> sigma_;
    mutable std::optional<H2Series> h2_;
    mutable std::optional<PairElem> t_;
};

KAlgebra k_reduce(const GLPAlgebra& A);

}  // namespace morava
