#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "morava/padic.hpp"

namespace morava {

using BigInt = boost::multiprecision::cpp_int;
using u32 = std::uint32_t;

// F_q with q = l^r, elements encoded as integers sum c_i l^i (c_i the
// coefficient of t^i modulo the defining polynomial). The defining polynomial
// is the least monic irreducible of degree r in the order of its encoding.
class Fq {
public:
    static std::shared_ptr<const Fq> make(u64 q);

    u32 l() const { return l_; }
    int r() const { return r_; }
    u32 q() const { return q_; }
    const std::vector<u32>& modulus() const { return mod_; }
    u32 primitive() const { return exp_[1]; }

    u32 add(u32 a, u32 b) const;
    u32 sub(u32 a, u32 b) const;
    u32 neg(u32 a) const { return sub(0, a); }
    u32 mul(u32 a, u32 b) const;
    u32 inv(u32 a) const;
    u32 pow(u32 a, u64 e) const;
    u32 from_int(i64 x) const;     // prime subfield
    u32 log(u32 a) const;          // a != 0
    u32 exp(u64 k) const { return exp_[k % (q_ - 1)]; }
    u64 order(u32 a) const;        // multiplicative order
    std::vector<u32> digits(u32 a) const;
    u32 from_digits(const std::vector<u32>& c) const;
    std::string name() const;

private:
    u32 l_ = 2, q_ = 2;
    int r_ = 1;
    std::vector<u32> mod_;
    std::vector<u32> log_, exp_;
    u32 slow_mul(u32 a, u32 b) const;
};

using FqPtr = std::shared_ptr<const Fq>;

// Least monic irreducible polynomial of degree r over F_l, coefficients
// from the constant term up.
std::vector<u32> least_irreducible(u32 l, int r);

struct GLMat {
    FqPtr F;
    int d = 0;
    std::vector<u32> e;  // row-major

    GLMat() = default;
    GLMat(FqPtr F_, int d_) : F(std::move(F_)), d(d_), e((size_t)d_ * d_, 0) {}
    static GLMat identity(FqPtr F, int d);
    static GLMat scalar(FqPtr F, int d, u32 c);
    static GLMat diag(FqPtr F, const std::vector<u32>& c);
    // (g v)_i = v_{i+1 mod d}
    static GLMat cycle(FqPtr F, int d);

    u32& at(int i, int j) { return e[(size_t)i * d + j]; }
    u32 at(int i, int j) const { return e[(size_t)i * d + j]; }
    GLMat operator*(const GLMat& o) const;
    bool operator==(const GLMat& o) const { return d == o.d && e == o.e; }
    bool operator!=(const GLMat& o) const { return !(*this == o); }
    bool operator<(const GLMat& o) const { return e < o.e; }
    u32 det() const;
    bool invertible() const { return det() != 0; }
    GLMat inverse() const;  // NonUnit when singular
    GLMat pow(u64 k) const;
    u64 order(u64 bound) const;  // 0 when larger than bound
    bool is_diagonal() const;
    std::string to_string() const;
};

BigInt gl_order(int d, u64 q);
int vp_gl_order(int d, u64 q, u64 p);
int vp_big(const BigInt& x, u64 p);

struct SylowDescriptor {
    enum class Kind { Trivial, Cyclic, Wreath, Product };
    Kind kind = Kind::Trivial;
    u64 p = 0;
    int k = 0;        // Cyclic: order p^k
    int degree = 1;   // permutation degree when used as the top of a wreath product
    std::vector<SylowDescriptor> parts;  // Wreath: {top, base}; Product: factors

    int log_order() const;  // v_p of the order
    std::string to_string() const;
    static SylowDescriptor trivial(int degree = 1);
    static SylowDescriptor cyclic(u64 p, int k);
    static SylowDescriptor wreath(const SylowDescriptor& top, const SylowDescriptor& base);
    static SylowDescriptor product(std::vector<SylowDescriptor> parts);
};

SylowDescriptor sylow_sigma_descriptor(int d, u64 p);
SylowDescriptor sylow_gl_descriptor(int d, u64 q, u64 p);

// Cyclic group closure of permutations; order of the generated group.
u64 permutation_group_order(const std::vector<std::vector<int>>& gens, u64 limit = 1u << 20);
// Generators of C_p wr C_p acting on p^2 points.
std::vector<std::vector<int>> wreath_cp_cp_generators(int p);

struct GeneratorA {
    FqPtr F;
    int p = 0, v = 0;
    u32 a_v = 0;     // generator of the p-part of F_q^x
    GLMat gamma, a;
    u64 order = 0;
};
GeneratorA build_generator_a(u64 q, u64 p);

struct NormalizerScan {
    std::set<u64> exponents;   // s with g a g^-1 = a^s
    u64 matrices = 0, invertible = 0, normalizing = 0;
    bool all_one_mod_pv = false;
};
NormalizerScan normalizer_exponents(u64 q, u64 p, u64 limit = 1u << 20);

struct GammaDiagonalization {
    GLMat g, gamma, conj;   // conj = g^-1 gamma g
    std::vector<u32> eigenvalues;
    bool diagonal = false, distinct = false;
};
GammaDiagonalization diagonalize_gamma(u64 q, u64 p);

// F_{q^p}^x acting on F_{q^p} = F_q{1, theta, .., theta^{p-1}}.
class MuEmbedding {
public:
    MuEmbedding(u64 q, u64 p);
    const FqPtr& small() const { return Fs_; }
    const FqPtr& big() const { return Fb_; }
    GLMat mu(u32 a) const;             // a in the big field
    u32 embed(u32 c) const { return emb_[c]; }   // F_q -> F_{q^p}
    u32 norm(u32 a) const;             // Norm to F_q, as a small-field element
    u32 sylow_generator() const;       // generator of the p-part of F_{q^p}^x

private:
    FqPtr Fs_, Fb_;
    int p_ = 0;
    std::vector<u32> emb_, unemb_;
    u32 theta_ = 0;
    // F_l-coordinates of big-field elements in the basis c_i theta^j
    std::vector<std::vector<u32>> solve_basis_;
    std::vector<u32> coords(u32 a) const;  // F_q-coordinates, length p
};

struct MuReport {
    int samples = 0;
    bool homomorphism = false, det_is_norm = false, identity = false;
    u64 sylow_order = 0, expected_sylow_order = 0;
    bool ok() const {
        return homomorphism && det_is_norm && identity && sylow_order == expected_sylow_order;
    }
};
// Sampled homomorphism and determinant checks; InvariantViolation on failure.
MuReport verify_mu(const MuEmbedding& M, u64 seed, int samples = 64);

struct ConjugacyCheck {
    u64 order_elements = 0;   // elements of order p^{v+1}
    u64 conjugate_to_A = 0;   // those conjugate to a generator of A
    bool all_conjugate() const { return order_elements == conjugate_to_A; }
};
ConjugacyCheck conjugacy_exhaustive(u64 q, u64 p, u64 limit = 1u << 20);

}  // namespace morava
