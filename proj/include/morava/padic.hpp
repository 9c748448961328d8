#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morava/error.hpp"

namespace morava {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

bool is_prime(u64 n);

// Z/p^N with p^N < 2^63 so that sums of two residues never overflow.
struct PadicCtx {
    u64 p = 3;
    int N = 1;
    u64 mod = 3;

    PadicCtx() = default;
    PadicCtx(u64 p_, int N_);

    bool operator==(const PadicCtx& o) const { return p == o.p && N == o.N; }
    bool operator!=(const PadicCtx& o) const { return !(*this == o); }

    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= mod ? s - mod : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + mod - b; }
    u64 neg(u64 a) const { return a == 0 ? 0 : mod - a; }
    u64 mul(u64 a, u64 b) const { return (u64)((u128)a * b % mod); }
    u64 from_int(i64 x) const;
    u64 pow(u64 a, u64 e) const;
    // Throws NonUnit when p | a.
    u64 inv(u64 a) const;
    // v_p of a residue; N for zero.
    int val(u64 a) const;
    bool is_unit(u64 a) const { return a % p != 0; }
    // Exact division of a residue by p^k, the top k digits becoming 0.
    u64 div_pk(u64 a, int k) const;
    u64 pk(int k) const;
    // Residue interpreted at a coarser precision.
    PadicCtx with_precision(int N2) const { return PadicCtx(p, N2); }
    // Base-p digits, most significant first, always N characters (p <= 10)
    // or dot-separated for larger p.
    std::string digits(u64 a) const;
    // Largest N with p^N < 2^63.
    static int max_precision(u64 p);
};

class PadicInt {
public:
    PadicInt() = default;
    PadicInt(const PadicCtx& ctx, i64 value) : ctx_(ctx), r_(ctx.from_int(value)) {}
    static PadicInt from_residue(const PadicCtx& ctx, u64 r) {
        PadicInt a; a.ctx_ = ctx; a.r_ = r % ctx.mod; return a;
    }

    const PadicCtx& ctx() const { return ctx_; }
    u64 residue() const { return r_; }
    // Exact valuation, or ctx().N standing for "at least N".
    int val() const { return ctx_.val(r_); }
    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return ctx_.is_unit(r_); }

    PadicInt operator+(const PadicInt& o) const;
    PadicInt operator-(const PadicInt& o) const;
    PadicInt operator*(const PadicInt& o) const;
    PadicInt operator-() const { return from_residue(ctx_, ctx_.neg(r_)); }
    PadicInt inv() const;
    PadicInt pow(u64 e) const { return from_residue(ctx_, ctx_.pow(r_, e)); }
    bool operator==(const PadicInt& o) const { return ctx_ == o.ctx_ && r_ == o.r_; }
    std::string digits() const { return ctx_.digits(r_); }

private:
    PadicCtx ctx_;
    u64 r_ = 0;
};

enum class PadicOp { Add, Sub, Mul, Inv };
PadicInt padic_arith(const PadicInt& a, const PadicInt& b, PadicOp op);

// v_p(k^s - 1) through the order of k mod p, never expanding k^s.
int vp_pow_minus_one(i64 k, u64 s, u64 p);
int vp_factorial(u64 d, u64 p);
int vp_int(i64 x, u64 p);
u64 mult_order_mod_p(i64 k, u64 p);
PadicInt teichmuller(i64 a, const PadicCtx& ctx);

}  // namespace morava
