#include "morava/padic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace morava {

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int PadicCtx::max_precision(u64 p) {
    int N = 0;
    u128 m = 1;
    while (m * p < ((u128)1 << 63)) { m *= p; ++N; }
    return N;
}

PadicCtx::PadicCtx(u64 p_, int N_) : p(p_), N(N_) {
    if (p < 3 || !is_prime(p)) throw InvalidInput("p must be an odd prime, got " + std::to_string(p));
    if (N < 1) throw InvalidInput("precision must be positive");
    if (N > max_precision(p))
        throw PrecisionExhausted("p^N must stay below 2^63 (p=" + std::to_string(p) +
                                 ", N=" + std::to_string(N) + ")");
    mod = 1;
    for (int i = 0; i < N; ++i) mod *= p;
}

u64 PadicCtx::from_int(i64 x) const {
    i64 r = x % (i64)mod;
    if (r < 0) r += (i64)mod;
    return (u64)r;
}

u64 PadicCtx::pow(u64 a, u64 e) const {
    u64 r = 1 % mod;
    a %= mod;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

u64 PadicCtx::inv(u64 a) const {
    if (!is_unit(a)) throw NonUnit("residue " + std::to_string(a) + " is divisible by p");
    // extended Euclid on (a, p^N)
    i64 t0 = 0, t1 = 1;
    i64 r0 = (i64)mod, r1 = (i64)(a % mod);
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 tmp = r0 - q * r1; r0 = r1; r1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    return from_int(t0);
}

int PadicCtx::val(u64 a) const {
    if (a == 0) return N;
    int v = 0;
    while (a % p == 0) { a /= p; ++v; }
    return v;
}

u64 PadicCtx::pk(int k) const {
    u64 r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

u64 PadicCtx::div_pk(u64 a, int k) const {
    if (k == 0) return a;
    u64 q = pk(k);
    if (a % q != 0) throw DivisionFailure("residue not divisible by p^" + std::to_string(k));
    return a / q;
}

std::string PadicCtx::digits(u64 a) const {
    std::vector<u64> d(N, 0);
    for (int i = 0; i < N; ++i) { d[i] = a % p; a /= p; }
    std::string s;
    for (int i = N - 1; i >= 0; --i) {
        if (p <= 10) {
            s.push_back(char('0' + d[i]));
        } else {
            s += std::to_string(d[i]);
            if (i) s.push_back('.');
        }
    }
    return s;
}

static void same_ctx(const PadicInt& a, const PadicInt& b) {
    if (a.ctx() != b.ctx()) throw CtxMismatch("p-adic operands at different (p, N)");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
    same_ctx(*this, o);
    return from_residue(ctx_, ctx_.add(r_, o.r_));
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
    same_ctx(*this, o);
    return from_residue(ctx_, ctx_.sub(r_, o.r_));
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
    same_ctx(*this, o);
    return from_residue(ctx_, ctx_.mul(r_, o.r_));
}

PadicInt PadicInt::inv() const { return from_residue(ctx_, ctx_.inv(r_)); }

PadicInt padic_arith(const PadicInt& a, const PadicInt& b, PadicOp op) {
    switch (op) {
    case PadicOp::Add: return a + b;
    case PadicOp::Sub: return a - b;
    case PadicOp::Mul: return a * b;
    case PadicOp::Inv: return a.inv();
    }
    throw InvalidInput("unknown p-adic operation");
}

int vp_int(i64 x, u64 p) {
    if (x == 0) throw InvalidInput("valuation of zero");
    int v = 0;
    while (x % (i64)p == 0) { x /= (i64)p; ++v; }
    return v;
}

u64 mult_order_mod_p(i64 k, u64 p) {
    i64 r = k % (i64)p;
    if (r < 0) r += (i64)p;
    if (r == 0) throw InvalidInput("k is divisible by p");
    u64 a = 1, x = (u64)r;
    while (x != 1) { x = x * (u64)r % p; ++a; }
    return a;
}

int vp_pow_minus_one(i64 k, u64 s, u64 p) {
    if (s == 0) throw InvalidInput("s must be positive");
    u64 a = mult_order_mod_p(k, p);
    if (s % a != 0) return 0;
    using boost::multiprecision::cpp_int;
    cpp_int ka = boost::multiprecision::pow(cpp_int(k), (unsigned)a) - 1;
    if (ka == 0) throw InvalidInput("k^a = 1, valuation is infinite");
    int v = 0;
    while (ka % p == 0) { ka /= p; ++v; }
    u64 t = s;
    while (t % p == 0) { t /= p; ++v; }
    return v;
}

int vp_factorial(u64 d, u64 p) {
    u64 digit_sum = 0, t = d;
    while (t) { digit_sum += t % p; t /= p; }
    return (int)((d - digit_sum) / (p - 1));
}

PadicInt teichmuller(i64 a, const PadicCtx& ctx) {
    u64 x = ctx.from_int(a);
    if (x % ctx.p == 0) throw InvalidInput("Teichmuller lift of a multiple of p");
    for (;;) {
        u64 y = ctx.pow(x, ctx.p);
        if (y == x) break;
        x = y;
    }
    return PadicInt::from_residue(ctx, x);
}

}  // namespace morava
