#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morava/series.hpp"

namespace morava {

// p-typical logarithm l(x) = sum_k L_k x^{p^k} / p^k with integral L_k.
// honda: all u_i set to 0, leaving L_{ni} = p^{(n-1)i}.
struct LogSpec {
    int n = 1;
    bool honda = false;
};

// L_0 .. L_kmax over R.
std::vector<E0Elem> log_numerators(const E0Ptr& R, const LogSpec& spec, int kmax);

// Extra p-adic digits carried while solving l(f) = target with x-degree < Dx.
int log_scale(const PrecisionCtx& ctx, const LogSpec& spec);

// Solve l(f) = a*l(x), giving [a](x) mod (p^N, u^Du, x^len). The multiplier
// must be known to N + log_scale digits; integers are exact.
USeries log_mult_series(const PrecisionCtx& ctx, const LogSpec& spec, const PadicInt& a, int len);
USeries log_mult_series(const PrecisionCtx& ctx, const LogSpec& spec, i64 m, int len);
// l^{-1}(c x) for a scalar c divisible enough to keep the result integral.
USeries log_inverse_linear(const PrecisionCtx& ctx, const LogSpec& spec, i64 c, int len);
// l^{-1}(l(x) + l(y)) on an arbitrary bivariate shape.
MSeries formal_sum_series(const PrecisionCtx& ctx, const LogSpec& spec, const MonoPtr& S);

class FGL {
public:
    PrecisionCtx ctx;
    MSeries F;  // bivariate, total degree < ctx.Dx
    std::optional<LogSpec> log;
    std::string name;

    static FGL additive(const PrecisionCtx& ctx);
    static FGL multiplicative(const PrecisionCtx& ctx);
    static FGL from_series(const MSeries& F, const std::string& name);

    u64 p() const { return ctx.p(); }
    // [a](x) of length len; the logarithm route allows len beyond ctx.Dx.
    USeries mult_series(i64 m, int len) const;
};

struct AxiomReport {
    bool identity = true, commutativity = true, associativity = true;
    std::string first_offense;
    bool ok() const { return identity && commutativity && associativity; }
};

AxiomReport check_axioms(const FGL& F);
USeries formal_inverse(const FGL& F);
USeries m_series(const FGL& F, i64 m);
// [m](x)/x, of length Dx - 1.
USeries divided_m_series(const FGL& F, i64 m);
// Digit accumulation; digits beyond a's precision are unknown.
USeries padic_series(const FGL& F, const PadicInt& a);
// x +_F y and x -_F y for univariate arguments.
USeries formal_add(const FGL& F, const USeries& a, const USeries& b);

struct Height {
    bool infinite = false;
    int n = 0;
};
Height height(const FGL& F);

FGL build_ptypical(const PrecisionCtx& ctx);
FGL build_honda(const PrecisionCtx& ctx);

// [p](x) == u_i x^{p^i} mod (p, u_1..u_{i-1}, x^{p^{i+1}}); u_n = 1.
bool pseries_congruence(const USeries& ps, int i, int n, std::string* why = nullptr);

}  // namespace morava
