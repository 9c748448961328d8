#pragma once

#include <utility>

#include "morava/fgl.hpp"

namespace morava {

// Polynomials are USeries whose length is degree + 1.

struct WeierstrassFactorization {
    USeries g;        // monic of degree D, lower coefficients in (p, u)
    USeries u;        // unit, correct mod x^u_valid
    int D = 0;
    int u_valid = 0;
    int iterations = 0;
};

// Index of the first coefficient that is a unit; NotWeierstrass when none.
int weierstrass_degree(const USeries& f);

// f = u g. Needs len(f) >= (K+1) D + 1 with K the nilpotency of (p, u).
WeierstrassFactorization weierstrass_prepare(const USeries& f, int D);
// Same factorization by lifting u, g one power of the maximal ideal at a time.
WeierstrassFactorization weierstrass_prepare_hensel(const USeries& f, int D);

// g_r for [p^r](x), of degree p^{nr}. len defaults to ctx.Dx.
WeierstrassFactorization pr_weierstrass(const FGL& F, int r, int len = 0);

USeries poly_mul(const USeries& a, const USeries& b);
// Division by a monic polynomial.
std::pair<USeries, USeries> poly_divmod(const USeries& a, const USeries& g);
USeries poly_rem(const USeries& a, const USeries& g);
// Exact quotient; ExactDivisionFailure when the remainder is nonzero.
USeries poly_exact_div(const USeries& a, const USeries& g);
// Trim trailing zero coefficients (keeps at least one).
USeries poly_trim(const USeries& a);
int poly_degree(const USeries& a);  // -1 for zero

// Class of a truncated series in E0[[x]]/g for g = x^D mod (p, u). Truncation
// at x^L is harmless once L >= D * K; otherwise PrecisionExhausted.
USeries reduce_series(const USeries& f, const USeries& g);

}  // namespace morava
