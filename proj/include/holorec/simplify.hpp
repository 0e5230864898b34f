#pragma once

#include "holorec/hypterm.hpp"

namespace holorec {

// (y)_n = (u)_n * correction(n) with the real part of u in (0, 1].
// y must not be a nonpositive integer.
struct PochNormalized {
    FieldElement u;
    RatFun correction;
};
PochNormalized pochhammer_normalize(const FieldElement& y);

// (y)_n / (x)_n as a rational function; requires x - y an integer.
RatFun ratio_rule(const FieldElement& y, const FieldElement& x);

struct SimplifyOptions {
    bool product_rule = true;
};

// Closed form of prod_{k=0}^{n-1} r(k) as a factorial/Pochhammer term.
// r must have no zero or pole at a nonnegative integer.
HypTerm pochfactorsimp(const RatFun& r, const SimplifyOptions& opts = {});

} // namespace holorec
