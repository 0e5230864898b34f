#pragma once

#include <string>

#include "holorec/hypterm.hpp"
#include "holorec/localtypes.hpp"
#include "holorec/recurrence.hpp"

namespace holorec {

// Field context a parse runs under.  Auto discovers sqrt(D) literals (and
// square roots of scalars raised to n/2) up to one quadratic extension.
struct ParseContext {
    FieldPolicy policy = FieldPolicy::auto_discover();
    // filled during parsing under Auto
    FieldSpec discovered = FieldSpec::rationals();

    FieldSpec require(long d); // register sqrt(d); throws under RationalsOnly
    FieldSpec current() const;
};

// Text grammar: sum of coeff * a(n+i) terms with "= 0"; coefficients are
// polynomial expressions in n over the field.  JSON input (leading '{') uses
// the Recurrence JSON schema.
Recurrence parse_recurrence(const std::string& src, ParseContext& ctx);

// C^n, rational functions of n, n!, (a*n+b)!, pochhammer(x,n),
// binomial(x,y), integer exponents.
HypTerm parse_term(const std::string& src, ParseContext& ctx);

// A plain rational function of n.
RatFun parse_ratfun(const std::string& src, ParseContext& ctx);

} // namespace holorec
