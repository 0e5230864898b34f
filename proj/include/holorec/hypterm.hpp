#pragma once

#include <string>
#include <vector>

#include "holorec/poly.hpp"

namespace holorec {

// One multiplicative atom of a hypergeometric-term formula.
//   Factorial(a, b):    (a*n + b)!      a >= 1, b >= 0 integers
//   Pochhammer(x):      (x)_n           real part of x in (0, 1]
//   PochhammerPoly(q):  prod_{k=0}^{n-1} q(k)   q monic, degree >= 2,
//                       no root at a nonnegative integer.  (x)_n is the
//                       q(t) = t + x special case of the same product.
//
// The (0, 1] argument strip and the [-1, 0) root strip are one convention
// seen from two sides: (x)_n contributes the ratio factor (n + x), whose
// root -x has real part in [-1, 0) exactly when x lies in (0, 1].  Both
// guarantee the atom never vanishes at a nonnegative integer index.
struct Atom {
    enum class Kind { Factorial, Pochhammer, PochhammerPoly };

    Kind kind;
    long fac_a = 0, fac_b = 0; // Factorial
    FieldElement arg;          // Pochhammer
    Poly poly;                 // PochhammerPoly
    long exp = 1;              // nonzero

    static Atom factorial(long a, long b, long exp);
    static Atom pochhammer(FieldElement x, long exp);
    static Atom pochhammer_poly(Poly q, long exp);

    // Ratio atom(n+1)/atom(n) for exponent +1, as a polynomial in n.
    Poly step_poly(const FieldSpec& spec) const;
    FieldElement eval(long n0, const FieldSpec& spec) const; // exponent applied
    bool same_head(const Atom& o) const;
    std::strong_ordering head_order(const Atom& o) const;

    std::string to_string(bool latex = false) const; // without exponent
};

// Constant times monic rational function: the canonical shape of a
// hypergeometric term's consecutive-term ratio.
struct RatioNF {
    FieldElement c;
    RatFun monic; // numerator and denominator monic

    bool operator==(const RatioNF& o) const { return c == o.c && monic == o.monic; }
    static RatioNF of(const FieldElement& c, const RatFun& r);
    static RatioNF of(const RatFun& r); // split leading coefficient off
    RatFun as_ratfun() const { return RatFun::constant(c) * monic; }
};

// Normal form  C^n * R(n) * prod atoms^e.
class HypTerm {
public:
    static HypTerm make(FieldElement base, RatFun rat, std::vector<Atom> atoms);
    static HypTerm one(FieldSpec spec = FieldSpec::rationals());

    const FieldElement& base() const { return base_; }
    const RatFun& rat() const { return rat_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    FieldSpec spec() const;

    HypTerm operator*(const HypTerm& o) const;
    HypTerm scaled(const FieldElement& s) const; // multiply rational part

    // (C', rho(n)) with t(n+1)/t(n) = C' * rho(n), rho a ratio of monic polys.
    RatioNF term_ratio() const;
    FieldElement term_eval(long n0) const;

    enum class Format { Text, Latex, Json };
    std::string render(Format fmt) const;

    bool operator==(const HypTerm& o) const;

private:
    HypTerm() = default;

    FieldElement base_{1};
    RatFun rat_ = RatFun(1);
    std::vector<Atom> atoms_;
};

// Equal up to a nonzero constant multiple: the term ratios coincide.
bool ratio_equivalent(const HypTerm& s, const HypTerm& t);

} // namespace holorec
