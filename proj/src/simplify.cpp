#include "holorec/simplify.hpp"

#include "holorec/factor.hpp"

#include <algorithm>

namespace holorec {

PochNormalized pochhammer_normalize(const FieldElement& y) {
    if (y.is_integer() && y.sign_real() <= 0)
        throw Error(Error::Kind::NonpositiveIntegerArgument,
                    "pochhammer_normalize(" + y.to_string() + "): nonpositive integer argument");
    StripResult strip = real_part_floor_shift(y, Strip::PochStrip);
    const FieldElement& u = strip.rep;
    long m = static_cast<long>(strip.shift.get_si());
    FieldSpec s = y.spec();
    RatFun corr = RatFun::constant(FieldElement(1).coerced(s));
    if (m >= 0) {
        // (y)_n = (u)_n * prod_{k=0}^{m-1} (n+u+k)/(u+k)
        for (long k = 0; k < m; ++k) {
            FieldElement uk = u + FieldElement(k).coerced(s);
            corr *= RatFun(Poly::linear_from_root(-uk), Poly::constant(uk));
        }
    } else {
        // (y)_n = (u)_n * prod_{k=1}^{-m} (u-k)/(n+u-k)
        for (long k = 1; k <= -m; ++k) {
            FieldElement uk = u - FieldElement(k).coerced(s);
            corr *= RatFun(Poly::constant(uk), Poly::linear_from_root(-uk));
        }
    }
    return {u, corr};
}

RatFun ratio_rule(const FieldElement& y, const FieldElement& x) {
    FieldSpec s = join(y.spec(), x.spec());
    FieldElement diff = x.coerced(s) - y.coerced(s);
    if (!diff.is_integer())
        throw Error(Error::Kind::NonIntegerDifference,
                    "ratio_rule(" + y.to_string() + ", " + x.to_string() + "): difference not an integer");
    long j = diff.to_long();
    RatFun r = RatFun::constant(FieldElement(1).coerced(s));
    if (j > 0) {
        // (y)_n/(x)_n = (y)_j / (y+n)_j
        for (long t = 0; t < j; ++t) {
            FieldElement yt = y.coerced(s) + FieldElement(t).coerced(s);
            r *= RatFun(Poly::constant(yt), Poly::linear_from_root(-yt));
        }
    } else if (j < 0) {
        // (y)_n/(x)_n = (x+n)_{-j} / (x)_{-j}
        for (long t = 0; t < -j; ++t) {
            FieldElement xt = x.coerced(s) + FieldElement(t).coerced(s);
            r *= RatFun(Poly::linear_from_root(-xt), Poly::constant(xt));
        }
    }
    return r;
}

namespace {

struct LinearAtom {
    FieldElement arg; // (arg)_n
    long exp;         // signed; positive = numerator
};

// Is x a positive integer?  A positive half-integer s/2 (s odd)?
bool positive_integer(const FieldElement& x) {
    return x.is_integer() && x.sign_real() > 0;
}

bool positive_half_integer(const FieldElement& x, long& t_out) {
    if (!x.is_rational()) return false;
    mpq_class v = x.rational();
    if (v.get_den() != 2 || v <= 0) return false;
    mpq_class s2 = v * 2; // odd integer s = 2t+1
    mpz_class s = s2.get_num();
    t_out = mpz_class((s - 1) / 2).get_si();
    return true;
}

mpq_class factorial_q(long m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return mpq_class(f);
}

} // namespace

HypTerm pochfactorsimp(const RatFun& r, const SimplifyOptions& opts) {
    if (r.is_zero()) throw Error(Error::Kind::InvalidArgument, "pochfactorsimp(0)");
    const FieldSpec spec = r.spec();

    for (const auto& root : integer_roots(r.num()))
        if (root >= 0)
            throw Error(Error::Kind::NonnegativeIntegerRoot,
                        "ratio has zero at n = " + root.get_str() + "; shift it away first");
    for (const auto& root : integer_roots(r.den()))
        if (root >= 0)
            throw Error(Error::Kind::NonnegativeIntegerRoot,
                        "ratio has pole at n = " + root.get_str() + "; shift it away first");

    FactorList fnum = factorize(r.num());
    FactorList fden = factorize(r.den());

    FieldElement base = fnum.unit / fden.unit;
    RatFun rat = RatFun::constant(FieldElement(1).coerced(spec));
    std::vector<Atom> atoms;
    std::vector<LinearAtom> lin;

    auto add_linear = [&](const Poly& factor, long exp) {
        // factor (n + a) contributes (a)_n with a = factor(0)
        lin.push_back({factor.constant_term(), exp});
    };
    for (const auto& f : fnum.factors) add_linear(f.poly, f.mult);
    for (const auto& f : fden.factors) add_linear(f.poly, -f.mult);
    for (const auto& u : fnum.unsplit) atoms.push_back(Atom::pochhammer_poly(u.poly, u.mult));
    for (const auto& u : fden.unsplit) atoms.push_back(Atom::pochhammer_poly(u.poly, -u.mult));

    // merge equal arguments, deterministic ascending order
    std::sort(lin.begin(), lin.end(), [](const LinearAtom& a, const LinearAtom& b) {
        return a.arg.lex_order(b.arg) == std::strong_ordering::less;
    });
    {
        std::vector<LinearAtom> merged;
        for (auto& a : lin) {
            if (!merged.empty() && merged.back().arg == a.arg)
                merged.back().exp += a.exp;
            else
                merged.push_back(a);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(), [](const LinearAtom& a) { return a.exp == 0; }),
                     merged.end());
        lin = std::move(merged);
    }

    // Ratio Rule: numerator/denominator pairs whose arguments differ by an
    // integer collapse to a rational function.
    for (size_t i = 0; i < lin.size(); ++i) {
        if (lin[i].exp <= 0) continue;
        for (size_t j = 0; j < lin.size() && lin[i].exp > 0; ++j) {
            if (lin[j].exp >= 0) continue;
            FieldElement diff = lin[j].arg - lin[i].arg;
            if (!diff.is_integer()) continue;
            long times = std::min(lin[i].exp, -lin[j].exp);
            RatFun rr = ratio_rule(lin[i].arg, lin[j].arg);
            rat *= rr.pow(times);
            lin[i].exp -= times;
            lin[j].exp += times;
        }
    }
    lin.erase(std::remove_if(lin.begin(), lin.end(), [](const LinearAtom& a) { return a.exp == 0; }), lin.end());

    // Product Rule: same-side pairs at distance 1/2 (Gauss duplication when
    // 2x is a positive integer) or an integer apart (fold into one argument).
    if (opts.product_rule) {
        for (size_t i = 0; i < lin.size(); ++i) {
            for (size_t j = i + 1; j < lin.size(); ++j) {
                if (lin[i].exp == 0 || lin[j].exp == 0) continue;
                bool same_side = (lin[i].exp > 0) == (lin[j].exp > 0);
                if (!same_side) continue;
                FieldElement diff = lin[j].arg - lin[i].arg; // args sorted, diff "positive"
                int side = lin[i].exp > 0 ? 1 : -1;
                if (diff.is_rational() && diff.rational() == mpq_class(1, 2)) {
                    const FieldElement& x = lin[i].arg;
                    if (!x.is_rational()) continue;
                    mpq_class two_x = x.rational() * 2;
                    if (two_x.get_den() != 1 || two_x <= 0) continue;
                    long m = mpz_class(two_x.get_num()).get_si();
                    // (x)_n (x+1/2)_n = (2x)_{2n}/4^n = (2n+m-1)!/((m-1)! 4^n)
                    long times = std::min(std::abs(lin[i].exp), std::abs(lin[j].exp));
                    atoms.push_back(Atom::factorial(2, m - 1, side * times));
                    rat *= RatFun::constant(FieldElement(factorial_q(m - 1))).pow(-side * times);
                    base *= FieldElement(4).inv().pow(side * times);
                    lin[i].exp -= side * times;
                    lin[j].exp -= side * times;
                } else if (diff.is_integer() && diff.sign_real() > 0) {
                    // (x)_n (x+j)_n = (x)_n^2 * (x+n)_j/(x)_j
                    long jj = diff.to_long();
                    long times = std::min(std::abs(lin[i].exp), std::abs(lin[j].exp));
                    RatFun shift_fix = RatFun::constant(FieldElement(1).coerced(spec));
                    for (long t = 0; t < jj; ++t) {
                        FieldElement xt = lin[i].arg + FieldElement(t).coerced(spec);
                        shift_fix *= RatFun(Poly::linear_from_root(-xt), Poly::constant(xt));
                    }
                    rat *= shift_fix.pow(side * times);
                    lin[i].exp += side * times;
                    lin[j].exp -= side * times;
                }
            }
        }
        lin.erase(std::remove_if(lin.begin(), lin.end(), [](const LinearAtom& a) { return a.exp == 0; }),
                  lin.end());
    }

    // Isolated Rule on the survivors, then mod-Z normalization of whatever
    // stays a Pochhammer symbol.
    for (const auto& a : lin) {
        long t = 0;
        if (positive_integer(a.arg)) {
            // (x)_n = (n+x-1)!/(x-1)!
            long x = a.arg.to_long();
            atoms.push_back(Atom::factorial(1, x - 1, a.exp));
            rat *= RatFun::constant(FieldElement(factorial_q(x - 1))).pow(-a.exp);
        } else if (positive_half_integer(a.arg, t)) {
            // (x)_n = (2t+2n)! t! / ((2t)! 4^n (t+n)!)  for x = (2t+1)/2
            atoms.push_back(Atom::factorial(2, 2 * t, a.exp));
            atoms.push_back(Atom::factorial(1, t, -a.exp));
            rat *= RatFun::constant(FieldElement(factorial_q(t) / factorial_q(2 * t))).pow(a.exp);
            base *= FieldElement(4).inv().pow(a.exp);
        } else {
            PochNormalized norm = pochhammer_normalize(a.arg);
            rat *= norm.correction.pow(a.exp);
            atoms.push_back(Atom::pochhammer(norm.u, a.exp));
        }
    }

    return HypTerm::make(base, rat, std::move(atoms));
}

} // namespace holorec
