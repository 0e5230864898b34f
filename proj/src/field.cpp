#include "holorec/field.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <vector>

namespace holorec {

namespace {

bool is_squarefree_long(long d) {
    if (d == 0) return false;
    unsigned long n = d < 0 ? static_cast<unsigned long>(-(d + 1)) + 1 : static_cast<unsigned long>(d);
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

} // namespace

FieldSpec FieldSpec::quadratic(long d) {
    if (d == 0 || d == 1 || !is_squarefree_long(d))
        throw Error(Error::Kind::InvalidArgument, "quadratic field needs square-free d != 0, 1; got " + std::to_string(d));
    FieldSpec s;
    s.kind = Kind::Quadratic;
    s.d = d;
    return s;
}

std::string FieldSpec::to_string() const {
    if (is_rationals()) return "Q";
    return "Q(sqrt(" + std::to_string(d) + "))";
}

FieldSpec join(const FieldSpec& f, const FieldSpec& g) {
    if (f == g || g.is_rationals()) return f;
    if (f.is_rationals()) return g;
    throw Error(Error::Kind::UnsupportedExtension,
                "field tower " + f.to_string() + " + " + g.to_string() + " is not supported");
}

FieldElement::FieldElement(long num, long den) : a_(num, den), b_(0) {
    if (den == 0) throw Error(Error::Kind::DivisionByZero, "zero denominator");
    a_.canonicalize();
}

FieldElement::FieldElement(mpq_class a, mpq_class b, FieldSpec spec)
    : a_(std::move(a)), b_(std::move(b)), spec_(spec) {
    if (spec_.is_rationals() && b_ != 0)
        throw Error(Error::Kind::InvalidArgument, "rational element with nonzero surd part");
}

bool FieldElement::compatible(const FieldElement& y) const {
    if (spec_ == y.spec_) return true;
    // A value with b == 0 is plain rational regardless of its label.
    if (b_ == 0 && spec_.is_rationals()) return true;
    if (y.b_ == 0 && y.spec_.is_rationals()) return true;
    return false;
}

bool FieldElement::is_integer() const {
    return b_ == 0 && a_.get_den() == 1;
}

mpq_class FieldElement::rational() const {
    if (b_ != 0) throw Error(Error::Kind::InvalidArgument, "not a rational value: " + to_string());
    return a_;
}

long FieldElement::to_long() const {
    if (!is_integer() || !a_.get_num().fits_slong_p())
        throw Error(Error::Kind::InvalidArgument, "not a machine integer: " + to_string());
    return a_.get_num().get_si();
}

FieldElement FieldElement::operator-() const {
    return FieldElement(-a_, -b_, spec_);
}

FieldElement FieldElement::conj() const {
    return FieldElement(a_, -b_, spec_);
}

mpq_class FieldElement::norm() const {
    if (spec_.is_rationals()) return a_ * a_;
    return a_ * a_ - mpq_class(spec_.d) * b_ * b_;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw Error(Error::Kind::DivisionByZero, "inverse of zero");
    if (b_ == 0) return FieldElement(1 / a_, 0, spec_);
    mpq_class nm = norm();
    return FieldElement(a_ / nm, -b_ / nm, spec_);
}

namespace {
FieldSpec op_spec(const FieldElement& x, const FieldElement& y) {
    if (x.spec() == y.spec()) return x.spec();
    if (x.spec().is_rationals() && x.b() == 0) return y.spec();
    if (y.spec().is_rationals() && y.b() == 0) return x.spec();
    throw Error(Error::Kind::MixedField,
                "operands in different fields: " + x.spec().to_string() + " vs " + y.spec().to_string());
}
} // namespace

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    return FieldElement(x.a_ + y.a_, x.b_ + y.b_, op_spec(x, y));
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return FieldElement(x.a_ - y.a_, x.b_ - y.b_, op_spec(x, y));
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    FieldSpec s = op_spec(x, y);
    if (s.is_rationals()) return FieldElement(x.a_ * y.a_, 0, s);
    mpq_class d(s.d);
    return FieldElement(x.a_ * y.a_ + d * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, s);
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * y.inv();
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FieldElement r(1);
    r = r.coerced(spec_);
    FieldElement base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::strong_ordering FieldElement::lex_order(const FieldElement& y) const {
    int c = cmp(a_, y.a_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    c = cmp(b_, y.b_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

int FieldElement::sign_real() const {
    if (spec_.is_rationals() || spec_.d < 0) return sgn(a_);
    if (b_ == 0) return sgn(a_);
    if (a_ == 0) return sgn(b_);
    int sa = sgn(a_), sb = sgn(b_);
    if (sa == sb) return sa;
    // a and b*sqrt(d) compete: sign(a + b*sqrt(d)) = sign(a) * sign(a^2 - d*b^2).
    return sa * sgn(norm());
}

mpz_class FieldElement::floor_real() const {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), a_.get_num().get_mpz_t(), a_.get_den().get_mpz_t());
    if (spec_.is_rationals() || spec_.d < 0 || b_ == 0) return fl;
    // floor(b*sqrt(d)) via the integer square root of b^2 d, then an exact
    // one-step fix-up for the combined value.
    mpz_class p = b_.get_num(), q = b_.get_den();
    mpz_class t;
    mpz_class rad = p * p * spec_.d;
    mpz_sqrt(t.get_mpz_t(), rad.get_mpz_t());
    if (p < 0) t = -t - 1; // -sqrt lies in [-(t+1), -t]
    mpz_class surd_fl;
    mpz_fdiv_q(surd_fl.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
    mpz_class m = fl + surd_fl - 1;
    while ((*this - FieldElement(mpq_class(m + 1), 0, FieldSpec::rationals()).coerced(spec_)).sign_real() >= 0)
        m += 1;
    while ((*this - FieldElement(mpq_class(m), 0, FieldSpec::rationals()).coerced(spec_)).sign_real() < 0)
        m -= 1;
    return m;
}

FieldElement FieldElement::coerced(const FieldSpec& to) const {
    if (spec_ == to) return *this;
    if (b_ == 0) return FieldElement(a_, 0, to);
    throw Error(Error::Kind::MixedField,
                "cannot coerce " + to_string() + " from " + spec_.to_string() + " into " + to.to_string());
}

namespace {
std::string q_str(const mpq_class& q) {
    return q.get_str();
}
} // namespace

std::string FieldElement::to_string() const {
    if (b_ == 0) return q_str(a_);
    std::string s;
    if (a_ != 0) {
        s = q_str(a_);
        s += b_ > 0 ? "+" : "-";
    } else if (b_ < 0) {
        s = "-";
    }
    mpq_class babs = abs(b_);
    if (babs != 1) s += q_str(babs) + "*";
    s += "sqrt(" + std::to_string(spec_.d) + ")";
    return s;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
    return os << x.to_string();
}

StripResult real_part_floor_shift(const FieldElement& x, Strip target) {
    mpz_class fl = x.floor_real();
    mpz_class shift;
    if (target == Strip::RootsStrip) {
        // x - shift in [-1, 0): shift = floor(x) + 1.
        shift = fl + 1;
    } else {
        // x - shift in (0, 1]: shift = ceil(x) - 1 = -floor(-x) - 1.
        shift = -((-x).floor_real()) - 1;
    }
    FieldElement rep = x - FieldElement(mpq_class(shift)).coerced(x.spec());
    return StripResult{rep, shift};
}

namespace {

// Square root of a nonnegative rational, exact or nothing.
std::optional<mpq_class> sqrt_rational(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return mpq_class(0);
    const mpz_class &num = q.get_num(), &den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

} // namespace

std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n) {
    if (n == 0) throw Error(Error::Kind::InvalidArgument, "squarefree_decompose(0)");
    mpz_class rest = abs(n), f = n < 0 ? -1 : 1, s = 1;
    for (unsigned long p = 2; mpz_class(p) * p * p <= rest && p < 2000000UL; ++p) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
            ++e;
        }
        for (unsigned long k = 0; k + 1 < e; k += 2) s *= p;
        if (e % 2) f *= p;
    }
    // rest now has no prime factor below the bound twice... it may itself be
    // a perfect square or square-free; anything else is beyond desk scale.
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
        s *= r;
    } else {
        f *= rest;
    }
    return {f, s};
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
    if (x.is_zero()) return FieldElement(0).coerced(x.spec());
    if (x.b() == 0) {
        if (auto r = sqrt_rational(x.a())) return FieldElement(*r).coerced(x.spec());
        if (x.spec().is_rationals()) return std::nullopt;
        // b = 0 over Q(sqrt(d)): maybe x = d * (rational square), sqrt = v*sqrt(d).
        auto v2 = sqrt_rational(x.a() / mpq_class(x.spec().d));
        if (v2) return FieldElement(0, *v2, x.spec());
        return std::nullopt;
    }
    // (u + v*sqrt(d))^2 = x: u^2 = (a +- s)/2 with s = sqrt(norm), v = b/(2u).
    auto s = sqrt_rational(x.norm());
    if (!s) return std::nullopt;
    for (int which = 0; which < 2; ++which) {
        mpq_class t = which == 0 ? mpq_class((x.a() + *s) / 2) : mpq_class((x.a() - *s) / 2);
        auto u = sqrt_rational(t);
        if (!u || *u == 0) continue;
        mpq_class v = x.b() / (2 * (*u));
        FieldElement cand(*u, v, x.spec());
        if (cand * cand == x) return cand;
        cand = -cand;
        if (cand * cand == x) return cand;
    }
    return std::nullopt;
}

namespace {

struct ScalarLexer {
    const std::string& s;
    size_t i = 0;
    explicit ScalarLexer(const std::string& str) : s(str) {}
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    mpz_class integer() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (start == i) throw Error(Error::Kind::ParseError, "expected integer in scalar '" + s + "'");
        return mpz_class(s.substr(start, i - start));
    }
};

} // namespace

FieldElement parse_field_element(const std::string& text, const FieldSpec& spec) {
    ScalarLexer lx(text);
    FieldElement acc = FieldElement(0).coerced(spec);
    bool first = true;
    for (;;) {
        lx.skip_ws();
        if (lx.i >= lx.s.size()) break;
        int sign = 1;
        if (lx.eat('+')) sign = 1;
        else if (lx.eat('-')) sign = -1;
        else if (!first) throw Error(Error::Kind::ParseError, "expected + or - in scalar '" + text + "'");
        first = false;
        lx.skip_ws();
        mpq_class coef(1);
        bool have_coef = false;
        if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
            mpz_class num = lx.integer();
            mpz_class den = 1;
            if (lx.eat('/')) den = lx.integer();
            if (den == 0) throw Error(Error::Kind::DivisionByZero, "zero denominator in scalar");
            coef = mpq_class(num, den);
            coef.canonicalize();
            have_coef = true;
        }
        bool surd = false;
        size_t save = lx.i;
        if (have_coef ? lx.eat('*') : true) {
            lx.skip_ws();
            if (lx.s.compare(lx.i, 5, "sqrt(") == 0) {
                lx.i += 5;
                mpz_class d = lx.integer();
                bool dneg = false;
                // sqrt(-d) never emitted, but accept it
                (void)dneg;
                if (!lx.eat(')')) throw Error(Error::Kind::ParseError, "missing ) in sqrt");
                if (spec.is_rationals() || mpz_class(spec.d) != d)
                    throw Error(Error::Kind::UnsupportedExtension,
                                "sqrt(" + d.get_str() + ") outside field " + spec.to_string());
                surd = true;
            } else {
                lx.i = save;
            }
        }
        if (!have_coef && !surd)
            throw Error(Error::Kind::ParseError, "malformed scalar '" + text + "'");
        if (sign < 0) coef = -coef;
        if (surd)
            acc += FieldElement(0, coef, spec);
        else
            acc += FieldElement(coef).coerced(spec);
    }
    if (first) throw Error(Error::Kind::ParseError, "empty scalar");
    return acc;
}

} // namespace holorec
