#include "holorec/poly.hpp"

#include <algorithm>
#include <sstream>

namespace holorec {

Poly::Poly(std::vector<FieldElement> coeffs, FieldSpec spec) : c_(std::move(coeffs)), spec_(spec) {
    for (auto& c : c_) c = c.coerced(spec_);
    trim();
}

Poly::Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.push_back(FieldElement(v));
    trim();
}

Poly Poly::constant(const FieldElement& c) {
    Poly p(c.spec());
    if (!c.is_zero()) p.c_.push_back(c);
    return p;
}

Poly Poly::variable(FieldSpec spec) {
    Poly p(spec);
    p.c_ = {FieldElement(0).coerced(spec), FieldElement(1).coerced(spec)};
    return p;
}

Poly Poly::linear_from_root(const FieldElement& root) {
    Poly p(root.spec());
    p.c_ = {-root, FieldElement(1).coerced(root.spec())};
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (!c_.empty()) spec_ = c_.back().spec();
}

const FieldElement& Poly::operator[](size_t k) const {
    static const FieldElement zero(0);
    return k < c_.size() ? c_[k] : zero;
}

FieldElement Poly::leading() const {
    if (is_zero()) throw Error(Error::Kind::InvalidArgument, "leading coefficient of zero polynomial");
    return c_.back();
}

FieldElement Poly::constant_term() const {
    return c_.empty() ? FieldElement(0).coerced(spec_) : c_.front();
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly operator+(const Poly& p, const Poly& q) {
    FieldSpec s = join(p.spec_, q.spec_);
    Poly r(s);
    r.c_.resize(std::max(p.c_.size(), q.c_.size()), FieldElement(0).coerced(s));
    for (size_t i = 0; i < r.c_.size(); ++i)
        r.c_[i] = (p[i] + q[i]).coerced(s);
    r.trim();
    return r;
}

Poly operator-(const Poly& p, const Poly& q) {
    return p + (-q);
}

Poly operator*(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly(join(p.spec_, q.spec_));
    FieldSpec s = join(p.spec_, q.spec_);
    Poly r(s);
    r.c_.assign(p.c_.size() + q.c_.size() - 1, FieldElement(0).coerced(s));
    for (size_t i = 0; i < p.c_.size(); ++i) {
        if (p.c_[i].is_zero()) continue;
        for (size_t j = 0; j < q.c_.size(); ++j)
            r.c_[i + j] += (p.c_[i] * q.c_[j]).coerced(s);
    }
    r.trim();
    return r;
}

Poly Poly::operator*(const FieldElement& s) const {
    if (s.is_zero()) return Poly(join(spec_, s.spec()));
    Poly r(join(spec_, s.spec()));
    r.c_ = c_;
    for (auto& c : r.c_) c = (c * s).coerced(r.spec_);
    return r;
}

std::pair<Poly, Poly> Poly::quot_rem(const Poly& q) const {
    if (q.is_zero()) throw Error(Error::Kind::DivisionByZero, "division by zero polynomial");
    FieldSpec s = join(spec_, q.spec_);
    Poly rem = coerced(s);
    Poly quo(s);
    Poly qq = q.coerced(s);
    if (rem.degree() < qq.degree()) return {quo, rem};
    quo.c_.assign(rem.c_.size() - qq.c_.size() + 1, FieldElement(0).coerced(s));
    FieldElement lead_inv = qq.leading().inv();
    for (int k = rem.degree() - qq.degree(); k >= 0; --k) {
        if (rem.c_.size() <= static_cast<size_t>(k + qq.degree())) continue;
        FieldElement coef = rem[k + qq.degree()] * lead_inv;
        if (coef.is_zero()) continue;
        quo.c_[k] = coef;
        for (int j = 0; j <= qq.degree(); ++j)
            rem.c_[k + j] -= coef * qq.c_[j];
        rem.trim();
    }
    quo.trim();
    return {quo, rem};
}

bool Poly::divides(const Poly& p) const {
    if (is_zero()) return p.is_zero();
    return p.quot_rem(*this).second.is_zero();
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(FieldElement(1).coerced(spec_));
    Poly base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Poly Poly::shifted(long k) const {
    return shifted(FieldElement(k).coerced(spec_));
}

Poly Poly::shifted(const FieldElement& k) const {
    // Horner composition with (n + k).
    if (is_zero() || k.is_zero()) return *this;
    FieldSpec s = join(spec_, k.spec());
    Poly x_plus_k(s);
    x_plus_k.c_ = {k.coerced(s), FieldElement(1).coerced(s)};
    Poly r(s);
    for (int i = degree(); i >= 0; --i)
        r = r * x_plus_k + Poly::constant(c_[i].coerced(s));
    return r;
}

Poly Poly::derivative() const {
    Poly r(spec_);
    for (size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * FieldElement(static_cast<long>(i)));
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inv();
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement r(0);
    r = r.coerced(join(spec_, x.spec()));
    for (int i = degree(); i >= 0; --i)
        r = r * x + c_[i];
    return r;
}

Poly Poly::coerced(const FieldSpec& to) const {
    Poly r(to);
    r.c_ = c_;
    for (auto& c : r.c_) c = c.coerced(to);
    return r;
}

std::pair<Poly, Poly> Poly::surd_components() const {
    Poly A(FieldSpec::rationals()), B(FieldSpec::rationals());
    for (const auto& c : c_) {
        A.c_.push_back(FieldElement(c.a()));
        B.c_.push_back(FieldElement(c.b()));
    }
    A.trim();
    B.trim();
    return {A, B};
}

mpq_class Poly::rational_content() const {
    mpz_class num_gcd = 0, den_lcm = 1;
    auto absorb = [&](const mpq_class& q) {
        if (q == 0) return;
        mpz_class n = abs(q.get_num());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    };
    for (const auto& c : c_) {
        absorb(c.a());
        absorb(c.b());
    }
    if (num_gcd == 0) return mpq_class(1);
    mpq_class content(num_gcd, den_lcm);
    content.canonicalize();
    return content;
}

std::strong_ordering Poly::order(const Poly& q) const {
    if (degree() != q.degree())
        return degree() < q.degree() ? std::strong_ordering::less : std::strong_ordering::greater;
    for (int i = degree(); i >= 0; --i) {
        auto c = (*this)[i].lex_order(q[i]);
        if (c != std::strong_ordering::equal) return c;
    }
    return std::strong_ordering::equal;
}

namespace {

std::string coef_str(const FieldElement& c, bool leading_position) {
    std::string s = c.to_string();
    bool composite = !c.is_rational();
    if (composite) return (leading_position ? "(" : "(") + s + ")";
    return s;
}

} // namespace

std::string Poly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const FieldElement& c = c_[i];
        if (c.is_zero()) continue;
        FieldElement cc = c;
        bool neg = false;
        if (cc.is_rational() && sgn(cc.a()) < 0) {
            neg = true;
            cc = -cc;
        }
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? "-" : "+");
        }
        bool unit = cc.is_one();
        if (i == 0) {
            os << coef_str(cc, false);
        } else {
            if (!unit) os << coef_str(cc, false) << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// Primitive pseudo-remainder sequence over Q-coefficient polynomials.
Poly gcd_rationals(Poly p, Poly q) {
    p = p.primitive_part();
    q = q.primitive_part();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        // prem(p, q): multiply p by lc(q)^(deg p - deg q + 1) then remainder.
        FieldElement mult = q.leading().pow(p.degree() - q.degree() + 1);
        Poly r = (p * mult).quot_rem(q).second;
        p = q;
        q = r.is_zero() ? r : r.primitive_part();
    }
    return p.monic();
}

Poly gcd_quadratic(Poly p, Poly q) {
    p = p.monic();
    q = q.monic();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        Poly r = p.quot_rem(q).second;
        p = q;
        q = r.is_zero() ? r : r.monic();
    }
    return p;
}

} // namespace

Poly poly_gcd(const Poly& p, const Poly& q) {
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    FieldSpec s = join(p.spec(), q.spec());
    if (s.is_rationals()) return gcd_rationals(p, q);
    return gcd_quadratic(p.coerced(s), q.coerced(s));
}

Poly poly_lcm(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly();
    Poly g = poly_gcd(p, q);
    return (p * q).quot_rem(g).first.monic();
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(Error::Kind::DivisionByZero, "rational function with zero denominator");
    FieldSpec s = join(num_.spec(), den_.spec());
    num_ = num_.coerced(s);
    den_ = den_.coerced(s);
    if (num_.is_zero()) {
        den_ = Poly::constant(FieldElement(1).coerced(s));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.quot_rem(g).first;
        den_ = den_.quot_rem(g).first;
    }
    FieldElement lead = den_.leading();
    if (!lead.is_one()) {
        FieldElement inv = lead.inv();
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

RatFun RatFun::constant(const FieldElement& c) {
    return RatFun(Poly::constant(c), Poly::constant(FieldElement(1).coerced(c.spec())));
}

RatFun RatFun::from_poly(Poly p) {
    FieldSpec s = p.spec();
    return RatFun(std::move(p), Poly::constant(FieldElement(1).coerced(s)));
}

Poly RatFun::as_poly() const {
    if (!is_poly()) throw Error(Error::Kind::InvalidArgument, "rational function is not a polynomial: " + to_string());
    return num_ * den_.leading().inv();
}

FieldElement RatFun::as_constant() const {
    if (!is_constant()) throw Error(Error::Kind::InvalidArgument, "rational function is not constant: " + to_string());
    return num_.constant_term() / den_.constant_term();
}

RatFun RatFun::operator-() const {
    RatFun r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFun operator+(const RatFun& x, const RatFun& y) {
    return RatFun(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

RatFun operator-(const RatFun& x, const RatFun& y) {
    return x + (-y);
}

RatFun operator*(const RatFun& x, const RatFun& y) {
    return RatFun(x.num_ * y.num_, x.den_ * y.den_);
}

RatFun operator/(const RatFun& x, const RatFun& y) {
    if (y.is_zero()) throw Error(Error::Kind::DivisionByZero, "division by zero rational function");
    return RatFun(x.num_ * y.den_, x.den_ * y.num_);
}

RatFun RatFun::inv() const {
    if (is_zero()) throw Error(Error::Kind::DivisionByZero, "inverse of zero rational function");
    return RatFun(den_, num_);
}

RatFun RatFun::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    return RatFun(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

FieldElement RatFun::eval(const FieldElement& x) const {
    FieldElement d = den_.eval(x);
    if (d.is_zero())
        throw Error(Error::Kind::PoleAtPoint,
                    "pole of " + to_string() + " at n = " + x.to_string() + " (factor " + den_.to_string() + ")");
    return num_.eval(x) / d;
}

std::string RatFun::to_string(const std::string& var) const {
    if (den_.degree() == 0 && den_.constant_term().is_one()) return num_.to_string(var);
    std::string ns = num_.to_string(var);
    std::string ds = den_.to_string(var);
    // parenthesize composite numerators and denominators
    auto composite = [](const std::string& s) {
        return s.find('+') != std::string::npos || s.find('-', 1) != std::string::npos ||
               s.find('*') != std::string::npos;
    };
    if (composite(ns)) ns = "(" + ns + ")";
    if (composite(ds)) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

} // namespace holorec
