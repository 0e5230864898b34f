#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "holorec/field.hpp"

namespace holorec {

// Dense univariate polynomial over Q or Q(sqrt(d)), coefficients stored
// lowest degree first.  The zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldSpec spec) : spec_(spec) {}
    Poly(std::vector<FieldElement> coeffs, FieldSpec spec);
    Poly(std::initializer_list<long> coeffs);
    static Poly constant(const FieldElement& c);
    static Poly variable(FieldSpec spec = FieldSpec::rationals()); // n
    // n + c
    static Poly linear_from_root(const FieldElement& root);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const FieldSpec& spec() const { return spec_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& operator[](size_t k) const;
    FieldElement leading() const;
    FieldElement constant_term() const;
    bool is_monic() const { return !is_zero() && leading().is_one(); }
    bool is_constant() const { return c_.size() <= 1; }

    Poly operator-() const;
    friend Poly operator+(const Poly& p, const Poly& q);
    friend Poly operator-(const Poly& p, const Poly& q);
    friend Poly operator*(const Poly& p, const Poly& q);
    Poly operator*(const FieldElement& s) const;
    Poly operator/(const FieldElement& s) const { return *this * s.inv(); }
    Poly& operator+=(const Poly& q) { return *this = *this + q; }
    Poly& operator-=(const Poly& q) { return *this = *this - q; }
    Poly& operator*=(const Poly& q) { return *this = *this * q; }

    bool operator==(const Poly& q) const { return c_ == q.c_; }
    bool operator!=(const Poly& q) const { return !(*this == q); }

    // Exact Euclidean division; q != 0.
    std::pair<Poly, Poly> quot_rem(const Poly& q) const;
    bool divides(const Poly& p) const; // *this | p
    Poly pow(unsigned e) const;

    // p(n + k)
    Poly shifted(long k) const;
    Poly shifted(const FieldElement& k) const;
    Poly derivative() const;
    Poly monic() const;
    FieldElement eval(const FieldElement& x) const;

    Poly coerced(const FieldSpec& to) const;
    // Split coefficients a + b*sqrt(d) into the rational polynomials (A, B).
    std::pair<Poly, Poly> surd_components() const;

    // Positive rational c with (*this)/c integer-coefficient, content 1.
    mpq_class rational_content() const;
    Poly primitive_part() const { return *this / FieldElement(rational_content()); }

    // Deterministic ordering: by degree, then coefficient lex from the top.
    std::strong_ordering order(const Poly& q) const;

    // Human text, descending powers, e.g. "2*n^2+3*n+1".  var defaults to n.
    std::string to_string(const std::string& var = "n") const;

private:
    void trim();

    std::vector<FieldElement> c_;
    FieldSpec spec_;
};

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& p, const Poly& q);
Poly poly_lcm(const Poly& p, const Poly& q);

// Reduced rational function: den monic, gcd(num, den) = 1, den != 0.
class RatFun {
public:
    RatFun() : num_(Poly::constant(FieldElement(0))), den_(Poly::constant(FieldElement(1))) {}
    RatFun(Poly num, Poly den);
    RatFun(long v) : RatFun(Poly::constant(FieldElement(v)), Poly::constant(FieldElement(1))) {}
    static RatFun constant(const FieldElement& c);
    static RatFun from_poly(Poly p);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    FieldSpec spec() const { return num_.is_zero() ? den_.spec() : num_.spec(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_poly() const { return den_.degree() == 0; }
    Poly as_poly() const; // requires is_poly
    FieldElement as_constant() const;

    RatFun operator-() const;
    friend RatFun operator+(const RatFun& x, const RatFun& y);
    friend RatFun operator-(const RatFun& x, const RatFun& y);
    friend RatFun operator*(const RatFun& x, const RatFun& y);
    friend RatFun operator/(const RatFun& x, const RatFun& y);
    RatFun& operator+=(const RatFun& y) { return *this = *this + y; }
    RatFun& operator-=(const RatFun& y) { return *this = *this - y; }
    RatFun& operator*=(const RatFun& y) { return *this = *this * y; }
    RatFun& operator/=(const RatFun& y) { return *this = *this / y; }
    RatFun inv() const;
    RatFun pow(long e) const;

    bool operator==(const RatFun& y) const { return num_ == y.num_ && den_ == y.den_; }
    bool operator!=(const RatFun& y) const { return !(*this == y); }

    RatFun shifted(long k) const { return RatFun(num_.shifted(k), den_.shifted(k)); }
    FieldElement eval(const FieldElement& x) const; // throws PoleAtPoint
    RatFun coerced(const FieldSpec& to) const { return RatFun(num_.coerced(to), den_.coerced(to)); }

    std::string to_string(const std::string& var = "n") const;

private:
    Poly num_, den_;
};

} // namespace holorec
