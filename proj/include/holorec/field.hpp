#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>

#include "holorec/error.hpp"

namespace holorec {

// The active coefficient field: Q, or a single quadratic extension Q(sqrt(d))
// with d a square-free integer, d != 0, 1.  No towers.
struct FieldSpec {
    enum class Kind { Rationals, Quadratic };

    Kind kind = Kind::Rationals;
    long d = 0;

    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec quadratic(long d);

    bool is_rationals() const { return kind == Kind::Rationals; }
    bool operator==(const FieldSpec&) const = default;

    std::string to_string() const;
};

// Smallest common field containing both.  Throws UnsupportedExtension when
// the join would be a tower Q(sqrt(a), sqrt(b)).
FieldSpec join(const FieldSpec& f, const FieldSpec& g);

// a + b*sqrt(d), components kept reduced by mpq_class.  Over Q, b == 0.
// For d > 0 the real embedding takes sqrt(d) > 0; for d < 0 the "real part"
// used by ordering helpers is the rational coordinate a.
class FieldElement {
public:
    FieldElement() : a_(0), b_(0) {}
    FieldElement(long v) : a_(v), b_(0) {}
    FieldElement(mpq_class v) : a_(std::move(v)), b_(0) {}
    FieldElement(long num, long den);
    FieldElement(mpq_class a, mpq_class b, FieldSpec spec);

    static FieldElement sqrt_d(FieldSpec spec) {
        return FieldElement(0, 1, spec);
    }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    const FieldSpec& spec() const { return spec_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_integer() const;
    // Defined only for rational values.
    mpq_class rational() const;
    long to_long() const; // requires integer, fits long

    FieldElement operator-() const;
    FieldElement conj() const;
    mpq_class norm() const; // a^2 - d*b^2
    FieldElement inv() const;

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
    FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }

    FieldElement pow(long e) const; // e may be negative

    bool operator==(const FieldElement& y) const { return a_ == y.a_ && b_ == y.b_ && compatible(y); }
    bool operator!=(const FieldElement& y) const { return !(*this == y); }

    // Deterministic total order on (a, b); not the numeric order for surds.
    std::strong_ordering lex_order(const FieldElement& y) const;

    // Exact sign of the real embedding (d > 0), or of a (rationals, d < 0).
    int sign_real() const;
    // floor of the real embedding, exact.
    mpz_class floor_real() const;
    // x - y compared in the real embedding.
    int compare_real(const FieldElement& y) const { return (*this - y).sign_real(); }

    // Coerce into `to`.  Rational values lift into any quadratic field;
    // anything else must match.  Throws MixedField.
    FieldElement coerced(const FieldSpec& to) const;

    // "p/q" over Q, "p/q+r/s*sqrt(d)" (sign-aware) over Q(sqrt(d)).
    std::string to_string() const;

private:
    bool compatible(const FieldElement& y) const;

    mpq_class a_, b_;
    FieldSpec spec_; // Rationals whenever b_ could be anything but is tracked by spec_
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

enum class Strip {
    RootsStrip, // real part in [-1, 0)
    PochStrip,  // real part in (0, 1]
};

struct StripResult {
    FieldElement rep;
    mpz_class shift; // rep = x - shift
};

// Translate x by an integer so its real part lands in the requested strip.
StripResult real_part_floor_shift(const FieldElement& x, Strip target);

// sqrt of x within its own field, when one exists.
std::optional<FieldElement> sqrt_in_field(const FieldElement& x);

// n = s^2 * f with f square-free; returns (f, s).  Requires n != 0.
std::pair<mpz_class, mpz_class> squarefree_decompose(const mpz_class& n);

// Parse the scalar text form emitted by to_string().  `spec` gives the field
// context for sqrt terms; sqrt(d) with mismatched d throws.
FieldElement parse_field_element(const std::string& text, const FieldSpec& spec);

} // namespace holorec
