#include "doctest.h"

#include "holorec/factor.hpp"
#include "holorec/ratsol.hpp"

#include "helpers.hpp"

#include <random>

using namespace holorec;
using namespace holorec::test;

namespace {

// brute-force dispersion oracle: scan gcd(A(n), B(n+h)) over the exact
// shift bound from the Cauchy root bounds of both polynomials
std::set<long> dispersion_oracle(const Poly& A, const Poly& B) {
    auto bound = [](const Poly& p) -> mpq_class {
        mpq_class lead = abs(p.leading().rational());
        mpq_class m = 0;
        for (int i = 0; i < p.degree(); ++i) m = std::max(m, mpq_class(abs(p[i].a())));
        return 1 + m / lead;
    };
    mpq_class H = bound(A) + bound(B);
    long hmax = static_cast<long>(mpz_class(H.get_num() / H.get_den()).get_si()) + 1;
    std::set<long> out;
    for (long h = 0; h <= hmax; ++h)
        if (poly_gcd(A, B.shifted(h)).degree() > 0) out.insert(h);
    return out;
}

} // namespace

TEST_CASE("dispersion_set examples") {
    CHECK(dispersion_set(pl("n*(n+5)"), pl("n")) == std::set<long>{0, 5});
    CHECK(dispersion_set(pl("(n+1)*(n+3)"), pl("n")) == std::set<long>{1, 3});
    CHECK(dispersion_set(pl("n"), pl("n+1")).empty());
    // quadratic atoms matched by shift
    CHECK(dispersion_set(pl("n^2-2"), pl("(n-3)*(n-3)-2")) == std::set<long>{3});
}

TEST_CASE("dispersion_set equals the brute-force oracle") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto random_poly = [&]() {
            Poly p = Poly::constant(FieldElement(rand_q_nonzero(rng, 20)));
            int total = 0;
            while (total < 6 && rng() % 3) {
                if (rng() % 4 == 0) {
                    // irrational quadratic, occasionally shared via shifts
                    Poly quad = pl("n^2-2");
                    p = p * quad.shifted(static_cast<long>(rng() % 5));
                    total += 2;
                } else {
                    std::uniform_int_distribution<long> root(-10, 10);
                    p = p * Poly::linear_from_root(FieldElement(root(rng)));
                    total += 1;
                }
            }
            return p;
        };
        Poly A = random_poly(), B = random_poly();
        CHECK(dispersion_set(A, B) == dispersion_oracle(A, B));
    }
}

TEST_CASE("universal_denominator") {
    Recurrence r1 = Recurrence::normalize({rf("-n"), rf("n+1")});
    CHECK(universal_denominator(r1) == pl("n"));

    Recurrence r2 = rec("a(n+1) - 2*a(n) = 0");
    CHECK(universal_denominator(r2) == pl("1"));

    Recurrence r3 = Recurrence::normalize({rf("n+1"), rf("-1"), rf("-(n+4)")});
    Poly u = universal_denominator(r3);
    CHECK(pl("(n+1)*(n+2)").divides(u));
}

TEST_CASE("polynomial_solutions") {
    Recurrence constant = rec("a(n+1) - a(n) = 0");
    auto s1 = polynomial_solutions(constant, 2);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == pl("1"));

    Recurrence linear = rec("n*a(n+1) - (n+1)*a(n) = 0");
    auto s2 = polynomial_solutions(linear, 1);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == pl("n"));

    Recurrence diff2 = rec("a(n+2) - 2*a(n+1) + a(n) = 0");
    auto s3 = polynomial_solutions(diff2, 1);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0] == pl("1"));
    CHECK(s3[1] == pl("n"));

    CHECK(polynomial_solutions(diff2, -1).empty());
}

TEST_CASE("rational_solutions") {
    Recurrence r1 = Recurrence::normalize({rf("-n"), rf("n+1")});
    auto s1 = rational_solutions(r1, -1);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == rf("1/n"));

    Recurrence r2 = rec("a(n+1) - a(n) = 0");
    auto s2 = rational_solutions(r2, 0);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == rf("1"));

    Recurrence r3 = Recurrence::normalize({rf("n+1"), rf("-1"), rf("-(n+4)")});
    auto s3 = rational_solutions(r3, -2);
    REQUIRE(s3.size() == 1);
    CHECK(s3[0] == rf("1/((n+1)*(n+2))"));
}

TEST_CASE("universal_denominator degree grows with planted shifted factors") {
    Recurrence base = Recurrence::normalize({rf("-n"), rf("n+1")});
    int d0 = universal_denominator(base).degree();
    // a new integer-shifted factor on either boundary cannot shrink it
    Recurrence more_trail = Recurrence::normalize({rf("-n*(n-5)"), rf("n+1")});
    CHECK(universal_denominator(more_trail).degree() >= d0);
    Recurrence more_lead = Recurrence::normalize({rf("-n"), rf("(n+1)*(n+7)")});
    CHECK(universal_denominator(more_lead).degree() >= d0);
    Recurrence both = Recurrence::normalize({rf("-n*(n-3)"), rf("(n+1)*(n+5)")});
    CHECK(universal_denominator(both).degree() >= d0);
}

TEST_CASE("rational solutions satisfy the recurrence exactly") {
    std::mt19937 rng(17);
    int built = 0;
    for (int trial = 0; trial < 40 && built < 20; ++trial) {
        // plant a rational solution R and build a recurrence it satisfies:
        // R(n+1)*a(n) - R(n)*a(n+1) = 0 has solution a = R
        Poly num = Poly::linear_from_root(FieldElement(rand_q(rng, 5)));
        Poly den = Poly::linear_from_root(FieldElement(rand_q(rng, 5)));
        if (poly_gcd(num, den).degree() > 0) continue;
        RatFun R(num, den);
        Recurrence re = Recurrence::normalize({RatFun::from_poly(num.shifted(1)) / RatFun::from_poly(den.shifted(1)),
                                               -R});
        ++built;
        long delta = num.degree() - den.degree();
        auto sols = rational_solutions(re, delta);
        bool found = false;
        for (const auto& s : sols) {
            // verify by substitution
            RatFun residue = RatFun::from_poly(re.coeff(0)) * s + RatFun::from_poly(re.coeff(1)) * s.shifted(1);
            CHECK(residue.is_zero());
            if ((s / R).is_constant()) found = true;
        }
        CHECK(found);
    }
}
