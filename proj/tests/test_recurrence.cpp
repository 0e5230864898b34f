#include "doctest.h"

#include "holorec/recurrence.hpp"

#include "helpers.hpp"

using namespace holorec;
using namespace holorec::test;

TEST_CASE("normalize clears denominators and content") {
    Recurrence r1 = Recurrence::normalize({rf("-n/(n+1)"), rf("1")});
    CHECK(r1.order() == 1);
    CHECK(r1.coeff(0) == pl("-n"));
    CHECK(r1.coeff(1) == pl("n+1"));

    Recurrence r2 = Recurrence::normalize({rf("n+1"), rf("0"), rf("-1"), rf("0")});
    CHECK(r2.order() == 2);
    CHECK(r2.coeff(0) == pl("n+1"));
    CHECK(r2.coeff(1) == pl("0"));
    CHECK(r2.coeff(2) == pl("-1"));
    CHECK(r2.index_shift() == 0);

    Recurrence r3 = Recurrence::normalize({rf("2*n+2"), rf("4*n+4")});
    CHECK(r3.coeff(0) == pl("1"));
    CHECK(r3.coeff(1) == pl("2"));

    CHECK_THROWS_AS(Recurrence::normalize({rf("0"), rf("0")}), Error);
    CHECK_THROWS_AS(Recurrence::normalize({rf("0"), rf("n")}), Error);
}

TEST_CASE("normalize reindexes leading zeros") {
    // equation in a(n+1), a(n+2) only: rewritten for b(k) = a(k+1)
    Recurrence r = Recurrence::normalize({rf("0"), rf("-n/(n+1)"), rf("1")});
    CHECK(r.index_shift() == 1);
    CHECK(r.order() == 1);
    CHECK(r.coeff(0) == pl("-n"));
    CHECK(r.coeff(1) == pl("n+1"));
    // the parser's offset compression agrees with this convention
    Recurrence viaparse = rec("(n+1)*a(n+2) - n*a(n+1) = 0");
    CHECK(viaparse.coeff(0) == r.coeff(0));
    CHECK(viaparse.coeff(1) == r.coeff(1));
}

TEST_CASE("normalize is idempotent") {
    Recurrence r = rec("-(n+4)*a(n+2) - a(n+1) + (n+1)*a(n) = 0");
    std::vector<RatFun> again;
    for (const auto& p : r.coeffs()) again.push_back(RatFun::from_poly(p));
    Recurrence r2 = Recurrence::normalize(again);
    CHECK(r == r2);
}

TEST_CASE("apply_to_ratio") {
    // Fibonacci written with P_0 = 1, P_1 = 1, P_2 = -1; golden ratio solves it
    Recurrence fib = Recurrence::normalize({rf("1"), rf("1"), rf("-1")});
    FieldSpec q5 = FieldSpec::quadratic(5);
    FieldElement phi(mpq_class(1, 2), mpq_class(1, 2), q5);
    RatFun r = RatFun::constant(phi);
    CHECK(fib.apply_to_ratio(r).is_zero());

    Recurrence harmonic = rec("(n+1)*a(n+1) - n*a(n) = 0");
    CHECK(harmonic.apply_to_ratio(rf("n/(n+1)")).is_zero());

    Recurrence doubling = rec("a(n+1) - 2*a(n) = 0");
    RatFun wrong = doubling.apply_to_ratio(rf("3"));
    CHECK(!wrong.is_zero());
    CHECK(wrong.as_constant() == fe(1));

    // order-1 identity: result = P_0 + P_1 * r
    Recurrence d1 = rec("a(n+1) - 2*a(n) = 0");
    RatFun probe = rf("(n+3)/(n-1)");
    CHECK(d1.apply_to_ratio(probe) == RatFun::from_poly(d1.coeff(0)) + RatFun::from_poly(d1.coeff(1)) * probe);
}

TEST_CASE("recurrence JSON round trip") {
    Recurrence r = rec("-(n+4)*a(n+2) - a(n+1) + (n+1)*a(n) = 0");
    Recurrence back = Recurrence::from_json(r.to_json());
    CHECK(r == back);

    ParseContext ctx;
    Recurrence viaparse = parse_recurrence(r.to_json(), ctx);
    CHECK(viaparse == r);
}
