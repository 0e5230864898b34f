#include "doctest.h"

#include "holorec/genrec.hpp"

#include "helpers.hpp"

#include <random>

using namespace holorec;
using namespace holorec::test;

namespace {

bool same_up_to_scalar(const Recurrence& a, const Recurrence& b) {
    if (a.order() != b.order()) return false;
    FieldSpec s = join(a.spec(), b.spec());
    // find the scale from the first nonzero pair
    for (int i = 0; i <= a.order(); ++i) {
        if (a.coeff(i).is_zero() != b.coeff(i).is_zero()) return false;
        if (a.coeff(i).is_zero()) continue;
        RatFun scale = RatFun::from_poly(a.coeff(i).coerced(s)) / RatFun::from_poly(b.coeff(i).coerced(s));
        if (!scale.is_constant()) return false;
        for (int j = 0; j <= a.order(); ++j) {
            RatFun lhs = RatFun::from_poly(a.coeff(j).coerced(s));
            RatFun rhs = RatFun::from_poly(b.coeff(j).coerced(s)) * scale;
            if (!(lhs == rhs)) return false;
        }
        return true;
    }
    return false;
}

} // namespace

TEST_CASE("sum_hyper_re reproduces the worked order-2 example") {
    // terms 1/((n+1)(n+2)) and (-1)^n (2n+3)/((n+1)(n+2))
    RatioNF r1 = term("1/((n+1)*(n+2))").term_ratio();
    RatioNF r2 = term("(-1)^n*(2*n+3)/((n+1)*(n+2))").term_ratio();
    CHECK(r1.as_ratfun() == rf("(n+1)/(n+3)"));
    CHECK(r2.as_ratfun() == rf("-(2*n+5)*(n+1)/((2*n+3)*(n+3))"));

    Recurrence re = sum_hyper_re({r1, r2});
    Recurrence expected = rec("-(n+4)*a(n+2) - a(n+1) + (n+1)*a(n) = 0");
    CHECK(same_up_to_scalar(re, expected));
    CHECK(re.apply_to_ratio(r1.as_ratfun()).is_zero());
    CHECK(re.apply_to_ratio(r2.as_ratfun()).is_zero());
}

TEST_CASE("sum_hyper_re recovers the Fibonacci recurrence") {
    RatioNF r1 = term("((1-sqrt(5))/2)^n").term_ratio();
    RatioNF r2 = term("((1+sqrt(5))/2)^n").term_ratio();
    Recurrence re = sum_hyper_re({r1, r2});
    Recurrence expected = Recurrence::normalize({rf("1"), rf("1"), rf("-1")});
    CHECK(same_up_to_scalar(re, expected));
}

TEST_CASE("sum_hyper_re single geometric ratio") {
    RatioNF two = RatioNF::of(RatFun(2));
    Recurrence re = sum_hyper_re({two});
    Recurrence expected = Recurrence::normalize({rf("-2"), rf("1")});
    CHECK(same_up_to_scalar(re, expected));
}

TEST_CASE("duplicate ratios collapse to lower order") {
    RatioNF r = RatioNF::of(rf("(n+1)/(n+3)"));
    Recurrence re = sum_hyper_re({r, r});
    CHECK(re.order() == 1);
    CHECK(re.apply_to_ratio(r.as_ratfun()).is_zero());
}

TEST_CASE("soundness on random ratio lists") {
    std::mt19937 rng(99);
    auto random_ratio = [&]() -> RatioNF {
        RatFun r = RatFun::constant(FieldElement(rand_q_nonzero(rng, 5)));
        int nf = static_cast<int>(rng() % 3);
        for (int k = 0; k < nf; ++k) {
            Poly lin = Poly::linear_from_root(FieldElement(rand_q(rng, 5)));
            if (rng() % 2)
                r *= RatFun::from_poly(lin);
            else
                r /= RatFun::from_poly(lin);
        }
        return RatioNF::of(r);
    };
    for (int trial = 0; trial < 25; ++trial) {
        size_t k = 1 + rng() % 4;
        std::vector<RatioNF> ratios;
        for (size_t i = 0; i < k; ++i) ratios.push_back(random_ratio());
        Recurrence re = sum_hyper_re(ratios);
        CHECK(re.order() <= static_cast<int>(k));
        for (const auto& r : ratios) CHECK(re.apply_to_ratio(r.as_ratfun()).is_zero());
    }
}
