#pragma once

#include <random>
#include <string>

#include "holorec/parser.hpp"

namespace holorec::test {

inline FieldElement fe(long num, long den = 1) { return FieldElement(num, den); }

inline RatFun rf(const std::string& src) {
    ParseContext ctx;
    return parse_ratfun(src, ctx);
}

inline Poly pl(const std::string& src) {
    return rf(src).as_poly();
}

inline Recurrence rec(const std::string& src) {
    ParseContext ctx;
    return parse_recurrence(src, ctx);
}

inline HypTerm term(const std::string& src) {
    ParseContext ctx;
    return parse_term(src, ctx);
}

// small random rationals, height <= h
inline mpq_class rand_q(std::mt19937& rng, long h = 10) {
    std::uniform_int_distribution<long> num(-h, h);
    std::uniform_int_distribution<long> den(1, h);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline mpq_class rand_q_nonzero(std::mt19937& rng, long h = 10) {
    for (;;) {
        mpq_class q = rand_q(rng, h);
        if (q != 0) return q;
    }
}

} // namespace holorec::test
