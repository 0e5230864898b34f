#include "doctest.h"

#include "holorec/genrec.hpp"
#include "holorec/solver.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <random>

using namespace holorec;
using namespace holorec::test;

namespace {

std::set<std::string> ratio_strings(const std::vector<RatioCandidate>& cands) {
    std::set<std::string> out;
    for (const auto& c : cands) out.insert(c.to_string());
    return out;
}

bool basis_has_ratio_of(const SolveReport& report, const std::string& term_src) {
    HypTerm expected = term(term_src);
    for (const auto& t : report.basis)
        if (ratio_equivalent(t, expected)) return true;
    return false;
}

} // namespace

TEST_CASE("candidate_ratios") {
    Recurrence r1 = Recurrence::normalize({rf("-n"), rf("n+1")});
    auto c1 = candidate_ratios(r1, FieldSpec::rationals());
    CHECK(ratio_strings(c1) == std::set<std::string>{"1", "n+1", "1/(n+1)"});

    Recurrence r2 = rec("a(n+1) - 2*a(n) = 0");
    auto c2 = candidate_ratios(r2, FieldSpec::rationals());
    CHECK(ratio_strings(c2) == std::set<std::string>{"1"});
}

TEST_CASE("filter_by_local_types") {
    Recurrence geo = rec("a(n+1) - 2*a(n) = 0");
    auto cands = candidate_ratios(geo, FieldSpec::rationals());
    auto types = local_types(geo, FieldPolicy::rationals_only());
    auto survivors = filter_by_local_types(cands, types);
    REQUIRE(survivors.size() == 1);
    CHECK(survivors[0].c == fe(2));
    CHECK(survivors[0].atoms.empty());
}

TEST_CASE("delta_bound") {
    Recurrence r1 = Recurrence::normalize({rf("-n"), rf("n+1")});
    RatioCandidate trivial;
    trivial.field = FieldSpec::rationals();
    trivial.c = fe(1);
    auto db = delta_bound(r1, trivial);
    REQUIRE(db.has_value());
    CHECK(db->deltas == std::set<long>{-1});
    CHECK(db->delta_max == -1);

    Recurrence r2 = rec("a(n+1) - 2*a(n) = 0");
    RatioCandidate c2;
    c2.field = FieldSpec::rationals();
    c2.c = fe(2);
    auto db2 = delta_bound(r2, c2);
    REQUIRE(db2.has_value());
    CHECK(db2->deltas == std::set<long>{0});
    CHECK(db2->delta_max == 0);
}

TEST_CASE("solve simple recurrences") {
    SolveOptions opts;
    opts.policy = FieldPolicy::rationals_only();

    auto geo = hypergeometric_solutions(rec("a(n+1) - 2*a(n) = 0"), opts);
    REQUIRE(geo.basis.size() == 1);
    CHECK(basis_has_ratio_of(geo, "2^n"));

    auto harmonic = hypergeometric_solutions(Recurrence::normalize({rf("-n"), rf("n+1")}), opts);
    REQUIRE(harmonic.basis.size() == 1);
    CHECK(basis_has_ratio_of(harmonic, "1/n"));

    auto pet = hypergeometric_solutions(Recurrence::normalize({rf("n+1"), rf("-1"), rf("-(n+4)")}), opts);
    REQUIRE(pet.basis.size() == 2);
    CHECK(basis_has_ratio_of(pet, "1/((n+1)*(n+2))"));
    CHECK(basis_has_ratio_of(pet, "(-1)^n*(2*n+3)/((n+1)*(n+2))"));
}

TEST_CASE("solve the Fibonacci recurrence over Q(sqrt5)") {
    Recurrence fib = Recurrence::normalize({rf("1"), rf("1"), rf("-1")});
    SolveOptions opts;
    opts.policy = FieldPolicy::auto_discover();
    auto report = hypergeometric_solutions(fib, opts);
    REQUIRE(report.basis.size() == 2);
    CHECK(basis_has_ratio_of(report, "((1+sqrt(5))/2)^n"));
    CHECK(basis_has_ratio_of(report, "((1-sqrt(5))/2)^n"));

    SolveOptions qonly;
    qonly.policy = FieldPolicy::rationals_only();
    auto empty = hypergeometric_solutions(fib, qonly);
    CHECK(empty.basis.empty());
    bool has_ext_diag = false;
    for (const auto& d : empty.diagnostics)
        if (d.kind == Diagnostic::Kind::UnsupportedExtension) has_ext_diag = true;
    CHECK(has_ext_diag);
}

TEST_CASE("negative control: no local types, no candidates") {
    auto report = hypergeometric_solutions(rec("a(n+2) - n*a(n) = 0"), SolveOptions{});
    CHECK(report.basis.empty());
    bool skipped = false;
    for (const auto& d : report.diagnostics)
        if (d.message.find("candidate enumeration skipped") != std::string::npos) skipped = true;
    CHECK(skipped);
}

TEST_CASE("scaling invariance") {
    Recurrence base = Recurrence::normalize({rf("n+1"), rf("-1"), rf("-(n+4)")});
    Recurrence scaled = Recurrence::normalize(
        {rf("(n+1)*(n+5)*7"), rf("-(n+5)*7"), rf("-(n+4)*(n+5)*7")});
    SolveOptions opts;
    auto a = hypergeometric_solutions(base, opts);
    auto b = hypergeometric_solutions(scaled, opts);
    REQUIRE(a.basis.size() == b.basis.size());
    for (const auto& t : a.basis) {
        bool found = false;
        for (const auto& s : b.basis)
            if (ratio_equivalent(t, s)) found = true;
        CHECK(found);
    }
}

TEST_CASE("random round trips: generate then solve") {
    std::mt19937 rng(123);
    auto random_ratio = [&]() -> RatioNF {
        RatFun r = RatFun::constant(FieldElement(rand_q_nonzero(rng, 4)));
        int nf = static_cast<int>(rng() % 3);
        for (int k = 0; k < nf; ++k) {
            Poly lin = Poly::linear_from_root(FieldElement(rand_q(rng, 4)));
            if (rng() % 2)
                r *= RatFun::from_poly(lin);
            else
                r /= RatFun::from_poly(lin);
        }
        return RatioNF::of(r);
    };
    SolveOptions opts;
    int done = 0;
    for (int trial = 0; trial < 30 && done < 15; ++trial) {
        size_t k = 1 + rng() % 3;
        std::vector<RatioNF> ratios;
        for (size_t i = 0; i < k; ++i) {
            RatioNF r = random_ratio();
            bool dup = false;
            for (const auto& prev : ratios)
                if (prev.c == r.c && prev.monic == r.monic) dup = true;
            if (!dup) ratios.push_back(r);
        }
        Recurrence re = sum_hyper_re(ratios);
        ++done;
        auto report = hypergeometric_solutions(re, opts);
        CHECK(report.basis.size() >= ratios.size());
        for (const auto& r : ratios) {
            bool found = false;
            for (const auto& t : report.basis) {
                RatioNF tr = t.term_ratio();
                if (tr.c == r.c && tr.monic == r.monic) found = true;
            }
            CHECK(found);
        }
        for (const auto& t : report.basis)
            CHECK(re.apply_to_ratio(t.term_ratio().as_ratfun()).is_zero());
    }
}
