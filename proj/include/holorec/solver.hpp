#pragma once

#include <optional>
#include <set>
#include <vector>

#include "holorec/hypterm.hpp"
#include "holorec/localtypes.hpp"
#include "holorec/recurrence.hpp"

namespace holorec {

// Candidate ratio p/q of a solution's Pochhammer part: atoms are monic
// factors of the trailing (numerator, exponent > 0) and leading (denominator,
// exponent < 0) coefficients, translated so root real parts lie in [-1, 0)
// and merged per translation class.
struct RatioCandidate {
    struct AtomPower {
        Poly atom; // monic, degree 1 or 2, roots in the strip
        long exp;  // nonzero, signed
    };

    std::vector<AtomPower> atoms;
    FieldSpec field;

    // attached by filter_by_local_types
    FieldElement c{0};
    FieldSpec field_with_c;

    long nu_r() const;         // sum exp * deg(atom)
    FieldElement b_r() const;  // sum exp * (sum of atom roots)
    Poly numerator() const;
    Poly denominator() const;
    RatFun ratio() const; // p/q
    std::string to_string() const;
};

struct DeltaBound {
    RatioCandidate candidate;
    std::set<long> deltas;
    long delta_max = 0;
    Recurrence equation; // holonomic equation for the rational part R(n)
};

struct SolveReport {
    std::vector<HypTerm> basis;
    std::vector<Diagnostic> diagnostics;
};

struct SolveOptions {
    FieldPolicy policy = FieldPolicy::rationals_only();
    bool product_rule = true;
    // Paper-prose pruning of candidate exponents by minimum class
    // multiplicity; the complete enumeration never needs it.
    bool min_multiplicity_heuristic = false;
    int threads = 1;
};

// Enumerate all candidate Pochhammer-part ratios over the
// given field.  The identically-1 ratio appears exactly once.
std::vector<RatioCandidate> candidate_ratios(const Recurrence& rec, const FieldSpec& field,
                                             std::vector<Diagnostic>* diags = nullptr,
                                             bool min_multiplicity_heuristic = false);

// Keep (candidate, c) pairs whose (nu, b mod Z) matches a local type.
std::vector<RatioCandidate> filter_by_local_types(const std::vector<RatioCandidate>& cands,
                                                  const std::vector<LocalType>& types);

// Degree bound for the rational part, or nothing when no
// integer delta exists (the candidate dies).
std::optional<DeltaBound> delta_bound(const Recurrence& rec, const RatioCandidate& cand);

// The full solving pipeline.
SolveReport hypergeometric_solutions(const Recurrence& rec, const SolveOptions& opts = {});

} // namespace holorec
