#pragma once

#include <set>
#include <string>
#include <vector>

#include "holorec/recurrence.hpp"

namespace holorec {

// Which fields the solving stages may compute in.
struct FieldPolicy {
    enum class Mode {
        RationalsOnly,  // --field q
        FixedQuadratic, // --field qsqrt:D
        Auto,           // quadratic extensions discovered as needed
    };

    Mode mode = Mode::RationalsOnly;
    long d = 0; // FixedQuadratic only

    static FieldPolicy rationals_only() { return {Mode::RationalsOnly, 0}; }
    static FieldPolicy fixed(long d) { return {Mode::FixedQuadratic, d}; }
    static FieldPolicy auto_discover() { return {Mode::Auto, 0}; }

    // Field everything starts in for a recurrence over base_spec.
    FieldSpec base_field(const FieldSpec& rec_spec) const;
    bool allows(const FieldSpec& spec) const;
};

struct Diagnostic {
    enum class Kind { UnsupportedExtension, DiscardedCandidate, Note };
    Kind kind;
    std::string message;
};

// Behavior of a solution ratio r(n) = c * n^nu * (1 + b/n + O(1/n^2)) at
// infinity.  b_rep is b translated so its real part lies in [-1, 0).
struct LocalType {
    long nu = 0;
    FieldElement c;
    FieldElement b;
    FieldElement b_rep;
    FieldSpec field_of_c;
};

// Integer exponent candidates from coefficient-degree differences.
std::set<long> nu_candidates(const Recurrence& rec);

// Nonzero roots of the dominant-index leading-coefficient equation.
std::vector<std::pair<FieldElement, FieldSpec>> c_candidates(const Recurrence& rec, long nu,
                                                             const FieldPolicy& policy,
                                                             std::vector<Diagnostic>* diags = nullptr);

// Roots of the first nonzero coefficient (in descending n-degree) of the
// exact two-term substitution r(n) = c * n^(nu-1) * (n + b).
std::vector<FieldElement> b_candidates(const Recurrence& rec, long nu, const FieldElement& c);

std::vector<LocalType> local_types(const Recurrence& rec, const FieldPolicy& policy,
                                   std::vector<Diagnostic>* diags = nullptr);

} // namespace holorec
