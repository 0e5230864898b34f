#pragma once

#include <optional>
#include <set>
#include <vector>

#include "holorec/poly.hpp"

namespace holorec {

// Factorization of p over the active field into a unit, monic split factors
// of degree 1 or 2 (degree-2 entries irreducible over the field), and
// unsplit leftovers.  unit * prod factors^mult * prod unsplit^mult == p.
struct FactorList {
    struct Part {
        Poly poly;
        int mult = 1;
    };
    struct UnsplitPart {
        Poly poly;
        int mult = 1;
        std::optional<long> suggested_disc; // for degree-2 parts over Q
    };

    FieldElement unit{1};
    std::vector<Part> factors;
    std::vector<UnsplitPart> unsplit;

    Poly reassemble() const;
};

// Square-free decomposition: p = unit * prod parts[i].poly^parts[i].mult with
// the parts monic, square-free and pairwise coprime.
std::vector<FactorList::Part> squarefree_decomposition(const Poly& p, FieldElement& unit);

// All roots of p in the field of its coefficients (no multiplicity).
std::vector<FieldElement> field_roots(const Poly& p);

// All integer roots, multiplicity discarded.
std::set<mpz_class> integer_roots(const Poly& p);

// Square-free part first, then per part: rational/field roots, then a
// discriminant split of a degree-2 remainder; everything else lands in
// unsplit (with a suggested extension discriminant for degree-2 parts).
FactorList factorize(const Poly& p);

// Real-root count of a square-free rational-coefficient polynomial in (a, b].
// Exposed for tests.
int sturm_root_count(const Poly& p, const mpq_class& a, const mpq_class& b);

} // namespace holorec
