#pragma once

#include <set>
#include <vector>

#include "holorec/recurrence.hpp"

namespace holorec {

// { h >= 0 : deg gcd(A(n), B(n+h)) > 0 }, via factorization and root/shift
// matching of the split atoms.
std::set<long> dispersion_set(const Poly& A, const Poly& B);

// Abramov: a polynomial divisible by the denominator of every rational
// solution of the recurrence.
Poly universal_denominator(const Recurrence& rec);

// Basis of polynomial solutions of degree <= degree_bound, each normalized so
// its lowest nonzero coefficient is 1.
std::vector<Poly> polynomial_solutions(const Recurrence& rec, long degree_bound);

// Basis of rational solutions N/U with deg N <= deg U + delta.
std::vector<RatFun> rational_solutions(const Recurrence& rec, long delta);

// Nullspace basis of the homogeneous system rows x cols (row-major),
// deterministic pivoting; exposed for reuse by the solver.
std::vector<std::vector<FieldElement>> nullspace(std::vector<std::vector<FieldElement>> m, size_t cols,
                                                 const FieldSpec& spec);

} // namespace holorec
