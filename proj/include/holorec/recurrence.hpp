#pragma once

#include <string>
#include <vector>

#include "holorec/poly.hpp"

namespace holorec {

// Holonomic recurrence  sum_{i=0}^{d} P_i(n) * a(n+i) = 0  with polynomial
// coefficients, P_0 != 0, P_d != 0, d >= 1, common content removed.
class Recurrence {
public:
    // base_offset: index the first raw coefficient refers to (the parser
    // passes the lowest a(n+i) offset it saw).
    static Recurrence normalize(const std::vector<RatFun>& raw_coeffs, std::string var = "n",
                                long base_offset = 0);
    // Coefficients already polynomial.
    static Recurrence normalize_polys(std::vector<Poly> coeffs, std::string var = "n",
                                      long base_offset = 0);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Poly>& coeffs() const { return coeffs_; }
    const Poly& coeff(size_t i) const { return coeffs_[i]; }
    const std::string& var() const { return var_; }
    FieldSpec spec() const { return coeffs_.front().spec(); }
    // How far indices were moved while stripping zero leading/trailing
    // coefficients: the normalized equation is in a(n+i-shift) terms of the
    // raw input.
    long index_shift() const { return index_shift_; }

    bool operator==(const Recurrence& r) const { return coeffs_ == r.coeffs_; }

    // sum_i P_i(n) * prod_{j<i} r(n+j), reduced.  Identically zero exactly
    // when every hypergeometric term with ratio r solves the recurrence.
    RatFun apply_to_ratio(const RatFun& r) const;

    std::string to_string() const;
    std::string to_json() const;
    static Recurrence from_json(const std::string& text);

private:
    Recurrence() = default;

    std::vector<Poly> coeffs_;
    std::string var_ = "n";
    long index_shift_ = 0;
};

} // namespace holorec
