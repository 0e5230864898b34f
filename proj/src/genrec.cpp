#include "holorec/genrec.hpp"

namespace holorec {

Recurrence sum_hyper_re(const std::vector<RatioNF>& ratios) {
    if (ratios.empty()) throw Error(Error::Kind::InvalidArgument, "no ratios given");
    FieldSpec spec;
    for (const auto& r : ratios) {
        if (r.c.is_zero()) throw Error(Error::Kind::InvalidArgument, "zero ratio");
        spec = join(spec, join(r.c.spec(), r.monic.spec()));
    }
    const size_t d = ratios.size();
    std::vector<RatFun> rs;
    rs.reserve(d);
    for (const auto& r : ratios) rs.push_back(r.as_ratfun().coerced(spec));

    // M[i][j] = prod_{k=1}^{j} r_i(n+k)  (column j owns the coefficient of
    // a(n+j+1)); right side -1/r_i(n).
    std::vector<std::vector<RatFun>> m(d, std::vector<RatFun>(d + 1));
    for (size_t i = 0; i < d; ++i) {
        RatFun prod = RatFun::constant(FieldElement(1).coerced(spec));
        for (size_t j = 0; j < d; ++j) {
            m[i][j] = prod;
            prod *= rs[i].shifted(static_cast<long>(j) + 1);
        }
        m[i][d] = -(rs[i].inv());
    }

    // Gaussian elimination over the rational-function field, deterministic
    // pivots, free variables set to zero.
    std::vector<long> pivot_col_of_row(d, -1);
    size_t row = 0;
    for (size_t col = 0; col < d && row < d; ++col) {
        size_t pr = row;
        while (pr < d && m[pr][col].is_zero()) ++pr;
        if (pr == d) continue;
        std::swap(m[pr], m[row]);
        RatFun inv = m[row][col].inv();
        for (size_t j = col; j <= d; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < d; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            RatFun factor = m[i][col];
            for (size_t j = col; j <= d; ++j) m[i][j] -= factor * m[row][j];
        }
        pivot_col_of_row[row] = static_cast<long>(col);
        ++row;
    }
    for (size_t i = row; i < d; ++i)
        if (!m[i][d].is_zero())
            throw Error(Error::Kind::Internal, "inconsistent ratio system");

    std::vector<RatFun> v(d, RatFun(0));
    for (size_t i = 0; i < row; ++i)
        if (pivot_col_of_row[i] >= 0) v[static_cast<size_t>(pivot_col_of_row[i])] = m[i][d];

    std::vector<RatFun> coeffs;
    coeffs.push_back(RatFun(1).coerced(spec));
    for (size_t j = 0; j < d; ++j) coeffs.push_back(v[j]);
    return Recurrence::normalize(coeffs);
}

} // namespace holorec
