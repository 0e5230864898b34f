#include "holorec/ratsol.hpp"

#include "holorec/factor.hpp"

#include <algorithm>

namespace holorec {

namespace {

// Integer h with g(n + h) == f(n), for monic f, g of equal degree.
std::optional<long> shift_between(const Poly& f, const Poly& g) {
    int m = f.degree();
    if (m != g.degree() || m < 1) return std::nullopt;
    // compare the n^(m-1) coefficients: g(n+h) has g_{m-1} + m*h there
    FieldElement diff = f[static_cast<size_t>(m - 1)] - g[static_cast<size_t>(m - 1)];
    FieldElement h = diff / FieldElement(m);
    if (!h.is_integer()) return std::nullopt;
    long hs = h.to_long();
    if (g.shifted(hs) != f) return std::nullopt;
    return hs;
}

} // namespace

std::set<long> dispersion_set(const Poly& A, const Poly& B) {
    if (A.is_zero() || B.is_zero()) throw Error(Error::Kind::InvalidArgument, "dispersion of zero polynomial");
    std::set<long> out;
    FieldSpec spec = join(A.spec(), B.spec());
    FactorList fa = factorize(A.coerced(spec));
    FactorList fb = factorize(B.coerced(spec));

    // linear atoms: roots differing by a nonnegative integer, root_B - root_A = h
    for (const auto& pa : fa.factors) {
        if (pa.poly.degree() != 1) continue;
        FieldElement ra = -pa.poly.constant_term();
        for (const auto& pb : fb.factors) {
            if (pb.poly.degree() != 1) continue;
            FieldElement rb = -pb.poly.constant_term();
            FieldElement h = rb - ra;
            if (h.is_integer() && h.sign_real() >= 0) out.insert(h.to_long());
        }
    }
    // quadratic and unsplit atoms: exact integer shifts; small pairs get a
    // complete root-bounded scan, which also covers composite leftovers
    auto collect = [](const FactorList& fl) {
        std::vector<Poly> polys;
        for (const auto& p : fl.factors)
            if (p.poly.degree() == 2) polys.push_back(p.poly);
        for (const auto& u : fl.unsplit) polys.push_back(u.poly);
        return polys;
    };
    auto cauchy = [](const Poly& p) -> std::optional<long> {
        if (!p.spec().is_rationals()) return std::nullopt;
        mpq_class lead = abs(p.leading().rational());
        mpq_class m = 0;
        for (int i = 0; i < p.degree(); ++i) m = std::max(m, mpq_class(abs(p[i].a())));
        mpq_class bound = 1 + m / lead;
        mpz_class fl = bound.get_num() / bound.get_den() + 1;
        if (!fl.fits_slong_p()) return std::nullopt;
        return fl.get_si();
    };
    for (const auto& qa : collect(fa)) {
        for (const auto& qb : collect(fb)) {
            auto ba = cauchy(qa), bb = cauchy(qb);
            if (ba && bb && qa.degree() * qb.degree() <= 36 && *ba + *bb <= 10000) {
                long H = *ba + *bb;
                for (long h = 0; h <= H; ++h)
                    if (poly_gcd(qa, qb.shifted(h)).degree() > 0) out.insert(h);
            } else {
                auto h = shift_between(qa, qb);
                if (h && *h >= 0) out.insert(*h);
            }
        }
    }
    return out;
}

Poly universal_denominator(const Recurrence& rec) {
    const FieldSpec spec = rec.spec();
    const int d = rec.order();
    Poly A = rec.coeff(static_cast<size_t>(d)).shifted(static_cast<long>(-d)).monic();
    Poly B = rec.coeff(0).monic();
    Poly U = Poly::constant(FieldElement(1).coerced(spec));
    std::set<long> H = dispersion_set(A, B);
    H.insert(0);
    for (auto it = H.rbegin(); it != H.rend(); ++it) {
        long h = *it;
        Poly g = poly_gcd(A, B.shifted(h));
        if (g.degree() < 1) continue;
        A = A.quot_rem(g).first;
        B = B.quot_rem(g.shifted(-h)).first;
        for (long i = 0; i <= h; ++i) U *= g.shifted(-i);
    }
    return U;
}

std::vector<std::vector<FieldElement>> nullspace(std::vector<std::vector<FieldElement>> m, size_t cols,
                                                 const FieldSpec& spec) {
    const size_t rows = m.size();
    std::vector<long> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = r;
        while (pr < rows && m[pr][c].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[r]);
        FieldElement inv = m[r][c].inv();
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            FieldElement f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_of_col[c] = static_cast<long>(r);
        ++r;
    }
    std::vector<std::vector<FieldElement>> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<FieldElement> v(cols, FieldElement(0).coerced(spec));
        v[free_col] = FieldElement(1).coerced(spec);
        for (size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] < 0) continue;
            v[c] = -m[static_cast<size_t>(pivot_of_col[c])][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Poly> polynomial_solutions(const Recurrence& rec, long degree_bound) {
    std::vector<Poly> out;
    if (degree_bound < 0) return out;
    const FieldSpec spec = rec.spec();
    const int d = rec.order();
    const size_t cols = static_cast<size_t>(degree_bound) + 1;

    // column k: sum_i P_i(n) * (n+i)^k collected by powers of n
    std::vector<Poly> col_polys(cols, Poly(spec));
    for (size_t k = 0; k < cols; ++k) {
        Poly acc(spec);
        for (int i = 0; i <= d; ++i) {
            if (rec.coeff(i).is_zero()) continue;
            Poly shift_pow =
                (Poly::variable(spec) + Poly::constant(FieldElement(i).coerced(spec))).pow(static_cast<unsigned>(k));
            acc += rec.coeff(i).coerced(spec) * shift_pow;
        }
        col_polys[k] = acc;
    }
    int max_deg = -1;
    for (const auto& p : col_polys) max_deg = std::max(max_deg, p.degree());
    // max_deg < 0 leaves an all-zero system: every coefficient vector solves it
    std::vector<std::vector<FieldElement>> m(static_cast<size_t>(std::max(max_deg, 0)) + 1,
                                             std::vector<FieldElement>(cols, FieldElement(0).coerced(spec)));
    for (size_t k = 0; k < cols; ++k)
        for (int e = 0; e <= col_polys[k].degree(); ++e)
            m[static_cast<size_t>(e)][k] = col_polys[k][static_cast<size_t>(e)];

    for (auto& v : nullspace(std::move(m), cols, spec)) {
        Poly p(v, spec);
        if (p.is_zero()) continue;
        // lowest nonzero coefficient scaled to 1
        FieldElement low(0);
        for (const auto& c : p.coeffs())
            if (!c.is_zero()) {
                low = c;
                break;
            }
        out.push_back(p * low.inv());
    }
    return out;
}

std::vector<RatFun> rational_solutions(const Recurrence& rec, long delta) {
    const FieldSpec spec = rec.spec();
    const int d = rec.order();
    Poly U = universal_denominator(rec);
    long bound = static_cast<long>(U.degree()) + delta;
    std::vector<RatFun> out;
    if (bound < 0) return out;

    // clear R = N/U: coefficient of N(n+i) is P_i(n) * prod_{j != i} U(n+j)
    std::vector<Poly> cleared;
    for (int i = 0; i <= d; ++i) {
        Poly c = rec.coeff(i).coerced(spec);
        for (int j = 0; j <= d; ++j) {
            if (j == i) continue;
            c *= U.shifted(j);
        }
        cleared.push_back(c);
    }
    Recurrence numrec = Recurrence::normalize_polys(std::move(cleared), rec.var());
    for (const auto& N : polynomial_solutions(numrec, bound))
        out.push_back(RatFun(N, U));
    return out;
}

} // namespace holorec
