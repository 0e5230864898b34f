#include "holorec/localtypes.hpp"

#include "holorec/factor.hpp"

#include <algorithm>

namespace holorec {

FieldSpec FieldPolicy::base_field(const FieldSpec& rec_spec) const {
    switch (mode) {
        case Mode::RationalsOnly:
            if (!rec_spec.is_rationals())
                throw Error(Error::Kind::UnsupportedExtension,
                            "recurrence lives in " + rec_spec.to_string() + " but the field is restricted to Q");
            return FieldSpec::rationals();
        case Mode::FixedQuadratic: {
            FieldSpec f = FieldSpec::quadratic(d);
            return join(f, rec_spec); // throws on a mismatching extension
        }
        case Mode::Auto:
            return rec_spec;
    }
    return FieldSpec::rationals();
}

bool FieldPolicy::allows(const FieldSpec& spec) const {
    switch (mode) {
        case Mode::RationalsOnly: return spec.is_rationals();
        case Mode::FixedQuadratic: return spec.is_rationals() || spec.d == d;
        case Mode::Auto: return true;
    }
    return false;
}

std::set<long> nu_candidates(const Recurrence& rec) {
    std::set<long> out;
    const auto& P = rec.coeffs();
    for (size_t i = 0; i + 1 < P.size(); ++i) {
        if (P[i].is_zero()) continue;
        for (size_t j = i + 1; j < P.size(); ++j) {
            if (P[j].is_zero()) continue;
            long num = P[j].degree() - P[i].degree();
            long den = static_cast<long>(i) - static_cast<long>(j);
            if (num % den == 0) out.insert(num / den);
        }
    }
    return out;
}

namespace {

// Indices attaining max_i (i*nu + deg P_i).
std::vector<size_t> dominant_indices(const Recurrence& rec, long nu) {
    const auto& P = rec.coeffs();
    long best = 0;
    bool first = true;
    std::vector<size_t> idx;
    for (size_t i = 0; i < P.size(); ++i) {
        if (P[i].is_zero()) continue;
        long v = static_cast<long>(i) * nu + P[i].degree();
        if (first || v > best) {
            best = v;
            idx.clear();
            first = false;
        }
        if (v == best) idx.push_back(i);
    }
    return idx;
}

void sort_roots(std::vector<FieldElement>& roots) {
    std::sort(roots.begin(), roots.end(), [](const FieldElement& x, const FieldElement& y) {
        return x.lex_order(y) == std::strong_ordering::less;
    });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
}

} // namespace

std::vector<std::pair<FieldElement, FieldSpec>> c_candidates(const Recurrence& rec, long nu,
                                                             const FieldPolicy& policy,
                                                             std::vector<Diagnostic>* diags) {
    std::vector<std::pair<FieldElement, FieldSpec>> out;
    auto idx = dominant_indices(rec, nu);
    if (idx.size() < 2) return out;

    const FieldSpec base = policy.base_field(rec.spec());
    std::vector<FieldElement> coeffs(idx.back() + 1, FieldElement(0).coerced(base));
    for (size_t i : idx) coeffs[i] = rec.coeff(i).leading().coerced(base);
    Poly cpoly(coeffs, base);
    // strip c = 0 roots
    size_t skip = 0;
    while (skip < cpoly.coeffs().size() && cpoly.coeffs()[skip].is_zero()) ++skip;
    cpoly = Poly(std::vector<FieldElement>(cpoly.coeffs().begin() + skip, cpoly.coeffs().end()), base);
    if (cpoly.degree() < 1) return out;

    FactorList fl = factorize(cpoly);
    std::vector<FieldElement> base_roots;
    for (const auto& f : fl.factors)
        if (f.poly.degree() == 1) base_roots.push_back(-f.poly.constant_term());
    sort_roots(base_roots);
    for (const auto& r : base_roots)
        if (!r.is_zero()) out.emplace_back(r, base);

    for (const auto& u : fl.unsplit) {
        if (u.poly.degree() == 2 && base.is_rationals() && policy.mode == FieldPolicy::Mode::Auto &&
            u.suggested_disc) {
            FieldSpec ext = FieldSpec::quadratic(*u.suggested_disc);
            Poly lifted = u.poly.coerced(ext);
            std::vector<FieldElement> ext_roots;
            for (const auto& f : factorize(lifted).factors)
                if (f.poly.degree() == 1) ext_roots.push_back(-f.poly.constant_term());
            sort_roots(ext_roots);
            for (const auto& r : ext_roots)
                if (!r.is_zero()) out.emplace_back(r, ext);
        } else if (diags) {
            std::string reason =
                u.poly.degree() == 2
                    ? (policy.mode == FieldPolicy::Mode::Auto
                           ? "quadratic factor " + u.poly.to_string("c") + " has no usable discriminant"
                           : "geometric base needs a quadratic extension: roots of " + u.poly.to_string("c"))
                    : "geometric base needs an extension of degree " + std::to_string(u.poly.degree()) +
                          ": roots of " + u.poly.to_string("c");
            diags->push_back({Diagnostic::Kind::UnsupportedExtension, reason});
        }
    }
    return out;
}

std::vector<FieldElement> b_candidates(const Recurrence& rec, long nu, const FieldElement& c) {
    // Substitute r(n+j) = c * (n+j)^(nu-1) * ((n+j) + b) exactly and read the
    // first nonzero coefficient, in descending n-degree, as a polynomial in b.
    const FieldSpec spec = join(rec.spec(), c.spec());
    const int d = rec.order();
    const long e = nu - 1;

    // bivariate accumulator: index = power of b, entry = polynomial in n
    std::vector<Poly> sum;
    auto add_into = [&](const std::vector<Poly>& term) {
        if (sum.size() < term.size()) sum.resize(term.size(), Poly(spec));
        for (size_t k = 0; k < term.size(); ++k) sum[k] += term[k];
    };

    for (int i = 0; i <= d; ++i) {
        if (rec.coeff(i).is_zero()) continue;
        std::vector<Poly> term = {rec.coeff(i).coerced(spec) * c.coerced(spec).pow(i)};
        for (int j = 0; j < i; ++j) {
            // multiply by ((n+j) + b)
            Poly nj = Poly::variable(spec) + Poly::constant(FieldElement(j).coerced(spec));
            std::vector<Poly> next(term.size() + 1, Poly(spec));
            for (size_t k = 0; k < term.size(); ++k) {
                next[k] += term[k] * nj;
                next[k + 1] += term[k];
            }
            term = std::move(next);
        }
        // clear the (n+j)^(nu-1) factors: e >= 0 multiplies prefix factors,
        // e < 0 multiplies the complementary suffix so every term is polynomial
        Poly scale = Poly::constant(FieldElement(1).coerced(spec));
        if (e >= 0) {
            for (int j = 0; j < i; ++j)
                scale *= (Poly::variable(spec) + Poly::constant(FieldElement(j).coerced(spec))).pow(static_cast<unsigned>(e));
        } else {
            for (int j = i; j < d; ++j)
                scale *= (Poly::variable(spec) + Poly::constant(FieldElement(j).coerced(spec))).pow(static_cast<unsigned>(-e));
        }
        for (auto& p : term) p *= scale;
        add_into(term);
    }

    // collect by powers of n, scanning down for the first nonzero b-polynomial
    int max_n_deg = -1;
    for (const auto& p : sum) max_n_deg = std::max(max_n_deg, p.degree());
    for (int k = max_n_deg; k >= 0; --k) {
        std::vector<FieldElement> bcoeffs;
        for (const auto& p : sum) bcoeffs.push_back(p[static_cast<size_t>(k)]);
        Poly tb(bcoeffs, spec);
        if (tb.is_zero()) continue;
        if (tb.degree() == 0) return {}; // constant, no b can cancel it
        std::vector<FieldElement> roots = field_roots(tb);
        sort_roots(roots);
        return roots;
    }
    return {};
}

std::vector<LocalType> local_types(const Recurrence& rec, const FieldPolicy& policy,
                                   std::vector<Diagnostic>* diags) {
    std::vector<LocalType> out;
    for (long nu : nu_candidates(rec)) {
        for (const auto& [c, cfield] : c_candidates(rec, nu, policy, diags)) {
            for (const auto& b : b_candidates(rec, nu, c)) {
                LocalType t;
                t.nu = nu;
                t.c = c;
                t.b = b;
                t.b_rep = real_part_floor_shift(b, Strip::RootsStrip).rep;
                t.field_of_c = cfield;
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

} // namespace holorec
