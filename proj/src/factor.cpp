#include "holorec/factor.hpp"

#include <algorithm>
#include <map>

namespace holorec {

Poly FactorList::reassemble() const {
    Poly r = Poly::constant(unit);
    for (const auto& f : factors) r *= f.poly.pow(static_cast<unsigned>(f.mult));
    for (const auto& u : unsplit) r *= u.poly.pow(static_cast<unsigned>(u.mult));
    return r;
}

std::vector<FactorList::Part> squarefree_decomposition(const Poly& p, FieldElement& unit) {
    // Yun's algorithm, characteristic 0.
    std::vector<FactorList::Part> parts;
    if (p.is_zero()) throw Error(Error::Kind::InvalidArgument, "square-free decomposition of 0");
    unit = p.leading();
    Poly f = p.monic();
    if (f.degree() == 0) return parts;
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = f.quot_rem(a).first;
    Poly c = fp.quot_rem(a).first;
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly g = poly_gcd(b, d);
        if (g.degree() > 0) parts.push_back({g.monic(), i});
        b = b.quot_rem(g).first;
        c = d.quot_rem(g).first;
        d = c - b.derivative();
        ++i;
    }
    return parts;
}

namespace {

// ---- Sturm-based integer root isolation ------------------------------------

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    Poly f = p.primitive_part();
    Poly g = f.derivative().primitive_part();
    chain.push_back(f);
    if (g.is_zero()) return chain;
    chain.push_back(g);
    while (true) {
        const Poly& a = chain[chain.size() - 2];
        const Poly& b = chain.back();
        // negated primitive pseudo-remainder keeps the Sturm sign property:
        // scale by a positive power of |lc(b)|.
        FieldElement lead = b.leading();
        long e = a.degree() - b.degree() + 1;
        if (e % 2 != 0) e += 1; // even power => positive scale factor
        Poly r = (a * lead.pow(e)).quot_rem(b).second;
        if (r.is_zero()) break;
        chain.push_back((-r).primitive_part());
        if (chain.back().degree() == 0) break;
    }
    return chain;
}

int sign_variations(const std::vector<Poly>& chain, const mpq_class& x) {
    int var = 0, prev = 0;
    FieldElement fx{x};
    for (const auto& p : chain) {
        int s = sgn(p.eval(fx).rational());
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// 1 + max |c_i| / |c_d| for rational-coefficient p.
mpq_class cauchy_root_bound(const Poly& p) {
    mpq_class lead = abs(p.leading().rational());
    mpq_class m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        mpq_class mag = abs(p[i].a());
        if (mag > m) m = mag;
    }
    return 1 + m / lead;
}

void isolate_integer_roots(const std::vector<Poly>& chain, const mpq_class& lo, const mpq_class& hi,
                           int nroots, std::set<mpz_class>& out, const Poly& p) {
    if (nroots <= 0) return;
    // Narrow enough to hold at most one integer: test the candidates.
    if (hi - lo <= 1) {
        mpz_class fl;
        mpz_class num = hi.get_num(), den = hi.get_den();
        mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        for (mpz_class cand = fl - 1; cand <= fl + 1; ++cand) {
            mpq_class c(cand);
            if (c <= lo || c > hi) continue;
            if (p.eval(FieldElement(c)).is_zero()) out.insert(cand);
        }
        return;
    }
    mpq_class mid = (lo + hi) / 2;
    // Bias the midpoint to an integer or half-integer for cheap arithmetic.
    mpz_class mi;
    mpz_fdiv_q(mi.get_mpz_t(), mpq_class(mid).get_num().get_mpz_t(), mpq_class(mid).get_den().get_mpz_t());
    if (mpq_class(mi) > lo && mpq_class(mi) < hi) mid = mpq_class(mi);
    int vl = sign_variations(chain, lo);
    int vm = sign_variations(chain, mid);
    int vh = sign_variations(chain, hi);
    if (mid > lo) isolate_integer_roots(chain, lo, mid, vl - vm, out, p);
    if (p.eval(FieldElement(mid)).is_zero()) {
        if (mid.get_den() == 1) out.insert(mid.get_num());
    }
    if (hi > mid) isolate_integer_roots(chain, mid, hi, vm - vh, out, p);
}

// Integer roots of a square-free p within [-bound, bound].
void integer_roots_sturm(const Poly& p, const mpq_class& bound, std::set<mpz_class>& out) {
    auto chain = sturm_chain(p);
    int total = sign_variations(chain, -bound) - sign_variations(chain, bound);
    isolate_integer_roots(chain, -bound, bound, total, out, p);
}

std::set<mpz_class> integer_roots_rational(const Poly& p) {
    std::set<mpz_class> out;
    if (p.degree() <= 0) return out;
    if (p.constant_term().is_zero()) {
        out.insert(0);
        size_t skip = 1;
        while (skip < p.coeffs().size() && p.coeffs()[skip].is_zero()) ++skip;
        Poly rest(std::vector<FieldElement>(p.coeffs().begin() + skip, p.coeffs().end()), p.spec());
        auto rest_roots = integer_roots_rational(rest);
        out.insert(rest_roots.begin(), rest_roots.end());
        return out;
    }
    if (p.degree() == 1) {
        FieldElement r = -p[0] / p[1];
        if (r.is_integer()) out.insert(r.rational().get_num());
        return out;
    }
    if (p.degree() == 2) {
        FieldElement b = p[1] / p[2], c = p[0] / p[2];
        FieldElement disc = b * b - FieldElement(4) * c;
        auto s = sqrt_in_field(FieldElement(disc.rational()));
        if (!s) return out;
        for (int sign : {1, -1}) {
            FieldElement root = (-b + (sign > 0 ? *s : -(*s))) / FieldElement(2);
            if (root.is_integer()) out.insert(root.rational().get_num());
        }
        return out;
    }
    FieldElement dummy_unit(1);
    auto parts = squarefree_decomposition(p, dummy_unit);
    for (const auto& part : parts) {
        if (part.poly.degree() <= 2 && part.poly.degree() >= 1) {
            auto sub = integer_roots_rational(part.poly);
            out.insert(sub.begin(), sub.end());
            continue;
        }
        integer_roots_sturm(part.poly, cauchy_root_bound(part.poly), out);
    }
    return out;
}

} // namespace

std::set<mpz_class> integer_roots(const Poly& p) {
    if (p.is_zero()) throw Error(Error::Kind::InvalidArgument, "integer_roots of zero polynomial");
    if (p.spec().is_rationals()) return integer_roots_rational(p);
    // x in Z root of U + V*sqrt(d)  <=>  U(x) = V(x) = 0.
    auto [U, V] = p.surd_components();
    if (V.is_zero()) return integer_roots_rational(U);
    if (U.is_zero()) return integer_roots_rational(V);
    Poly g = poly_gcd(U, V);
    if (g.degree() < 1) return {};
    return integer_roots_rational(g);
}

namespace {

// Rational roots of a square-free rational-coefficient polynomial: map u/v
// with v | lc to integer roots of the monic transform lc^(d-1) * p(m/lc).
std::vector<mpq_class> rational_roots(const Poly& p) {
    std::vector<mpq_class> out;
    if (p.degree() < 1) return out;
    if (p.degree() == 1) {
        out.push_back((-p[0] / p[1]).rational());
        return out;
    }
    if (p.degree() == 2) {
        FieldElement b = p[1] / p[2], c = p[0] / p[2];
        auto s = sqrt_in_field(FieldElement((b * b - FieldElement(4) * c).rational()));
        if (s) {
            out.push_back(((-b + *s) / FieldElement(2)).rational());
            out.push_back(((-b - *s) / FieldElement(2)).rational());
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
        return out;
    }
    Poly work = p.primitive_part();
    bool zero_root = false;
    if (work.constant_term().is_zero()) {
        zero_root = true;
        size_t skip = 1;
        while (skip < work.coeffs().size() && work.coeffs()[skip].is_zero()) ++skip;
        work = Poly(std::vector<FieldElement>(work.coeffs().begin() + skip, work.coeffs().end()), work.spec());
    }
    if (zero_root) out.push_back(0);
    if (work.degree() >= 1) {
        mpz_class lead = work.leading().rational().get_num();
        // Monic transform T(m) = lead^(d-1) * p(m/lead): rational roots u/v of
        // p become the integer roots u*(lead/v) of T.  The bound comes from
        // the original coefficients; T's own Cauchy bound is far looser.
        std::vector<FieldElement> tc(work.coeffs().begin(), work.coeffs().end());
        tc[work.degree()] = FieldElement(1);
        mpz_class powv = 1;
        for (int k = work.degree() - 1; k >= 0; --k) {
            tc[k] = tc[k] * FieldElement(mpq_class(powv));
            powv *= lead;
        }
        Poly transformed(tc, FieldSpec::rationals());
        std::set<mpz_class> int_roots;
        mpq_class bound = cauchy_root_bound(work) * abs(mpq_class(lead));
        integer_roots_sturm(transformed, bound, int_roots);
        for (const auto& m : int_roots) {
            mpq_class root(m, lead);
            root.canonicalize();
            if (p.eval(FieldElement(root)).is_zero()) out.push_back(root);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<FieldElement> quadratic_roots_in_field(const Poly& q, const FieldSpec& spec) {
    // monic degree-2 over `spec`; roots within spec or empty.
    FieldElement b = q[1] / q[2], c = q[0] / q[2];
    FieldElement disc = b * b - FieldElement(4).coerced(q.spec()) * c;
    auto s = sqrt_in_field(disc.coerced(spec));
    std::vector<FieldElement> roots;
    if (!s) return roots;
    FieldElement two = FieldElement(2).coerced(spec);
    roots.push_back(((-b).coerced(spec) + *s) / two);
    roots.push_back(((-b).coerced(spec) - *s) / two);
    if (roots[0] == roots[1]) roots.pop_back();
    return roots;
}

// Roots of a square-free poly in its own quadratic field Q(sqrt(d)).
std::vector<FieldElement> roots_over_quadratic(const Poly& part) {
    const FieldSpec spec = part.spec();
    std::vector<FieldElement> roots;
    if (part.degree() == 1) {
        roots.push_back(-part[0] / part[1]);
        return roots;
    }
    if (part.degree() == 2) return quadratic_roots_in_field(part, spec);
    auto [U, V] = part.surd_components();
    std::vector<FieldElement> candidates;
    if (V.is_zero()) {
        for (const auto& r : rational_roots(U)) candidates.push_back(FieldElement(r).coerced(spec));
        // surd roots of a rational poly pair into rational quadratics; find the
        // ones visible after square-free + rational-root extraction.
        Poly rest = U;
        for (const auto& r : rational_roots(U)) {
            Poly lin = Poly::linear_from_root(FieldElement(r));
            while (lin.divides(rest)) rest = rest.quot_rem(lin).first;
        }
        if (rest.degree() == 2)
            for (const auto& r : quadratic_roots_in_field(rest.coerced(spec), spec)) candidates.push_back(r);
    } else {
        // x root of p  =>  x root of the rational norm polynomial U^2 - d*V^2.
        Poly normp = U * U - V * V * FieldElement(mpq_class(spec.d));
        for (const auto& r : rational_roots(normp)) candidates.push_back(FieldElement(r).coerced(spec));
        FieldElement unit(1);
        for (const auto& sf : squarefree_decomposition(normp, unit)) {
            Poly rest = sf.poly;
            for (const auto& r : rational_roots(sf.poly)) {
                Poly lin = Poly::linear_from_root(FieldElement(r));
                while (lin.divides(rest)) rest = rest.quot_rem(lin).first;
            }
            if (rest.degree() == 2)
                for (const auto& r : quadratic_roots_in_field(rest.coerced(spec), spec)) candidates.push_back(r);
        }
    }
    for (const auto& cand : candidates)
        if (part.eval(cand).is_zero()) roots.push_back(cand);
    std::sort(roots.begin(), roots.end(), [](const FieldElement& x, const FieldElement& y) {
        return x.lex_order(y) == std::strong_ordering::less;
    });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace

std::vector<FieldElement> field_roots(const Poly& p) {
    std::vector<FieldElement> out;
    if (p.degree() < 1) return out;
    FieldElement unit(1);
    for (const auto& part : squarefree_decomposition(p, unit)) {
        if (p.spec().is_rationals()) {
            for (const auto& r : rational_roots(part.poly)) out.push_back(FieldElement(r));
        } else {
            for (const auto& r : roots_over_quadratic(part.poly)) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end(), [](const FieldElement& x, const FieldElement& y) {
        return x.lex_order(y) == std::strong_ordering::less;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

FactorList factorize(const Poly& p) {
    if (p.is_zero()) throw Error(Error::Kind::InvalidArgument, "factorize(0)");
    FactorList out;
    if (p.degree() == 0) {
        out.unit = p.constant_term();
        return out;
    }
    const FieldSpec spec = p.spec();
    auto parts = squarefree_decomposition(p, out.unit);
    for (const auto& part : parts) {
        Poly rest = part.poly;
        std::vector<FieldElement> roots =
            spec.is_rationals()
                ? [&] {
                      std::vector<FieldElement> rs;
                      for (const auto& r : rational_roots(rest)) rs.push_back(FieldElement(r));
                      return rs;
                  }()
                : roots_over_quadratic(rest);
        for (const auto& r : roots) {
            Poly lin = Poly::linear_from_root(r.coerced(spec));
            rest = rest.quot_rem(lin).first;
            out.factors.push_back({lin, part.mult});
        }
        if (rest.degree() == 0) continue;
        if (rest.degree() == 2) {
            auto qr = quadratic_roots_in_field(rest, spec);
            if (qr.size() == 2) {
                for (const auto& r : qr)
                    out.factors.push_back({Poly::linear_from_root(r), part.mult});
                continue;
            }
            std::optional<long> suggested;
            if (spec.is_rationals()) {
                FieldElement b = rest[1], c = rest[0];
                mpq_class disc = (b * b - FieldElement(4) * c).rational();
                mpz_class core = disc.get_num() * disc.get_den();
                if (core != 0) {
                    auto [f, s] = squarefree_decompose(core);
                    (void)s;
                    if (f.fits_slong_p() && f != 1) suggested = f.get_si();
                }
            }
            out.unsplit.push_back({rest, part.mult, suggested});
            continue;
        }
        out.unsplit.push_back({rest, part.mult, std::nullopt});
    }
    return out;
}

int sturm_root_count(const Poly& p, const mpq_class& a, const mpq_class& b) {
    auto chain = sturm_chain(p);
    return sign_variations(chain, a) - sign_variations(chain, b);
}

} // namespace holorec
