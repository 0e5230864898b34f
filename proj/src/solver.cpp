#include "holorec/solver.hpp"

#include "holorec/factor.hpp"
#include "holorec/ratsol.hpp"
#include "holorec/simplify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

namespace holorec {

long RatioCandidate::nu_r() const {
    long nu = 0;
    for (const auto& a : atoms) nu += a.exp * a.atom.degree();
    return nu;
}

FieldElement RatioCandidate::b_r() const {
    // 1/n coefficient of the monic ratio p/q at infinity: the signed sum of
    // the atoms' subleading coefficients (for (n+t): t, minus the roots).
    FieldElement b(0);
    b = b.coerced(field);
    for (const auto& a : atoms) {
        FieldElement sub = a.atom[static_cast<size_t>(a.atom.degree() - 1)];
        b += sub.coerced(field) * FieldElement(a.exp);
    }
    return b;
}

Poly RatioCandidate::numerator() const {
    Poly p = Poly::constant(FieldElement(1).coerced(field));
    for (const auto& a : atoms)
        if (a.exp > 0) p *= a.atom.pow(static_cast<unsigned>(a.exp));
    return p;
}

Poly RatioCandidate::denominator() const {
    Poly q = Poly::constant(FieldElement(1).coerced(field));
    for (const auto& a : atoms)
        if (a.exp < 0) q *= a.atom.pow(static_cast<unsigned>(-a.exp));
    return q;
}

RatFun RatioCandidate::ratio() const {
    return RatFun(numerator(), denominator());
}

std::string RatioCandidate::to_string() const {
    return ratio().to_string();
}

namespace {

struct AtomClass {
    Poly atom;
    long mult_trail = 0; // merged multiplicity in P_0
    long mult_lead = 0;  // merged multiplicity in P_d
    long min_trail = 0;  // minimum member multiplicity (heuristic pruning)
    long min_lead = 0;
};

// Normalize a factor's roots into [-1, 0) by one integer translation; the
// translated polynomial replaces the factor.  Quadratics whose two real
// roots need different translations are reported, not translated.
std::optional<Poly> strip_normalize(const Poly& factor, std::vector<Diagnostic>* diags) {
    if (factor.degree() == 1) {
        FieldElement root = -factor.constant_term();
        StripResult s = real_part_floor_shift(root, Strip::RootsStrip);
        return Poly::linear_from_root(s.rep);
    }
    // degree 2, irreducible over the field: complex pair or unsplit real pair
    FieldElement b = factor[1], c = factor[0];
    FieldElement disc = b * b - FieldElement(4).coerced(factor.spec()) * c;
    bool complex_pair = disc.sign_real() < 0;
    if (complex_pair) {
        // both roots share the real part -b/2, so one translation moves both
        FieldElement re = -b / FieldElement(2);
        StripResult s = real_part_floor_shift(re, Strip::RootsStrip);
        return factor.shifted(s.shift.get_si());
    }
    // real irrational pair: roots (-b +- sqrt(disc))/2; translations may differ
    if (disc.is_rational()) {
        mpq_class dq = disc.rational();
        auto [core, scale] = squarefree_decompose(mpz_class(dq.get_num() * dq.get_den()));
        if (core.fits_slong_p() && core != 1 && core > 0) {
            FieldSpec ext = FieldSpec::quadratic(core.get_si());
            mpq_class sq_rat(scale, dq.get_den());
            sq_rat.canonicalize();
            FieldElement sq = FieldElement(0, sq_rat, ext);
            FieldElement r1 = (-b.coerced(ext) + sq) / FieldElement(2).coerced(ext);
            FieldElement r2 = (-b.coerced(ext) - sq) / FieldElement(2).coerced(ext);
            mpz_class s1 = real_part_floor_shift(r1, Strip::RootsStrip).shift;
            mpz_class s2 = real_part_floor_shift(r2, Strip::RootsStrip).shift;
            if (s1 == s2) return factor.shifted(s1.get_si());
            if (diags)
                diags->push_back({Diagnostic::Kind::UnsupportedExtension,
                                  "factor " + factor.to_string() + " needs Q(sqrt(" + std::to_string(ext.d) +
                                      ")) to translate its roots; rerun with --field qsqrt:" +
                                      std::to_string(ext.d) + " or auto"});
            return std::nullopt;
        }
    }
    if (diags)
        diags->push_back({Diagnostic::Kind::UnsupportedExtension,
                          "factor " + factor.to_string() + " kept out of candidates (roots not translatable)"});
    return std::nullopt;
}

void merge_atoms(std::map<std::string, AtomClass>& classes, const FactorList& fl, bool trailing,
                 std::vector<Diagnostic>* diags, const FieldSpec& field) {
    auto add = [&](const Poly& normalized, int mult) {
        std::string key = normalized.to_string();
        auto& cls = classes[key];
        if (cls.atom.is_zero()) cls.atom = normalized;
        if (trailing) {
            cls.mult_trail += mult;
            cls.min_trail = cls.min_trail == 0 ? mult : std::min<long>(cls.min_trail, mult);
        } else {
            cls.mult_lead += mult;
            cls.min_lead = cls.min_lead == 0 ? mult : std::min<long>(cls.min_lead, mult);
        }
    };
    for (const auto& f : fl.factors) {
        auto normalized = strip_normalize(f.poly.coerced(field), diags);
        if (normalized) add(*normalized, f.mult);
    }
    for (const auto& u : fl.unsplit) {
        if (u.poly.degree() == 2) {
            auto normalized = strip_normalize(u.poly.coerced(field), diags);
            if (normalized) add(*normalized, u.mult);
        } else if (diags) {
            diags->push_back({Diagnostic::Kind::Note,
                              "unfactored part of degree " + std::to_string(u.poly.degree()) +
                                  " in a boundary coefficient; solutions needing its roots (if any) are not computed"});
        }
    }
}

} // namespace

std::vector<RatioCandidate> candidate_ratios(const Recurrence& rec, const FieldSpec& field,
                                             std::vector<Diagnostic>* diags,
                                             bool min_multiplicity_heuristic) {
    std::map<std::string, AtomClass> classes;
    merge_atoms(classes, factorize(rec.coeff(0).coerced(field)), true, diags, field);
    merge_atoms(classes, factorize(rec.coeffs().back().coerced(field)), false, diags, field);

    std::vector<AtomClass> atom_list;
    for (auto& [key, cls] : classes) atom_list.push_back(cls);
    std::sort(atom_list.begin(), atom_list.end(),
              [](const AtomClass& x, const AtomClass& y) { return x.atom.order(y.atom) == std::strong_ordering::less; });

    // exponent ranges per class: -mult_lead .. +mult_trail
    std::vector<std::vector<long>> ranges;
    for (const auto& cls : atom_list) {
        std::vector<long> exps;
        for (long e = -cls.mult_lead; e <= cls.mult_trail; ++e) {
            if (min_multiplicity_heuristic && e != 0) {
                if (e < 0 && -e < cls.min_lead) continue;
                if (e > 0 && e < cls.min_trail) continue;
            }
            exps.push_back(e);
        }
        ranges.push_back(std::move(exps));
    }

    std::vector<RatioCandidate> out;
    std::vector<size_t> idx(atom_list.size(), 0);
    for (;;) {
        RatioCandidate cand;
        cand.field = field;
        for (size_t i = 0; i < atom_list.size(); ++i) {
            long e = ranges[i][idx[i]];
            if (e != 0) cand.atoms.push_back({atom_list[i].atom, e});
        }
        out.push_back(std::move(cand));
        // odometer
        size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < ranges[pos].size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
    }
    return out;
}

std::vector<RatioCandidate> filter_by_local_types(const std::vector<RatioCandidate>& cands,
                                                  const std::vector<LocalType>& types) {
    std::vector<RatioCandidate> out;
    for (const auto& cand : cands) {
        long nu = cand.nu_r();
        FieldElement brep = real_part_floor_shift(cand.b_r(), Strip::RootsStrip).rep;
        for (const auto& t : types) {
            if (t.nu != nu) continue;
            FieldSpec joint;
            try {
                joint = join(cand.field, join(t.field_of_c, t.b_rep.spec()));
            } catch (const Error&) {
                continue; // candidate atoms and c in incompatible extensions
            }
            if (!(brep.coerced(joint) == t.b_rep.coerced(joint))) continue;
            RatioCandidate survivor = cand;
            survivor.c = t.c;
            survivor.field_with_c = joint;
            out.push_back(std::move(survivor));
        }
    }
    // identical (atoms, c) pairs solve identically; keep the first
    std::vector<RatioCandidate> dedup;
    for (auto& s : out) {
        bool seen = false;
        for (const auto& kept : dedup) {
            if (kept.c == s.c && kept.atoms.size() == s.atoms.size()) {
                bool same = true;
                for (size_t i = 0; i < s.atoms.size(); ++i)
                    if (kept.atoms[i].exp != s.atoms[i].exp || kept.atoms[i].atom != s.atoms[i].atom) {
                        same = false;
                        break;
                    }
                if (same) {
                    seen = true;
                    break;
                }
            }
        }
        if (!seen) dedup.push_back(std::move(s));
    }
    return dedup;
}

std::optional<DeltaBound> delta_bound(const Recurrence& rec, const RatioCandidate& cand) {
    if (cand.c.is_zero())
        throw Error(Error::Kind::InvalidArgument, "delta_bound needs a candidate with c attached");
    const FieldSpec spec = join(rec.spec(), join(cand.field, cand.c.spec()));
    const int d = rec.order();
    const Poly p = cand.numerator().coerced(spec);
    const Poly q = cand.denominator().coerced(spec);
    const FieldElement c = cand.c.coerced(spec);

    // D(n, delta) = sum_i P_i c^i prod_{j<i} p(n+j) (n+j+delta) *
    //                              prod_{j>=i} q(n+j) (n+j)
    std::vector<Poly> sum; // index = power of delta
    auto add_into = [&](const std::vector<Poly>& term) {
        if (sum.size() < term.size()) sum.resize(term.size(), Poly(spec));
        for (size_t k = 0; k < term.size(); ++k) sum[k] += term[k];
    };
    for (int i = 0; i <= d; ++i) {
        if (rec.coeff(i).is_zero()) continue;
        std::vector<Poly> term = {rec.coeff(i).coerced(spec) * c.pow(i)};
        for (int j = 0; j < i; ++j) {
            Poly nj = Poly::variable(spec) + Poly::constant(FieldElement(j).coerced(spec));
            std::vector<Poly> next(term.size() + 1, Poly(spec));
            for (size_t k = 0; k < term.size(); ++k) {
                next[k] += term[k] * nj;
                next[k + 1] += term[k];
            }
            term = std::move(next);
            for (auto& t : term) t *= p.shifted(j);
        }
        Poly suffix = Poly::constant(FieldElement(1).coerced(spec));
        for (int j = i; j < d; ++j) {
            Poly nj = Poly::variable(spec) + Poly::constant(FieldElement(j).coerced(spec));
            suffix *= q.shifted(j) * nj;
        }
        for (auto& t : term) t *= suffix;
        add_into(term);
    }

    int max_n_deg = -1;
    for (const auto& pl : sum) max_n_deg = std::max(max_n_deg, pl.degree());
    Poly qf(spec);
    for (int k = max_n_deg; k >= 0; --k) {
        std::vector<FieldElement> dcoeffs;
        for (const auto& pl : sum) dcoeffs.push_back(pl[static_cast<size_t>(k)]);
        Poly t(dcoeffs, spec);
        if (!t.is_zero()) {
            qf = t;
            break;
        }
    }
    if (qf.is_zero() || qf.degree() == 0) return std::nullopt;

    std::set<long> deltas;
    for (const auto& r : integer_roots(qf)) {
        if (!r.fits_slong_p()) continue;
        deltas.insert(r.get_si());
    }
    if (deltas.empty()) return std::nullopt;

    // E_f: coefficients P_i c^i prod_{j<i} (p/q)(n+j), cleared to polynomials
    std::vector<RatFun> efc;
    RatFun prod = RatFun::constant(FieldElement(1).coerced(spec));
    RatFun pq = RatFun(p, q);
    for (int i = 0; i <= d; ++i) {
        efc.push_back(RatFun::from_poly(rec.coeff(i).coerced(spec)) * RatFun::constant(c.pow(i)) * prod);
        prod *= pq.shifted(i);
    }
    return DeltaBound{cand, deltas, *deltas.rbegin(), Recurrence::normalize(efc, rec.var())};
}

namespace {

void run_indexed(size_t count, int threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    size_t nthreads = std::min<size_t>(static_cast<size_t>(threads), count);
    std::vector<std::thread> pool;
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

SolveReport hypergeometric_solutions(const Recurrence& rec, const SolveOptions& opts) {
    SolveReport report;
    const FieldSpec base = opts.policy.base_field(rec.spec());

    std::vector<LocalType> types = local_types(rec, opts.policy, &report.diagnostics);
    if (types.empty()) {
        report.diagnostics.push_back(
            {Diagnostic::Kind::Note, "no local types at infinity; candidate enumeration skipped"});
        return report;
    }

    // one candidate enumeration per working field (base joined with each c's field)
    std::map<std::string, std::vector<RatioCandidate>> cands_per_field;
    std::vector<RatioCandidate> survivors;
    for (const auto& t : types) {
        FieldSpec work;
        try {
            work = join(base, t.field_of_c);
        } catch (const Error& e) {
            report.diagnostics.push_back({Diagnostic::Kind::UnsupportedExtension, e.what()});
            continue;
        }
        auto key = work.to_string();
        if (!cands_per_field.count(key))
            cands_per_field[key] =
                candidate_ratios(rec, work, &report.diagnostics, opts.min_multiplicity_heuristic);
        auto matched = filter_by_local_types(cands_per_field[key], {t});
        for (auto& m : matched) survivors.push_back(std::move(m));
    }
    // dedup across types (same atoms + same c)
    {
        std::vector<RatioCandidate> dedup;
        for (auto& s : survivors) {
            bool seen = false;
            for (const auto& kept : dedup) {
                if (!(kept.c == s.c) || kept.atoms.size() != s.atoms.size()) continue;
                bool same = true;
                for (size_t i = 0; i < s.atoms.size(); ++i)
                    if (kept.atoms[i].exp != s.atoms[i].exp || kept.atoms[i].atom != s.atoms[i].atom) {
                        same = false;
                        break;
                    }
                if (same) {
                    seen = true;
                    break;
                }
            }
            if (!seen) dedup.push_back(std::move(s));
        }
        survivors = std::move(dedup);
    }

    struct PerCandidate {
        std::vector<HypTerm> terms;
        std::vector<Diagnostic> diags;
    };
    std::vector<PerCandidate> results(survivors.size());

    run_indexed(survivors.size(), opts.threads, [&](size_t idx) {
        const RatioCandidate& cand = survivors[idx];
        PerCandidate& res = results[idx];
        auto db = delta_bound(rec, cand);
        if (!db) {
            res.diags.push_back({Diagnostic::Kind::DiscardedCandidate,
                                 "candidate " + cand.to_string() + " (c = " + cand.c.to_string() +
                                     "): no integer degree difference"});
            return;
        }
        std::vector<RatFun> rats = rational_solutions(db->equation, db->delta_max);
        if (rats.empty()) {
            res.diags.push_back({Diagnostic::Kind::DiscardedCandidate,
                                 "candidate " + cand.to_string() + " (c = " + cand.c.to_string() +
                                     "): no rational part"});
            return;
        }
        SimplifyOptions sopts;
        sopts.product_rule = opts.product_rule;
        HypTerm h = pochfactorsimp(cand.ratio().coerced(db->equation.spec()), sopts);
        for (const auto& r : rats) {
            // scale the numerator so its lowest nonzero coefficient is 1
            FieldElement low(0);
            for (const auto& cc : r.num().coeffs())
                if (!cc.is_zero()) {
                    low = cc;
                    break;
                }
            RatFun scaled = r * RatFun::constant(low.inv());
            HypTerm term = HypTerm::make(cand.c.coerced(db->equation.spec()) * h.base(),
                                         scaled * h.rat(), h.atoms());
            res.terms.push_back(std::move(term));
        }
    });

    for (auto& res : results) {
        for (auto& d : res.diags) report.diagnostics.push_back(std::move(d));
        for (auto& t : res.terms) {
            RatioNF ratio = t.term_ratio();
            RatFun full = rec.apply_to_ratio(ratio.as_ratfun().coerced(join(rec.spec(), ratio.c.spec())));
            if (!full.is_zero())
                throw Error(Error::Kind::Internal,
                            "solver produced a non-solution: " + t.render(HypTerm::Format::Text));
            bool dup = false;
            for (const auto& kept : report.basis)
                if (ratio_equivalent(kept, t)) {
                    dup = true;
                    break;
                }
            if (!dup) report.basis.push_back(std::move(t));
        }
    }
    if (report.basis.size() > static_cast<size_t>(rec.order()))
        throw Error(Error::Kind::Internal, "basis larger than the recurrence order");
    return report;
}

} // namespace holorec
