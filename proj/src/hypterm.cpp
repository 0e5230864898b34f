#include "holorec/hypterm.hpp"

#include "holorec/factor.hpp"
#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace holorec {

using nlohmann::json;

// q(k) != 0 for every integer k >= 0.
static bool integer_roots_free(const Poly& q) {
    for (const auto& r : integer_roots(q))
        if (r >= 0) return false;
    return true;
}

Atom Atom::factorial(long a, long b, long exp) {
    if (a < 1 || b < 0)
        throw Error(Error::Kind::InvalidArgument,
                    "factorial atom (" + std::to_string(a) + "*n+" + std::to_string(b) + ")! undefined at n = 0");
    if (exp == 0) throw Error(Error::Kind::InvalidArgument, "atom exponent 0");
    Atom at;
    at.kind = Kind::Factorial;
    at.fac_a = a;
    at.fac_b = b;
    at.exp = exp;
    return at;
}

Atom Atom::pochhammer(FieldElement x, long exp) {
    if (exp == 0) throw Error(Error::Kind::InvalidArgument, "atom exponent 0");
    if (x.is_integer() && x.sign_real() <= 0)
        throw Error(Error::Kind::NonpositiveIntegerArgument,
                    "pochhammer argument " + x.to_string() + " is a nonpositive integer");
    StripResult strip = real_part_floor_shift(x, Strip::PochStrip);
    if (strip.shift != 0)
        throw Error(Error::Kind::InvalidArgument,
                    "pochhammer argument " + x.to_string() + " outside (0,1]; normalize it first");
    Atom at;
    at.kind = Kind::Pochhammer;
    at.arg = std::move(x);
    at.exp = exp;
    return at;
}

Atom Atom::pochhammer_poly(Poly q, long exp) {
    if (exp == 0) throw Error(Error::Kind::InvalidArgument, "atom exponent 0");
    if (q.degree() < 2 || !q.is_monic())
        throw Error(Error::Kind::InvalidArgument, "pochhammer_poly needs a monic polynomial of degree >= 2");
    if (!integer_roots_free(q))
        throw Error(Error::Kind::NonnegativeIntegerRoot,
                    "pochhammer_poly argument " + q.to_string() + " vanishes at a nonnegative integer");
    Atom at;
    at.kind = Kind::PochhammerPoly;
    at.poly = std::move(q);
    at.exp = exp;
    return at;
}

Poly Atom::step_poly(const FieldSpec& spec) const {
    switch (kind) {
        case Kind::Factorial: {
            // ((a(n+1)+b)! / (an+b)!) = prod_{t=1}^{a} (a*n + b + t)
            Poly r = Poly::constant(FieldElement(1).coerced(spec));
            for (long t = 1; t <= fac_a; ++t) {
                Poly lin({0, 1});
                lin = lin * FieldElement(fac_a) + Poly::constant(FieldElement(fac_b + t));
                r *= lin.coerced(spec);
            }
            return r;
        }
        case Kind::Pochhammer:
            return Poly::linear_from_root(-arg).coerced(spec);
        case Kind::PochhammerPoly:
            return poly.coerced(spec);
    }
    throw Error(Error::Kind::Internal, "bad atom kind");
}

FieldElement Atom::eval(long n0, const FieldSpec& spec) const {
    FieldElement v(1);
    v = v.coerced(spec);
    switch (kind) {
        case Kind::Factorial: {
            mpz_class f;
            unsigned long m = static_cast<unsigned long>(fac_a * n0 + fac_b);
            mpz_fac_ui(f.get_mpz_t(), m);
            v = FieldElement(mpq_class(f)).coerced(spec);
            break;
        }
        case Kind::Pochhammer: {
            FieldElement acc(1);
            acc = acc.coerced(spec);
            for (long k = 0; k < n0; ++k) acc *= arg.coerced(spec) + FieldElement(k).coerced(spec);
            v = acc;
            break;
        }
        case Kind::PochhammerPoly: {
            FieldElement acc(1);
            acc = acc.coerced(spec);
            for (long k = 0; k < n0; ++k) acc *= poly.coerced(spec).eval(FieldElement(k));
            v = acc;
            break;
        }
    }
    return v.pow(exp);
}

bool Atom::same_head(const Atom& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Factorial: return fac_a == o.fac_a && fac_b == o.fac_b;
        case Kind::Pochhammer: return arg == o.arg;
        case Kind::PochhammerPoly: return poly == o.poly;
    }
    return false;
}

std::strong_ordering Atom::head_order(const Atom& o) const {
    if (kind != o.kind) return static_cast<int>(kind) <=> static_cast<int>(o.kind);
    switch (kind) {
        case Kind::Factorial:
            if (fac_a != o.fac_a) return fac_a <=> o.fac_a;
            return fac_b <=> o.fac_b;
        case Kind::Pochhammer: return arg.lex_order(o.arg);
        case Kind::PochhammerPoly: return poly.order(o.poly);
    }
    return std::strong_ordering::equal;
}

std::string Atom::to_string(bool latex) const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Factorial: {
            if (fac_a == 1 && fac_b == 0) {
                os << (latex ? "n!" : "n!");
            } else {
                Poly arg_poly({fac_b, fac_a});
                os << "(" << arg_poly.to_string() << ")!";
            }
            break;
        }
        case Kind::Pochhammer:
            if (latex)
                os << "\\left(" << arg.to_string() << "\\right)_n";
            else
                os << "pochhammer(" << arg.to_string() << ",n)";
            break;
        case Kind::PochhammerPoly:
            if (latex)
                os << "\\prod_{k=0}^{n-1}\\left(" << poly.to_string("k") << "\\right)";
            else
                os << "pochhammer(" << poly.to_string() << ",n)";
            break;
    }
    return os.str();
}

HypTerm HypTerm::make(FieldElement base, RatFun rat, std::vector<Atom> atoms) {
    if (base.is_zero()) throw Error(Error::Kind::InvalidArgument, "zero base");
    if (rat.is_zero()) throw Error(Error::Kind::InvalidArgument, "zero rational part");
    HypTerm t;
    t.base_ = std::move(base);
    t.rat_ = std::move(rat);
    // merge duplicate heads, drop zero exponents, sort canonically
    std::vector<Atom> merged;
    for (auto& a : atoms) {
        bool found = false;
        for (auto& m : merged) {
            if (m.same_head(a)) {
                m.exp += a.exp;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(std::move(a));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Atom& a) { return a.exp == 0; }),
                 merged.end());
    std::sort(merged.begin(), merged.end(),
              [](const Atom& x, const Atom& y) { return x.head_order(y) == std::strong_ordering::less; });
    for (const auto& a : merged) {
        if (a.kind == Atom::Kind::Pochhammer) {
            StripResult s = real_part_floor_shift(a.arg, Strip::PochStrip);
            if (s.shift != 0)
                throw Error(Error::Kind::InvalidArgument,
                            "pochhammer argument " + a.arg.to_string() + " outside (0,1]");
        }
    }
    t.atoms_ = std::move(merged);
    return t;
}

HypTerm HypTerm::one(FieldSpec spec) {
    return make(FieldElement(1).coerced(spec), RatFun::constant(FieldElement(1).coerced(spec)), {});
}

FieldSpec HypTerm::spec() const {
    FieldSpec s = base_.spec();
    s = join(s, rat_.spec());
    for (const auto& a : atoms_)
        if (a.kind == Atom::Kind::Pochhammer)
            s = join(s, a.arg.spec());
        else if (a.kind == Atom::Kind::PochhammerPoly)
            s = join(s, a.poly.spec());
    return s;
}

HypTerm HypTerm::operator*(const HypTerm& o) const {
    FieldSpec s = join(spec(), o.spec());
    std::vector<Atom> atoms = atoms_;
    atoms.insert(atoms.end(), o.atoms_.begin(), o.atoms_.end());
    return make(base_.coerced(s) * o.base_.coerced(s), rat_.coerced(s) * o.rat_.coerced(s), std::move(atoms));
}

HypTerm HypTerm::scaled(const FieldElement& s) const {
    return make(base_, rat_ * RatFun::constant(s), atoms_);
}

RatioNF RatioNF::of(const FieldElement& c, const RatFun& r) {
    RatioNF nf = RatioNF::of(r);
    FieldSpec s = join(c.spec(), nf.c.spec());
    nf.c = c.coerced(s) * nf.c.coerced(s);
    return nf;
}

RatioNF RatioNF::of(const RatFun& r) {
    if (r.is_zero()) throw Error(Error::Kind::InvalidArgument, "zero ratio");
    RatioNF nf;
    FieldElement lead = r.num().leading(); // den is monic already
    nf.c = lead;
    nf.monic = RatFun(r.num() * lead.inv(), r.den());
    return nf;
}

RatioNF HypTerm::term_ratio() const {
    FieldSpec s = spec();
    RatFun ratio = RatFun::from_poly(rat_.num().shifted(1)) / RatFun::from_poly(rat_.num()) *
                   RatFun::from_poly(rat_.den()) / RatFun::from_poly(rat_.den().shifted(1));
    for (const auto& a : atoms_) ratio *= RatFun::from_poly(a.step_poly(s)).pow(a.exp);
    return RatioNF::of(base_.coerced(s), ratio.coerced(s));
}

FieldElement HypTerm::term_eval(long n0) const {
    if (n0 < 0) throw Error(Error::Kind::InvalidArgument, "term_eval at negative index");
    FieldSpec s = spec();
    FieldElement v = base_.coerced(s).pow(n0);
    v *= rat_.coerced(s).eval(FieldElement(n0));
    for (const auto& a : atoms_) v *= a.eval(n0, s);
    return v;
}

bool HypTerm::operator==(const HypTerm& o) const {
    if (!(base_ == o.base_) || !(rat_ == o.rat_) || atoms_.size() != o.atoms_.size()) return false;
    for (size_t i = 0; i < atoms_.size(); ++i)
        if (!atoms_[i].same_head(o.atoms_[i]) || atoms_[i].exp != o.atoms_[i].exp) return false;
    return true;
}

bool ratio_equivalent(const HypTerm& s, const HypTerm& t) {
    RatioNF a = s.term_ratio(), b = t.term_ratio();
    FieldSpec sp = join(a.c.spec(), b.c.spec());
    return a.c.coerced(sp) == b.c.coerced(sp) &&
           a.monic.coerced(sp) == b.monic.coerced(sp);
}

namespace {

bool composite_str(const std::string& s) {
    return s.find('+') != std::string::npos || s.find('-', 1) != std::string::npos ||
           s.find('*') != std::string::npos || s.find('/') != std::string::npos ||
           (!s.empty() && s[0] == '-');
}

std::string paren_if_composite(const std::string& s) {
    return composite_str(s) ? "(" + s + ")" : s;
}

std::string base_token(const FieldElement& c, bool latex) {
    std::string cs = c.to_string();
    std::string tok = paren_if_composite(cs);
    if (latex) return tok + "^{n}";
    return tok + "^n";
}

// minimal math-mode cleanup: sqrt(d) -> \sqrt{d}, '*' -> \cdot
std::string latexify(std::string s) {
    for (size_t pos; (pos = s.find("sqrt(")) != std::string::npos;) {
        size_t close = s.find(')', pos);
        if (close == std::string::npos) break;
        std::string inner = s.substr(pos + 5, close - pos - 5);
        s = s.substr(0, pos) + "\\Sqrt{" + inner + "}" + s.substr(close + 1);
    }
    std::string out;
    for (char ch : s) {
        if (ch == '*')
            out += "\\cdot ";
        else
            out += ch;
    }
    // placeholder kept sqrt out of the '*' pass
    for (size_t pos; (pos = out.find("\\Sqrt")) != std::string::npos;) out.replace(pos, 5, "\\sqrt");
    return out;
}

std::string exp_token(long e, bool latex) {
    if (e == 1) return "";
    if (latex) return "^{" + std::to_string(e) + "}";
    return "^" + std::to_string(e);
}

} // namespace

std::string HypTerm::render(Format fmt) const {
    if (fmt == Format::Json) {
        json j;
        j["base"] = base_.to_string();
        json num = json::array(), den = json::array();
        for (const auto& c : rat_.num().coeffs()) num.push_back(c.to_string());
        for (const auto& c : rat_.den().coeffs()) den.push_back(c.to_string());
        j["rat"] = {{"num", num}, {"den", den}};
        json atoms = json::array();
        for (const auto& a : atoms_) {
            json ja;
            switch (a.kind) {
                case Atom::Kind::Factorial:
                    ja = {{"kind", "factorial"}, {"a", a.fac_a}, {"b", a.fac_b}, {"exp", a.exp}};
                    break;
                case Atom::Kind::Pochhammer:
                    ja = {{"kind", "pochhammer"}, {"arg", a.arg.to_string()}, {"exp", a.exp}};
                    break;
                case Atom::Kind::PochhammerPoly: {
                    json pc = json::array();
                    for (const auto& c : a.poly.coeffs()) pc.push_back(c.to_string());
                    ja = {{"kind", "pochhammer_poly"}, {"poly", pc}, {"exp", a.exp}};
                    break;
                }
            }
            atoms.push_back(ja);
        }
        j["atoms"] = atoms;
        FieldSpec s = spec();
        if (s.is_rationals())
            j["field"] = {{"kind", "rationals"}};
        else
            j["field"] = {{"kind", "quadratic"}, {"d", s.d}};
        return j.dump();
    }

    const bool latex = fmt == Format::Latex;
    std::vector<std::string> num_tokens, den_tokens;

    if (!base_.is_one()) num_tokens.push_back(base_token(base_, latex));

    // rational part: numerator/denominator rendered as (possibly scaled) polys
    Poly rn = rat_.num(), rd = rat_.den();
    bool num_is_one = rn.degree() == 0 && rn.constant_term().is_one();
    bool den_is_one = rd.degree() == 0 && rd.constant_term().is_one();
    if (!num_is_one) num_tokens.push_back(paren_if_composite(rn.to_string()));
    if (!den_is_one) den_tokens.push_back(paren_if_composite(rd.to_string()));

    for (const auto& a : atoms_) {
        std::string body = a.to_string(latex);
        if (a.kind == Atom::Kind::Pochhammer && latex)
            body = "\\left(" + a.arg.to_string() + "\\right)_n"; // already so
        long e = a.exp;
        if (e > 0)
            num_tokens.push_back(body + exp_token(e, latex));
        else
            den_tokens.push_back(body + exp_token(-e, latex));
    }

    auto join_tokens = [&](const std::vector<std::string>& ts) {
        std::string s;
        for (size_t i = 0; i < ts.size(); ++i) {
            if (i) s += latex ? "\\," : "*";
            s += ts[i];
        }
        return s;
    };

    std::string num_str = num_tokens.empty() ? "1" : join_tokens(num_tokens);
    if (den_tokens.empty()) return latex ? latexify(num_str) : num_str;
    std::string den_str = join_tokens(den_tokens);
    if (latex) return "\\frac{" + latexify(num_str) + "}{" + latexify(den_str) + "}";
    if (den_tokens.size() > 1) den_str = "(" + den_str + ")";
    return num_str + "/" + den_str;
}

} // namespace holorec
