#include "holorec/recurrence.hpp"

#include "json.hpp"

#include <sstream>

namespace holorec {

using nlohmann::json;

Recurrence Recurrence::normalize(const std::vector<RatFun>& raw_coeffs, std::string var,
                                 long base_offset) {
    FieldSpec spec;
    for (const auto& r : raw_coeffs) spec = join(spec, r.spec());
    Poly common_den = Poly::constant(FieldElement(1).coerced(spec));
    for (const auto& r : raw_coeffs) common_den = poly_lcm(common_den, r.den().coerced(spec));
    std::vector<Poly> polys;
    polys.reserve(raw_coeffs.size());
    for (const auto& r : raw_coeffs) {
        RatFun cleared = r.coerced(spec) * RatFun::from_poly(common_den);
        polys.push_back(cleared.as_poly());
    }
    return normalize_polys(std::move(polys), std::move(var), base_offset);
}

Recurrence Recurrence::normalize_polys(std::vector<Poly> coeffs, std::string var, long base_offset) {
    size_t lo = 0, hi = coeffs.size();
    while (lo < hi && coeffs[lo].is_zero()) ++lo;
    while (hi > lo && coeffs[hi - 1].is_zero()) --hi;
    if (lo == hi) throw Error(Error::Kind::InvalidArgument, "all-zero recurrence");
    if (hi - lo < 2) throw Error(Error::Kind::InvalidArgument, "order-0 recurrence after normalization");

    // Dropping leading zero coefficients reindexes the unknown: the
    // normalized equation is in b(k) = a(k + shift), coefficients unchanged;
    // callers re-shift solutions by index_shift().
    Recurrence rec;
    rec.var_ = std::move(var);
    rec.index_shift_ = static_cast<long>(lo) + base_offset;
    FieldSpec spec;
    for (size_t i = lo; i < hi; ++i) spec = join(spec, coeffs[i].spec());
    for (size_t i = lo; i < hi; ++i) rec.coeffs_.push_back(coeffs[i].coerced(spec));

    // polynomial content
    Poly g(spec);
    for (const auto& p : rec.coeffs_) g = poly_gcd(g, p);
    if (g.degree() > 0)
        for (auto& p : rec.coeffs_) p = p.quot_rem(g).first;

    // positive scalar content; the sign of the input is preserved
    mpq_class content = 0;
    {
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& p : rec.coeffs_) {
            mpq_class c = p.is_zero() ? mpq_class(0) : p.rational_content();
            if (c == 0) continue;
            mpz_class n = abs(c.get_num());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
        content = mpq_class(num_gcd, den_lcm);
        content.canonicalize();
    }
    if (content != 0 && content != 1) {
        FieldElement inv = FieldElement(content).inv();
        for (auto& p : rec.coeffs_) p = p * inv;
    }
    return rec;
}

RatFun Recurrence::apply_to_ratio(const RatFun& r) const {
    if (r.is_zero()) throw Error(Error::Kind::InvalidArgument, "apply_to_ratio with zero ratio");
    FieldSpec s = join(spec(), r.spec());
    RatFun sum = RatFun::from_poly(coeffs_[0].coerced(s));
    RatFun prod = RatFun(1);
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        prod *= r.shifted(static_cast<long>(i) - 1);
        sum += RatFun::from_poly(coeffs_[i].coerced(s)) * prod;
    }
    return sum;
}

std::string Recurrence::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = order(); i >= 0; --i) {
        const Poly& p = coeffs_[i];
        if (p.is_zero()) continue;
        std::string ps = p.to_string(var_);
        bool neg = ps.size() && ps[0] == '-';
        bool composite = ps.find('+') != std::string::npos || ps.find('-', 1) != std::string::npos;
        if (first) {
            if (neg && !composite) {
                os << "-";
                ps = ps.substr(1);
            }
            first = false;
        } else {
            if (neg && !composite) {
                os << "-";
                ps = ps.substr(1);
            } else {
                os << "+";
            }
        }
        if (composite)
            os << "(" << ps << ")";
        else if (ps != "1")
            os << ps;
        if (ps != "1" || composite) os << "*";
        os << "a(" << var_;
        if (i > 0) os << "+" << i;
        os << ")";
    }
    os << " = 0";
    return os.str();
}

std::string Recurrence::to_json() const {
    json j;
    j["var"] = var_;
    FieldSpec s = spec();
    if (s.is_rationals())
        j["field"] = {{"kind", "rationals"}};
    else
        j["field"] = {{"kind", "quadratic"}, {"d", s.d}};
    json coeffs = json::array();
    for (const auto& p : coeffs_) {
        json c = json::array();
        for (const auto& e : p.coeffs()) c.push_back(e.to_string());
        coeffs.push_back(c);
    }
    j["coeffs"] = coeffs;
    return j.dump();
}

Recurrence Recurrence::from_json(const std::string& text) {
    json j = json::parse(text);
    FieldSpec spec;
    if (j.contains("field")) {
        const auto& f = j["field"];
        std::string kind = f.value("kind", "rationals");
        if (kind == "quadratic") spec = FieldSpec::quadratic(f.at("d").get<long>());
    }
    std::vector<Poly> coeffs;
    for (const auto& c : j.at("coeffs")) {
        std::vector<FieldElement> v;
        for (const auto& e : c) v.push_back(parse_field_element(e.get<std::string>(), spec));
        coeffs.push_back(Poly(v, spec));
    }
    std::string var = j.value("var", "n");
    return normalize_polys(std::move(coeffs), var);
}

} // namespace holorec
