#include "holorec/parser.hpp"

#include "holorec/simplify.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace holorec {

FieldSpec ParseContext::require(long d) {
    auto [core, scale] = squarefree_decompose(mpz_class(d));
    (void)scale;
    if (core == 1) return current();
    if (!core.fits_slong_p())
        throw Error(Error::Kind::UnsupportedExtension, "sqrt discriminant out of range");
    long cd = core.get_si();
    switch (policy.mode) {
        case FieldPolicy::Mode::RationalsOnly:
            throw Error(Error::Kind::UnsupportedExtension,
                        "input needs Q(sqrt(" + std::to_string(cd) + ")) but the field is restricted to Q");
        case FieldPolicy::Mode::FixedQuadratic:
            if (policy.d != cd)
                throw Error(Error::Kind::UnsupportedExtension,
                            "input needs Q(sqrt(" + std::to_string(cd) + ")), field fixed to Q(sqrt(" +
                                std::to_string(policy.d) + "))");
            return FieldSpec::quadratic(cd);
        case FieldPolicy::Mode::Auto: {
            FieldSpec want = FieldSpec::quadratic(cd);
            discovered = join(discovered, want); // throws on a tower
            return discovered;
        }
    }
    return FieldSpec::rationals();
}

FieldSpec ParseContext::current() const {
    if (policy.mode == FieldPolicy::Mode::FixedQuadratic) return FieldSpec::quadratic(policy.d);
    if (policy.mode == FieldPolicy::Mode::Auto) return discovered;
    return FieldSpec::rationals();
}

namespace {

// ---- lexer ------------------------------------------------------------------

struct Token {
    enum class Kind { Integer, Ident, Op, End };
    Kind kind = Kind::End;
    mpz_class int_value;
    std::string text; // ident name or operator
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    bool at(const std::string& op) const { return tok_.kind == Token::Kind::Op && tok_.text == op; }
    bool at_ident(const std::string& name) const {
        return tok_.kind == Token::Kind::Ident && tok_.text == name;
    }
    bool eat(const std::string& op) {
        if (!at(op)) return false;
        advance();
        return true;
    }
    void expect(const std::string& op) {
        if (!eat(op)) throw parse_error("expected '" + op + "'", tok_.line, tok_.col);
    }
    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, tok_.line, tok_.col); }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::End;
            tok_.text = "<end>";
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
            tok_.kind = Token::Kind::Integer;
            tok_.int_value = mpz_class(src_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = Token::Kind::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        static const std::string ops = "+-*/^!(),=";
        if (ops.find(c) != std::string::npos) {
            tok_.kind = Token::Kind::Op;
            tok_.text = std::string(1, c);
            bump();
            return;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// ---- expression values --------------------------------------------------------

// A parsed multiplicative expression: geometric base, rational function of n,
// hypergeometric atoms, plus linear combination of a(n+i) for recurrences.
struct Value {
    // base^n * rat(n) * prod atoms
    FieldElement base{1};
    RatFun rat = RatFun(1);
    std::vector<Atom> atoms;
    // recurrence part: coefficient of a(n+i); a Value is either pure
    // (a_coeffs empty) or linear in the a(n+i) with pure coefficients.
    std::map<long, RatFun> a_coeffs;

    bool pure() const { return a_coeffs.empty(); }
    bool scalar_only() const {
        return pure() && atoms.empty() && base.is_one() && rat.is_constant();
    }
    bool rational_only() const { return pure() && atoms.empty() && base.is_one(); }

    static Value scalar(FieldElement c) {
        Value v;
        v.rat = RatFun::constant(std::move(c));
        return v;
    }
    static Value ratfun(RatFun r) {
        Value v;
        v.rat = std::move(r);
        return v;
    }
};

class Parser {
public:
    Parser(const std::string& src, ParseContext& ctx, bool allow_sequence)
        : lex_(src), ctx_(ctx), allow_sequence_(allow_sequence) {}

    Value parse_expression() {
        Value v = parse_sum();
        return v;
    }

    void expect_end() {
        if (lex_.peek().kind != Token::Kind::End) lex_.fail("trailing input");
    }

    bool eat_equals_zero() {
        if (!lex_.eat("=")) return false;
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::Integer || t.int_value != 0) lex_.fail("right-hand side must be 0");
        lex_.next();
        return true;
    }

private:
    Value parse_sum() {
        Value acc = parse_product();
        for (;;) {
            if (lex_.eat("+")) {
                acc = add(acc, parse_product(), false);
            } else if (lex_.eat("-")) {
                acc = add(acc, parse_product(), true);
            } else {
                return acc;
            }
        }
    }

    Value parse_product() {
        int leading_sign = 1;
        while (lex_.at("-") || lex_.at("+")) {
            if (lex_.eat("-")) leading_sign = -leading_sign;
            else lex_.eat("+");
        }
        Value acc = parse_power();
        for (;;) {
            if (lex_.eat("*")) {
                acc = mul(acc, parse_power());
            } else if (lex_.eat("/")) {
                acc = div(acc, parse_power());
            } else {
                break;
            }
        }
        if (leading_sign < 0) acc = negate(acc);
        return acc;
    }

    Value parse_power() {
        Value base = parse_postfix();
        if (!lex_.eat("^")) return base;
        // exponent: signed integer, or a parenthesized linear form in n
        Value expv = parse_exponent();
        return apply_power(base, expv);
    }

    Value parse_exponent() {
        int sign = 1;
        while (lex_.at("-") || lex_.at("+")) {
            if (lex_.eat("-")) sign = -sign;
            else lex_.eat("+");
        }
        Value v = parse_postfix();
        // allow ^2, ^n, ^(expr)
        if (sign < 0) v = negate(v);
        return v;
    }

    Value parse_postfix() {
        Value v = parse_atom();
        while (lex_.eat("!")) v = apply_factorial(v);
        return v;
    }

    Value parse_atom() {
        const Token t = lex_.peek();
        if (t.kind == Token::Kind::Integer) {
            lex_.next();
            return Value::scalar(FieldElement(mpq_class(t.int_value)).coerced(ctx_.current()));
        }
        if (t.kind == Token::Kind::Op && t.text == "(") {
            lex_.next();
            Value v = parse_sum();
            lex_.expect(")");
            return v;
        }
        if (t.kind == Token::Kind::Ident) {
            lex_.next();
            if (t.text == "n") {
                if (lex_.at("(") || lex_.at_ident("n")) lex_.fail("unexpected call on n");
                return Value::ratfun(RatFun::from_poly(Poly::variable(ctx_.current())));
            }
            if (t.text == "sqrt") return parse_sqrt();
            if (t.text == "pochhammer") return parse_pochhammer();
            if (t.text == "binomial") return parse_binomial();
            if (t.text == "a") {
                if (!allow_sequence_) lex_.fail("sequence term a(...) not allowed here");
                return parse_sequence_ref(t);
            }
            lex_.fail("unknown symbol '" + t.text + "'");
        }
        lex_.fail("expected a value");
    }

    Value parse_sqrt() {
        lex_.expect("(");
        Value arg = parse_sum();
        lex_.expect(")");
        if (!arg.scalar_only()) lex_.fail("sqrt of a non-constant");
        FieldElement c = arg.rat.as_constant() * arg.base; // base is 1 for scalars
        if (!c.is_rational()) lex_.fail("nested sqrt is not supported");
        mpq_class q = c.rational();
        if (q == 0) return Value::scalar(FieldElement(0));
        // sqrt(p/q) = sqrt(p*q)/q
        mpz_class core_in = q.get_num() * q.get_den();
        auto [core, scale] = squarefree_decompose(core_in);
        if (core == 1) {
            mpq_class root(scale, q.get_den());
            root.canonicalize();
            return Value::scalar(FieldElement(root).coerced(ctx_.current()));
        }
        if (!core.fits_slong_p()) lex_.fail("sqrt discriminant out of range");
        FieldSpec spec = ctx_.require(core.get_si());
        mpq_class coef(scale, q.get_den());
        coef.canonicalize();
        return Value::scalar(FieldElement(0, coef, spec));
    }

    Value parse_pochhammer() {
        lex_.expect("(");
        Value arg = parse_sum();
        lex_.expect(",");
        const Token var = lex_.next();
        if (var.kind != Token::Kind::Ident || var.text != "n") lex_.fail("pochhammer index must be n");
        lex_.expect(")");
        if (!arg.pure() || !arg.atoms.empty() || !arg.base.is_one() || !arg.rat.is_poly())
            lex_.fail("pochhammer argument must be a polynomial or constant");
        Poly p = arg.rat.as_poly();
        Value v;
        if (p.degree() <= 0) {
            FieldElement x = p.constant_term();
            if (x.is_integer() && x.sign_real() <= 0)
                throw Error(Error::Kind::NonpositiveIntegerArgument,
                            "pochhammer(" + x.to_string() + ", n) is eventually zero");
            PochNormalized norm = pochhammer_normalize(x);
            v.rat = norm.correction;
            v.atoms.push_back(Atom::pochhammer(norm.u, 1));
            return v;
        }
        if (p.degree() == 1) {
            // prod_{k<n} (a*k + b) = a^n * (b/a)_n
            FieldElement a = p[1], b = p[0];
            FieldElement x = b / a;
            if (x.is_integer() && x.sign_real() <= 0)
                throw Error(Error::Kind::NonpositiveIntegerArgument,
                            "pochhammer(" + p.to_string() + ", n) is eventually zero");
            PochNormalized norm = pochhammer_normalize(x);
            v.base = a;
            v.rat = norm.correction;
            v.atoms.push_back(Atom::pochhammer(norm.u, 1));
            return v;
        }
        FieldElement lead = p.leading();
        Poly monic = p.monic();
        v.base = lead;
        v.atoms.push_back(Atom::pochhammer_poly(monic, 1));
        return v;
    }

    Value parse_binomial() {
        lex_.expect("(");
        Value top = parse_sum();
        lex_.expect(",");
        Value bottom = parse_sum();
        lex_.expect(")");
        // binomial(x, y) = x!/(y! (x-y)!)
        Value xf = apply_factorial(top);
        Value yf = apply_factorial(bottom);
        Value df = apply_factorial(add(top, bottom, true));
        return div(xf, mul(yf, df));
    }

    Value parse_sequence_ref(const Token& t) {
        lex_.expect("(");
        Value arg = parse_sum();
        lex_.expect(")");
        if (!arg.rational_only() || !arg.rat.is_poly()) lex_.fail("argument of a(...) must be n + integer");
        Poly p = arg.rat.as_poly();
        long offset = 0;
        if (p.degree() == 1) {
            if (!p[1].is_one()) lex_.fail("argument of a(...) must be n + integer");
            if (!p[0].is_integer()) lex_.fail("argument of a(...) must be n + integer");
            offset = p[0].to_long();
        } else {
            lex_.fail("argument of a(...) must be n + integer");
        }
        (void)t;
        Value v;
        v.a_coeffs[offset] = RatFun(1).coerced(ctx_.current());
        return v;
    }

    // ---- value algebra ----

    [[noreturn]] void not_hyper(const std::string& what) {
        throw Error(Error::Kind::NotHypergeometric, what);
    }

    Value negate(Value v) {
        if (v.pure()) {
            v.rat = -v.rat;
            return v;
        }
        for (auto& [i, c] : v.a_coeffs) c = -c;
        return v;
    }

    Value add(Value x, Value y, bool subtract) {
        if (subtract) y = negate(y);
        if (!x.pure() || !y.pure()) {
            // linear combination of sequence terms with pure rational coefficients
            auto as_lincomb = [&](Value& v) -> std::map<long, RatFun> {
                if (!v.pure()) return v.a_coeffs;
                if (v.rat.is_zero()) return {};
                not_hyper("recurrence must be homogeneous (constant addend found)");
            };
            std::map<long, RatFun> xa = as_lincomb(x), ya = as_lincomb(y);
            for (const auto& [i, c] : ya) {
                auto it = xa.find(i);
                if (it == xa.end())
                    xa[i] = c;
                else
                    it->second += c;
            }
            Value v;
            v.a_coeffs = std::move(xa);
            if (v.a_coeffs.empty()) return Value::scalar(FieldElement(0));
            return v;
        }
        // pure values: addition only preserves hypergeometric shape when both
        // sides share base and atoms (then the rational parts add)
        if (x.atoms.empty() && y.atoms.empty() && x.base.is_one() && y.base.is_one()) {
            Value v;
            v.rat = x.rat + y.rat;
            return v;
        }
        if (x.base == y.base && same_atoms(x.atoms, y.atoms)) {
            Value v;
            v.base = x.base;
            v.atoms = x.atoms;
            v.rat = x.rat + y.rat;
            return v;
        }
        if (x.rat.is_zero()) return y;
        if (y.rat.is_zero()) return x;
        not_hyper("sum is not a hypergeometric product form");
    }

    static bool same_atoms(const std::vector<Atom>& a, const std::vector<Atom>& b) {
        if (a.size() != b.size()) return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!a[i].same_head(b[i]) || a[i].exp != b[i].exp) return false;
        return true;
    }

    Value mul(Value x, Value y) {
        if (!x.pure() && !y.pure()) not_hyper("product of two sequence terms is not linear");
        if (!x.pure() || !y.pure()) {
            Value& seq = x.pure() ? y : x;
            Value& coef = x.pure() ? x : y;
            if (!coef.rational_only() || !coef.atoms.empty())
                not_hyper("recurrence coefficients must be rational functions of n");
            for (auto& [i, c] : seq.a_coeffs) c *= coef.rat;
            return seq;
        }
        Value v;
        FieldSpec s = join(join(x.base.spec(), y.base.spec()), join(x.rat.spec(), y.rat.spec()));
        v.base = x.base.coerced(s) * y.base.coerced(s);
        v.rat = x.rat.coerced(s) * y.rat.coerced(s);
        v.atoms = x.atoms;
        v.atoms.insert(v.atoms.end(), y.atoms.begin(), y.atoms.end());
        return v;
    }

    Value div(Value x, Value y) {
        if (!y.pure()) not_hyper("division by a sequence term");
        Value inv;
        if (y.rat.is_zero()) lex_.fail("division by zero");
        inv.base = y.base.inv();
        inv.rat = y.rat.inv();
        inv.atoms = y.atoms;
        for (auto& a : inv.atoms) a.exp = -a.exp;
        return mul(std::move(x), std::move(inv));
    }

    Value apply_factorial(Value v) {
        if (!v.pure() || !v.atoms.empty() || !v.base.is_one() || !v.rat.is_poly())
            lex_.fail("factorial of a non-polynomial");
        Poly p = v.rat.as_poly();
        if (p.degree() > 1) lex_.fail("factorial argument must be linear in n");
        if (p.degree() <= 0) {
            FieldElement c = p.constant_term();
            if (!c.is_integer() || c.sign_real() < 0) lex_.fail("factorial of a non-integer constant");
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(c.to_long()));
            return Value::scalar(FieldElement(mpq_class(f)).coerced(ctx_.current()));
        }
        FieldElement a = p[1], b = p[0];
        if (!a.is_integer() || a.sign_real() <= 0 || !b.is_integer())
            lex_.fail("factorial argument must be a*n + b with integers a >= 1, b");
        long av = a.to_long(), bv = b.to_long();
        Value out;
        if (bv >= 0) {
            out.atoms.push_back(Atom::factorial(av, bv, 1));
            return out;
        }
        // (a*n + b)! = (a*n)! / prod_{t=b+1}^{0} (a*n + t)
        out.atoms.push_back(Atom::factorial(av, 0, 1));
        RatFun denom = RatFun(1).coerced(ctx_.current());
        for (long t = bv + 1; t <= 0; ++t) {
            Poly lin({0, 1});
            lin = lin * FieldElement(av) + Poly::constant(FieldElement(t));
            denom *= RatFun::from_poly(lin.coerced(ctx_.current()));
        }
        out.rat = denom.inv();
        return out;
    }

    Value apply_power(Value base, const Value& expv) {
        // constant integer exponent
        if (expv.scalar_only()) {
            FieldElement e = expv.rat.as_constant();
            if (!e.is_integer()) lex_.fail("exponent must be an integer or linear in n");
            long k = e.to_long();
            return pow_int(std::move(base), k);
        }
        // exponent linear in n: only for scalar bases (geometric part)
        if (!expv.rational_only() || !expv.rat.is_poly()) lex_.fail("unsupported exponent");
        Poly e = expv.rat.as_poly();
        if (e.degree() != 1) lex_.fail("exponent must be an integer or linear in n");
        if (!base.scalar_only()) lex_.fail("only constants can be raised to the power n");
        FieldElement c = base.rat.as_constant();
        FieldElement alpha = e[1], beta = e[0];
        if (!beta.is_integer()) lex_.fail("exponent offset must be an integer");
        Value out;
        if (alpha.is_integer()) {
            out.base = c.pow(alpha.to_long());
        } else if (alpha.is_rational() && alpha.rational().get_den() == 2) {
            // c^(n/2) = sqrt(c)^n for a nonnegative rational c
            if (!c.is_rational() || sgn(c.rational()) < 0)
                throw Error(Error::Kind::UnsupportedExtension,
                            "cannot take sqrt of " + c.to_string() + " for a half-integer exponent");
            mpq_class q = c.rational();
            mpz_class core_in = q.get_num() * q.get_den();
            auto [core, scale] = squarefree_decompose(core_in);
            FieldElement root;
            if (core == 1) {
                mpq_class r(scale, q.get_den());
                r.canonicalize();
                root = FieldElement(r).coerced(ctx_.current());
            } else {
                if (!core.fits_slong_p())
                    throw Error(Error::Kind::UnsupportedExtension, "sqrt discriminant out of range");
                FieldSpec spec = ctx_.require(core.get_si());
                mpq_class r(scale, q.get_den());
                r.canonicalize();
                root = FieldElement(0, r, spec);
            }
            long num = mpz_class(alpha.rational().get_num()).get_si();
            out.base = root.pow(num);
        } else {
            throw Error(Error::Kind::UnsupportedExtension,
                        "exponent " + e.to_string() + " needs an extension of degree > 2");
        }
        // c^(alpha*n + beta) = (c^alpha)^n * c^beta
        out.rat = RatFun::constant(c.coerced(out.base.spec()).pow(beta.to_long()));
        return out;
    }

    Value pow_int(Value v, long k) {
        if (!v.pure()) lex_.fail("cannot raise a sequence term to a power");
        Value out;
        FieldSpec s = join(v.base.spec(), v.rat.spec());
        out.base = v.base.coerced(s).pow(k);
        out.rat = v.rat.coerced(s).pow(k);
        out.atoms = v.atoms;
        for (auto& a : out.atoms) a.exp *= k;
        out.atoms.erase(std::remove_if(out.atoms.begin(), out.atoms.end(), [](const Atom& a) { return a.exp == 0; }),
                        out.atoms.end());
        return out;
    }

    Lexer lex_;
    ParseContext& ctx_;
    bool allow_sequence_;

public:
    Value run_full(bool expect_eq_zero) {
        Value v = parse_expression();
        if (expect_eq_zero) {
            if (!eat_equals_zero()) lex_.fail("expected '= 0'");
        }
        expect_end();
        return v;
    }
};

} // namespace

Recurrence parse_recurrence(const std::string& src, ParseContext& ctx) {
    std::string trimmed = src;
    size_t first = trimmed.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && trimmed[first] == '{') {
        Recurrence rec = Recurrence::from_json(src);
        if (!ctx.policy.allows(rec.spec()))
            throw Error(Error::Kind::UnsupportedExtension,
                        "recurrence lives in " + rec.spec().to_string() + " outside the requested field");
        if (ctx.policy.mode == FieldPolicy::Mode::Auto) ctx.discovered = join(ctx.discovered, rec.spec());
        return rec;
    }
    Parser p(src, ctx, true);
    Value v = p.run_full(true);
    if (v.pure()) {
        if (v.rat.is_zero()) throw Error(Error::Kind::InvalidArgument, "all-zero recurrence");
        throw Error(Error::Kind::NotHypergeometric, "no a(n+i) terms found");
    }
    long lo = v.a_coeffs.begin()->first;
    long hi = v.a_coeffs.rbegin()->first;
    std::vector<RatFun> coeffs;
    for (long i = lo; i <= hi; ++i) {
        auto it = v.a_coeffs.find(i);
        coeffs.push_back(it == v.a_coeffs.end() ? RatFun(0) : it->second);
    }
    return Recurrence::normalize(coeffs, "n", lo);
}

HypTerm parse_term(const std::string& src, ParseContext& ctx) {
    Parser p(src, ctx, false);
    Value v = p.run_full(false);
    if (!v.pure()) throw Error(Error::Kind::InvalidArgument, "unexpected a(...) in a term");
    if (v.rat.is_zero()) throw Error(Error::Kind::InvalidArgument, "zero term");
    return HypTerm::make(v.base, v.rat, std::move(v.atoms));
}

RatFun parse_ratfun(const std::string& src, ParseContext& ctx) {
    Parser p(src, ctx, false);
    Value v = p.run_full(false);
    if (!v.pure() || !v.atoms.empty() || !v.base.is_one())
        throw Error(Error::Kind::InvalidArgument, "not a rational function");
    return v.rat;
}

} // namespace holorec
