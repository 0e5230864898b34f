// holorec: hypergeometric-term solutions of holonomic recurrence equations.
//
//   solve       basis of hypergeometric term solutions of a recurrence
//   generate    least-order recurrence satisfied by given terms
//   simplify    closed form of prod_{k=0}^{n-1} r(k) for a rational r
//   localtypes  local types (nu, c, b) at infinity

#include "CLI11.hpp"
#include "json.hpp"

#include "holorec/genrec.hpp"
#include "holorec/parser.hpp"
#include "holorec/simplify.hpp"
#include "holorec/solver.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace holorec;
using nlohmann::json;

namespace {

enum class OutFormat { Text, Json, Latex };

struct CliConfig {
    std::string field = "q";
    std::string format = "text";
    bool no_product_rule = false;
    std::string input_file;
    std::vector<std::string> inline_args;
};

FieldPolicy parse_field_flag(const std::string& s) {
    if (s == "q") return FieldPolicy::rationals_only();
    if (s == "auto") return FieldPolicy::auto_discover();
    if (s.rfind("qsqrt:", 0) == 0) {
        long d = std::stol(s.substr(6));
        return FieldPolicy::fixed(d);
    }
    throw Error(Error::Kind::InvalidArgument, "unknown field '" + s + "' (use q, qsqrt:D, auto)");
}

OutFormat parse_format_flag(const std::string& s) {
    if (s == "text") return OutFormat::Text;
    if (s == "json") return OutFormat::Json;
    if (s == "latex") return OutFormat::Latex;
    throw Error(Error::Kind::InvalidArgument, "unknown format '" + s + "'");
}

int thread_count() {
    const char* env = std::getenv("HOLOREC_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    return n > 0 ? n : 1;
}

std::vector<std::string> gather_inputs(const CliConfig& cfg) {
    std::vector<std::string> inputs = cfg.inline_args;
    if (!cfg.input_file.empty()) {
        std::ifstream in(cfg.input_file);
        if (!in) throw Error(Error::Kind::InvalidArgument, "cannot open " + cfg.input_file);
        std::string line;
        while (std::getline(in, line)) {
            // one input per nonempty line
            if (line.find_first_not_of(" \t\r") != std::string::npos) inputs.push_back(line);
        }
    }
    if (inputs.empty()) throw Error(Error::Kind::InvalidArgument, "no input given");
    return inputs;
}

json diagnostics_json(const std::vector<Diagnostic>& diags) {
    json arr = json::array();
    for (const auto& d : diags) {
        const char* kind = d.kind == Diagnostic::Kind::UnsupportedExtension ? "unsupported-extension"
                           : d.kind == Diagnostic::Kind::DiscardedCandidate ? "discarded-candidate"
                                                                            : "note";
        arr.push_back({{"kind", kind}, {"message", d.message}});
    }
    return arr;
}

void print_diagnostics_text(const std::vector<Diagnostic>& diags, std::ostream& os) {
    for (const auto& d : diags) {
        const char* kind = d.kind == Diagnostic::Kind::UnsupportedExtension ? "unsupported extension"
                           : d.kind == Diagnostic::Kind::DiscardedCandidate ? "discarded candidate"
                                                                            : "note";
        os << "# " << kind << ": " << d.message << "\n";
    }
}

int run_solve(const CliConfig& cfg) {
    OutFormat fmt = parse_format_flag(cfg.format);
    ParseContext ctx;
    ctx.policy = parse_field_flag(cfg.field);
    SolveReport report;
    bool parsed = false;
    try {
        Recurrence rec = parse_recurrence(gather_inputs(cfg).at(0), ctx);
        parsed = true;
        if (rec.index_shift() != 0)
            std::cerr << "note: zero boundary coefficients stripped; solutions are for the equation "
                         "reindexed by "
                      << rec.index_shift() << "\n";
        SolveOptions opts;
        opts.policy = ctx.policy;
        if (ctx.policy.mode == FieldPolicy::Mode::Auto && !ctx.discovered.is_rationals()) {
            // recurrence coefficients already fix the extension
            opts.policy = FieldPolicy::fixed(ctx.discovered.d);
        }
        opts.product_rule = !cfg.no_product_rule;
        opts.threads = thread_count();
        report = hypergeometric_solutions(rec, opts);
    } catch (const Error& e) {
        if (!parsed && e.kind == Error::Kind::UnsupportedExtension) {
            // the input needs an extension the field flag forbids: report it
            // as a diagnostic with an empty basis rather than a parse failure
            report.diagnostics.push_back({Diagnostic::Kind::UnsupportedExtension, e.what()});
        } else {
            throw;
        }
    }

    bool ext_only = report.basis.empty() &&
                    std::any_of(report.diagnostics.begin(), report.diagnostics.end(), [](const Diagnostic& d) {
                        return d.kind == Diagnostic::Kind::UnsupportedExtension;
                    });
    if (fmt == OutFormat::Json) {
        json j;
        json basis = json::array();
        for (const auto& t : report.basis) basis.push_back(json::parse(t.render(HypTerm::Format::Json)));
        j["basis"] = basis;
        j["diagnostics"] = diagnostics_json(report.diagnostics);
        std::cout << j.dump(2) << "\n";
    } else {
        print_diagnostics_text(report.diagnostics, std::cout);
        if (report.basis.empty()) {
            std::cout << "{}\n";
        } else {
            std::cout << "{";
            for (size_t i = 0; i < report.basis.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << report.basis[i].render(fmt == OutFormat::Latex ? HypTerm::Format::Latex
                                                                            : HypTerm::Format::Text);
            }
            std::cout << "}\n";
        }
    }
    return ext_only ? 2 : 0;
}

int run_generate(const CliConfig& cfg) {
    OutFormat fmt = parse_format_flag(cfg.format);
    ParseContext ctx;
    ctx.policy = parse_field_flag(cfg.field);
    std::vector<RatioNF> ratios;
    for (const auto& src : gather_inputs(cfg)) ratios.push_back(parse_term(src, ctx).term_ratio());
    Recurrence rec = sum_hyper_re(ratios);
    if (fmt == OutFormat::Json)
        std::cout << rec.to_json() << "\n";
    else
        std::cout << rec.to_string() << "\n";
    return 0;
}

int run_simplify(const CliConfig& cfg) {
    OutFormat fmt = parse_format_flag(cfg.format);
    ParseContext ctx;
    ctx.policy = parse_field_flag(cfg.field);
    RatFun r = parse_ratfun(gather_inputs(cfg).at(0), ctx);
    SimplifyOptions opts;
    opts.product_rule = !cfg.no_product_rule;
    HypTerm t = pochfactorsimp(r, opts);
    switch (fmt) {
        case OutFormat::Text: std::cout << t.render(HypTerm::Format::Text) << "\n"; break;
        case OutFormat::Latex: std::cout << t.render(HypTerm::Format::Latex) << "\n"; break;
        case OutFormat::Json: std::cout << t.render(HypTerm::Format::Json) << "\n"; break;
    }
    return 0;
}

int run_localtypes(const CliConfig& cfg) {
    OutFormat fmt = parse_format_flag(cfg.format);
    ParseContext ctx;
    ctx.policy = parse_field_flag(cfg.field);
    Recurrence rec = parse_recurrence(gather_inputs(cfg).at(0), ctx);
    FieldPolicy policy = ctx.policy;
    if (policy.mode == FieldPolicy::Mode::Auto && !ctx.discovered.is_rationals())
        policy = FieldPolicy::fixed(ctx.discovered.d);
    std::vector<Diagnostic> diags;
    auto types = local_types(rec, policy, &diags);
    if (fmt == OutFormat::Json) {
        json arr = json::array();
        for (const auto& t : types)
            arr.push_back({{"nu", t.nu},
                           {"c", t.c.to_string()},
                           {"b", t.b.to_string()},
                           {"b_rep", t.b_rep.to_string()},
                           {"field", t.field_of_c.to_string()}});
        json j;
        j["local_types"] = arr;
        j["diagnostics"] = diagnostics_json(diags);
        std::cout << j.dump(2) << "\n";
    } else {
        print_diagnostics_text(diags, std::cout);
        for (const auto& t : types)
            std::cout << "nu=" << t.nu << "  c=" << t.c << "  b=" << t.b << "  b_rep=" << t.b_rep
                      << "  field=" << t.field_of_c.to_string() << "\n";
        if (types.empty()) std::cout << "# no local types: no hypergeometric term solutions\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergeometric-term solutions of holonomic recurrence equations"};
    app.require_subcommand(1);

    CliConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--field", cfg.field, "coefficient field: q | qsqrt:D | auto")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format: text | json | latex")->capture_default_str();
        sub->add_flag("--no-product-rule", cfg.no_product_rule, "paper-parity mode without the product rule");
        sub->add_option("--input", cfg.input_file, "read input from a file (one entry per line)");
        // expressions are free-form (may begin with '-'): taken from the
        // remaining arguments after the flags
        sub->allow_extras();
    };

    CLI::App* solve = app.add_subcommand("solve", "basis of hypergeometric term solutions");
    add_common(solve);
    CLI::App* generate = app.add_subcommand("generate", "least-order recurrence for given terms");
    add_common(generate);
    CLI::App* simplify = app.add_subcommand("simplify", "closed form of prod r(k)");
    add_common(simplify);
    CLI::App* localtypes = app.add_subcommand("localtypes", "local types at infinity");
    add_common(localtypes);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    for (CLI::App* sub : {solve, generate, simplify, localtypes}) {
        if (sub->parsed()) {
            for (auto& extra : sub->remaining()) cfg.inline_args.push_back(extra);
        }
    }

    try {
        if (solve->parsed()) return run_solve(cfg);
        if (generate->parsed()) return run_generate(cfg);
        if (simplify->parsed()) return run_simplify(cfg);
        if (localtypes->parsed()) return run_localtypes(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
