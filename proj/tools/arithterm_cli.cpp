#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "arithterm/arithterm.hpp"

using namespace arithterm;

namespace {

enum Exit { kOk = 0, kUsage = 2, kBudget = 3, kAssertion = 4, kValidation = 5 };

struct RunConfig {
    std::uint64_t bit_budget = kDefaultBitBudget;
    std::uint64_t enum_budget = kDefaultEnumerationBudget;
    unsigned parallel = 1;
    std::string out;
    std::string format = "canonical";
};

int exit_code(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::BitBudgetExceeded:
    case ErrorKind::EnumerationBudgetExceeded: return kBudget;
    case ErrorKind::ExactDivisionViolation:
    case ErrorKind::AssertionFailure: return kAssertion;
    default: return kUsage;
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

std::vector<Nat> parse_args(const std::vector<std::string>& raw) {
    std::vector<Nat> out;
    for (const auto& s : raw) out.push_back(parse_nat(s));
    return out;
}

gallery::EvalOptions eval_options(const RunConfig& cfg, const std::string& variant, bool oracle_subst) {
    gallery::EvalOptions o;
    o.variant = variant;
    o.oracle_subst = oracle_subst;
    o.bit_budget = cfg.bit_budget;
    return o;
}

int cmd_eval(const RunConfig& cfg, const std::string& fn, const std::vector<std::string>& raw,
             const std::string& strategy, const std::string& variant, bool oracle_subst, bool report) {
    auto args = parse_args(raw);
    if (strategy == "oracle") {
        std::cout << gallery::oracle_eval(fn, args) << "\n";
        return kOk;
    }
    if (strategy == "spec-count") {
        std::cout << gallery::spec_count_eval(fn, args, cfg.enum_budget) << "\n";
        return kOk;
    }
    if (strategy != "term") throw DomainError("unknown strategy: " + strategy);
    auto v = gallery::evaluate(fn, args, eval_options(cfg, variant, oracle_subst));
    std::cout << v.value << "\n";
    if (report) {
        std::cout << "peak_bits " << v.report.peak_bits << "\n";
        for (const auto& r : v.report.log) std::cout << r.kind << " " << r.site << " " << (r.ok ? "ok" : "FAIL") << "\n";
    }
    return v.report.assertions_ok() ? kOk : kAssertion;
}

int cmd_show(const RunConfig& cfg, const std::string& fn, const std::string& variant, unsigned m, bool metrics) {
    const auto& e = gallery::lookup(fn);
    gallery::TermOptions o;
    o.variant = variant;
    o.m = m;
    Term t = gallery::term_of(fn, o);
    std::string text = print_term(t, parse_format(cfg.format), e.params) + "\n";
    if (metrics) {
        auto sm = size_metrics(t);
        text += "nodes " + std::to_string(sm.nodes) + "\n";
        text += "distinct_nodes " + std::to_string(sm.distinct_nodes) + "\n";
        text += "depth " + std::to_string(sm.depth) + "\n";
        text += "max_const_bits " + std::to_string(sm.max_const_bits) + "\n";
    }
    write_output(cfg.out, text);
    return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& fn, const std::string& range, const std::string& strategy,
               const std::string& variant, bool oracle_subst, bool skip_out_of_domain) {
    auto grid = gallery::parse_range(range);
    auto s = gallery::parse_strategy(strategy);
    if (skip_out_of_domain && s != gallery::Strategy::Identity) grid = gallery::in_domain(fn, grid);
    gallery::VerifyOptions o;
    o.eval = eval_options(cfg, variant, oracle_subst);
    o.enum_budget = cfg.enum_budget;
    o.parallel = cfg.parallel;
    auto rep = gallery::verify_range(fn, grid, s, o);
    if (!cfg.out.empty()) write_output(cfg.out, gallery::to_csv(rep));
    std::cout << rep.summary() << "\n";
    return rep.all_match() ? kOk : kValidation;
}

int cmd_compile(const RunConfig& cfg, const std::string& spec_path, const std::string& validate_range, bool force) {
    CountingSpec spec = load_spec(spec_path);
    bool refused = false;
    if (!validate_range.empty()) {
        for (const auto& b : gallery::parse_range(validate_range)) {
            if (b.size() != spec.vars.size())
                throw DomainError("--validate-w needs " + std::to_string(spec.vars.size()) + " coordinates");
            auto r = validate_bounds(spec, b, 1'000'000, cfg.bit_budget);
            if (!r.ok()) {
                std::cerr << "bounds fail at " << gallery::csv_args(b) << ": "
                          << (r.note.empty() ? "block value can reach 2^w" : r.note) << "\n";
                refused = true;
            }
        }
    }
    if (refused && !force) {
        std::cerr << "refusing to emit; pass --force to override\n";
        return kValidation;
    }
    auto cc = compile_count(spec);
    write_output(cfg.out, print_term(cc.count_term, parse_format(cfg.format), spec.vars) + "\n");
    return kOk;
}

int cmd_bench(const RunConfig& cfg, const std::string& fn, const std::string& range, const std::string& variant) {
    auto rows = gallery::bench_range(fn, gallery::parse_range(range), eval_options(cfg, variant, false));
    write_output(cfg.out, gallery::bench_csv(rows));
    return kOk;
}

int cmd_bfile(const RunConfig& cfg, const std::string& fn, const std::string& range, const std::string& variant) {
    write_output(cfg.out, gallery::bfile(fn, gallery::parse_range(range), eval_options(cfg, variant, false)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form arithmetic terms for number-theoretic functions"};
    app.require_subcommand(1);
    RunConfig cfg;
    if (const char* env = std::getenv("ARITHTERM_BIT_BUDGET"); env && *env) {
        try {
            cfg.bit_budget = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "bad ARITHTERM_BIT_BUDGET: " << env << "\n";
            return kUsage;
        }
    }
    std::string spec_dir_flag;
    app.add_option("--bit-budget", cfg.bit_budget, "Largest intermediate, in bits")->check(CLI::PositiveNumber);
    app.add_option("--enum-budget", cfg.enum_budget, "Largest enumerated box, in points")->check(CLI::PositiveNumber);
    app.add_option("--spec-dir", spec_dir_flag, "Directory of bundled spec files");

    std::string fn, variant, strategy = "term", range, spec_path, validate_range;
    std::vector<std::string> raw_args;
    bool report = false, metrics = false, oracle_subst = false, force = false, skip_domain = false;
    unsigned m = 2;

    auto* eval = app.add_subcommand("eval", "Evaluate a function's term");
    eval->add_option("fn", fn)->required();
    eval->add_option("args", raw_args);
    eval->add_option("--strategy", strategy, "term, oracle or spec-count");
    eval->add_option("--variant", variant);
    eval->add_flag("--oracle-subst", oracle_subst, "Answer tagged inner calls from oracles");
    eval->add_flag("--report", report, "Print peak bit size and assertion log");

    auto* show = app.add_subcommand("show", "Print a function's term");
    show->add_option("fn", fn)->required();
    show->add_option("--format", cfg.format, "canonical, infix, latex or appendix");
    show->add_option("--variant", variant);
    show->add_option("--m", m, "Degree for root")->check(CLI::Range(2, 16));
    show->add_flag("--metrics", metrics);
    show->add_option("--out", cfg.out);

    auto* verify = app.add_subcommand("verify", "Check a function over a range");
    verify->add_option("fn", fn)->required();
    verify->add_option("--range", range, "a..b, comma separated per argument")->required();
    std::string vstrategy = "oracle-vs-term";
    verify->add_option("--strategy", vstrategy, "oracle-vs-term, oracle-vs-spec-count or identity");
    verify->add_option("--variant", variant);
    verify->add_option("--out", cfg.out, "CSV report path");
    verify->add_option("--parallel", cfg.parallel)->check(CLI::PositiveNumber);
    verify->add_flag("--oracle-subst", oracle_subst);
    verify->add_flag("--in-domain", skip_domain, "Drop arguments outside the domain");

    auto* compile = app.add_subcommand("compile", "Compile a counting spec to a term");
    compile->add_option("--spec", spec_path)->required();
    compile->add_option("--out", cfg.out);
    compile->add_option("--format", cfg.format);
    compile->add_option("--validate-w", validate_range, "Check the width bound over a binding range");
    compile->add_flag("--force", force, "Emit even if validation fails");

    auto* bench = app.add_subcommand("bench", "Time term evaluation over a range");
    bench->add_option("fn", fn)->required();
    bench->add_option("--range", range)->required();
    bench->add_option("--variant", variant);
    bench->add_option("--out", cfg.out);

    auto* exp = app.add_subcommand("export", "Export a sequence");
    exp->require_subcommand(1);
    auto* bf = exp->add_subcommand("bfile", "Write 'n value' lines");
    bf->add_option("fn", fn)->required();
    bf->add_option("--range", range)->required();
    bf->add_option("--variant", variant);
    bf->add_option("--out", cfg.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (!spec_dir_flag.empty()) set_spec_dir(spec_dir_flag);
        if (*eval) return cmd_eval(cfg, fn, raw_args, strategy, variant, oracle_subst, report);
        if (*show) return cmd_show(cfg, fn, variant, m, metrics);
        if (*verify) return cmd_verify(cfg, fn, range, vstrategy, variant, oracle_subst, skip_domain);
        if (*compile) return cmd_compile(cfg, spec_path, validate_range, force);
        if (*bench) return cmd_bench(cfg, fn, range, variant);
        if (*bf) return cmd_bfile(cfg, fn, range, variant);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
