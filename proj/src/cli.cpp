#include "lforge/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lforge/bounds.hpp"
#include "lforge/cache.hpp"
#include "lforge/cyclotomic.hpp"
#include "lforge/error.hpp"
#include "lforge/modarith.hpp"
#include "lforge/padic.hpp"
#include "lforge/parallel.hpp"
#include "lforge/primitive.hpp"
#include "lforge/sequences.hpp"
#include "lforge/suites.hpp"

namespace lforge::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
    std::string cache_path;
    std::optional<uint64_t> budget;
    std::optional<uint64_t> budget_ms;
    uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_path;
    std::string format;
    bool timing = false;
};

std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string s;
        for (const auto& item : v) {
            if (!s.empty()) s += ';';
            s += cell(item);
        }
        return s;
    }
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

void write_csv(std::ostream& os, const std::vector<std::string>& columns, const std::vector<Json>& rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            os << (i ? "," : "") << csv_escape(row.contains(columns[i]) ? cell(row.at(columns[i])) : "");
        }
        os << '\n';
    }
}

std::string factor_list(const Factorization& f) {
    std::string s;
    for (const auto& pp : f.factors) {
        if (!s.empty()) s += '*';
        s += to_dec(pp.prime);
        if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
    }
    return s;
}

Json factor_json(const Factorization& f) {
    Json fs = Json::array();
    for (const auto& pp : f.factors) fs.push_back(Json::array({to_dec(pp.prime), pp.exponent}));
    return fs;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

class Runner {
public:
    Runner(Common common, std::ostream& out, std::ostream& err) : c_(std::move(common)), out_(out), err_(err) {
        if (c_.cache_path.empty()) {
            if (const char* env = std::getenv("LFORGE_CACHE")) c_.cache_path = env;
        }
        if (!c_.budget) {
            if (const char* env = std::getenv("LFORGE_BUDGET")) {
                char* end = nullptr;
                const unsigned long long v = std::strtoull(env, &end, 10);
                if (end == env || *end != '\0' || v == 0) {
                    throw Error(ErrorKind::parse, "LFORGE_BUDGET must be a positive integer, got '" +
                                                      std::string(env) + "'");
                }
                c_.budget = v;
            }
        }
        budget_.rho_iterations = c_.budget.value_or(kDefaultRhoIterations);
        budget_.seed = c_.seed;
        if (c_.budget_ms) budget_.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*c_.budget_ms);
        if (!c_.cache_path.empty()) {
            cache_ = std::make_unique<FactorCache>(c_.cache_path, &err_);
            budget_.memo = cache_.get();
        }
        if (c_.threads == 0) c_.threads = default_threads();
    }

    const FactorBudget& budget() const { return budget_; }
    unsigned threads() const { return c_.threads; }
    bool timing() const { return c_.timing; }

    bool json(bool default_json) const { return c_.format.empty() ? default_json : c_.format == "json"; }

    void emit(const std::string& text) {
        if (c_.out_path.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(c_.out_path);
        f << text;
        if (!f) throw Error(ErrorKind::parse, "cannot write " + c_.out_path);
    }

    void emit_table(bool default_json, Json head, const std::vector<std::string>& columns,
                    const std::vector<Json>& rows) {
        std::ostringstream os;
        if (json(default_json)) {
            Json doc{{"schema", "1"}};
            for (auto& [k, v] : head.items()) doc[k] = v;
            doc["rows"] = rows;
            os << doc.dump(2) << '\n';
        } else {
            write_csv(os, columns, rows);
        }
        emit(os.str());
    }

private:
    Common c_;
    std::ostream& out_;
    std::ostream& err_;
    FactorBudget budget_;
    std::unique_ptr<FactorCache> cache_;
};

std::pair<int64_t, int64_t> parse_ab(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::parse, "--ab must be a,b");
    try {
        std::size_t used = 0;
        const std::string sa = text.substr(0, comma), sb = text.substr(comma + 1);
        const int64_t a = std::stoll(sa, &used);
        if (used != sa.size()) throw std::invalid_argument("a");
        const int64_t b = std::stoll(sb, &used);
        if (used != sb.size()) throw std::invalid_argument("b");
        return {a, b};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::parse, "bad integers in --ab '" + text + "'");
    }
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--cache", c.cache_path, "factor cache file (JSON lines); env LFORGE_CACHE");
    sub->add_option("--budget", c.budget, "rho iterations per composite; env LFORGE_BUDGET")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget-ms", c.budget_ms, "wall-clock cap on factoring, milliseconds");
    sub->add_option("--seed", c.seed, "seed for rho starting points and sampling");
    sub->add_option("--threads", c.threads, "worker threads (default: LFORGE_THREADS or all cores)");
    sub->add_option("--out", c.out_path, "write the report here instead of stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--timing", c.timing, "record wall_ms in suite reports");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lucas and Lehmer numbers: sequences, cyclotomic values, primitive divisors, p-adic orders"};
    app.name("lforge");
    app.require_subcommand(1);

    Common common;
    std::string pair_text, ab_text, which = "thm1", law_text, suite_text, kind = "lehmer";
    uint64_t n = 0, p = 0, p_max = 0;
    std::optional<uint64_t> from_opt;
    int64_t a = 2;
    double log_alpha = 0.0, divisor = kThm1Divisor;
    bool factor = false, have_log_alpha = false;
    int digits = 2;
    SuiteParams sp;
    int64_t a_max = 0;

    auto* seq = app.add_subcommand("seq", "u~_n (or u_n with --kind lucas) for 0..N as CSV");
    seq->add_option("--pair", pair_text, "R,Q")->required();
    seq->add_option("--n", n, "last index")->required();
    seq->add_option("--from", from_opt, "first index (default 0)");
    seq->add_option("--kind", kind, "lehmer or lucas")->check(CLI::IsMember({"lehmer", "lucas"}));
    add_common(seq, common);

    auto* cyclo = app.add_subcommand("cyclo", "Phi_n(alpha, beta), optionally factored");
    cyclo->add_option("--pair", pair_text, "R,Q")->required();
    cyclo->add_option("--n", n, "index")->required();
    cyclo->add_flag("--factor", factor, "factor the value under the budget");
    add_common(cyclo, common);

    auto* primdiv = app.add_subcommand("primdiv", "primitive prime divisors, or a law check with --law");
    primdiv->add_option("--pair", pair_text, "R,Q")->required();
    primdiv->add_option("--n", n, "last index")->required();
    primdiv->add_option("--from", from_opt, "first index (default: --n)");
    primdiv->add_option("--law", law_text, "carmichael, bhv or zsigmondy")
        ->check(CLI::IsMember({"carmichael", "bhv", "zsigmondy"}));
    add_common(primdiv, common);

    auto* rank = app.add_subcommand("rank", "rank of apparition of odd primes");
    rank->add_option("--pair", pair_text, "R,Q")->required();
    auto* rank_p = rank->add_option("--p", p, "one odd prime");
    rank->add_option("--p-max", p_max, "every odd prime up to this bound not dividing Q")->excludes(rank_p);
    add_common(rank, common);

    auto* ordp = app.add_subcommand("ordp", "p-adic order of u~_n, or of a^n - b^n with --ab");
    auto* ordp_pair = ordp->add_option("--pair", pair_text, "R,Q");
    ordp->add_option("--ab", ab_text, "a,b for a^n - b^n")->excludes(ordp_pair);
    ordp->add_option("--p", p, "prime")->required();
    ordp->add_option("--n", n, "last index")->required();
    ordp->add_option("--from", from_opt, "first index (default: --n)");
    add_common(ordp, common);

    auto* bound = app.add_subcommand("bound", "evaluate one bound function");
    bound->add_option("--which", which, "thm1, thm2, lemma8 or classical")
        ->check(CLI::IsMember({"thm1", "thm2", "lemma8", "classical"}));
    bound->add_option("--n", n, "n")->required();
    bound->add_option("--p", p, "prime (thm2, lemma8)");
    bound->add_option("--a", a, "a (thm2)");
    auto* la = bound->add_option("--log-alpha", log_alpha, "log|alpha| (lemma8)");
    bound->add_option("--pair", pair_text, "R,Q, supplies log|alpha| for lemma8")->excludes(la);
    bound->add_option("--divisor", divisor, "thm1 divisor (default 104)");
    bound->add_option("--digits", digits, "decimals printed")->check(CLI::Range(0, 17));
    add_common(bound, common);

    auto* harness = app.add_subcommand("harness", "largest prime factor of Phi_n against the n-th bounds");
    harness->add_option("--pair", pair_text, "R,Q")->required();
    harness->add_option("--n-max", n, "last index (first is 16)")->required();
    add_common(harness, common);

    auto* verify = app.add_subcommand("verify", "run a verification suite and emit a JSON report");
    verify->add_option("--suite", suite_text, "identity, lemma1, lte, gcd, bhv, carmichael, zsigmondy, rank, thm2")
        ->required()
        ->check(CLI::IsMember(
            {"identity", "lemma1", "lte", "gcd", "bhv", "carmichael", "zsigmondy", "rank", "thm2"}));
    verify->add_option("--r-max", sp.r_max, "grid bound on |R|");
    verify->add_option("--q-max", sp.q_max, "grid bound on |Q|");
    verify->add_option("--n-min", sp.n_min, "first index (0: suite default)");
    verify->add_option("--n-max", sp.n_max, "last index (0: suite default)");
    verify->add_option("--a-max", a_max, "integer pairs a <= a_max (0: suite default)");
    verify->add_option("--p-min", sp.p_min, "smallest prime (0: suite default)");
    verify->add_option("--p-max", sp.p_max, "largest prime (0: suite default)");
    verify->add_option("--samples", sp.samples, "gcd suite samples per pair");
    add_common(verify, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Runner run(common, out, err);
        have_log_alpha = !la->empty();

        if (*seq) {
            const LehmerPair pair = parse_pair(pair_text);
            const uint64_t first = from_opt.value_or(0);
            auto terms = lehmer_terms(pair, n);
            if (kind == "lucas") {
                const BigInt root = lucas_u(pair, 2);  // u_2 = sqrt(R); throws for non-Lucas pairs
                for (uint64_t k = 0; k <= n; k += 2) terms[k] *= root;
            }
            std::vector<Json> rows;
            for (uint64_t k = first; k <= n; ++k) {
                rows.push_back(Json{{"n", k}, {"value", to_dec(terms[k])}, {"digits", decimal_digits(terms[k])}});
            }
            run.emit_table(false, Json{{"pair", pair.to_string()}, {"kind", kind}}, {"n", "value", "digits"}, rows);
            return kOk;
        }

        if (*cyclo) {
            const LehmerPair pair = parse_pair(pair_text);
            const CycloValue v = cyclo_value(pair, n);
            Json row{{"n", n}, {"value", to_dec(v.value)}, {"digits", decimal_digits(v.value)}};
            std::vector<std::string> cols{"n", "value", "digits"};
            int code = kOk;
            if (factor) {
                if (sgn(v.value) == 0) throw Error(ErrorKind::domain, "cyclo: cannot factor zero");
                const Factorization f = factorize(v.value, run.budget());
                const bool json = run.json(false);
                row["factors"] = json ? factor_json(f) : Json(factor_list(f));
                row["residual"] = f.complete() ? Json(nullptr) : Json(to_dec(f.residual));
                row["status"] = f.complete() ? "complete" : "partial";
                cols.insert(cols.end(), {"factors", "residual", "status"});
                if (!f.complete()) code = kIncomplete;
            }
            run.emit_table(false, Json{{"pair", pair.to_string()}}, cols, {row});
            return code;
        }

        if (*primdiv) {
            const LehmerPair pair = parse_pair(pair_text);
            const uint64_t first = from_opt.value_or(n);
            if (first > n) throw Error(ErrorKind::domain, "primdiv: --from exceeds --n");
            std::vector<Json> rows;
            int code = kOk;
            if (!law_text.empty()) {
                const Law law = parse_law(law_text);
                for (const auto& r : check_range(pair, first, n, law, run.budget(), run.threads())) {
                    rows.push_back(Json{{"n", r.n},
                                        {"applies", r.applies},
                                        {"verdict", std::string(to_string(r.verdict))},
                                        {"threshold", to_dec(r.threshold)},
                                        {"witness", to_dec(r.witness)},
                                        {"primitive", r.has_primitive},
                                        {"method", std::string(r.method)}});
                    if (!r.applies) continue;
                    if (r.verdict == Verdict::fail) code = kViolations;
                    if (r.verdict == Verdict::incomplete && code == kOk) code = kIncomplete;
                }
                run.emit_table(true, Json{{"pair", pair.to_string()}, {"law", law_text}},
                               {"n", "applies", "verdict", "threshold", "witness", "primitive", "method"}, rows);
                return code;
            }
            auto reports = parallel_map(n - first + 1, run.threads(),
                                        [&](std::size_t i) { return primitive_divisors(pair, first + i, run.budget()); });
            for (const auto& r : reports) {
                Json primes = Json::array();
                for (const auto& q : r.primitive_primes) primes.push_back(to_dec(q));
                const bool complete = r.factor_status == FactorStatus::complete;
                rows.push_back(Json{{"n", r.n},
                                    {"primitive", r.has_primitive},
                                    {"primes", std::move(primes)},
                                    {"method", std::string(to_string(r.method))},
                                    {"status", complete ? "complete" : "partial"}});
                if (!complete) code = kIncomplete;
            }
            run.emit_table(true, Json{{"pair", pair.to_string()}}, {"n", "primitive", "primes", "method", "status"},
                           rows);
            return code;
        }

        if (*rank) {
            const LehmerPair pair = parse_pair(pair_text);
            const PairClass cls = classify_pair(pair);
            std::vector<uint64_t> primes;
            if (p_max > 0) {
                for (uint32_t q : modarith::primes_upto(static_cast<uint32_t>(std::min<uint64_t>(p_max, UINT32_MAX)))) {
                    if (q > 2 && modarith::reduce_signed(pair.q(), q) != 0) primes.push_back(q);
                }
            } else if (p > 0) {
                primes.push_back(p);
            } else {
                throw Error(ErrorKind::parse, "rank: give --p or --p-max");
            }
            auto recs = parallel_map(primes.size(), run.threads(),
                                     [&](std::size_t i) { return rank_of_apparition(pair, cls, primes[i]); });
            std::vector<Json> rows;
            int code = kOk;
            for (const auto& r : recs) {
                rows.push_back(Json{{"p", r.p}, {"ell", r.ell}, {"symbol", r.symbol}, {"divides_target", r.divides_target}});
                if (!r.divides_target) code = kViolations;
            }
            run.emit_table(false, Json{{"pair", pair.to_string()}}, {"p", "ell", "symbol", "divides_target"}, rows);
            return code;
        }

        if (*ordp) {
            const uint64_t first = from_opt.value_or(n);
            if (first > n) throw Error(ErrorKind::domain, "ordp: --from exceeds --n");
            std::vector<Json> rows;
            Json head;
            if (!ab_text.empty()) {
                const auto [aa, bb] = parse_ab(ab_text);
                head = Json{{"ab", ab_text}};
                for (uint64_t k = first; k <= n; ++k) {
                    const OrdResult r = ord_power_difference(aa, bb, p, k);
                    rows.push_back(Json{{"p", p}, {"n", k}, {"ord", r.ord.infinite() ? Json("inf") : Json(*r.ord.value)},
                                        {"method", std::string(to_string(r.method))}});
                }
            } else {
                if (pair_text.empty()) throw Error(ErrorKind::parse, "ordp: give --pair or --ab");
                const LehmerPair pair = parse_pair(pair_text);
                head = Json{{"pair", pair.to_string()}};
                for (uint64_t k = first; k <= n; ++k) {
                    const OrdResult r = ord_u(pair, p, k);
                    rows.push_back(Json{{"p", p}, {"n", k}, {"ord", r.ord.infinite() ? Json("inf") : Json(*r.ord.value)},
                                        {"method", std::string(to_string(r.method))}});
                }
            }
            run.emit_table(false, head, {"p", "n", "ord", "method"}, rows);
            return kOk;
        }

        if (*bound) {
            std::ostringstream os;
            if (which == "classical") {
                const ClassicalBounds cb = classical_bounds(n);
                if (run.json(false)) {
                    os << Json{{"schema", "1"}, {"n", n}, {"carmichael", cb.carmichael}, {"zsigmondy", cb.zsigmondy}}.dump()
                       << '\n';
                } else {
                    os << "carmichael,zsigmondy\n" << cb.carmichael << ',' << cb.zsigmondy << '\n';
                }
                run.emit(os.str());
                return kOk;
            }
            double value = 0.0;
            if (which == "thm1") {
                value = thm1_bound(n, divisor);
            } else if (which == "thm2") {
                value = thm2_bound(p, a, n);
            } else {
                double la_value = log_alpha;
                if (!pair_text.empty()) {
                    la_value = log_abs_alpha(parse_pair(pair_text));
                } else if (!have_log_alpha) {
                    throw Error(ErrorKind::parse, "bound --which lemma8 needs --log-alpha or --pair");
                }
                value = lemma8_bound(p, la_value, n);
            }
            if (run.json(false)) {
                os << Json{{"schema", "1"}, {"which", which}, {"value", value}}.dump() << '\n';
            } else {
                os << fixed(value, digits) << '\n';
            }
            run.emit(os.str());
            return kOk;
        }

        if (*harness) {
            const LehmerPair pair = parse_pair(pair_text);
            const auto rows_in = thm1_harness(pair, n, run.budget(), run.threads());
            std::vector<Json> rows;
            int code = kOk;
            for (const auto& r : rows_in) {
                rows.push_back(Json{{"n", r.n},
                                    {"phi_digits", r.phi_digits},
                                    {"gpf", to_dec(r.gpf)},
                                    {"exact", r.exact},
                                    {"thm1", fixed(r.thm1, 6)},
                                    {"ratio", fixed(r.ratio, 6)},
                                    {"status", r.status == BoundStatus::exact ? "exact" : "lower-bound"}});
                if (r.exact && r.n > 30 && !r.meets_carmichael) code = kViolations;
                if (!r.exact && code == kOk) code = kIncomplete;
            }
            run.emit_table(false, Json{{"pair", pair.to_string()}},
                           {"n", "phi_digits", "gpf", "exact", "thm1", "ratio", "status"}, rows);
            return code;
        }

        if (*verify) {
            sp.a_max = a_max;
            sp.seed = common.seed;
            sp.budget = run.budget();
            sp.threads = run.threads();
            const SuiteReport rep = verify_suite(parse_suite(suite_text), sp);
            run.emit(rep.to_json(run.timing()).dump(2) + "\n");
            err << rep.suite << ": " << rep.cases << " cases, " << rep.violations.size() << " violations, "
                << rep.skipped_budget << " skipped, " << rep.wall_ms << " ms\n";
            if (!rep.violations.empty()) return kViolations;
            if (rep.skipped_budget > 0) return kIncomplete;
            return kOk;
        }
    } catch (const Error& e) {
        err << "lforge: " << to_string(e.kind()) << ": " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::budget: return kIncomplete;
            case ErrorKind::internal_invariant:
            case ErrorKind::search_exhausted: return kViolations;
            default: return kUsage;
        }
    }
    err << app.help();
    return kUsage;
}

}  // namespace lforge::cli
