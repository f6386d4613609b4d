#include "lforge/primitive.hpp"

#include <numeric>

#include "lforge/cyclotomic.hpp"
#include "lforge/error.hpp"
#include "lforge/modarith.hpp"
#include "lforge/parallel.hpp"
#include "lforge/sequences.hpp"

namespace lforge {

namespace {

bool lemma1_excluded(uint64_t n) { return n <= 4 || n == 6 || n == 12; }

void require_coprime(const LehmerPair& pair, const char* who) {
    if (!pair.coprime()) {
        throw Error(ErrorKind::invalid_pair,
                    std::string(who) + ": pair " + pair.to_string() + " is not coprime; normalize_pair first");
    }
}

// |Phi_n| stripped of one factor of the special prime and of every prime it
// shares with rs.
BigInt strip_non_primitive(const LehmerPair& pair, uint64_t n, BigInt value) {
    value = abs(value);
    const uint64_t sp = special_prime(n);
    if (sp > 1 && mpz_divisible_ui_p(value.get_mpz_t(), sp)) mpz_divexact_ui(value.get_mpz_t(), value.get_mpz_t(), sp);
    const BigInt rs = abs(pair.rs());
    BigInt g;
    for (;;) {
        mpz_gcd(g.get_mpz_t(), value.get_mpz_t(), rs.get_mpz_t());
        if (g == 1) break;
        mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), g.get_mpz_t());
    }
    return value;
}

}  // namespace

uint64_t special_prime(uint64_t n) {
    if (n == 0) throw Error(ErrorKind::domain, "special_prime: n must be positive");
    return modarith::greatest_prime_factor_u64(n / std::gcd(n, uint64_t{3}));
}

std::string_view to_string(PrimeLabel label) {
    switch (label) {
        case PrimeLabel::special: return "special";
        case PrimeLabel::plus_one: return "plus-one";
        case PrimeLabel::minus_one: return "minus-one";
        case PrimeLabel::violation: return "violation";
    }
    return "unknown";
}

std::string_view to_string(PrimDivMethod m) { return m == PrimDivMethod::fast ? "fast" : "definitional"; }

std::string_view to_string(Law law) {
    switch (law) {
        case Law::carmichael: return "carmichael";
        case Law::bhv: return "bhv";
        case Law::zsigmondy: return "zsigmondy";
    }
    return "unknown";
}

Law parse_law(std::string_view name) {
    if (name == "carmichael") return Law::carmichael;
    if (name == "bhv") return Law::bhv;
    if (name == "zsigmondy") return Law::zsigmondy;
    throw Error(ErrorKind::parse, "unknown law '" + std::string(name) + "'");
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::incomplete: return "incomplete";
    }
    return "unknown";
}

bool PrimeClassification::has_violation() const {
    for (const auto& pc : primes) {
        if (pc.label == PrimeLabel::violation) return true;
    }
    return false;
}

PrimeClassification classify_prime_factors(const LehmerPair& pair, uint64_t n, const FactorBudget& budget) {
    require_coprime(pair, "classify_prime_factors");
    if (lemma1_excluded(n)) {
        throw Error(ErrorKind::domain, "classify_prime_factors: n = " + std::to_string(n) +
                                           " is excluded (need n > 4, n not 6 or 12)");
    }
    const CycloValue phi = cyclo_value(pair, n);
    const Factorization f = factorize(abs(phi.value), budget);
    const BigInt special = big_from_u64(special_prime(n));
    const BigInt bn = big_from_u64(n);

    PrimeClassification out;
    out.n = n;
    out.residual = f.residual;
    out.status = f.status;
    for (const auto& pp : f.factors) {
        PrimeClass pc{pp.prime, pp.exponent, PrimeLabel::violation};
        if (pp.prime == special) {
            pc.label = pp.exponent <= 1 ? PrimeLabel::special : PrimeLabel::violation;
        } else {
            BigInt residue = pp.prime % bn;
            if (residue == 1) {
                pc.label = PrimeLabel::plus_one;
            } else if (residue == bn - 1) {
                pc.label = PrimeLabel::minus_one;
            }
        }
        out.primes.push_back(std::move(pc));
    }
    return out;
}

bool is_primitive_prime(const LehmerPair& pair, const BigInt& rs, const BigInt& q, uint64_t n) {
    if (n < 3) throw Error(ErrorKind::domain, "is_primitive_prime: n must be >= 3");
    if (mpz_divisible_p(rs.get_mpz_t(), q.get_mpz_t())) return false;
    if (mpz_divisible_p(big_from_i64(pair.q()).get_mpz_t(), q.get_mpz_t())) return false;
    if (lehmer_u_mod(pair, n, q) != 0) return false;
    // q | u~_m exactly when rank(q) | m, so rank(q) = n iff q misses every u~_{n/r}
    for (auto [r, e] : modarith::factor_u64(n)) {
        (void)e;
        if (lehmer_u_mod(pair, n / r, q) == 0) return false;
    }
    return true;
}

PrimDivReport primitive_divisors(const LehmerPair& pair, uint64_t n, const FactorBudget& budget) {
    require_coprime(pair, "primitive_divisors");
    if (n < 3) throw Error(ErrorKind::domain, "primitive_divisors: n must be >= 3");
    const CycloValue phi = cyclo_value(pair, n);
    const Factorization f = factorize(abs(phi.value), budget);
    const BigInt rs = pair.rs();

    PrimDivReport rep;
    rep.n = n;
    rep.method = PrimDivMethod::definitional;
    rep.factor_status = f.status;
    for (const auto& pp : f.factors) {
        if (is_primitive_prime(pair, rs, pp.prime, n)) rep.primitive_primes.push_back(pp.prime);
    }
    rep.has_primitive = !rep.primitive_primes.empty();
    return rep;
}

PrimDivReport primitive_report_fast(const LehmerPair& pair, uint64_t n) {
    require_coprime(pair, "has_primitive_divisor");
    if (n < 3) throw Error(ErrorKind::domain, "has_primitive_divisor: n must be >= 3");
    if (lemma1_excluded(n)) return primitive_divisors(pair, n);
    PrimDivReport rep;
    rep.n = n;
    rep.method = PrimDivMethod::fast;
    rep.has_primitive = strip_non_primitive(pair, n, cyclo_value(pair, n).value) > 1;
    return rep;
}

bool has_primitive_divisor(const LehmerPair& pair, uint64_t n) { return primitive_report_fast(pair, n).has_primitive; }

std::vector<RangeRow> check_range(const LehmerPair& pair, uint64_t n_from, uint64_t n_to, Law law,
                                  const FactorBudget& budget, unsigned threads) {
    require_coprime(pair, "check_range");
    if (n_from < 3) throw Error(ErrorKind::domain, "check_range: n_from must be >= 3");
    const PairClass cls = classify_pair(pair);
    if (law == Law::carmichael && !cls.is_real) {
        throw Error(ErrorKind::domain, "check_range: carmichael needs a real pair, got " + pair.to_string());
    }
    if (law == Law::zsigmondy && !(cls.is_integer && pair.q() > 0)) {
        throw Error(ErrorKind::domain,
                    "check_range: zsigmondy needs integers a > b > 0, got pair " + pair.to_string());
    }
    if (n_to < n_from) return {};

    const int64_t a = (cls.sqrt_r + cls.sqrt_s) / 2;
    const int64_t b = (cls.sqrt_r - cls.sqrt_s) / 2;

    return parallel_map(n_to - n_from + 1, threads, [&](std::size_t i) {
        const uint64_t n = n_from + i;
        RangeRow row;
        row.n = n;
        row.has_primitive = has_primitive_divisor(pair, n);
        switch (law) {
            case Law::bhv:
                row.applies = n > 30;
                row.threshold = 0;
                row.method = "primitive";
                row.verdict = row.has_primitive ? Verdict::pass : Verdict::fail;
                return row;
            case Law::carmichael:
                row.applies = n > 12;
                row.threshold = big_from_u64(n - 1);
                break;
            case Law::zsigmondy:
                row.applies = n > 2;
                row.threshold = big_from_u64(n + 1);
                break;
        }
        if (row.has_primitive) {
            // a primitive divisor is +-1 mod n (1 mod n for integer pairs)
            row.method = "primitive";
            row.witness = row.threshold;
            row.verdict = Verdict::pass;
            return row;
        }
        row.method = "factor";
        const Factorization f = law == Law::zsigmondy ? factor_power_difference(a, b, n, budget)
                                                      : factorize(lehmer_u(pair, n), budget);
        const GpfResult gpf = greatest_prime_factor(f);
        row.witness = gpf.value;
        if (gpf.value >= row.threshold) {
            row.verdict = Verdict::pass;
        } else {
            row.verdict = gpf.exact ? Verdict::fail : Verdict::incomplete;
        }
        return row;
    });
}

}  // namespace lforge
