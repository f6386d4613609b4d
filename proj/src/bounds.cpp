#include "lforge/bounds.hpp"

#include <cmath>

#include "lforge/cyclotomic.hpp"
#include "lforge/error.hpp"
#include "lforge/modarith.hpp"
#include "lforge/padic.hpp"
#include "lforge/parallel.hpp"
#include "lforge/sequences.hpp"

namespace lforge {

namespace {

// p exp(-log p / (divisor log log p))
double damped_prime(uint64_t p, double divisor) {
    const double lp = std::log(static_cast<double>(p));
    return static_cast<double>(p) * std::exp(-lp / (divisor * std::log(lp)));
}

void require_bound_prime(uint64_t p, const char* who) {
    if (p < 5 || !modarith::is_prime_u64(p)) {
        throw Error(ErrorKind::domain, std::string(who) + ": p = " + std::to_string(p) + " must be a prime >= 5");
    }
}

}  // namespace

double thm1_bound(uint64_t n, double divisor) {
    if (n < 16) throw Error(ErrorKind::domain, "thm1_bound: n must be >= 16");
    if (!(divisor > 0)) throw Error(ErrorKind::domain, "thm1_bound: divisor must be positive");
    const double ln = std::log(static_cast<double>(n));
    return static_cast<double>(n) * std::exp(ln / (divisor * std::log(ln)));
}

double thm2_bound(uint64_t p, int64_t a, uint64_t n) {
    require_bound_prime(p, "thm2_bound");
    if (a < 2) throw Error(ErrorKind::domain, "thm2_bound: a must be >= 2");
    if (n == 0) throw Error(ErrorKind::domain, "thm2_bound: n must be positive");
    return damped_prime(p, 52.0) * std::log(static_cast<double>(a)) + static_cast<double>(ord_u64(p, n));
}

double lemma8_bound(uint64_t p, double log_abs_alpha, uint64_t n) {
    require_bound_prime(p, "lemma8_bound");
    if (n < 2) throw Error(ErrorKind::domain, "lemma8_bound: n must be >= 2");
    return damped_prime(p, 51.9) * log_abs_alpha * std::log(static_cast<double>(n));
}

ClassicalBounds classical_bounds(uint64_t n) {
    if (n == 0) throw Error(ErrorKind::domain, "classical_bounds: n must be positive");
    return ClassicalBounds{n - 1, n + 1};
}

std::vector<BoundComparison> thm1_harness(const LehmerPair& pair, uint64_t n_to, const FactorBudget& budget,
                                          unsigned threads) {
    if (!pair.coprime()) throw Error(ErrorKind::invalid_pair, "thm1_harness: pair must be coprime; normalize first");
    if (n_to < 16) return {};
    const auto terms = lehmer_terms(pair, n_to);
    const std::size_t count = n_to - 15;
    return parallel_map(count, threads, [&](std::size_t i) {
        const uint64_t n = 16 + i;
        const CycloValue phi = cyclo_value(pair, n, terms);
        const GpfResult gpf = greatest_prime_factor(phi.value, budget);
        BoundComparison row;
        row.n = n;
        row.phi_digits = decimal_digits(phi.value);
        row.gpf = gpf.value;
        row.exact = gpf.exact;
        row.thm1 = thm1_bound(n);
        row.carmichael = n - 1;
        row.ratio = gpf.value.get_d() / row.thm1;
        row.status = gpf.exact ? BoundStatus::exact : BoundStatus::lower_bound;
        row.meets_carmichael = gpf.value >= big_from_u64(n - 1);
        return row;
    });
}

}  // namespace lforge
