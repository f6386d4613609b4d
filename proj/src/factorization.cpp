#include "lforge/factorization.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "lforge/error.hpp"
#include "lforge/modarith.hpp"
#include "rho_u64.hpp"

namespace lforge {

namespace {

using Clock = std::chrono::steady_clock;

bool past_deadline(const FactorBudget& budget) {
    return budget.deadline && Clock::now() >= *budget.deadline;
}

// Same walk as rho_u64, on GMP integers.
std::optional<BigInt> rho_big(const BigInt& n, unsigned long c, const BigInt& x0, uint64_t& iterations_left,
                              const FactorBudget& budget) {
    constexpr uint64_t kBatch = 128;
    mpz_srcptr nn = n.get_mpz_t();
    BigInt y = x0 % n, x = y, ys = y, q = 1, g = 1, t;
    auto f = [&](BigInt& v) {
        mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
        mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
        mpz_tdiv_r(v.get_mpz_t(), v.get_mpz_t(), nn);
    };
    uint64_t r = 1;
    do {
        x = y;
        for (uint64_t i = 0; i < r; ++i) f(y);
        if (iterations_left <= r) return std::nullopt;
        iterations_left -= r;
        uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            uint64_t steps = std::min(kBatch, r - k);
            for (uint64_t i = 0; i < steps; ++i) {
                f(y);
                mpz_sub(t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                mpz_mul(q.get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
                mpz_tdiv_r(q.get_mpz_t(), q.get_mpz_t(), nn);
            }
            if (iterations_left <= steps || past_deadline(budget)) return std::nullopt;
            iterations_left -= steps;
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), nn);
            k += kBatch;
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            f(ys);
            if (iterations_left == 0) return std::nullopt;
            --iterations_left;
            mpz_sub(t.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), nn);
        } while (g == 1);
    }
    if (g == n) return BigInt(0);
    return g;
}

// One nontrivial divisor of the odd composite n, or nullopt when the budget
// for this composite runs out.
std::optional<BigInt> find_divisor(const BigInt& n, const FactorBudget& budget) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        BigInt root;
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        return root;
    }
    uint64_t iterations_left = budget.rho_iterations;
    if (fits_u64(n)) {
        const uint64_t nn = to_u64(n);
        const uint64_t x0 = 2 + budget.seed % (nn - 3);
        for (uint64_t c = 1; iterations_left > 0; ++c) {
            auto g = modarith::rho_u64(nn, c, x0, iterations_left);
            if (!g) return std::nullopt;
            if (*g > 1) return big_from_u64(*g);
        }
        return std::nullopt;
    }
    const BigInt x0 = 2 + big_from_u64(budget.seed);
    for (unsigned long c = 1; iterations_left > 0; ++c) {
        auto g = rho_big(n, c, x0, iterations_left, budget);
        if (!g) return std::nullopt;
        if (*g > 1) return g;
    }
    return std::nullopt;
}

std::span<const std::uint32_t> trial_primes(uint32_t bound) {
    auto table = modarith::small_primes();
    if (bound <= 100'000) {
        auto end = std::upper_bound(table.begin(), table.end(), bound);
        return table.subspan(0, static_cast<std::size_t>(end - table.begin()));
    }
    static thread_local uint32_t cached_bound = 0;
    static thread_local std::vector<std::uint32_t> cached;
    if (cached_bound != bound) {
        cached = modarith::primes_upto(bound);
        cached_bound = bound;
    }
    return cached;
}

Factorization from_map(const BigInt& input, const std::map<BigInt, unsigned>& primes, const BigInt& residual) {
    Factorization f;
    f.input = input;
    for (const auto& [p, e] : primes) f.factors.push_back({p, e});
    f.residual = residual;
    f.status = residual == 1 ? FactorStatus::complete : FactorStatus::partial;
    return f;
}

}  // namespace

bool Factorization::reassembles() const {
    BigInt product = residual;
    for (const auto& pp : factors) product *= pow_big(pp.prime, pp.exponent);
    if (sgn(input) < 0) product = -product;
    return product == input;
}

bool is_prime(const BigInt& x, unsigned rounds) {
    if (sgn(x) <= 0) return false;
    if (fits_u64(x)) return modarith::is_prime_u64(to_u64(x));
    for (std::uint32_t p : modarith::small_primes().first(100)) {
        if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return false;
    }
    const BigInt n_minus_1 = x - 1;
    BigInt d = n_minus_1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt y;
    auto bases = modarith::small_primes();
    for (unsigned i = 0; i < rounds && i < bases.size(); ++i) {
        BigInt a = bases[i];
        mpz_powm(y.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t());
        if (y == 1 || y == n_minus_1) continue;
        bool composite = true;
        for (unsigned long j = 1; j < s; ++j) {
            mpz_powm_ui(y.get_mpz_t(), y.get_mpz_t(), 2, x.get_mpz_t());
            if (y == n_minus_1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    // GMP >= 6.2 runs Baillie-PSW (strong Lucas included) for reps <= 24.
    return mpz_probab_prime_p(x.get_mpz_t(), 1) != 0;
}

Factorization factorize(const BigInt& x, const FactorBudget& budget) {
    if (sgn(x) == 0) throw Error(ErrorKind::domain, "factorize: input is zero");
    BigInt n = abs(x);
    if (budget.memo) {
        if (auto hit = budget.memo->lookup(n); hit && hit->complete() && hit->reassembles()) {
            hit->input = x;
            return *hit;
        }
    }

    std::map<BigInt, unsigned> primes;
    for (std::uint32_t p : trial_primes(budget.trial_bound)) {
        if (n == 1) break;
        if (BigInt(p) * p > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
            primes[BigInt(p)] += e;
        }
    }

    BigInt residual = 1;
    std::vector<BigInt> pending;
    if (n > 1) pending.push_back(n);
    while (!pending.empty()) {
        BigInt m = std::move(pending.back());
        pending.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            primes[m] += 1;
            continue;
        }
        auto divisor = past_deadline(budget) ? std::nullopt : find_divisor(m, budget);
        if (!divisor) {
            residual *= m;
            continue;
        }
        BigInt cofactor = m / *divisor;
        pending.push_back(*divisor);
        pending.push_back(std::move(cofactor));
    }

    Factorization f = from_map(x, primes, residual);
    if (budget.memo) {
        Factorization keyed = f;
        keyed.input = abs(x);
        budget.memo->store(keyed);
    }
    return f;
}

GpfResult greatest_prime_factor(const Factorization& f) {
    GpfResult r;
    r.value = f.factors.empty() ? BigInt(1) : f.factors.back().prime;
    r.exact = f.complete();
    return r;
}

GpfResult greatest_prime_factor(const BigInt& x, const FactorBudget& budget) {
    if (abs(x) <= 1) return GpfResult{};
    return greatest_prime_factor(factorize(x, budget));
}

Factorization merge_factorizations(const BigInt& input, const std::vector<Factorization>& parts) {
    std::map<BigInt, unsigned> primes;
    BigInt residual = 1;
    for (const auto& part : parts) {
        for (const auto& pp : part.factors) primes[pp.prime] += pp.exponent;
        residual *= part.residual;
    }
    return from_map(input, primes, residual);
}

Factorization factor_power_difference(int64_t a, int64_t b, uint64_t n, const FactorBudget& budget) {
    if (!(a > b && b >= 1) || std::gcd(a, b) != 1 || n == 0) {
        throw Error(ErrorKind::domain, "factor_power_difference: need a > b >= 1 coprime and n >= 1");
    }
    const BigInt ba(static_cast<long>(a)), bb(static_cast<long>(b));
    const BigInt total = pow_big(ba, n) - pow_big(bb, n);

    std::vector<Factorization> parts;
    BigInt product = 1;
    for (uint64_t d : modarith::divisors(n)) {
        BigInt num = 1, den = 1;
        for (uint64_t e : modarith::divisors(d)) {
            int mu = modarith::mobius(e);
            if (mu == 0) continue;
            BigInt term = pow_big(ba, d / e) - pow_big(bb, d / e);
            (mu > 0 ? num : den) *= term;
        }
        if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
            throw Error(ErrorKind::internal_invariant, "factor_power_difference: Phi_d(a,b) not integral");
        }
        BigInt phi_d = num / den;
        product *= phi_d;
        parts.push_back(factorize(phi_d, budget));
    }
    if (product != total) {
        throw Error(ErrorKind::internal_invariant, "factor_power_difference: product of Phi_d != a^n - b^n");
    }
    return merge_factorizations(total, parts);
}

}  // namespace lforge
