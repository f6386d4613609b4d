#include "lforge/cyclotomic.hpp"

#include <cmath>

#include "lforge/error.hpp"
#include "lforge/modarith.hpp"
#include "lforge/sequences.hpp"

// Writing alpha^m - beta^m = u~_m (alpha - beta) (alpha + beta)^[m even], the
// Moebius product prod_{d|n} (alpha^{n/d} - beta^{n/d})^{mu(d)} picks up
// (alpha - beta) to the power sum_{d|n} mu(d) = 0 (n > 1) and (alpha + beta)
// to the power sum_{d|n/2} mu(d) = 0 (n > 2). So for n > 2,
//   Phi_n(alpha, beta) = prod_{d|n} u~_{n/d}^{mu(d)}.

namespace lforge {

namespace {

CycloValue make_value(uint64_t n, BigInt value) {
    CycloValue v;
    v.n = n;
    v.sign = sgn(value) < 0 ? -1 : 1;
    v.abs_log = log_abs(value);
    v.value = std::move(value);
    return v;
}

CycloValue low_index_value(const LehmerPair& pair, uint64_t n) {
    // Phi_1 = alpha - beta = sqrt(s), Phi_2 = alpha + beta = sqrt(R); integral
    // only when alpha and beta are integers.
    const BigInt r = big_from_i64(pair.r());
    const BigInt s = big_from_i64(pair.s());
    if (sgn(r) <= 0 || sgn(s) <= 0 || !mpz_perfect_square_p(r.get_mpz_t()) || !mpz_perfect_square_p(s.get_mpz_t())) {
        throw Error(ErrorKind::domain,
                    "cyclo_value: Phi_" + std::to_string(n) + " is not an integer for pair " + pair.to_string());
    }
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), (n == 1 ? s : r).get_mpz_t());
    return make_value(n, root);
}

}  // namespace

ArithProfile arith_profile(uint64_t n) {
    if (n == 0) throw Error(ErrorKind::domain, "arith_profile: n must be positive");
    ArithProfile p;
    p.n = n;
    p.divisors = modarith::divisors(n);
    p.mobius = modarith::mobius(n);
    p.phi = modarith::euler_phi(n);
    p.omega = modarith::omega(n);
    p.q = uint64_t{1} << p.omega;
    return p;
}

CycloValue cyclo_value(const LehmerPair& pair, uint64_t n, std::span<const BigInt> terms) {
    if (n == 0) throw Error(ErrorKind::domain, "cyclo_value: n must be positive");
    if (n <= 2) return low_index_value(pair, n);
    if (terms.size() <= n) throw Error(ErrorKind::domain, "cyclo_value: term table too short");

    BigInt num = 1, den = 1, g;
    for (uint64_t d : modarith::divisors(n)) {
        const int mu = modarith::mobius(d);
        if (mu == 0) continue;
        (mu > 0 ? num : den) *= terms[n / d];
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (g != 1) {
            mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        }
    }
    if (sgn(den) < 0) {
        num = -num;
        den = -den;
    }
    if (den != 1) {
        throw Error(ErrorKind::internal_invariant,
                    "cyclo_value: Phi_" + std::to_string(n) + " has denominator " + to_dec(den) + " for pair " +
                        pair.to_string());
    }
    return make_value(n, std::move(num));
}

CycloValue cyclo_value(const LehmerPair& pair, uint64_t n) {
    if (n <= 2) return cyclo_value(pair, n, {});
    const auto terms = lehmer_terms(pair, n);
    return cyclo_value(pair, n, terms);
}

bool cyclo_identity_check(const LehmerPair& pair, uint64_t n) {
    if (n == 0) throw Error(ErrorKind::domain, "cyclo_identity_check: n must be positive");
    const auto terms = lehmer_terms(pair, n);
    BigInt product = 1;
    for (uint64_t d : modarith::divisors(n)) {
        if (d >= 3) product *= cyclo_value(pair, d, terms).value;
    }
    return product == terms[n];
}

SizeBand size_band(const LehmerPair& pair, uint64_t n, double c) {
    if (n < 3) throw Error(ErrorKind::domain, "size_band: n must be >= 3");
    const ArithProfile prof = arith_profile(n);
    const double log_alpha = log_abs_alpha(pair);
    SizeBand band;
    band.actual = cyclo_value(pair, n).abs_log;
    band.center = static_cast<double>(prof.phi) * log_alpha;
    band.halfwidth = c * static_cast<double>(prof.q) * std::log(static_cast<double>(n)) * log_alpha;
    band.within = std::fabs(band.actual - band.center) <= band.halfwidth;
    band.floor = band.center / 2;
    band.above_floor = band.actual >= band.floor - 1e-9;
    return band;
}

}  // namespace lforge
