#include "lforge/sequences.hpp"

#include <cmath>

#include "lforge/error.hpp"
#include "lforge/modarith.hpp"

// alpha^2 and beta^2 are the roots of x^2 - (R - 2Q) x + Q^2, so each parity
// class of the Lehmer numbers obeys
//   u~_{n+4} = (R - 2Q) u~_{n+2} - Q^2 u~_n
// with u~_0 = 0, u~_1 = 1, u~_2 = 1, u~_3 = R - Q.

namespace lforge {

namespace {

using modarith::u64;

struct Seeds {
    BigInt a;   // R - 2Q
    BigInt q2;  // Q^2
    BigInt u[4];
};

Seeds seeds(const LehmerPair& pair) {
    Seeds s;
    s.a = big_from_i64(pair.r() - 2 * pair.q());
    s.q2 = big_from_i64(pair.q()) * big_from_i64(pair.q());
    s.u[0] = 0;
    s.u[1] = 1;
    s.u[2] = 1;
    s.u[3] = big_from_i64(pair.r() - pair.q());
    return s;
}

}  // namespace

BigInt lehmer_u(const LehmerPair& pair, uint64_t n) {
    const Seeds s = seeds(pair);
    if (n < 4) return s.u[n];
    BigInt lo = s.u[n % 2], hi = s.u[n % 2 + 2], next;
    for (uint64_t k = n % 2 + 2; k < n; k += 2) {
        next = s.a * hi - s.q2 * lo;
        lo.swap(hi);
        hi.swap(next);
    }
    return hi;
}

std::vector<BigInt> lehmer_terms(const LehmerPair& pair, uint64_t n_max) {
    const Seeds s = seeds(pair);
    std::vector<BigInt> terms(n_max + 1);
    for (uint64_t k = 0; k <= n_max; ++k) {
        terms[k] = k < 4 ? s.u[k] : BigInt(s.a * terms[k - 2] - s.q2 * terms[k - 4]);
    }
    return terms;
}

BigInt lucas_u(const LehmerPair& pair, uint64_t n) {
    const BigInt r = big_from_i64(pair.r());
    if (sgn(r) <= 0 || !mpz_perfect_square_p(r.get_mpz_t())) {
        throw Error(ErrorKind::kind, "lucas_u: R = " + std::to_string(pair.r()) + " is not a perfect square");
    }
    BigInt u = lehmer_u(pair, n);
    if (n % 2 == 0) {
        BigInt p;
        mpz_sqrt(p.get_mpz_t(), r.get_mpz_t());
        u *= p;
    }
    return u;
}

uint64_t lehmer_u_mod(const LehmerPair& pair, uint64_t n, uint64_t m) {
    if (m < 2) throw Error(ErrorKind::modulus, "lehmer_u_mod: modulus must be >= 2");
    const u64 a = modarith::reduce_signed(pair.r() - 2 * pair.q(), m);
    const u64 q = modarith::reduce_signed(pair.q(), m);
    const u64 q2 = modarith::mulmod(q, q, m);
    const u64 seed[4] = {0, 1 % m, 1 % m, modarith::reduce_signed(pair.r() - pair.q(), m)};
    if (n < 4) return seed[n];
    u64 lo = seed[n % 2], hi = seed[n % 2 + 2];
    for (uint64_t k = n % 2 + 2; k < n; k += 2) {
        u64 next = modarith::submod(modarith::mulmod(a, hi, m), modarith::mulmod(q2, lo, m), m);
        lo = hi;
        hi = next;
    }
    return hi;
}

BigInt lehmer_u_mod(const LehmerPair& pair, uint64_t n, const BigInt& m) {
    if (m < 2) throw Error(ErrorKind::modulus, "lehmer_u_mod: modulus must be >= 2");
    if (fits_u64(m)) return big_from_u64(lehmer_u_mod(pair, n, to_u64(m)));
    Seeds s = seeds(pair);
    auto reduce = [&](BigInt& v) { mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t()); };
    reduce(s.a);
    reduce(s.q2);
    for (auto& u : s.u) reduce(u);
    if (n < 4) return s.u[n];
    BigInt lo = s.u[n % 2], hi = s.u[n % 2 + 2], next;
    for (uint64_t k = n % 2 + 2; k < n; k += 2) {
        next = s.a * hi - s.q2 * lo;
        reduce(next);
        lo.swap(hi);
        hi.swap(next);
    }
    return hi;
}

LehmerModWalker::LehmerModWalker(const LehmerPair& pair, uint64_t modulus) : m_(modulus) {
    if (modulus < 2) throw Error(ErrorKind::modulus, "LehmerModWalker: modulus must be >= 2");
    a_ = modarith::reduce_signed(pair.r() - 2 * pair.q(), m_);
    u64 q = modarith::reduce_signed(pair.q(), m_);
    q2_ = modarith::mulmod(q, q, m_);
    window_[0] = 0;
    window_[1] = 1 % m_;
    window_[2] = 1 % m_;
    window_[3] = modarith::reduce_signed(pair.r() - pair.q(), m_);
}

void LehmerModWalker::advance() {
    u64 next = modarith::submod(modarith::mulmod(a_, window_[2], m_), modarith::mulmod(q2_, window_[0], m_), m_);
    window_[0] = window_[1];
    window_[1] = window_[2];
    window_[2] = window_[3];
    window_[3] = next;
    ++n_;
}

}  // namespace lforge
