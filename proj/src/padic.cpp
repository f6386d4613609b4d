#include "lforge/padic.hpp"

#include <cstdlib>
#include <numeric>

#include "lforge/bounds.hpp"
#include "lforge/error.hpp"
#include "lforge/factorization.hpp"
#include "lforge/modarith.hpp"
#include "lforge/sequences.hpp"

namespace lforge {

namespace {

using modarith::u64;

constexpr unsigned kEscalationCap = 64;

void require_odd_prime(u64 p, const char* who) {
    if (p < 3 || p % 2 == 0 || !modarith::is_prime_u64(p)) {
        throw Error(ErrorKind::domain, std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
    }
}

void require_unit(const LehmerPair& pair, u64 p, const char* who) {
    if (modarith::reduce_signed(pair.q(), p) == 0) {
        throw Error(ErrorKind::unit, std::string(who) + ": p = " + std::to_string(p) + " divides Q = " +
                                         std::to_string(pair.q()));
    }
}

bool divides(const BigInt& x, u64 p) { return mpz_divisible_ui_p(x.get_mpz_t(), p) != 0; }

// ord_p of a nonzero quantity known only through its residues: evaluate it
// modulo p^k for k = 2, 4, ..., 64 until the residue is nonzero.
template <typename ResidueFn>
uint64_t ord_by_escalation(u64 p, ResidueFn&& residue_mod) {
    const BigInt bp = big_from_u64(p);
    for (unsigned k = 2; k <= kEscalationCap; k *= 2) {
        const BigInt modulus = pow_big(bp, k);
        BigInt r = residue_mod(modulus);
        if (sgn(r) != 0) {
            return mpz_remove(r.get_mpz_t(), r.get_mpz_t(), bp.get_mpz_t());
        }
    }
    throw Error(ErrorKind::internal_invariant,
                "p-adic order of p = " + std::to_string(p) + " reached the escalation cap p^64");
}

BigInt power_difference_mod(int64_t a, int64_t b, uint64_t n, const BigInt& modulus) {
    BigInt ra = big_from_i64(a), rb = big_from_i64(b), e = big_from_u64(n);
    mpz_powm(ra.get_mpz_t(), ra.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
    mpz_powm(rb.get_mpz_t(), rb.get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
    BigInt r = ra - rb;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

// Elements x + y t of F_p[t]/(t^2 - w), w a non-residue.
struct Fp2 {
    u64 x, y;
};

Fp2 fp2_mul(Fp2 u, Fp2 v, u64 w, u64 p) {
    using modarith::addmod;
    using modarith::mulmod;
    return {addmod(mulmod(u.x, v.x, p), mulmod(mulmod(u.y, v.y, p), w, p), p),
            addmod(mulmod(u.x, v.y, p), mulmod(u.y, v.x, p), p)};
}

Fp2 fp2_pow(Fp2 base, u64 e, u64 w, u64 p) {
    Fp2 r{1, 0};
    while (e > 0) {
        if (e & 1) r = fp2_mul(r, base, w, p);
        base = fp2_mul(base, base, w, p);
        e >>= 1;
    }
    return r;
}

}  // namespace

std::string_view to_string(OrdMethod m) { return m == OrdMethod::fast ? "fast" : "fallback"; }

uint64_t ord_u64(uint64_t p, uint64_t x) {
    uint64_t e = 0;
    while (x != 0 && x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

PAdicOrder ord_int(const BigInt& p, const BigInt& x) {
    if (!is_prime(p)) throw Error(ErrorKind::domain, "ord_int: " + to_dec(p) + " is not prime");
    if (sgn(x) == 0) return PAdicOrder{};
    BigInt rest;
    return PAdicOrder{mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t())};
}

int kronecker(const BigInt& d, uint64_t p) {
    return mpz_kronecker(d.get_mpz_t(), big_from_u64(p).get_mpz_t());
}

RankRecord rank_of_apparition(const LehmerPair& pair, uint64_t p) {
    return rank_of_apparition(pair, classify_pair(pair), p);
}

RankRecord rank_of_apparition(const LehmerPair& pair, const PairClass& cls, uint64_t p) {
    require_odd_prime(p, "rank_of_apparition");
    require_unit(pair, p, "rank_of_apparition");
    RankRecord rec;
    rec.p = p;
    LehmerModWalker walk(pair, p);
    const uint64_t ceiling = 2 * (p + 1);
    do {
        walk.advance();
    } while (walk.value() != 0 && walk.index() < ceiling);
    if (walk.value() != 0) {
        throw Error(ErrorKind::search_exhausted, "rank_of_apparition: no rank <= " + std::to_string(ceiling) +
                                                     " for p = " + std::to_string(p) + ", pair " + pair.to_string());
    }
    rec.ell = walk.index();
    rec.symbol = kronecker(cls.d, p);
    if (divides(cls.rs, p)) {
        // alpha/beta is +-1 mod p here, so its order divides 2; the rank picks
        // up a factor p from the divided-out alpha - beta (p | s, ell = p) or
        // alpha^2 - beta^2 (p | R, ell = 2p)
        rec.divides_target = (2 * p) % rec.ell == 0;
    } else {
        const u64 target = static_cast<u64>(static_cast<int64_t>(p) - rec.symbol);
        rec.divides_target = target % rec.ell == 0;
    }
    return rec;
}

OrdResult ord_u_exact(const LehmerPair& pair, uint64_t p, uint64_t n) {
    OrdResult res;
    res.method = OrdMethod::fallback;
    res.ord = ord_int(big_from_u64(p), lehmer_u(pair, n));
    return res;
}

OrdResult ord_u(const LehmerPair& pair, uint64_t p, uint64_t n) {
    if (p == 2) return ord_u_exact(pair, p, n);
    require_odd_prime(p, "ord_u");
    require_unit(pair, p, "ord_u");
    if (n == 0) return OrdResult{PAdicOrder{}, OrdMethod::fast};
    if (divides(pair.rs(), p)) return ord_u_exact(pair, p, n);

    LehmerModWalker walk(pair, p);
    const uint64_t ceiling = 2 * (p + 1);
    do {
        walk.advance();
    } while (walk.value() != 0 && walk.index() < ceiling);
    if (walk.value() != 0) {
        throw Error(ErrorKind::search_exhausted, "ord_u: no rank of apparition for p = " + std::to_string(p));
    }
    const uint64_t ell = walk.index();
    OrdResult res;
    res.method = OrdMethod::fast;
    if (n % ell != 0) {
        res.ord.value = 0;
        return res;
    }
    const uint64_t base = ord_by_escalation(p, [&](const BigInt& m) { return lehmer_u_mod(pair, ell, m); });
    res.ord.value = base + ord_u64(p, n / ell);
    return res;
}

uint64_t ord_power_difference_escalating(int64_t a, int64_t b, uint64_t p, uint64_t n) {
    return ord_by_escalation(p, [&](const BigInt& m) { return power_difference_mod(a, b, n, m); });
}

OrdResult ord_power_difference(int64_t a, int64_t b, uint64_t p, uint64_t n) {
    if (a == b || a == -b || a == 0 || b == 0) {
        throw Error(ErrorKind::domain, "ord_power_difference: need a, b nonzero with a != +-b");
    }
    if (p < 2 || !modarith::is_prime_u64(p)) {
        throw Error(ErrorKind::domain, "ord_power_difference: " + std::to_string(p) + " is not prime");
    }
    if (modarith::reduce_signed(a, p) == 0 || modarith::reduce_signed(b, p) == 0) {
        throw Error(ErrorKind::domain, "ord_power_difference: p divides ab");
    }
    if (n == 0) return OrdResult{PAdicOrder{}, OrdMethod::fast};
    if (p == 2) {
        BigInt diff = pow_big(big_from_i64(a), n) - pow_big(big_from_i64(b), n);
        return OrdResult{ord_int(BigInt(2), diff), OrdMethod::fallback};
    }
    // order of a/b in F_p^*
    const u64 ratio =
        modarith::mulmod(modarith::reduce_signed(a, p), modarith::invmod(modarith::reduce_signed(b, p), p), p);
    const u64 ell = modarith::order_dividing(p - 1, [&](u64 e) { return modarith::powmod(ratio, e, p) == 1; });
    OrdResult res;
    res.method = OrdMethod::fast;
    if (n % ell != 0) {
        res.ord.value = 0;
        return res;
    }
    res.ord.value = ord_power_difference_escalating(a, b, p, ell) + ord_u64(p, n / ell);
    return res;
}

uint64_t residue_order(const LehmerPair& pair, uint64_t p) { return residue_order(pair, classify_pair(pair), p); }

uint64_t residue_order(const LehmerPair& pair, const PairClass& cls, uint64_t p) {
    require_odd_prime(p, "residue_order");
    require_unit(pair, p, "residue_order");
    const int symbol = kronecker(cls.d, p);
    if (cls.d != 1 && symbol == 0) {
        throw Error(ErrorKind::domain, "residue_order: p = " + std::to_string(p) +
                                           " ramifies; use the exact fallback (ord_u_exact)");
    }
    // alpha/beta = (R - 2Q + m sqrt(d)) / (2Q), an element of norm 1
    const u64 inv_den = modarith::invmod(modarith::reduce_signed(2 * pair.q(), p), p);
    const u64 mid = modarith::mulmod(modarith::reduce_signed(pair.r() - 2 * pair.q(), p), inv_den, p);
    BigInt m_mod = cls.m % big_from_u64(p);
    const u64 coef = modarith::mulmod(to_u64(m_mod), inv_den, p);

    if (cls.d == 1 || symbol == 1) {
        u64 root = 1;
        if (cls.d != 1) {
            BigInt d_mod;
            mpz_fdiv_r_ui(d_mod.get_mpz_t(), cls.d.get_mpz_t(), p);
            root = modarith::sqrt_mod(to_u64(d_mod), p);
        }
        const u64 x = modarith::addmod(mid, modarith::mulmod(coef, root, p), p);
        return modarith::order_dividing(p - 1, [&](u64 e) { return modarith::powmod(x, e, p) == 1; });
    }

    // (d/p) = -1: adjoin sqrt(w) for the least non-residue w; sqrt(d) = c sqrt(w)
    u64 w = 2;
    while (modarith::legendre_u64(w, p) != -1) ++w;
    BigInt d_mod;
    mpz_fdiv_r_ui(d_mod.get_mpz_t(), cls.d.get_mpz_t(), p);
    const u64 c = modarith::sqrt_mod(modarith::mulmod(to_u64(d_mod), modarith::invmod(w, p), p), p);
    const Fp2 x{mid, modarith::mulmod(coef, c, p)};
    auto is_one = [&](u64 e) {
        Fp2 r = fp2_pow(x, e, w, p);
        return r.x == 1 && r.y == 0;
    };
    const u64 group = is_one(p + 1) ? p + 1 : p * p - 1;
    return modarith::order_dividing(group, is_one);
}

Thm2Point verify_thm2_point(int64_t a, int64_t b, uint64_t p) {
    if (!(a > b && b > 0) || std::gcd(a, b) != 1) {
        throw Error(ErrorKind::domain, "verify_thm2_point: need a > b > 0 coprime");
    }
    require_odd_prime(p, "verify_thm2_point");
    if (a % static_cast<int64_t>(p) == 0 || b % static_cast<int64_t>(p) == 0) {
        throw Error(ErrorKind::domain, "verify_thm2_point: p divides ab");
    }
    Thm2Point pt;
    pt.ord = ord_power_difference_escalating(a, b, p, p - 1);
    pt.bound = thm2_bound(p, a, p - 1);
    pt.ok = static_cast<double>(pt.ord) < pt.bound;
    return pt;
}

}  // namespace lforge
