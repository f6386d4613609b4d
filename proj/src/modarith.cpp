#include "lforge/modarith.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <numeric>
#include <stdexcept>

#include "lforge/bigint.hpp"
#include "lforge/error.hpp"
#include "rho_u64.hpp"

namespace lforge {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_pair: return "invalid-pair";
        case ErrorKind::kind: return "kind";
        case ErrorKind::modulus: return "modulus";
        case ErrorKind::domain: return "domain";
        case ErrorKind::unit: return "unit";
        case ErrorKind::search_exhausted: return "search-exhausted";
        case ErrorKind::budget: return "budget";
        case ErrorKind::internal_invariant: return "internal-invariant";
        case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

double log_abs(const BigInt& v) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    if (mant < 0) mant = -mant;
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

BigInt pow_big(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

}  // namespace lforge

namespace lforge::modarith {

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 invmod(u64 a, u64 m) {
    // extended Euclid on signed 128-bit to avoid overflow
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw Error(ErrorKind::domain, "invmod: argument not invertible");
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    static constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kWitnesses) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kWitnesses) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int legendre_u64(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (legendre_u64(z, p) != -1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
            if (i == m) throw Error(ErrorKind::domain, "sqrt_mod: not a quadratic residue");
        }
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

std::span<const std::uint32_t> small_primes() {
    static const std::vector<std::uint32_t> table = primes_upto(100'000);
    return table;
}

Montgomery::Montgomery(u64 modulus) : n_(modulus) {
    if ((modulus & 1) == 0) throw Error(ErrorKind::modulus, "Montgomery: modulus must be odd");
    u64 inv = modulus;  // Newton iteration, correct to 2^64 after 5 steps
    for (int i = 0; i < 5; ++i) inv *= 2 - modulus * inv;
    ninv_ = ~inv + 1;
    u64 r = (~modulus + 1) % modulus;  // 2^64 mod n
    r2_ = mulmod(r, r, modulus);
}

std::optional<u64> rho_u64(u64 n, u64 c, u64 x0, u64& iterations_left) {
    constexpr u64 kBatch = 128;
    const Montgomery mont(n);
    const u64 cm = mont.to(c);
    auto f = [&](u64 v) { return mont.add(mont.mul(v, v), cm); };

    u64 y = mont.to(x0), x = y, ys = y;
    u64 q = mont.to(1);
    u64 g = 1;
    u64 r = 1;
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        if (iterations_left <= r) return std::nullopt;
        iterations_left -= r;
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            u64 steps = std::min(kBatch, r - k);
            for (u64 i = 0; i < steps; ++i) {
                y = f(y);
                q = mont.mul(q, x > y ? x - y : y - x);
            }
            if (iterations_left <= steps) return std::nullopt;
            iterations_left -= steps;
            g = std::gcd(mont.from(q), n);
            k += kBatch;
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            if (iterations_left == 0) return std::nullopt;
            --iterations_left;
            g = std::gcd(mont.from(x > ys ? x - ys : ys - x), n);
        } while (g == 1);
    }
    if (g == n) return u64{0};  // cycle without a split, caller changes c
    return g;
}

namespace {

void factor_u64_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    for (u64 c = 1;; ++c) {
        u64 budget = ~u64{0};
        auto g = rho_u64(n, c, 2, budget);
        if (g && *g > 1) {
            factor_u64_into(*g, out);
            factor_u64_into(n / *g, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
    std::vector<std::pair<u64, unsigned>> result;
    if (n <= 1) return result;
    std::vector<u64> primes;
    for (std::uint32_t p : small_primes()) {
        if (static_cast<u64>(p) * p > n) break;
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
        if (p > 1000) break;
    }
    if (n > 1) {
        if ((n & 1) == 0) {
            while ((n & 1) == 0) {
                primes.push_back(2);
                n >>= 1;
            }
        }
        factor_u64_into(n, primes);
    }
    std::sort(primes.begin(), primes.end());
    for (u64 p : primes) {
        if (!result.empty() && result.back().first == p) {
            ++result.back().second;
        } else {
            result.emplace_back(p, 1);
        }
    }
    return result;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> divs{1};
    for (auto [p, e] : factor_u64(n)) {
        std::size_t count = divs.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

int mobius(u64 n) {
    int mu = 1;
    for (auto [p, e] : factor_u64(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

u64 euler_phi(u64 n) {
    u64 phi = n;
    for (auto [p, e] : factor_u64(n)) phi = phi / p * (p - 1);
    return phi;
}

unsigned omega(u64 n) { return static_cast<unsigned>(factor_u64(n).size()); }

u64 greatest_prime_factor_u64(u64 n) {
    auto f = factor_u64(n);
    return f.empty() ? 1 : f.back().first;
}

}  // namespace lforge::modarith
