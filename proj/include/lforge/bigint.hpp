#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace lforge {

using BigInt = mpz_class;

inline BigInt big_from_i64(int64_t v) {
    BigInt r;
    mpz_set_si(r.get_mpz_t(), v);
    return r;
}

inline BigInt big_from_u64(uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline uint64_t to_u64(const BigInt& v) {
    uint64_t r = 0;
    mpz_export(&r, nullptr, 1, sizeof(r), 0, 0, v.get_mpz_t());
    return r;
}

inline std::string to_dec(const BigInt& v) { return v.get_str(10); }

/// Number of decimal digits of |v|; 1 for zero.
inline std::size_t decimal_digits(const BigInt& v) {
    if (sgn(v) == 0) return 1;
    std::string s = v.get_str(10);
    return s.size() - (s[0] == '-' ? 1 : 0);
}

/// Natural log of |v| for v != 0, accurate to double precision for any size.
double log_abs(const BigInt& v);

BigInt pow_big(const BigInt& base, unsigned long exp);

}  // namespace lforge
