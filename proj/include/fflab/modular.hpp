/*
   Copyright 2026 fflab contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fflab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Integer arithmetic in the exponent ring Z_n. Monomial exponents of maps on a
/// field with Q elements live in Z_{Q-1} (for nonzero arguments), so "division
/// by 2" and friends are modular inverses here.
namespace modular {

inline u64 mulmod(u64 a, u64 b, u64 n) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n);
}

inline u64 powmod(u64 base, u64 exp, u64 n) {
    if (n == 1) return 0;
    u64 r = 1;
    base %= n;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, n);
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    return r;
}

/// Inverse of a modulo n; throws if gcd(a, n) != 1.
inline u64 invmod(u64 a, u64 n) {
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(n), newr = static_cast<i64>(a % n);
    while (newr != 0) {
        i64 q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw std::invalid_argument("invmod: argument not a unit");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(n) : t);
}

/// All units of Z_n in increasing order (d in [1, n-1], gcd(d, n) = 1).
inline std::vector<u64> units(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d < n; ++d)
        if (std::gcd(d, n) == 1) out.push_back(d);
    return out;
}

inline u64 count_units(u64 n) {
    u64 phi = n, m = n;
    for (u64 f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            phi -= phi / f;
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) phi -= phi / m;
    return phi;
}

/// Functional exponent representative: 0 stays 0 (constant term), e >= 1 maps
/// into [1, n] congruent mod n. X^n and X^1 differ at 0, so 0 is kept apart.
inline u64 rep_exponent(u64 e, u64 n) {
    return e == 0 ? 0 : (e - 1) % n + 1;
}

inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> fs;
    for (u64 f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

}  // namespace modular
}  // namespace fflab
