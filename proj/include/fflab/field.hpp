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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fflab/modular.hpp"

namespace fflab {

class Field;
class Element;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

// Polynomials over F_p as coefficient vectors, low-to-high. Used for modulus
// search and as the arithmetic fallback when the field is too large for
// log/antilog tables.

inline void poly_trim(std::vector<u32>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<u32> poly_mul_mod(std::span<const u32> a, std::span<const u32> b,
                                     std::span<const u32> mod, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
    }
    // reduce by the monic modulus of degree k
    const std::size_t k = mod.size() - 1;
    for (std::size_t i = prod.size(); i-- > k;) {
        u64 c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < k; ++j)
            prod[i - k + j] = (prod[i - k + j] + (p - mod[j] % p) % p * c) % p;
    }
    prod.resize(std::min(prod.size(), k));
    std::vector<u32> out(prod.begin(), prod.end());
    poly_trim(out);
    return out;
}

inline std::vector<u32> poly_mod(std::vector<u32> a, std::span<const u32> b, u64 p) {
    poly_trim(a);
    const u64 lead_inv = modular::invmod(b.back(), p);
    while (a.size() >= b.size()) {
        u64 c = modular::mulmod(a.back(), lead_inv, p);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[off + i] = static_cast<u32>((a[off + i] + (p - modular::mulmod(c, b[i], p))) % p);
        poly_trim(a);
    }
    return a;
}

inline std::vector<u32> poly_gcd(std::vector<u32> a, std::vector<u32> b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

/// Irreducibility over F_p of a monic polynomial, by the Frobenius chain:
/// f is irreducible of degree k iff x^{p^k} = x mod f and for every prime
/// l | k the chain value at k/l shares no factor with f beyond constants.
inline bool is_irreducible(std::span<const u32> f, u64 p) {
    const std::size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    std::vector<u32> x = {0, 1};
    auto pth_power = [&](std::vector<u32> t) {
        // t^p mod f by square-and-multiply on the small exponent p
        std::vector<u32> r = {1};
        u64 e = p;
        while (e) {
            if (e & 1) r = poly_mul_mod(r, t, f, p);
            t = poly_mul_mod(t, t, f, p);
            e >>= 1;
        }
        return r;
    };
    auto fs = modular::prime_factors(k);
    std::vector<u32> t = x;
    for (std::size_t j = 1; j <= k; ++j) {
        t = pth_power(std::move(t));
        for (u64 l : fs) {
            if (j != k / l) continue;
            std::vector<u32> diff = t;
            diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
            diff[1] = static_cast<u32>((diff[1] + p - 1) % p);
            poly_trim(diff);
            auto g = poly_gcd(diff, std::vector<u32>(f.begin(), f.end()), p);
            if (g.size() != 1) return false;
        }
    }
    return t == x;
}

/// The lexicographically smallest monic irreducible of degree k over F_p,
/// candidates ordered by the base-p integer of the low coefficient vector.
inline std::vector<u32> find_modulus(u64 p, unsigned k) {
    std::vector<u32> cand(k + 1, 0);
    cand[k] = 1;
    for (;;) {
        if (is_irreducible(cand, p)) return cand;
        // increment the base-p counter in cand[0..k)
        unsigned i = 0;
        while (i < k) {
            if (++cand[i] < p) break;
            cand[i++] = 0;
        }
        if (i == k) throw std::logic_error("find_modulus: exhausted candidates");
    }
}

}  // namespace detail

/// A finite field GF(p^k) with a fixed monic irreducible modulus. Elements are
/// coefficient vectors over F_p, canonically encoded as the base-p integer of
/// the low-to-high coefficient sequence ("index"). Immutable and shareable
/// across threads once constructed; all operations are pure.
///
/// Fields with at most 2^20 elements carry log/antilog tables over a fixed
/// generator, making mul/inv/pow O(1); larger fields fall back to coefficient
/// arithmetic.
class Field {
public:
    static constexpr unsigned max_degree = 24;
    static constexpr u64 table_limit = u64{1} << 20;

    /// Shared, cached construction. Same (p, k) always yields the same object
    /// (and therefore the same modulus).
    static FieldPtr make(u64 p, unsigned k);

    u64 p() const { return p_; }
    unsigned degree() const { return k_; }
    u64 size() const { return size_; }
    u64 order() const { return size_ - 1; }
    const std::vector<u32>& modulus() const { return modulus_; }
    const std::string& id() const { return id_; }
    bool has_tables() const { return !antilog_.empty(); }
    /// Index of the fixed multiplicative generator (tables only).
    u64 generator() const;

    // --- index arithmetic -------------------------------------------------

    u64 add(u64 x, u64 y) const;
    u64 sub(u64 x, u64 y) const;
    u64 neg(u64 x) const;
    u64 mul(u64 x, u64 y) const;
    u64 inv(u64 x) const;
    /// x^e with 0^0 = 1; exponents reduce mod |F|-1 for nonzero x.
    u64 pow(u64 x, u64 e) const;
    /// x^{p^j}, j taken mod k (negative j allowed).
    u64 frobenius(u64 x, long j) const;

    // --- elements ----------------------------------------------------------

    Element element(u64 idx) const;
    Element zero() const;
    Element one() const;
    /// n·1 for an integer n (reduced mod p).
    Element scalar(i64 n) const;

    std::vector<u32> digits(u64 idx) const;
    u64 from_digits(std::span<const u32> d) const;

    std::string to_text(u64 idx) const;
    u64 parse_index(std::string_view text) const;

private:
    Field(u64 p, unsigned k, std::vector<u32> modulus);

    u64 mul_poly(u64 x, u64 y) const;
    u64 pow_poly(u64 x, u64 e) const;
    void build_tables();

    u64 p_;
    unsigned k_;
    u64 size_;
    std::vector<u32> modulus_;
    std::string id_;
    u64 generator_ = 0;
    std::vector<u32> log_;      // log_[0] unused sentinel
    std::vector<u32> antilog_;  // antilog_[i] = generator^i, i in [0, order)
    std::array<u64, max_degree> frob_exp_{};  // p^j mod order
};

/// One element of a fixed Field, in canonical form: two elements are equal iff
/// their coefficient sequences (indices) are equal.
class Element {
public:
    Element() = default;
    Element(const Field& f, u64 idx) : f_(&f), i_(idx) {
        if (idx >= f.size()) throw std::invalid_argument("element index out of range");
    }

    const Field& field() const {
        if (!f_) throw std::logic_error("unbound element");
        return *f_;
    }
    u64 index() const { return i_; }
    bool is_zero() const { return i_ == 0; }

    friend bool operator==(const Element& a, const Element& b) {
        return a.f_ == b.f_ && a.i_ == b.i_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    friend Element operator+(const Element& a, const Element& b) {
        return Element(a.same(b), a.field().add(a.i_, b.i_));
    }
    friend Element operator-(const Element& a, const Element& b) {
        return Element(a.same(b), a.field().sub(a.i_, b.i_));
    }
    friend Element operator*(const Element& a, const Element& b) {
        return Element(a.same(b), a.field().mul(a.i_, b.i_));
    }
    friend Element operator/(const Element& a, const Element& b) {
        return Element(a.same(b), a.field().mul(a.i_, a.field().inv(b.i_)));
    }
    Element operator-() const { return Element(field(), field().neg(i_)); }

    Element pow(u64 e) const { return Element(field(), field().pow(i_, e)); }
    Element inverse() const { return Element(field(), field().inv(i_)); }
    Element frobenius(long j) const { return Element(field(), field().frobenius(i_, j)); }

    std::string to_text() const { return field().to_text(i_); }

private:
    const Field& same(const Element& b) const {
        if (f_ != b.f_) throw std::invalid_argument("elements from different fields");
        return field();
    }

    const Field* f_ = nullptr;
    u64 i_ = 0;
};

inline Element Field::element(u64 idx) const { return Element(*this, idx); }
inline Element Field::zero() const { return Element(*this, 0); }
inline Element Field::one() const { return Element(*this, 1); }

inline Element Field::scalar(i64 n) const {
    i64 r = n % static_cast<i64>(p_);
    if (r < 0) r += static_cast<i64>(p_);
    return Element(*this, static_cast<u64>(r));
}

inline Field::Field(u64 p, unsigned k, std::vector<u32> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
    size_ = 1;
    for (unsigned i = 0; i < k_; ++i) {
        if (size_ > (u64{1} << 40) / p_) throw std::invalid_argument("field size out of range");
        size_ *= p_;
    }
    id_ = "gf" + std::to_string(p_) + "_" + std::to_string(k_);
    for (unsigned j = 0; j < k_; ++j) frob_exp_[j] = modular::powmod(p_, j, order());
    if (size_ <= table_limit) build_tables();
}

inline FieldPtr Field::make(u64 p, unsigned k) {
    if (!modular::is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (k < 1 || k > max_degree) throw std::invalid_argument("extension degree out of range");
    static std::mutex mu;
    static std::map<std::pair<u64, unsigned>, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, k}];
    if (!slot) slot = FieldPtr(new Field(p, k, detail::find_modulus(p, k)));
    return slot;
}

inline std::vector<u32> Field::digits(u64 idx) const {
    std::vector<u32> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
        d[i] = static_cast<u32>(idx % p_);
        idx /= p_;
    }
    return d;
}

inline u64 Field::from_digits(std::span<const u32> d) const {
    if (d.size() != k_) throw std::invalid_argument("digit count mismatch");
    u64 idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] >= p_) throw std::invalid_argument("digit out of range");
        idx = idx * p_ + d[i];
    }
    return idx;
}

inline u64 Field::add(u64 x, u64 y) const {
    if (p_ == 2) return x ^ y;
    u64 out = 0, mult = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += (x % p_ + y % p_) % p_ * mult;
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return out;
}

inline u64 Field::neg(u64 x) const {
    if (p_ == 2) return x;
    u64 out = 0, mult = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += (p_ - x % p_) % p_ * mult;
        x /= p_;
        mult *= p_;
    }
    return out;
}

inline u64 Field::sub(u64 x, u64 y) const { return add(x, neg(y)); }

inline u64 Field::mul_poly(u64 x, u64 y) const {
    if (x == 0 || y == 0) return 0;
    if (p_ == 2) {
        // bit-packed carryless multiply and reduce; modulus as bitmask
        u64 mod_mask = 0;
        for (unsigned i = 0; i <= k_; ++i)
            if (modulus_[i]) mod_mask |= u64{1} << i;
        u64 acc = 0;
        for (unsigned i = 0; i < k_; ++i)
            if (x >> i & 1) acc ^= y << i;
        for (unsigned i = 2 * k_ - 1; i >= k_; --i)
            if (acc >> i & 1) acc ^= mod_mask << (i - k_);
        return acc;
    }
    auto r = detail::poly_mul_mod(digits(x), digits(y), modulus_, p_);
    r.resize(k_, 0);
    return from_digits(r);
}

inline u64 Field::pow_poly(u64 x, u64 e) const {
    if (e == 0) return 1;
    if (x == 0) return 0;
    e %= order();
    if (e == 0) return 1;
    u64 r = 1, b = x;
    while (e) {
        if (e & 1) r = mul_poly(r, b);
        b = mul_poly(b, b);
        e >>= 1;
    }
    return r;
}

inline void Field::build_tables() {
    const u64 n = order();
    if (n == 1) {  // GF(2): trivial multiplicative group
        generator_ = 1;
        antilog_ = {1};
        log_.assign(2, 0);
        return;
    }
    auto fs = modular::prime_factors(n);
    u64 g = 0;
    for (u64 cand = 2; cand < size_; ++cand) {
        bool primitive = true;
        for (u64 l : fs)
            if (pow_poly(cand, n / l) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw std::logic_error("no multiplicative generator found");
    generator_ = g;
    antilog_.resize(n);
    log_.assign(size_, 0);
    u64 cur = 1;
    for (u64 i = 0; i < n; ++i) {
        antilog_[i] = static_cast<u32>(cur);
        log_[cur] = static_cast<u32>(i);
        cur = mul_poly(cur, g);
    }
}

inline u64 Field::generator() const {
    if (!has_tables()) throw std::logic_error("generator only tracked for table-backed fields");
    return generator_;
}

inline u64 Field::mul(u64 x, u64 y) const {
    if (x == 0 || y == 0) return 0;
    if (has_tables()) {
        u64 s = static_cast<u64>(log_[x]) + log_[y];
        if (s >= order()) s -= order();
        return antilog_[s];
    }
    return mul_poly(x, y);
}

inline u64 Field::inv(u64 x) const {
    if (x == 0) throw std::domain_error("inversion of zero");
    if (has_tables()) {
        u64 l = log_[x];
        return antilog_[l == 0 ? 0 : order() - l];
    }
    return pow_poly(x, order() - 1);  // x^{|F|-2}
}

inline u64 Field::pow(u64 x, u64 e) const {
    if (e == 0) return 1;
    if (x == 0) return 0;
    if (has_tables()) {
        u64 l = modular::mulmod(log_[x], e % order(), order());
        return antilog_[l];
    }
    return pow_poly(x, e);
}

inline u64 Field::frobenius(u64 x, long j) const {
    if (x == 0) return 0;
    long r = j % static_cast<long>(k_);
    if (r < 0) r += k_;
    return pow(x, frob_exp_[static_cast<unsigned>(r)]);
}

inline std::string Field::to_text(u64 idx) const {
    std::string out = id_;
    out += ':';
    auto d = digits(idx);
    if (p_ <= 10) {
        for (u32 c : d) out += static_cast<char>('0' + c);
    } else {
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(d[i]);
        }
    }
    return out;
}

inline u64 Field::parse_index(std::string_view text) const {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("element text missing field id");
    if (text.substr(0, colon) != id_) throw std::invalid_argument("element text for a different field");
    std::string_view body = text.substr(colon + 1);
    std::vector<u32> d;
    if (p_ <= 10) {
        for (char c : body) {
            if (c < '0' || c > '9') throw std::invalid_argument("bad element digit");
            d.push_back(static_cast<u32>(c - '0'));
        }
    } else {
        std::size_t pos = 0;
        while (pos <= body.size()) {
            auto next = body.find(',', pos);
            if (next == std::string_view::npos) next = body.size();
            d.push_back(static_cast<u32>(std::stoul(std::string(body.substr(pos, next - pos)))));
            pos = next + 1;
        }
    }
    return from_digits(d);
}

// --- spec-facing free functions --------------------------------------------

inline FieldPtr make_field(u64 p, unsigned k) { return Field::make(p, k); }

inline Element frobenius(const Element& x, long j) { return x.frobenius(j); }

/// Unique r-th root in characteristic 2 (r = 2 or 4), via the inverse of the
/// squaring automorphism: x^{2^{k-1}} resp. x^{2^{k-2}}.
inline Element inv_frobenius_root(const Element& x, unsigned r) {
    const Field& f = x.field();
    if (f.p() != 2) throw std::invalid_argument("inv_frobenius_root requires characteristic 2");
    if (r != 2 && r != 4) throw std::invalid_argument("root order must be 2 or 4");
    unsigned shift = r == 2 ? 1 : 2;
    if (f.degree() < shift) throw std::invalid_argument("field too small for this root");
    return x.pow(u64{1} << (f.degree() - shift));
}

/// Relative trace from GF(q^3) onto GF(q): x + x^q + x^{q^2}.
inline Element rel_trace(const Element& x, u64 q) {
    const Field& f = x.field();
    if (f.degree() % 3 != 0) throw std::invalid_argument("rel_trace: degree not divisible by 3");
    u64 expected = 1;
    for (unsigned i = 0; i < f.degree() / 3; ++i) expected *= f.p();
    if (expected != q) throw std::invalid_argument("rel_trace: subfield order mismatch");
    return x + x.pow(q) + x.pow(q * q);
}

/// Membership in the subfield of order q: fixed points of x -> x^q.
inline bool in_subfield(const Element& x, u64 q) { return x.pow(q) == x; }

/// All elements of the subfield of order q, in enumeration order.
inline std::vector<Element> subfield_elements(const Field& f, u64 q) {
    std::vector<Element> out;
    out.reserve(q);
    for (u64 i = 0; i < f.size(); ++i) {
        Element x = f.element(i);
        if (in_subfield(x, q)) out.push_back(x);
    }
    return out;
}

}  // namespace fflab
