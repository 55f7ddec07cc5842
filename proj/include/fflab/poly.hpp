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

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

/// Sparse univariate polynomial viewed as a function on its field: a map from
/// exponent to nonzero coefficient. Exponents may exceed |F|-1 until
/// normalized; normalization reduces every e >= 1 into [1, |F|-1] (constant
/// term kept apart, since X^{|F|-1} and 1 differ at 0) without changing the
/// induced function.
class SparsePoly {
public:
    explicit SparsePoly(const Field& f) : f_(&f) {}

    static SparsePoly monomial(const Field& f, u64 e, const Element& c) {
        SparsePoly out(f);
        out.add_term(e, c);
        return out;
    }

    const Field& field() const { return *f_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<u64, u64>& raw_terms() const { return terms_; }

    void add_term(u64 e, const Element& c) {
        if (&c.field() != f_) throw std::invalid_argument("coefficient from another field");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c.index());
        if (!inserted) {
            u64 s = f_->add(it->second, c.index());
            if (s == 0)
                terms_.erase(it);
            else
                it->second = s;
        }
    }

    Element coeff(u64 e) const {
        auto it = terms_.find(e);
        return f_->element(it == terms_.end() ? 0 : it->second);
    }

    Element operator()(const Element& x) const {
        if (&x.field() != f_) throw std::invalid_argument("argument from another field");
        u64 acc = 0;
        for (auto [e, c] : terms_) acc = f_->add(acc, f_->mul(c, f_->pow(x.index(), e)));
        return f_->element(acc);
    }

    /// Pointwise-equal polynomial with every exponent e >= 1 reduced into
    /// [1, |F|-1]; merged coefficients may cancel terms.
    SparsePoly normalized() const {
        SparsePoly out(*f_);
        for (auto [e, c] : terms_)
            out.add_term(modular::rep_exponent(e, f_->order()), f_->element(c));
        return out;
    }

    bool is_normalized() const {
        for (auto [e, c] : terms_)
            if (e != modular::rep_exponent(e, f_->order())) return false;
        return true;
    }

    /// a * f(b * X^d), normalized. Requires a, b nonzero and gcd(d, |F|-1) = 1.
    SparsePoly transformed(const Element& a, const Element& b, u64 d) const {
        if (a.is_zero() || b.is_zero()) throw std::invalid_argument("transform scalars must be nonzero");
        const u64 n = f_->order();
        if (std::gcd(d, n) != 1)
            throw std::invalid_argument("transform exponent not coprime to |F|-1");
        SparsePoly out(*f_);
        for (auto [e, c] : terms_) {
            u64 coeff = f_->mul(a.index(), f_->mul(c, f_->pow(b.index(), e)));
            u64 ee = 0;
            if (e != 0) {
                u64 prod = modular::mulmod(modular::rep_exponent(e, n) % n, d % n, n);
                ee = prod == 0 ? n : prod;
            }
            out.add_term(ee, f_->element(coeff));
        }
        return out;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.f_ == b.f_ && a.terms_ == b.terms_;
    }

    /// Terms as `coeff*X^e` joined by `+`, descending exponents, coefficients
    /// in the element text encoding.
    std::string to_text() const {
        if (terms_.empty()) return f_->to_text(0) + "*X^0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!out.empty()) out += '+';
            out += f_->to_text(it->second);
            out += "*X^";
            out += std::to_string(it->first);
        }
        return out;
    }

    static SparsePoly parse(const Field& f, std::string_view text) {
        SparsePoly out(f);
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto plus = text.find('+', pos);
            if (plus == std::string_view::npos) plus = text.size();
            std::string_view term = text.substr(pos, plus - pos);
            auto star = term.find("*X^");
            if (star == std::string_view::npos) throw std::invalid_argument("bad polynomial term");
            Element c = f.element(f.parse_index(term.substr(0, star)));
            u64 e = std::stoull(std::string(term.substr(star + 3)));
            out.add_term(e, c);
            pos = plus + 1;
        }
        return out;
    }

private:
    const Field* f_;
    std::map<u64, u64> terms_;  // exponent -> nonzero coefficient index
};

/// Dense polynomial, the gcd/resultant workhorse. Coefficients low-to-high,
/// leading coefficient nonzero unless zero polynomial.
class DensePoly {
public:
    explicit DensePoly(const Field& f) : f_(&f) {}
    DensePoly(const Field& f, std::vector<Element> coeffs) : f_(&f) {
        c_.reserve(coeffs.size());
        for (const Element& e : coeffs) {
            if (&e.field() != f_) throw std::invalid_argument("coefficient from another field");
            c_.push_back(e.index());
        }
        trim();
    }

    const Field& field() const { return *f_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Element coeff(std::size_t i) const { return f_->element(i < c_.size() ? c_[i] : 0); }
    Element lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return f_->element(c_.back());
    }

    void set_coeff(std::size_t i, const Element& v) {
        if (i >= c_.size()) c_.resize(i + 1, 0);
        c_[i] = v.index();
        trim();
    }

    Element operator()(const Element& x) const {  // Horner
        u64 acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = f_->add(f_->mul(acc, x.index()), c_[i]);
        return f_->element(acc);
    }

    DensePoly monic() const {
        if (is_zero()) return *this;
        DensePoly out(*f_);
        u64 li = f_->inv(c_.back());
        out.c_.reserve(c_.size());
        for (u64 c : c_) out.c_.push_back(f_->mul(c, li));
        return out;
    }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        DensePoly out(*a.f_);
        if (a.is_zero() || b.is_zero()) return out;
        out.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out.c_[i + j] = a.f_->add(out.c_[i + j], a.f_->mul(a.c_[i], b.c_[j]));
        }
        out.trim();
        return out;
    }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        DensePoly out(*a.f_);
        out.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.c_.size(); ++i)
            out.c_[i] = a.f_->add(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
        out.trim();
        return out;
    }

    /// Remainder of *this divided by d (d nonzero).
    DensePoly mod(const DensePoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by zero polynomial");
        DensePoly r = *this;
        u64 li = f_->inv(d.c_.back());
        while (r.c_.size() >= d.c_.size()) {
            u64 q = f_->mul(r.c_.back(), li);
            std::size_t off = r.c_.size() - d.c_.size();
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                r.c_[off + i] = f_->sub(r.c_[off + i], f_->mul(q, d.c_[i]));
            r.trim();
            if (r.c_.empty()) break;
        }
        return r;
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    const Field* f_;
    std::vector<u64> c_;
};

/// Monic gcd by the Euclidean algorithm; gcd(f, 0) = monic(f).
inline DensePoly gcd(DensePoly a, DensePoly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
    while (!b.is_zero()) {
        DensePoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Sylvester-matrix resultant of f (degree n >= 1) and g (degree m >= 1):
/// determinant of the (m+n) x (m+n) matrix whose first m rows carry the
/// coefficients of f high-to-low and last n rows those of g. With this layout
/// resultant(x-a, x-b) = g(a) = a-b ("f's roots into g" convention).
inline Element resultant(const DensePoly& f, const DensePoly& g) {
    const long n = f.degree(), m = g.degree();
    if (n < 1 || m < 1) throw std::invalid_argument("resultant requires two nonconstant polynomials");
    const Field& F = f.field();
    const std::size_t N = static_cast<std::size_t>(n + m);
    std::vector<u64> M(N * N, 0);
    auto at = [&](std::size_t r, std::size_t c) -> u64& { return M[r * N + c]; };
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j) at(i, i + j) = f.coeff(static_cast<std::size_t>(n - j)).index();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) at(m + i, i + j) = g.coeff(static_cast<std::size_t>(m - j)).index();
    // Gaussian elimination with row-swap sign tracking
    u64 det = 1;
    bool negate = false;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        while (piv < N && at(piv, col) == 0) ++piv;
        if (piv == N) return F.zero();
        if (piv != col) {
            for (std::size_t c = col; c < N; ++c) std::swap(at(piv, c), at(col, c));
            negate = !negate;
        }
        u64 pv = at(col, col);
        det = F.mul(det, pv);
        u64 pvi = F.inv(pv);
        for (std::size_t r = col + 1; r < N; ++r) {
            if (at(r, col) == 0) continue;
            u64 fac = F.mul(at(r, col), pvi);
            for (std::size_t c = col; c < N; ++c)
                at(r, c) = F.sub(at(r, c), F.mul(fac, at(col, c)));
        }
    }
    return negate ? -F.element(det) : F.element(det);
}

/// Dense view of a sparse polynomial (guarded: refuses huge degrees).
inline DensePoly to_dense(const SparsePoly& s, u64 max_degree = u64{1} << 22) {
    const Field& f = s.field();
    DensePoly out(f);
    for (auto [e, c] : s.raw_terms()) {
        if (e > max_degree) throw std::invalid_argument("to_dense: degree too large");
        out.set_coeff(e, f.element(f.add(out.coeff(e).index(), c)));
    }
    return out;
}

}  // namespace fflab
