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

#include <optional>
#include <span>
#include <vector>

#include "fflab/poly.hpp"

namespace fflab {

namespace detail {

/// Determinant and (when nonsingular) inverse of an n x n matrix of field
/// element indices by Gauss-Jordan elimination. Returns det; inv filled iff
/// det != 0.
inline u64 gauss_det_inverse(const Field& F, std::vector<u64> M, std::size_t n,
                             std::vector<u64>* inv) {
    std::vector<u64> I;
    if (inv) {
        I.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) I[i * n + i] = 1;
    }
    u64 det = 1;
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv * n + col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(M[piv * n + c], M[col * n + c]);
                if (inv) std::swap(I[piv * n + c], I[col * n + c]);
            }
            negate = !negate;
        }
        u64 pv = M[col * n + col];
        det = F.mul(det, pv);
        u64 pvi = F.inv(pv);
        for (std::size_t c = 0; c < n; ++c) {
            M[col * n + c] = F.mul(M[col * n + c], pvi);
            if (inv) I[col * n + c] = F.mul(I[col * n + c], pvi);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || M[r * n + col] == 0) continue;
            u64 fac = M[r * n + col];
            for (std::size_t c = 0; c < n; ++c) {
                M[r * n + c] = F.sub(M[r * n + c], F.mul(fac, M[col * n + c]));
                if (inv) I[r * n + c] = F.sub(I[r * n + c], F.mul(fac, I[col * n + c]));
            }
        }
    }
    if (negate) det = F.neg(det);
    if (inv) *inv = std::move(I);
    return det;
}

}  // namespace detail

/// A b-linearized polynomial L(X) = sum_i coeffs[i] X^{b^i} over GF(b^n),
/// where b is a power of the characteristic. An additive (F_b-linear) map.
class LinearizedPoly {
public:
    LinearizedPoly(const Field& f, u64 base, std::vector<Element> coeffs) : f_(&f), b_(base) {
        // base must be p^s with s*n = k
        u64 bb = base;
        unsigned s = 0;
        while (bb > 1 && bb % f.p() == 0) {
            bb /= f.p();
            ++s;
        }
        if (bb != 1 || s == 0 || f.degree() % s != 0)
            throw std::invalid_argument("linearization base must be a power of p with b^n = |F|");
        n_ = f.degree() / s;
        if (coeffs.size() != n_) throw std::invalid_argument("coefficient count must equal n");
        c_.reserve(n_);
        for (const Element& e : coeffs) {
            if (&e.field() != f_) throw std::invalid_argument("coefficient from another field");
            c_.push_back(e.index());
        }
    }

    const Field& field() const { return *f_; }
    u64 base() const { return b_; }
    unsigned n() const { return n_; }
    Element coeff(unsigned i) const { return f_->element(c_.at(i)); }

    Element operator()(const Element& x) const {
        if (&x.field() != f_) throw std::invalid_argument("argument from another field");
        u64 acc = 0, be = 1;
        for (unsigned i = 0; i < n_; ++i) {
            acc = f_->add(acc, f_->mul(c_[i], f_->pow(x.index(), be)));
            be *= b_;
        }
        return f_->element(acc);
    }

    friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) {
        return a.f_ == b.f_ && a.b_ == b.b_ && a.c_ == b.c_;
    }

private:
    const Field* f_;
    u64 b_;
    unsigned n_;
    std::vector<u64> c_;
};

/// The n x n Dickson matrix of a linearized polynomial:
/// entry(i, j) = coeffs[(i - j) mod n]^{b^j}. Column 0 carries the raw
/// coefficients; each later column is the b-Frobenius of a cyclic shift.
class DicksonMatrix {
public:
    explicit DicksonMatrix(const LinearizedPoly& L) : f_(&L.field()), n_(L.n()) {
        m_.resize(static_cast<std::size_t>(n_) * n_);
        u64 be = 1;
        for (unsigned j = 0; j < n_; ++j) {
            for (unsigned i = 0; i < n_; ++i) {
                unsigned idx = (i + n_ - j % n_) % n_;
                m_[static_cast<std::size_t>(i) * n_ + j] = f_->pow(L.coeff(idx).index(), be);
            }
            be *= L.base();
        }
    }

    const Field& field() const { return *f_; }
    unsigned n() const { return n_; }
    Element at(unsigned i, unsigned j) const {
        return f_->element(m_.at(static_cast<std::size_t>(i) * n_ + j));
    }

    Element det() const { return f_->element(detail::gauss_det_inverse(*f_, m_, n_, nullptr)); }

    /// The (i,0) cofactors, read as det * (D^{-1})_{0,i}; empty when singular.
    std::vector<Element> first_column_cofactors() const {
        std::vector<u64> inv;
        u64 det = detail::gauss_det_inverse(*f_, m_, n_, &inv);
        std::vector<Element> out;
        if (det == 0) return out;
        out.reserve(n_);
        for (unsigned i = 0; i < n_; ++i) out.push_back(f_->element(f_->mul(det, inv[i])));
        return out;
    }

    std::optional<std::vector<Element>> inverse_first_row() const {
        std::vector<u64> inv;
        if (detail::gauss_det_inverse(*f_, m_, n_, &inv) == 0) return std::nullopt;
        std::vector<Element> out;
        out.reserve(n_);
        for (unsigned i = 0; i < n_; ++i) out.push_back(f_->element(inv[i]));
        return out;
    }

    std::string to_text() const {
        std::string out;
        for (unsigned i = 0; i < n_; ++i) {
            for (unsigned j = 0; j < n_; ++j) {
                if (j) out += ' ';
                out += at(i, j).to_text();
            }
            out += '\n';
        }
        return out;
    }

private:
    const Field* f_;
    unsigned n_;
    std::vector<u64> m_;
};

inline DicksonMatrix dickson_matrix(const LinearizedPoly& L) { return DicksonMatrix(L); }

inline Element det(const DicksonMatrix& D) { return D.det(); }

/// Compositional inverse of a linearized permutation: coefficients are
/// (det D)^{-1} times the (i,0) cofactors of D, i.e. the first row of D^{-1}.
/// Throws when det D = 0 (not a permutation).
inline LinearizedPoly linv(const LinearizedPoly& L) {
    DicksonMatrix D(L);
    auto row = D.inverse_first_row();
    if (!row) throw std::domain_error("linearized polynomial is not a permutation");
    return LinearizedPoly(L.field(), L.base(), std::move(*row));
}

/// Invertibility of the n x n circulant with first column c over F_p, decided
/// as gcd(c(x), x^n - 1) = 1 in F_p[x]. (The root-of-unity product formula
/// needs a primitive n-th root, which need not exist; the ideal criterion is
/// equivalent and always applies.)
inline bool circulant_invertible(u64 p, std::span<const u32> c, unsigned n) {
    if (n == 0) throw std::invalid_argument("circulant size must be positive");
    bool all_zero = true;
    for (u32 v : c)
        if (v % p != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("all-zero circulant");
    FieldPtr fp = Field::make(p, 1);
    DensePoly cp(*fp);
    for (std::size_t i = 0; i < c.size(); ++i)
        cp.set_coeff(i % n, fp->element(c[i] % p) + cp.coeff(i % n));
    DensePoly xn(*fp);
    xn.set_coeff(0, -fp->one());
    xn.set_coeff(n, fp->one());
    return gcd(cp, xn).degree() == 0;
}

}  // namespace fflab
