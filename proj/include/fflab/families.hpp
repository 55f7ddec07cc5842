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

#include <functional>
#include <optional>
#include <string>
#include <tuple>

#include "fflab/linearized.hpp"
#include "fflab/perm.hpp"
#include "fflab/poly.hpp"

namespace fflab {

/// The trinomial families over GF(q^3) handled by this lab. F1-F4 live in even
/// characteristic (q = 2^m), F5 and Xie's trinomial in odd characteristic.
///
///   F1:  X^{2q^2} + a X^{q^2+q-1} + b X^{q^2-q+1}        (PP iff b = a)
///   F2:  a X^{1+q} + b X^{1+q^2} + X^{2q^2+2q}            (PP iff b = a)
///   F3:  X^{1+q} + X^{1+q^2} + X^{2q+2}                   (PP iff m % 3 != 1)
///   F4:  X^{1+q} + X^{1+q^2} + X^{2q^2+2}                 (PP iff m % 3 != 2)
///   F5:  2 X^{q^2} + X^{q^2-q+1} + X^{q^2+q-1}            (PP, q odd)
///   FXIE: X^{q(q^2-q+1)} + X^{q^2-q+1} + 2X = F5(X^q)     (PP, q odd)
enum class Family { F1, F2, F3, F4, F5, FXIE };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::F1: return "F1";
        case Family::F2: return "F2";
        case Family::F3: return "F3";
        case Family::F4: return "F4";
        case Family::F5: return "F5";
        case Family::FXIE: return "FXIE";
    }
    return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
    for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5, Family::FXIE})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

/// A family instance: identifier, characteristic p, extension parameter m
/// (ambient field GF(p^{3m}), q = p^m), and for F1/F2 the subfield
/// coefficients a, b in F_q^*.
struct FamilySpec {
    Family id;
    u64 p;
    unsigned m;
    FieldPtr field;  // GF(p^{3m})
    Element a, b;    // F1/F2 only; defaults to 1 otherwise

    u64 q() const {
        u64 v = 1;
        for (unsigned i = 0; i < m; ++i) v *= p;
        return v;
    }
    u64 size() const { return field->size(); }

    static FamilySpec make(Family id, u64 p, unsigned m, std::optional<Element> a = std::nullopt,
                           std::optional<Element> b = std::nullopt) {
        bool even = id == Family::F1 || id == Family::F2 || id == Family::F3 || id == Family::F4;
        if (even && p != 2) throw std::invalid_argument("family requires characteristic 2");
        if (!even && p == 2) throw std::invalid_argument("family requires odd characteristic");
        if (m < 1 || 3 * m > Field::max_degree) throw std::invalid_argument("m out of range");
        FamilySpec s;
        s.id = id;
        s.p = p;
        s.m = m;
        s.field = Field::make(p, 3 * m);
        s.a = a.value_or(s.field->one());
        s.b = b.value_or(s.field->one());
        u64 q = s.q();
        for (const Element* c : {&s.a, &s.b}) {
            if (&c->field() != s.field.get()) throw std::invalid_argument("coefficient from another field");
            if (c->is_zero() || !in_subfield(*c, q))
                throw std::invalid_argument("family coefficients must lie in F_q^*");
        }
        return s;
    }

    /// Compact text form "F1:p=2,m=3,a=<elt>,b=<elt>" (a, b only for F1/F2).
    std::string to_text() const {
        std::string out = family_name(id);
        out += ":p=" + std::to_string(p) + ",m=" + std::to_string(m);
        if (id == Family::F1 || id == Family::F2)
            out += ",a=" + a.to_text() + ",b=" + b.to_text();
        return out;
    }

    static FamilySpec parse(std::string_view text) {
        auto colon = text.find(':');
        if (colon == std::string_view::npos) throw std::invalid_argument("bad family text");
        auto fam = family_from_name(text.substr(0, colon));
        if (!fam) throw std::invalid_argument("unknown family");
        u64 p = 0;
        unsigned m = 0;
        std::string a_text, b_text;
        std::string_view rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            // element texts contain no commas for p <= 7; fields in order p,m,a,b
            if (comma == std::string_view::npos) comma = rest.size();
            std::string_view kv = rest.substr(pos, comma - pos);
            auto eq = kv.find('=');
            if (eq == std::string_view::npos) throw std::invalid_argument("bad family parameter");
            std::string_view key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "p")
                p = std::stoull(std::string(val));
            else if (key == "m")
                m = static_cast<unsigned>(std::stoul(std::string(val)));
            else if (key == "a")
                a_text = std::string(val);
            else if (key == "b")
                b_text = std::string(val);
            else
                throw std::invalid_argument("unknown family parameter");
            pos = comma + 1;
        }
        if (p == 0 || m == 0) throw std::invalid_argument("family text needs p and m");
        FieldPtr f = Field::make(p, 3 * m);
        std::optional<Element> a, b;
        if (!a_text.empty()) a = f->element(f->parse_index(a_text));
        if (!b_text.empty()) b = f->element(f->parse_index(b_text));
        return make(*fam, p, m, a, b);
    }
};

/// The family polynomial, normalized over GF(p^{3m}).
inline SparsePoly build(const FamilySpec& s) {
    const Field& F = *s.field;
    const u64 q = s.q();
    SparsePoly f(F);
    switch (s.id) {
        case Family::F1:
            f.add_term(2 * q * q, F.one());
            f.add_term(q * q + q - 1, s.a);
            f.add_term(q * q - q + 1, s.b);
            break;
        case Family::F2:
            f.add_term(1 + q, s.a);
            f.add_term(1 + q * q, s.b);
            f.add_term(2 * q * q + 2 * q, F.one());
            break;
        case Family::F3:
            f.add_term(1 + q, F.one());
            f.add_term(1 + q * q, F.one());
            f.add_term(2 * q + 2, F.one());
            break;
        case Family::F4:
            f.add_term(1 + q, F.one());
            f.add_term(1 + q * q, F.one());
            f.add_term(2 * q * q + 2, F.one());
            break;
        case Family::F5:
            f.add_term(q * q, F.scalar(2));
            f.add_term(q * q - q + 1, F.one());
            f.add_term(q * q + q - 1, F.one());
            break;
        case Family::FXIE:
            f.add_term(q * (q * q - q + 1), F.one());
            f.add_term(q * q - q + 1, F.one());
            f.add_term(1, F.scalar(2));
            break;
    }
    return f.normalized();
}

/// The theorem-predicted permutation verdict for a spec; the oracle target for
/// the exhaustive checks.
inline bool expected_pp(const FamilySpec& s) {
    switch (s.id) {
        case Family::F1:
        case Family::F2: return s.a == s.b;
        case Family::F3: return s.m % 3 != 1;
        case Family::F4: return s.m % 3 != 2;
        case Family::F5:
        case Family::FXIE: return true;
    }
    return false;
}

/// The linearized factor L with f = L(X^e): F2 has L = aX + X^{2q} + aX^{q^2}
/// (e = q+1), F3 has L1 = X + X^2 + X^{q^2} (e = q+1), F4 has L2 = X + X^2 +
/// X^q (e = q^2+1). Coefficients are 2-linearized and may collide at m = 1.
inline std::optional<LinearizedPoly> linearized_part(const FamilySpec& s) {
    if (s.id != Family::F2 && s.id != Family::F3 && s.id != Family::F4) return std::nullopt;
    const Field& F = *s.field;
    const unsigned n = 3 * s.m;
    std::vector<Element> c(n, F.zero());
    auto bump = [&](unsigned i, const Element& v) { c[i % n] = c[i % n] + v; };
    switch (s.id) {
        case Family::F2:
            bump(0, s.a);
            bump(s.m + 1, F.one());
            bump(2 * s.m, s.a);
            break;
        case Family::F3:
            bump(0, F.one());
            bump(1, F.one());
            bump(2 * s.m, F.one());
            break;
        case Family::F4:
            bump(0, F.one());
            bump(1, F.one());
            bump(s.m, F.one());
            break;
        default: break;
    }
    return LinearizedPoly(F, 2, std::move(c));
}

/// The monomial exponent inverse used by the Dickson-power inverses:
/// (q+1)^{-1} mod q^3-1 for F2/F3, (q^2+1)^{-1} for F4. The paper's fractional
/// displays (q^2-q+1)/2 and (q^3-q^2+q)/2 are these inverses, with division by
/// 2 read as multiplication by 2^{-1} in Z_{q^3-1}.
inline std::optional<u64> inverse_exponent(const FamilySpec& s) {
    const u64 q = s.q(), n = s.field->order();
    switch (s.id) {
        case Family::F2:
        case Family::F3: return modular::invmod((q + 1) % n, n);
        case Family::F4: return modular::invmod((q * q + 1) % n, n);
        default: return std::nullopt;
    }
}

/// P1, P2 and the relative trace from the F1 inverse formula:
/// P1(x) = x^{q+2} + x^{2q+1} + x^{q^2+2q} + x^{2q^2+q}, P2(x) = x + a^2,
/// Tr(x) = x + x^q + x^{q^2}.
inline std::tuple<Element, Element, Element> p1_p2_tr(const Element& x, const Element& a) {
    const Field& F = x.field();
    if (F.p() != 2) throw std::invalid_argument("p1_p2_tr requires characteristic 2");
    if (F.degree() % 3 != 0) throw std::invalid_argument("ambient field must be GF(2^{3m})");
    u64 q = 1;
    for (unsigned i = 0; i < F.degree() / 3; ++i) q *= 2;
    Element p1 = x.pow(q + 2) + x.pow(2 * q + 1) + x.pow(q * q + 2 * q) + x.pow(2 * q * q + q);
    Element p2 = x + a * a;
    Element tr = rel_trace(x, q);
    return {p1, p2, tr};
}

/// An evaluable inverse on the ambient field, tagged with how it was built.
struct InverseMap {
    enum class Method { closed_form, dickson_power, brute_table };
    Method method;
    FieldMap map;
    Element operator()(const Element& x) const { return map(x); }
};

inline const char* method_name(InverseMap::Method m) {
    switch (m) {
        case InverseMap::Method::closed_form: return "closed_form";
        case InverseMap::Method::dickson_power: return "dickson_power";
        case InverseMap::Method::brute_table: return "brute_table";
    }
    return "?";
}

/// The closed-form compositional inverse of a family instance. Requires
/// expected_pp(spec).
///
/// F1 is the piecewise form: at X = a^2 the inverse is a; elsewhere it is the
/// fourth inverse-Frobenius root of
///   (a^2 P1(X) + a^4 Tr(X)^2 + X^{1+2q+q^2}) * (X+a^2)^{q^3-q^2-2}.
/// The product-over-the-rest-of-the-field term in the polynomial form is the
/// indicator of X = a^2 and is realized by the branch (pointwise equal).
///
/// F2/F3/F4 evaluate L^{-1} (Dickson cofactor inverse) and raise to the
/// modular inverse of q+1 resp. q^2+1.
///
/// F5 is (-X + X^q - X^{q^2} + 2 X^{(q^2+1)/2}) / 4, and FXIE composes F5's
/// inverse with the q^2-Frobenius.
inline InverseMap closed_inverse(const FamilySpec& s) {
    if (!expected_pp(s)) throw std::invalid_argument("spec is not a permutation by its theorem");
    const Field& F = *s.field;
    const u64 q = s.q();
    switch (s.id) {
        case Family::F1: {
            Element a = s.a;
            Element a2 = a * a, a4 = a2 * a2;
            u64 num_exp = 1 + 2 * q + q * q;
            u64 den_exp = q * q * q - q * q - 2;
            return {InverseMap::Method::closed_form, [a, a2, a4, num_exp, den_exp](const Element& x) {
                        if (x == a2) return a;
                        auto [p1, p2, tr] = p1_p2_tr(x, a);
                        Element y = (a2 * p1 + a4 * tr * tr + x.pow(num_exp)) * p2.pow(den_exp);
                        return inv_frobenius_root(y, 4);
                    }};
        }
        case Family::F2:
        case Family::F3:
        case Family::F4: {
            LinearizedPoly li = linv(*linearized_part(s));
            u64 e = *inverse_exponent(s);
            return {InverseMap::Method::dickson_power,
                    [li, e](const Element& x) { return li(x).pow(e); }};
        }
        case Family::F5: {
            Element inv4 = F.scalar(4).inverse();
            Element two = F.scalar(2);
            u64 half = (q * q + 1) / 2;
            return {InverseMap::Method::closed_form, [q, half, inv4, two](const Element& x) {
                        Element y = -x + x.pow(q) - x.pow(q * q) + two * x.pow(half);
                        return y * inv4;
                    }};
        }
        case Family::FXIE: {
            FamilySpec base = FamilySpec::make(Family::F5, s.p, s.m);
            InverseMap f5inv = closed_inverse(base);
            return {InverseMap::Method::closed_form, [f5inv, q](const Element& x) {
                        return f5inv(x).pow(q * q);
                    }};
        }
    }
    throw std::logic_error("unreachable");
}

/// The inverse as an explicit sparse polynomial, for the families whose
/// closed form is already polynomial: F5's quadrinomial
/// (-X + X^q - X^{q^2} + 2 X^{(q^2+1)/2})/4 and its q^2-Frobenius for FXIE.
inline std::optional<SparsePoly> inverse_polynomial(const FamilySpec& s) {
    if (s.id != Family::F5 && s.id != Family::FXIE) return std::nullopt;
    const Field& F = *s.field;
    const u64 q = s.q();
    Element inv4 = F.scalar(4).inverse();
    SparsePoly f5inv(F);
    f5inv.add_term(1, -inv4);
    f5inv.add_term(q, inv4);
    f5inv.add_term(q * q, -inv4);
    f5inv.add_term((q * q + 1) / 2, F.scalar(2) * inv4);
    if (s.id == Family::F5) return f5inv.normalized();
    // (sum c_e X^e)^{q^2} = sum c_e^{q^2} X^{e q^2}; coefficients lie in F_p
    SparsePoly out(F);
    for (auto [e, c] : f5inv.raw_terms())
        out.add_term(modular::mulmod(e, q * q, F.order()) == 0
                         ? F.order()
                         : modular::mulmod(e, q * q, F.order()),
                     F.element(c).pow(q * q));
    return out.normalized();
}

}  // namespace fflab
