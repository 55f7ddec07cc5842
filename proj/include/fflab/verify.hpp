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

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "fflab/equiv.hpp"
#include "fflab/families.hpp"
#include "fflab/perm.hpp"

namespace fflab {

enum class CheckOutcome { pass, fail, degenerate };

/// The resultant factorization behind the F1 bijectivity argument. Builds the
/// two quartics in Y (coefficients in X, A, B = A^q, C = A^{q^2}, a) and
/// compares their Sylvester resultant against the closed form
///     a^4 (B+C)^4 X^4 p(X)^2,
/// p(X) = (AC + A a^2 + C a^2 + a^4) X^4 + A^2 B a^2 + A^2 a^4 + A B^2 C
///        + A B^2 a^2 + B^2 C a^2 + B^2 a^4 + B C^2 a^2 + C^2 a^4.
///
/// Preconditions: a in F_q^*, X != 0, A outside F_q (else B = C kills the
/// right side identically). Degenerate leading coefficients (X^2 = B or
/// X^2 = a^2) ask the caller to resample.
inline CheckOutcome check_resultant_identity_t31(const Field& F, const Element& a,
                                                 const Element& X, const Element& A) {
    if (F.p() != 2 || F.degree() % 3 != 0) throw std::invalid_argument("field must be GF(2^{3m})");
    u64 q = 1;
    for (unsigned i = 0; i < F.degree() / 3; ++i) q *= 2;
    if (a.is_zero() || !in_subfield(a, q)) throw std::invalid_argument("a must lie in F_q^*");
    if (X.is_zero()) throw std::invalid_argument("X must be nonzero");
    if (in_subfield(A, q)) throw std::invalid_argument("A must lie outside F_q");

    Element B = A.pow(q), C = A.pow(q * q);
    Element a2 = a * a, a4 = a2 * a2;
    Element X2 = X * X, X4 = X2 * X2;
    if (X2 == B || X2 == a2) return CheckOutcome::degenerate;

    Element abc = A + B + C;
    std::vector<Element> g = {
        a2 * X4 + a2 * abc * X2,                          // Y^0
        F.zero(),                                         // Y^1
        X4 + (C + a2) * X2 + B * B + B * C + a2 * abc,    // Y^2
        F.zero(),                                         // Y^3
        X2 + B,                                           // Y^4
    };
    std::vector<Element> h = {
        C * X4 + (B * C + C * C + a2 * abc) * X2,
        F.zero(),
        X4 + (B + a2) * X2 + a2 * abc,
        F.zero(),
        X2 + a2,
    };
    Element R = resultant(DensePoly(F, g), DensePoly(F, h));

    Element pX = (A * C + A * a2 + C * a2 + a4) * X4 + A * A * B * a2 + A * A * a4 +
                 A * B * B * C + A * B * B * a2 + B * B * C * a2 + B * B * a4 + B * C * C * a2 +
                 C * C * a4;
    Element rhs = a4 * (B + C).pow(4) * X4 * pX * pX;
    return R == rhs ? CheckOutcome::pass : CheckOutcome::fail;
}

/// The quadratic factor of the F5 resultant:
/// 16X^2 + 8XA - 8XB + 8XC + A^2 - 2AB - 2AC + B^2 - 2BC + C^2.
inline Element t35_quadratic(const Field& F, const Element& X, const Element& A,
                             const Element& B, const Element& C) {
    Element s2 = F.scalar(2), s8 = F.scalar(8), s16 = F.scalar(16);
    return s16 * X * X + s8 * X * A - s8 * X * B + s8 * X * C + A * A - s2 * A * B - s2 * A * C +
           B * B - s2 * B * C + C * C;
}

/// The resultant factorization behind the F5 bijectivity argument: the two
/// monic quartics l1, l2 in Y have Sylvester resultant
///     A^8 X^4 Qd(X)^2
/// with Qd the quadratic above. Preconditions A != 0, X != 0; the quartics are
/// monic, so no leading-coefficient degeneracy arises.
inline CheckOutcome check_resultant_identity_t35(const Field& F, const Element& X,
                                                 const Element& A) {
    if (F.p() == 2 || F.degree() % 3 != 0) throw std::invalid_argument("field must be GF(p^{3m}), p odd");
    u64 q = 1;
    for (unsigned i = 0; i < F.degree() / 3; ++i) q *= F.p();
    if (A.is_zero()) throw std::invalid_argument("A must be nonzero");
    if (X.is_zero()) throw std::invalid_argument("X must be nonzero");

    Element B = A.pow(q), C = A.pow(q * q);
    Element s2 = F.scalar(2), s4 = F.scalar(4), s6 = F.scalar(6);
    Element X2 = X * X, X3 = X2 * X, X4 = X2 * X2;
    std::vector<Element> l1 = {
        X4 + s2 * A * X3 - A * B * X2 + A * A * X2,
        s4 * X3 - s2 * A * B * X + s4 * A * X2,
        s2 * A * X + s6 * X2 - A * B,
        s4 * X,
        F.one(),
    };
    std::vector<Element> l2 = {
        X4 - A * C * X2,
        s2 * A * X2 + s4 * X3 - s2 * A * C * X,
        s4 * A * X + A * A + s6 * X2 - A * C,
        s2 * A + s4 * X,
        F.one(),
    };
    Element R = resultant(DensePoly(F, l1), DensePoly(F, l2));
    Element Qd = t35_quadratic(F, X, A, B, C);
    Element rhs = A.pow(8) * X4 * Qd * Qd;
    return R == rhs ? CheckOutcome::pass : CheckOutcome::fail;
}

struct TrialReport {
    u64 passes = 0;
    u64 fails = 0;
    u64 resamples = 0;
    u64 seed = 0;
};

/// Drive one of the identity checks on `trials` admissible random samples,
/// resampling degenerate draws (bounded retries per sample).
inline TrialReport run_resultant_trials(char which, const Field& F, u64 trials, u64 seed) {
    TrialReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> any(0, F.size() - 1);
    u64 q = 1;
    for (unsigned i = 0; i < F.degree() / 3; ++i) q *= F.p();
    std::vector<Element> substar;
    if (which == '1')
        for (const Element& x : subfield_elements(F, q))
            if (!x.is_zero()) substar.push_back(x);
    for (u64 t = 0; t < trials; ++t) {
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 50) throw std::runtime_error("resampling budget exhausted");
            Element X = F.element(any(rng));
            Element A = F.element(any(rng));
            if (X.is_zero() || A.is_zero()) {
                ++rep.resamples;
                continue;
            }
            CheckOutcome out;
            if (which == '1') {
                if (in_subfield(A, q)) {
                    ++rep.resamples;
                    continue;
                }
                Element a = substar[any(rng) % substar.size()];
                out = check_resultant_identity_t31(F, a, X, A);
            } else {
                out = check_resultant_identity_t35(F, X, A);
            }
            if (out == CheckOutcome::degenerate) {
                ++rep.resamples;
                continue;
            }
            (out == CheckOutcome::pass ? rep.passes : rep.fails)++;
            break;
        }
    }
    return rep;
}

// --------------------------------------------------------------------------
// Theorem-level drivers
// --------------------------------------------------------------------------

enum class TheoremId { T31, T32, T33, T34, T35, P31, P32, P33, P41, P42, P43, P44 };

inline const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::T31: return "T31";
        case TheoremId::T32: return "T32";
        case TheoremId::T33: return "T33";
        case TheoremId::T34: return "T34";
        case TheoremId::T35: return "T35";
        case TheoremId::P31: return "P31";
        case TheoremId::P32: return "P32";
        case TheoremId::P33: return "P33";
        case TheoremId::P41: return "P41";
        case TheoremId::P42: return "P42";
        case TheoremId::P43: return "P43";
        case TheoremId::P44: return "P44";
    }
    return "?";
}

inline std::optional<TheoremId> theorem_from_name(std::string_view s) {
    for (TheoremId id : {TheoremId::T31, TheoremId::T32, TheoremId::T33, TheoremId::T34,
                         TheoremId::T35, TheoremId::P31, TheoremId::P32, TheoremId::P33,
                         TheoremId::P41, TheoremId::P42, TheoremId::P43, TheoremId::P44})
        if (s == theorem_name(id)) return id;
    return std::nullopt;
}

struct TheoremCell {
    std::string key;
    bool pass;
    std::string detail;
    double wall_ms;
};

struct TheoremReport {
    TheoremId id;
    u64 seed = 0;
    std::vector<TheoremCell> cells;

    bool all_pass() const {
        for (const TheoremCell& c : cells)
            if (!c.pass) return false;
        return true;
    }
};

struct Grid {
    /// (p, m) cells. Char-2 theorems use p = 2.
    std::vector<std::pair<u64, unsigned>> pm;
    u64 seed = 0;
    unsigned jobs = 1;

    static Grid char2(std::vector<unsigned> ms) {
        Grid g;
        for (unsigned m : ms) g.pm.emplace_back(2, m);
        return g;
    }
};

namespace detail {

class CellTimer {
public:
    explicit CellTimer(TheoremReport& rep, std::string key)
        : rep_(rep), key_(std::move(key)), start_(std::chrono::steady_clock::now()) {}
    void done(bool pass, std::string detail = "") {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start_)
                      .count();
        rep_.cells.push_back({key_, pass, std::move(detail), ms});
    }

private:
    TheoremReport& rep_;
    std::string key_;
    std::chrono::steady_clock::time_point start_;
};

inline std::string pm_key(u64 p, unsigned m) {
    return "p=" + std::to_string(p) + ",m=" + std::to_string(m);
}

inline FieldMap eval_map(const SparsePoly& f) {
    return [f](const Element& x) { return f(x); };
}

// T31/T32 cell bodies: bijective iff a = b, with the named collision pair in
// the converse direction.
inline void family_ab_cells(TheoremReport& rep, Family fam, u64 p, unsigned m, unsigned jobs) {
    FieldPtr F = Field::make(p, 3 * m);
    u64 q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    std::vector<Element> substar;
    for (const Element& x : subfield_elements(*F, q))
        if (!x.is_zero()) substar.push_back(x);
    for (const Element& a : substar) {
        for (const Element& b : substar) {
            CellTimer t(rep, pm_key(p, m) + ",a=" + std::to_string(a.index()) +
                                 ",b=" + std::to_string(b.index()));
            FamilySpec spec = FamilySpec::make(fam, p, m, a, b);
            SparsePoly f = build(spec);
            PermutationVerdict v = is_permutation(eval_map(f), *F, jobs);
            bool predicted = expected_pp(spec);
            bool ok = v.is_permutation == predicted;
            std::string detail = v.is_permutation ? "bijective" : "collision";
            if (!predicted && ok) {
                // the theorem names a concrete colliding pair with 0
                Element x1 = fam == Family::F1 ? a + b
                                               : inv_frobenius_root(a, 2) + inv_frobenius_root(b, 2);
                ok = !x1.is_zero() && f(x1) == f(F->zero());
                detail += ok ? ", contains theorem pair {0," + x1.to_text() + "}"
                             : ", theorem pair missing";
            }
            t.done(ok, detail);
        }
    }
}

}  // namespace detail

/// Run one theorem/proposition over a grid, comparing computed verdicts
/// against the predicted ones; every cell is reported. The catalog is needed
/// for P42-P44.
inline TheoremReport run_theorem(TheoremId id, const Grid& grid,
                                 const std::vector<CatalogEntry>& catalog = {}) {
    TheoremReport rep;
    rep.id = id;
    rep.seed = grid.seed;
    using detail::CellTimer;
    using detail::eval_map;
    using detail::pm_key;

    auto subfield_star = [](const Field& F, u64 q) {
        std::vector<Element> out;
        for (const Element& x : subfield_elements(F, q))
            if (!x.is_zero()) out.push_back(x);
        return out;
    };

    switch (id) {
        case TheoremId::T31:
        case TheoremId::T32:
            for (auto [p, m] : grid.pm)
                detail::family_ab_cells(rep, id == TheoremId::T31 ? Family::F1 : Family::F2, p, m,
                                        grid.jobs);
            break;

        case TheoremId::T33:
        case TheoremId::T34: {
            Family fam = id == TheoremId::T33 ? Family::F3 : Family::F4;
            for (auto [p, m] : grid.pm) {
                CellTimer t(rep, pm_key(p, m));
                FamilySpec spec = FamilySpec::make(fam, p, m);
                SparsePoly f = build(spec);
                PermutationVerdict v = is_permutation(eval_map(f), *spec.field, grid.jobs);
                bool predicted = expected_pp(spec);
                // three routes must agree: sweep, Dickson determinant, circulant gcd
                LinearizedPoly L = *linearized_part(spec);
                bool det_route = !DicksonMatrix(L).det().is_zero();
                std::vector<u32> c(3 * m, 0);
                c[0] ^= 1;
                c[1] ^= 1;
                c[fam == Family::F3 ? 2 * m : m] ^= 1;
                bool circ_route = circulant_invertible(2, c, 3 * m);
                bool ok = v.is_permutation == predicted && det_route == predicted &&
                          circ_route == predicted;
                t.done(ok, std::string("sweep=") + (v.is_permutation ? "pp" : "not-pp") +
                               " det=" + (det_route ? "nonzero" : "zero") +
                               " circulant=" + (circ_route ? "unit" : "non-unit"));
            }
            break;
        }

        case TheoremId::T35:
            for (auto [p, m] : grid.pm) {
                FamilySpec spec = FamilySpec::make(Family::F5, p, m);
                const Field& F = *spec.field;
                SparsePoly f5 = build(spec);
                {
                    CellTimer t(rep, pm_key(p, m) + ",check=pp");
                    PermutationVerdict v = is_permutation(eval_map(f5), F, grid.jobs);
                    t.done(v.is_permutation, "image=" + std::to_string(v.image_size));
                }
                {
                    CellTimer t(rep, pm_key(p, m) + ",check=inverse");
                    InverseMap inv = closed_inverse(spec);
                    InverseTable brute = brute_inverse(eval_map(f5), F, grid.jobs);
                    bool ok = true;
                    for (u64 i = 0; i < F.size() && ok; ++i) {
                        Element x = F.element(i);
                        ok = inv(x) == brute(x);
                    }
                    t.done(ok, "closed form vs brute table");
                }
                {
                    CellTimer t(rep, pm_key(p, m) + ",check=xie_relation");
                    FamilySpec xie = FamilySpec::make(Family::FXIE, p, m);
                    SparsePoly fx = build(xie);
                    u64 q = spec.q();
                    bool ok = true;
                    for (u64 i = 0; i < F.size() && ok; ++i) {
                        Element x = F.element(i);
                        ok = fx(x) == f5(x.pow(q));
                    }
                    t.done(ok, "f(X) = f5(X^q) pointwise");
                }
                {
                    CellTimer t(rep, pm_key(p, m) + ",check=xie_inverse");
                    FamilySpec xie = FamilySpec::make(Family::FXIE, p, m);
                    SparsePoly fx = build(xie);
                    InverseMap finv = closed_inverse(xie);
                    t.done(compose_check(eval_map(fx), finv.map, F), "(f5^{-1})^{q^2} composes");
                }
            }
            break;

        case TheoremId::P31:
            for (auto [p, m] : grid.pm) {
                FieldPtr F = Field::make(p, 3 * m);
                u64 q = 1;
                for (unsigned i = 0; i < m; ++i) q *= p;
                for (const Element& a : subfield_star(*F, q)) {
                    CellTimer t(rep, pm_key(p, m) + ",a=" + std::to_string(a.index()));
                    FamilySpec spec = FamilySpec::make(Family::F1, p, m, a, a);
                    SparsePoly f = build(spec);
                    InverseMap inv = closed_inverse(spec);
                    InverseTable brute = brute_inverse(eval_map(f), *F, grid.jobs);
                    bool ok = true;
                    for (u64 i = 0; i < F->size() && ok; ++i) {
                        Element x = F->element(i);
                        ok = inv(x) == brute(x);
                    }
                    ok = ok && compose_check(eval_map(f), inv.map, *F);
                    t.done(ok, "closed form vs brute table + composition");
                }
            }
            break;

        case TheoremId::P32:
            for (auto [p, m] : grid.pm) {
                FieldPtr F = Field::make(p, 3 * m);
                u64 q = 1;
                for (unsigned i = 0; i < m; ++i) q *= p;
                {
                    CellTimer t(rep, pm_key(p, m) + ",check=exponent_congruence");
                    u64 n = F->order();
                    u64 half = modular::invmod(2, n);
                    u64 lhs = modular::invmod((q + 1) % n, n);
                    u64 rhs = modular::mulmod((q * q - q + 1) % n, half, n);
                    t.done(lhs == rhs, "(q+1)^{-1} = (q^2-q+1)/2 in Z_{q^3-1}");
                }
                for (const Element& a : subfield_star(*F, q)) {
                    CellTimer t(rep, pm_key(p, m) + ",a=" + std::to_string(a.index()));
                    FamilySpec spec = FamilySpec::make(Family::F2, p, m, a, a);
                    SparsePoly f = build(spec);
                    InverseMap inv = closed_inverse(spec);
                    t.done(compose_check(eval_map(f), inv.map, *F), "Dickson inverse composes");
                }
            }
            break;

        case TheoremId::P33:
            for (auto [p, m] : grid.pm) {
                for (Family fam : {Family::F3, Family::F4}) {
                    FamilySpec spec = FamilySpec::make(fam, p, m);
                    std::string key = pm_key(p, m) + ",family=" + family_name(fam);
                    if (!expected_pp(spec)) {
                        rep.cells.push_back({key, true, "not applicable (not a permutation)", 0.0});
                        continue;
                    }
                    CellTimer t(rep, key);
                    SparsePoly f = build(spec);
                    InverseMap inv = closed_inverse(spec);
                    t.done(compose_check(eval_map(f), inv.map, *spec.field),
                           "Dickson inverse composes");
                }
            }
            break;

        case TheoremId::P41: {
            // pairwise inequivalence of the new families at the grid's q
            for (auto [p, m] : grid.pm) {
                std::vector<Family> fams;
                for (Family fam : {Family::F1, Family::F2, Family::F3, Family::F4})
                    if (expected_pp(FamilySpec::make(fam, p, m))) fams.push_back(fam);
                QmOptions opt;
                opt.seed = grid.seed;
                FieldPtr F = Field::make(p, 3 * m);
                opt.filter_only = F->size() > opt.exhaustive_limit;
                for (std::size_t i = 0; i < fams.size(); ++i) {
                    for (std::size_t j = i + 1; j < fams.size(); ++j) {
                        CellTimer t(rep, pm_key(p, m) + ",pair=" + family_name(fams[i]) +
                                            ":" + family_name(fams[j]));
                        SparsePoly fi = build(FamilySpec::make(fams[i], p, m));
                        SparsePoly fj = build(FamilySpec::make(fams[j], p, m));
                        EquivalenceReport r = qm_decide(fi, fj, opt);
                        bool ok = r.verdict != QmVerdict::equivalent &&
                                  (r.authoritative ||
                                   r.verdict == QmVerdict::inequivalent_by_filter);
                        t.done(ok, std::string(verdict_name(r.verdict)) + " via " +
                                       method_name(r.method));
                    }
                }
            }
            break;
        }

        case TheoremId::P42:
        case TheoremId::P43: {
            std::vector<Family> fams = id == TheoremId::P42
                                           ? std::vector<Family>{Family::F1}
                                           : std::vector<Family>{Family::F2, Family::F3, Family::F4};
            for (auto [p, m] : grid.pm) {
                auto inst = catalog_at(catalog, p, m);
                QmOptions opt;
                opt.seed = grid.seed;
                for (Family fam : fams) {
                    FamilySpec spec = FamilySpec::make(fam, p, m);
                    if (!expected_pp(spec)) continue;
                    SparsePoly f = build(spec);
                    for (const InstantiatedEntry& e : inst.included) {
                        if (e.table != 2) continue;
                        CellTimer t(rep, pm_key(p, m) + "," + family_name(fam) + ":" + e.label);
                        EquivalenceReport r;
                        if (e.poly) {
                            r = qm_decide(f, *e.poly, opt);
                        } else {
                            // free coefficients: the exponent filter is the
                            // decision; empty filter refutes every instance
                            auto ds = d_filter(e.exps, exponent_set(f), spec.field->order());
                            r.verdict = ds.empty() ? QmVerdict::inequivalent_by_filter
                                                   : QmVerdict::inequivalent;
                            r.method = QmMethod::exponent_filter;
                            r.authoritative = ds.empty();
                            r.d_surviving = ds.size();
                        }
                        bool ok = r.verdict != QmVerdict::equivalent && r.authoritative;
                        t.done(ok, std::string(verdict_name(r.verdict)) + " via " +
                                       method_name(r.method));
                    }
                }
            }
            break;
        }

        case TheoremId::P44:
            for (auto [p, m] : grid.pm) {
                FamilySpec spec = FamilySpec::make(Family::F5, p, m);
                SparsePoly f5inv = *inverse_polynomial(spec);
                auto inst = catalog_at(catalog, p, m);
                QmOptions opt;
                opt.seed = grid.seed;
                for (const InstantiatedEntry& e : inst.included) {
                    if (e.table != 3) continue;
                    CellTimer t(rep, pm_key(p, m) + ",f5inv:" + e.label);
                    EquivalenceReport r;
                    if (e.poly) {
                        r = qm_decide(f5inv, *e.poly, opt);
                    } else {
                        auto ds = d_filter(e.exps, exponent_set(f5inv), spec.field->order());
                        r.verdict = ds.empty() ? QmVerdict::inequivalent_by_filter
                                               : QmVerdict::inequivalent;
                        r.method = QmMethod::exponent_filter;
                        r.authoritative = ds.empty();
                        r.d_surviving = ds.size();
                    }
                    bool ok = r.verdict != QmVerdict::equivalent && r.authoritative;
                    t.done(ok, std::string(verdict_name(r.verdict)) + " via " +
                                   method_name(r.method));
                }
            }
            break;
    }
    return rep;
}

}  // namespace fflab
