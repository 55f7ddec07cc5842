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
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fflab/families.hpp"
#include "fflab/poly.hpp"

namespace fflab {

// --------------------------------------------------------------------------
// Exponent sets and the d-filter
// --------------------------------------------------------------------------

/// Exponents of a normalized polynomial as a set of representatives in
/// [1, Q-1]. Constant terms are tracked separately by callers and must not be
/// mixed in.
using ExponentSet = std::set<u64>;

inline ExponentSet exponent_set(const SparsePoly& f) {
    if (!f.is_normalized()) throw std::invalid_argument("exponent_set needs a normalized polynomial");
    if (f.raw_terms().count(0)) throw std::invalid_argument("constant terms are tracked separately");
    ExponentSet out;
    for (auto [e, c] : f.raw_terms()) out.insert(e);
    return out;
}

/// All units d of Z_{Q-1} with {d*e : e in E} = F as sets. A necessary
/// condition for g -> f equivalence when E = exponents(g), F = exponents(f):
/// f(X) = a g(b X^d) maps each exponent e of g to d*e with no merging.
inline std::vector<u64> d_filter(const ExponentSet& E, const ExponentSet& F, u64 q_minus_1) {
    std::vector<u64> out;
    if (E.size() != F.size()) return out;
    for (u64 d : modular::units(q_minus_1)) {
        bool ok = true;
        for (u64 e : E) {
            u64 prod = modular::mulmod(e % q_minus_1, d, q_minus_1);
            if (!F.count(prod == 0 ? q_minus_1 : prod)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(d);
    }
    return out;
}

// --------------------------------------------------------------------------
// QM-equivalence decision
// --------------------------------------------------------------------------

enum class QmVerdict { equivalent, inequivalent, inequivalent_by_filter };
enum class QmMethod { exponent_filter, full_decision };

inline const char* verdict_name(QmVerdict v) {
    switch (v) {
        case QmVerdict::equivalent: return "equivalent";
        case QmVerdict::inequivalent: return "inequivalent";
        case QmVerdict::inequivalent_by_filter: return "inequivalent_by_filter";
    }
    return "?";
}

inline const char* method_name(QmMethod m) {
    return m == QmMethod::exponent_filter ? "exponent_filter" : "full_decision";
}

struct QmWitness {
    u64 d;
    Element a, b;
};

struct EquivalenceReport {
    QmVerdict verdict;
    QmMethod method;
    /// False when the field was too large for exhaustive confirmation (or the
    /// comparison was filter-only against a free-coefficient pattern); then
    /// only inequivalent_by_filter is a proof.
    bool authoritative;
    std::optional<QmWitness> witness;
    u64 d_candidates_examined;  // units of Z_{Q-1} swept by the filter
    u64 d_surviving;
    std::string note;
};

struct QmOptions {
    bool filter_only = false;
    u64 exhaustive_limit = u64{1} << 12;
    u64 seed = 0;
    u64 root_search_limit = 4095;  // |F*| bound for brute-force root extraction
};

namespace detail {

/// All b in F* with b^k = c. Enumerates F* when small; otherwise only the
/// coprime case has a cheap unique root, and an empty result with
/// `complete=false` signals the gap.
inline std::vector<Element> roots_of_unity_shift(const Field& F, u64 k, const Element& c,
                                                 u64 search_limit, bool& complete) {
    complete = true;
    std::vector<Element> out;
    const u64 n = F.order();
    if (n <= search_limit) {
        for (u64 i = 1; i < F.size(); ++i) {
            Element b = F.element(i);
            if (b.pow(k) == c) out.push_back(b);
        }
        return out;
    }
    u64 g = std::gcd(k % n, n);
    if (g == 1) {
        out.push_back(c.pow(modular::invmod(k % n, n)));
        return out;
    }
    complete = false;
    return out;
}

}  // namespace detail

/// Decide quasi-multiplicative equivalence: does f(X) = a g(b X^d) hold for
/// some unit d of Z_{Q-1} and a, b in F*? Exhaustive d-filter, coefficient
/// solving per surviving d, then functional confirmation (exhaustive when
/// |F| <= exhaustive_limit, sampled otherwise; sampled runs are marked
/// non-authoritative rather than silently downgraded).
inline EquivalenceReport qm_decide(const SparsePoly& f_in, const SparsePoly& g_in,
                                   const QmOptions& opt = {}) {
    if (&f_in.field() != &g_in.field()) throw std::invalid_argument("polynomials over different fields");
    const Field& F = f_in.field();
    const u64 n = F.order();
    SparsePoly f = f_in.normalized(), g = g_in.normalized();
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("qm_decide needs nonzero polynomials");

    EquivalenceReport rep;
    rep.d_candidates_examined = modular::count_units(n);
    auto ef = exponent_set(f), eg = exponent_set(g);
    auto candidates = d_filter(eg, ef, n);
    rep.d_surviving = candidates.size();

    if (candidates.empty()) {
        rep.verdict = QmVerdict::inequivalent_by_filter;
        rep.method = QmMethod::exponent_filter;
        rep.authoritative = true;
        return rep;
    }
    if (opt.filter_only) {
        rep.verdict = QmVerdict::inequivalent;
        rep.method = QmMethod::exponent_filter;
        rep.authoritative = false;
        rep.note = "filter-only mode: " + std::to_string(candidates.size()) +
                   " d-candidates not examined";
        return rep;
    }

    const bool exhaustive = F.size() <= opt.exhaustive_limit;
    bool roots_complete_everywhere = true;

    auto confirm = [&](u64 d, const Element& a, const Element& b) -> bool {
        if (exhaustive) {
            for (u64 i = 0; i < F.size(); ++i) {
                Element x = F.element(i);
                if (f(x) != a * g(b * x.pow(d))) return false;
            }
            return true;
        }
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<u64> dist(0, F.size() - 1);
        for (int t = 0; t < 64; ++t) {
            Element x = F.element(dist(rng));
            if (f(x) != a * g(b * x.pow(d))) return false;
        }
        u64 sub_q = F.degree() % 3 == 0 ? [&] {
            u64 v = 1;
            for (unsigned i = 0; i < F.degree() / 3; ++i) v *= F.p();
            return v;
        }()
                                        : F.p();
        for (const Element& x : subfield_elements(F, sub_q))
            if (f(x) != a * g(b * x.pow(d))) return false;
        return true;
    };

    for (u64 d : candidates) {
        // each term c_e X^e of g contributes a*c_e*b^e at exponent d*e of f
        auto term_exp = [&](u64 e) {
            u64 prod = modular::mulmod(e % n, d, n);
            return prod == 0 ? n : prod;
        };
        auto it = g.raw_terms().begin();
        u64 e1 = it->first;
        Element c1 = F.element(it->second);
        Element r1 = f.coeff(term_exp(e1)) / c1;  // = a * b^{e1}
        std::vector<Element> b_roots;
        bool roots_complete = true;
        if (g.term_count() == 1) {
            b_roots.push_back(F.one());
        } else {
            ++it;
            u64 e2 = it->first;
            Element c2 = F.element(it->second);
            Element r2 = f.coeff(term_exp(e2)) / c2;  // = a * b^{e2}
            b_roots = detail::roots_of_unity_shift(F, e2 - e1, r2 / r1, opt.root_search_limit,
                                                   roots_complete);
        }
        roots_complete_everywhere = roots_complete_everywhere && roots_complete;
        for (const Element& b : b_roots) {
            Element a = r1 / b.pow(e1);
            bool all_terms = true;
            for (auto [e, c] : g.raw_terms()) {
                if (f.coeff(term_exp(e)) != a * F.element(c) * b.pow(e)) {
                    all_terms = false;
                    break;
                }
            }
            if (!all_terms) continue;
            if (confirm(d, a, b)) {
                rep.verdict = QmVerdict::equivalent;
                rep.method = exhaustive ? QmMethod::full_decision : QmMethod::exponent_filter;
                rep.authoritative = exhaustive;
                rep.witness = QmWitness{d, a, b};
                if (!exhaustive) rep.note = "witness confirmed on samples only";
                return rep;
            }
        }
    }

    rep.verdict = QmVerdict::inequivalent;
    rep.method = exhaustive ? QmMethod::full_decision : QmMethod::exponent_filter;
    rep.authoritative = exhaustive && roots_complete_everywhere;
    if (!rep.authoritative)
        rep.note = "candidate refutation incomplete on this field size";
    return rep;
}

// --------------------------------------------------------------------------
// Catalog of known families (data-file backed)
// --------------------------------------------------------------------------

/// A polynomial in q with integer coefficients, degree <= 4; instantiates to
/// an exponent representative in [1, Q-1].
struct SymbolicExpr {
    std::array<long long, 5> c{};
    std::string text;

    long long eval(long long q) const {
        long long v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * q + c[i];
        return v;
    }

    static SymbolicExpr parse(std::string_view s);
};

inline SymbolicExpr SymbolicExpr::parse(std::string_view s) {
    SymbolicExpr out;
    out.text = std::string(s);
    std::size_t pos = 0;
    int sign = 1;
    while (pos < s.size()) {
        if (s[pos] == '+') {
            sign = 1;
            ++pos;
            continue;
        }
        if (s[pos] == '-') {
            sign = -1;
            ++pos;
            continue;
        }
        long long coef = 1;
        bool saw_digits = false;
        long long v = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            v = v * 10 + (s[pos] - '0');
            saw_digits = true;
            ++pos;
        }
        if (saw_digits) coef = v;
        unsigned deg = 0;
        if (pos < s.size() && s[pos] == 'q') {
            ++pos;
            deg = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                unsigned d = 0;
                while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
                    d = d * 10 + static_cast<unsigned>(s[pos] - '0');
                    ++pos;
                }
                deg = d;
            }
        } else if (!saw_digits) {
            throw std::invalid_argument("bad symbolic exponent: " + std::string(s));
        }
        if (deg >= out.c.size()) throw std::invalid_argument("exponent degree too large");
        out.c[deg] += sign * coef;
        sign = 1;
    }
    return out;
}

/// Condition on m as a conjunction of residue clauses: "all", or clauses
/// "m%N==R" / "m%N!=R" joined by " and ".
struct MCondition {
    struct Clause {
        unsigned mod;
        unsigned res;
        bool equal;
    };
    std::vector<Clause> clauses;
    std::string text;

    bool admits(unsigned m) const {
        for (const Clause& c : clauses)
            if ((m % c.mod == c.res) != c.equal) return false;
        return true;
    }

    static MCondition parse(std::string_view s) {
        MCondition out;
        out.text = std::string(s);
        if (s == "all") return out;
        std::size_t pos = 0;
        while (pos < s.size()) {
            auto next = s.find(" and ", pos);
            std::string_view cl = s.substr(pos, next == std::string_view::npos ? s.size() - pos
                                                                               : next - pos);
            if (cl.size() < 6 || cl[0] != 'm' || cl[1] != '%')
                throw std::invalid_argument("bad m-condition clause: " + std::string(cl));
            auto op = cl.find("==");
            bool equal = true;
            if (op == std::string_view::npos) {
                op = cl.find("!=");
                equal = false;
            }
            if (op == std::string_view::npos) throw std::invalid_argument("bad m-condition clause");
            Clause c;
            c.mod = static_cast<unsigned>(std::stoul(std::string(cl.substr(2, op - 2))));
            c.res = static_cast<unsigned>(std::stoul(std::string(cl.substr(op + 2))));
            c.equal = equal;
            out.clauses.push_back(c);
            if (next == std::string_view::npos) break;
            pos = next + 5;
        }
        return out;
    }
};

/// One catalog row: label, source table, characteristic parity, condition on
/// m, symbolic exponents, coefficient patterns (integer constants or free
/// symbols with optional symbolic powers, kept as raw text) and raw
/// constraint strings.
struct CatalogEntry {
    std::string label;
    int table = 0;
    bool even_char = true;
    MCondition mcond;
    std::vector<SymbolicExpr> exps;
    std::vector<std::string> coeffs;
    std::vector<std::string> constraints;
    std::string source;

    /// True when every coefficient is a plain integer constant, so the entry
    /// names one concrete polynomial per field.
    bool concrete() const {
        for (const std::string& c : coeffs) {
            if (c.empty()) return false;
            std::size_t i = c[0] == '-' ? 1 : 0;
            if (i == c.size()) return false;
            for (; i < c.size(); ++i)
                if (c[i] < '0' || c[i] > '9') return false;
        }
        return true;
    }
};

struct InstantiatedEntry {
    std::string label;
    int table = 0;
    ExponentSet exps;
    bool concrete_coeffs = false;
    std::optional<SparsePoly> poly;  // present when concrete
};

struct OmittedEntry {
    std::string label;
    std::string reason;
};

struct CatalogInstantiation {
    std::vector<InstantiatedEntry> included;
    std::vector<OmittedEntry> omitted;
};

// --- catalog text schema ----------------------------------------------------
//
//   entry <label>
//   table <1|2|3>
//   char <even|odd>
//   m <all | clause [and clause]...>
//   exps <expr>; <expr>; ...
//   coeffs <pattern>; <pattern>; ...
//   constraint <raw text>          (zero or more lines)
//   source <raw text>              (optional)
//   end
//
// Entries separated by one blank line; parse/render round-trips byte-exactly.

inline std::vector<CatalogEntry> parse_catalog(std::istream& in) {
    std::vector<CatalogEntry> out;
    std::string line;
    CatalogEntry cur;
    bool open = false;
    auto split_list = [](std::string_view v) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (pos <= v.size()) {
            auto semi = v.find("; ", pos);
            if (semi == std::string_view::npos) {
                parts.emplace_back(v.substr(pos));
                break;
            }
            parts.emplace_back(v.substr(pos, semi - pos));
            pos = semi + 2;
        }
        return parts;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto space = line.find(' ');
        std::string key = line.substr(0, space);
        std::string val = space == std::string::npos ? "" : line.substr(space + 1);
        if (key == "entry") {
            if (open) throw std::invalid_argument("catalog: nested entry");
            cur = CatalogEntry{};
            cur.label = val;
            open = true;
        } else if (!open) {
            throw std::invalid_argument("catalog: stray line outside entry: " + line);
        } else if (key == "table") {
            cur.table = std::stoi(val);
        } else if (key == "char") {
            if (val != "even" && val != "odd") throw std::invalid_argument("catalog: bad char");
            cur.even_char = val == "even";
        } else if (key == "m") {
            cur.mcond = MCondition::parse(val);
        } else if (key == "exps") {
            for (const std::string& t : split_list(val)) cur.exps.push_back(SymbolicExpr::parse(t));
        } else if (key == "coeffs") {
            cur.coeffs = split_list(val);
        } else if (key == "constraint") {
            cur.constraints.push_back(val);
        } else if (key == "source") {
            cur.source = val;
        } else if (key == "end") {
            out.push_back(cur);
            open = false;
        } else {
            throw std::invalid_argument("catalog: unknown key " + key);
        }
    }
    if (open) throw std::invalid_argument("catalog: unterminated entry");
    return out;
}

inline std::string render_catalog(const std::vector<CatalogEntry>& entries) {
    std::string out;
    bool first = true;
    for (const CatalogEntry& e : entries) {
        if (!first) out += '\n';
        first = false;
        out += "entry " + e.label + '\n';
        out += "table " + std::to_string(e.table) + '\n';
        out += std::string("char ") + (e.even_char ? "even" : "odd") + '\n';
        out += "m " + e.mcond.text + '\n';
        out += "exps ";
        for (std::size_t i = 0; i < e.exps.size(); ++i) {
            if (i) out += "; ";
            out += e.exps[i].text;
        }
        out += '\n';
        out += "coeffs ";
        for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
            if (i) out += "; ";
            out += e.coeffs[i];
        }
        out += '\n';
        for (const std::string& c : e.constraints) out += "constraint " + c + '\n';
        if (!e.source.empty()) out += "source " + e.source + '\n';
        out += "end\n";
    }
    return out;
}

inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open catalog file: " + path);
    return parse_catalog(in);
}

/// Instantiate an entry at q = p^m: evaluate the symbolic exponents and reduce
/// into [1, Q-1]. Concrete entries also produce the polynomial itself.
inline InstantiatedEntry instantiate(const CatalogEntry& e, u64 p, unsigned m) {
    InstantiatedEntry out;
    out.label = e.label;
    out.table = e.table;
    u64 q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    FieldPtr F = Field::make(p, 3 * m);
    const u64 n = F->order();
    std::vector<u64> reduced;
    for (const SymbolicExpr& ex : e.exps) {
        long long v = ex.eval(static_cast<long long>(q));
        if (v <= 0) throw std::invalid_argument("catalog exponent not positive at this q");
        u64 rep = modular::rep_exponent(static_cast<u64>(v), n);
        out.exps.insert(rep);
        reduced.push_back(rep);
    }
    out.concrete_coeffs = e.concrete();
    if (out.concrete_coeffs && e.coeffs.size() == e.exps.size()) {
        SparsePoly poly(*F);
        for (std::size_t i = 0; i < reduced.size(); ++i)
            poly.add_term(reduced[i], F->scalar(std::stoll(e.coeffs[i])));
        out.poly = poly.normalized();
    }
    return out;
}

/// All entries applicable at (p, m); inapplicable ones are listed with the
/// failing condition.
inline CatalogInstantiation catalog_at(const std::vector<CatalogEntry>& entries, u64 p, unsigned m) {
    CatalogInstantiation out;
    const bool even = p == 2;
    for (const CatalogEntry& e : entries) {
        if (e.even_char != even) {
            out.omitted.push_back({e.label, std::string("characteristic mismatch (wants ") +
                                                (e.even_char ? "even" : "odd") + ")"});
            continue;
        }
        if (!e.mcond.admits(m)) {
            out.omitted.push_back({e.label, "m condition fails: " + e.mcond.text});
            continue;
        }
        out.included.push_back(instantiate(e, p, m));
    }
    return out;
}

}  // namespace fflab
