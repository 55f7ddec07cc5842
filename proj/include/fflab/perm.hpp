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
#include <thread>
#include <utility>
#include <vector>

#include "fflab/field.hpp"

namespace fflab {

using FieldMap = std::function<Element(const Element&)>;

struct PermutationVerdict {
    bool is_permutation;
    /// First colliding pair (x1, x2) in enumeration order, x1 < x2 and
    /// f(x1) = f(x2); present iff not a permutation.
    std::optional<std::pair<Element, Element>> witness;
    u64 image_size;
};

namespace detail {

constexpr u64 sweep_limit = u64{1} << 20;

/// Evaluate f on the whole field into an index table. Partitioned across
/// workers when jobs > 1; the result is identical for any partition.
inline std::vector<u32> map_all(const FieldMap& f, const Field& F, unsigned jobs) {
    if (F.size() > sweep_limit) throw std::domain_error("field too large for exhaustive sweep");
    const u64 n = F.size();
    std::vector<u32> img(n);
    auto worker = [&](u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) img[i] = static_cast<u32>(f(F.element(i)).index());
    };
    if (jobs <= 1 || n < 1024) {
        worker(0, n);
    } else {
        std::vector<std::thread> ts;
        u64 chunk = (n + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            u64 lo = j * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            ts.emplace_back(worker, lo, hi);
        }
        for (auto& t : ts) t.join();
    }
    return img;
}

}  // namespace detail

/// Exhaustive bijection test with a deterministic witness: the collision whose
/// second point comes earliest in enumeration order.
inline PermutationVerdict is_permutation(const FieldMap& f, const Field& F, unsigned jobs = 1) {
    auto img = detail::map_all(f, F, jobs);
    const u64 n = F.size();
    constexpr u32 unset = 0xffffffffu;
    std::vector<u32> preimage(n, unset);
    std::optional<std::pair<Element, Element>> witness;
    u64 image_size = 0;
    for (u64 i = 0; i < n; ++i) {
        u32 y = img[i];
        if (preimage[y] == unset) {
            preimage[y] = static_cast<u32>(i);
            ++image_size;
        } else if (!witness) {
            witness = std::make_pair(F.element(preimage[y]), F.element(i));
        }
    }
    return {image_size == n, witness, image_size};
}

/// Dense value table of the inverse of a bijection, indexed by enumeration
/// order: table[f(x)] = x.
class InverseTable {
public:
    InverseTable(const Field& f, std::vector<u32> table) : f_(&f), t_(std::move(table)) {}

    const Field& field() const { return *f_; }
    Element operator()(const Element& y) const {
        if (&y.field() != f_) throw std::invalid_argument("argument from another field");
        return f_->element(t_[y.index()]);
    }

private:
    const Field* f_;
    std::vector<u32> t_;
};

inline InverseTable brute_inverse(const FieldMap& f, const Field& F, unsigned jobs = 1) {
    auto img = detail::map_all(f, F, jobs);
    const u64 n = F.size();
    constexpr u32 unset = 0xffffffffu;
    std::vector<u32> table(n, unset);
    for (u64 i = 0; i < n; ++i) {
        if (table[img[i]] != unset) throw std::domain_error("brute_inverse of a non-permutation");
        table[img[i]] = static_cast<u32>(i);
    }
    return InverseTable(F, std::move(table));
}

/// True iff g(f(x)) = x and f(g(x)) = x for every field element.
inline bool compose_check(const FieldMap& f, const FieldMap& g, const Field& F) {
    if (F.size() > detail::sweep_limit) throw std::domain_error("field too large for exhaustive sweep");
    for (u64 i = 0; i < F.size(); ++i) {
        Element x = F.element(i);
        if (g(f(x)) != x || f(g(x)) != x) return false;
    }
    return true;
}

}  // namespace fflab
