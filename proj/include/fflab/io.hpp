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

#include <string>

#include <json.hpp>

#include "fflab/equiv.hpp"
#include "fflab/perm.hpp"
#include "fflab/verify.hpp"

namespace fflab {

// Structured output is one self-describing JSON record per line. Records carry
// no timings so that identical command + seed reproduces identical bytes;
// text-mode output prints wall times instead.

using json = nlohmann::json;

inline json to_json(const TheoremCell& c) {
    return json{{"record", "theorem_cell"}, {"cell", c.key}, {"pass", c.pass}, {"detail", c.detail}};
}

inline json to_json(const TheoremReport& r) {
    json cells = json::array();
    for (const TheoremCell& c : r.cells) cells.push_back(to_json(c));
    return json{{"record", "theorem_report"},
                {"theorem", theorem_name(r.id)},
                {"seed", r.seed},
                {"all_pass", r.all_pass()},
                {"cells", cells}};
}

inline TheoremReport theorem_report_from_json(const json& j) {
    if (j.at("record") != "theorem_report") throw std::invalid_argument("not a theorem_report record");
    TheoremReport r;
    auto id = theorem_from_name(j.at("theorem").get<std::string>());
    if (!id) throw std::invalid_argument("unknown theorem id");
    r.id = *id;
    r.seed = j.at("seed").get<u64>();
    for (const json& c : j.at("cells"))
        r.cells.push_back({c.at("cell").get<std::string>(), c.at("pass").get<bool>(),
                           c.at("detail").get<std::string>(), 0.0});
    return r;
}

inline json to_json(const EquivalenceReport& r) {
    json j{{"record", "equiv_report"},
           {"verdict", verdict_name(r.verdict)},
           {"method", method_name(r.method)},
           {"authoritative", r.authoritative},
           {"d_candidates_examined", r.d_candidates_examined},
           {"d_surviving", r.d_surviving},
           {"note", r.note}};
    if (r.witness)
        j["witness"] = {{"d", r.witness->d},
                        {"a", r.witness->a.to_text()},
                        {"b", r.witness->b.to_text()}};
    return j;
}

inline EquivalenceReport equiv_report_from_json(const json& j, const Field& F) {
    if (j.at("record") != "equiv_report") throw std::invalid_argument("not an equiv_report record");
    EquivalenceReport r;
    std::string v = j.at("verdict").get<std::string>();
    if (v == "equivalent")
        r.verdict = QmVerdict::equivalent;
    else if (v == "inequivalent")
        r.verdict = QmVerdict::inequivalent;
    else if (v == "inequivalent_by_filter")
        r.verdict = QmVerdict::inequivalent_by_filter;
    else
        throw std::invalid_argument("bad verdict");
    r.method = j.at("method").get<std::string>() == "full_decision" ? QmMethod::full_decision
                                                                    : QmMethod::exponent_filter;
    r.authoritative = j.at("authoritative").get<bool>();
    r.d_candidates_examined = j.at("d_candidates_examined").get<u64>();
    r.d_surviving = j.at("d_surviving").get<u64>();
    r.note = j.at("note").get<std::string>();
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        r.witness = QmWitness{w.at("d").get<u64>(),
                              F.element(F.parse_index(w.at("a").get<std::string>())),
                              F.element(F.parse_index(w.at("b").get<std::string>()))};
    }
    return r;
}

inline std::string render_text(const TheoremReport& r) {
    std::string out = std::string("theorem ") + theorem_name(r.id) + " seed=" +
                      std::to_string(r.seed) + "\n";
    for (const TheoremCell& c : r.cells) {
        out += std::string(c.pass ? "  pass " : "  FAIL ") + c.key;
        if (!c.detail.empty()) out += "  [" + c.detail + "]";
        char buf[32];
        std::snprintf(buf, sizeof buf, "  (%.2f ms)", c.wall_ms);
        out += buf;
        out += '\n';
    }
    out += r.all_pass() ? "result: all cells match predictions\n"
                        : "result: MISMATCH against predictions\n";
    return out;
}

inline std::string render_text(const EquivalenceReport& r) {
    std::string out = std::string("verdict: ") + verdict_name(r.verdict) + " (method " +
                      method_name(r.method) + (r.authoritative ? ", authoritative" : "") + ")\n";
    out += "d candidates examined: " + std::to_string(r.d_candidates_examined) +
           ", surviving filter: " + std::to_string(r.d_surviving) + "\n";
    if (r.witness)
        out += "witness: d=" + std::to_string(r.witness->d) + " a=" + r.witness->a.to_text() +
               " b=" + r.witness->b.to_text() + "\n";
    if (!r.note.empty()) out += "note: " + r.note + "\n";
    return out;
}

}  // namespace fflab
