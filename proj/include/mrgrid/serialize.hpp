/**************************************************************************
 * serialize.hpp
 *
 * Copyright 2026 The mrgrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// JSON and CSV forms of fields, matrices, codes, patterns and census rows.
// JSON objects use std::map storage, so keys always come out sorted. Cells
// are 1-based (row, col) pairs in files and 0-based in memory.

#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "classify.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "kernel.hpp"
#include "pattern.hpp"

namespace mrgrid {

using Json = nlohmann::json;

/// "p^d", "p^d:hex" or a bare prime "p". The hex part is the modulus as the
/// integer sum of c_i p^i, leading coefficient included (0xb is x^3 + x + 1
/// for p = 2).
inline FieldRef parse_field(const std::string& text) {
    auto fail = [&] { return Error(ErrorCode::kParse, "field must look like p^d[:modulus-hex], got '" + text + "'"); };
    auto parse_uint = [&](std::string_view s, int base) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) throw fail();
        return v;
    };
    const std::string_view all(text);
    const auto colon = all.find(':');
    const std::string_view head = all.substr(0, colon);
    const auto caret = head.find('^');
    const std::uint64_t p = parse_uint(head.substr(0, caret), 10);
    const std::uint64_t d = caret == std::string_view::npos ? 1 : parse_uint(head.substr(caret + 1), 10);
    if (d == 0 || d > 64) throw fail();
    std::optional<std::vector<std::uint64_t>> modulus;
    if (colon != std::string_view::npos) {
        std::string_view hex = all.substr(colon + 1);
        if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
        std::uint64_t code = parse_uint(hex, 16);
        if (p < 2) throw fail();
        std::vector<std::uint64_t> coeffs;
        while (code) {
            coeffs.push_back(code % p);
            code /= p;
        }
        modulus = std::move(coeffs);
    }
    return make_field(p, static_cast<unsigned>(d), std::move(modulus));
}

/// Inverse of parse_field (always with the modulus).
inline std::string field_to_string(const Field& f) {
    std::uint64_t code = 0;
    std::uint64_t scale = 1;
    const auto& mod = f.spec().modulus;
    for (std::size_t i = 0; i < mod.size(); ++i) {
        code += mod[i] * scale;
        if (i + 1 < mod.size()) scale *= f.characteristic();
    }
    std::ostringstream out;
    out << f.characteristic() << '^' << f.degree() << ":" << std::hex << code;
    return out.str();
}

inline Json to_json(const Field& f) {
    Json j{{"characteristic", f.characteristic()}, {"degree", f.degree()}, {"modulus", f.spec().modulus}};
    if (f.has_subfield()) j["subfield_degree"] = f.subfield_degree();
    return j;
}

inline FieldRef field_from_json(const Json& j) {
    std::optional<unsigned> sub;
    if (j.contains("subfield_degree")) sub = j.at("subfield_degree").get<unsigned>();
    return make_field(j.at("characteristic").get<std::uint64_t>(), j.at("degree").get<unsigned>(),
                      j.at("modulus").get<std::vector<std::uint64_t>>(), sub);
}

/// Rows of symbols; a symbol is the integer sum of c_i p^i.
inline Json rows_json(const FMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline FMatrix matrix_from_rows(const FieldRef& field, const Json& rows, std::size_t cols) {
    FMatrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error(ErrorCode::kShapeMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) {
            const auto v = rows[i][j].get<Symbol>();
            if (!field->contains(v)) throw Error(ErrorCode::kIndexOutOfRange, "symbol outside the field");
            m(i, j) = v;
        }
    }
    return m;
}

inline Json to_json(const FMatrix& m) {
    return {{"field", to_json(*m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", rows_json(m)}};
}

inline FMatrix matrix_from_json(const Json& j) {
    const FieldRef field = field_from_json(j.at("field"));
    FMatrix m = matrix_from_rows(field, j.at("data"), j.at("cols").get<std::size_t>());
    if (m.rows() != j.at("rows").get<std::size_t>()) throw Error(ErrorCode::kShapeMismatch, "row count mismatch");
    return m;
}

inline Json to_json(const LinearCode& c) {
    return {{"field", to_json(*c.field())}, {"n", c.n()}, {"k", c.k()}, {"generator", rows_json(c.generator())}};
}

inline LinearCode code_from_json(const Json& j) {
    const FieldRef field = field_from_json(j.at("field"));
    LinearCode c(matrix_from_rows(field, j.at("generator"), j.at("n").get<std::size_t>()));
    if (c.k() != j.at("k").get<std::size_t>()) throw Error(ErrorCode::kShapeMismatch, "dimension mismatch");
    return c;
}

inline Json to_json(const GridTopology& t) {
    return {{"m", t.m}, {"n", t.n}, {"a", t.a}, {"b", t.b}, {"h", t.h}};
}

inline Json to_json(const GridCode& g) {
    return {{"topology", to_json(g.topo)},
            {"col_code", to_json(g.col_code)},
            {"row_code", to_json(g.row_code)},
            {"h_global", rows_json(g.h_global)},
            {"code", to_json(g.code)}};
}

inline Json cells_json(const ErasurePattern& e) {
    Json cells = Json::array();
    for (auto [r, c] : e.cells()) cells.push_back({r + 1, c + 1});
    return cells;
}

/// {"m":5,"n":5,"cells":[[1,2],...]}
inline Json to_json(const ErasurePattern& e) { return {{"m", e.rows()}, {"n", e.cols()}, {"cells", cells_json(e)}}; }

inline ErasurePattern pattern_from_json(const Json& j) {
    const auto m = j.at("m").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (const auto& c : j.at("cells")) {
        const auto r = c.at(0).get<std::size_t>();
        const auto col = c.at(1).get<std::size_t>();
        if (r == 0 || col == 0) throw Error(ErrorCode::kIndexOutOfRange, "cells are 1-based");
        cells.emplace_back(r - 1, col - 1);
    }
    return ErasurePattern::from_cells(m, n, cells);
}

inline Json to_json(const KernelCodeword& k) {
    Json steps = Json::array();
    for (const auto& s : k.steps) {
        Json cells = Json::array();
        for (std::size_t i = 0; i < 5; ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < 5; ++j) {
                const auto& v = s.cells[i * 5 + j];
                row.push_back(v ? Json(*v) : Json(nullptr));
            }
            cells.push_back(std::move(row));
        }
        steps.push_back({{"label", std::string(1, s.label)}, {"action", s.action}, {"cells", std::move(cells)}});
    }
    auto perm = [](const Permutation& p) {
        Json out = Json::array();
        for (auto x : p) out.push_back(x + 1);
        return out;
    };
    return {{"array", rows_json(k.array)},
            {"steps", std::move(steps)},
            {"row_perm", perm(k.row_perm)},
            {"col_perm", perm(k.col_perm)},
            {"alpha2", k.alpha2},
            {"alpha3", k.alpha3},
            {"gamma2", k.gamma2},
            {"gamma3", k.gamma3}};
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- CSV

/// RFC-4180 field quoting.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Parses RFC-4180 text into records. Accepts CRLF or LF line ends.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, field_started = false;
    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started && field.empty()) {
            quoted = field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw Error(ErrorCode::kParse, "unterminated quoted CSV field");
    if (!field.empty() || !record.empty()) end_record();
    return records;
}

inline const std::vector<std::string>& census_header() {
    static const std::vector<std::string> h{"pattern_id", "cells", "regular", "verdict", "trials", "certificate_ref", "seed"};
    return h;
}

/// Cells in the census are the JSON cell list, e.g. [[1,2],[1,3]].
inline std::string census_csv(const std::vector<CensusEntry>& rows) {
    std::string out;
    const auto& h = census_header();
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + h[i];
    out += "\r\n";
    for (const auto& r : rows) {
        out += std::to_string(r.id) + ',' + csv_field(cells_json(r.pattern).dump()) + ',' + (r.regular ? "true" : "false") +
               ',' + (r.status ? std::string(to_string(*r.status)) : std::string()) +
               ',' + std::to_string(r.trials) + ',' + csv_field(r.certificate_ref) + ',' + std::to_string(r.seed) + "\r\n";
    }
    return out;
}

inline Status status_from_string(const std::string& s) {
    for (auto st : {Status::kCorrectable, Status::kNoCertificateFound, Status::kProvenUncorrectable}) {
        if (to_string(st) == s) return st;
    }
    throw Error(ErrorCode::kParse, "unknown verdict '" + s + "'");
}

/// Reads a census written by census_csv. Empty input is an empty census.
inline std::vector<CensusEntry> parse_census(const std::string& text, std::size_t m, std::size_t n) {
    const auto records = parse_csv(text);
    if (records.empty()) return {};
    if (records.front() != census_header()) throw Error(ErrorCode::kParse, "missing census header");
    std::vector<CensusEntry> out;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() != census_header().size()) throw Error(ErrorCode::kParse, "census row " + std::to_string(i) + " is malformed");
        CensusEntry e;
        try {
            e.id = std::stoull(r[0]);
            e.pattern = pattern_from_json({{"m", m}, {"n", n}, {"cells", Json::parse(r[1])}});
            e.trials = std::stoull(r[4]);
            e.seed = std::stoull(r[6]);
        } catch (const Json::exception& ex) {
            throw Error(ErrorCode::kParse, std::string("census row ") + std::to_string(i) + ": " + ex.what());
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::kParse, "census row " + std::to_string(i) + " has a bad number");
        }
        e.regular = r[2] == "true";
        if (!r[3].empty()) e.status = status_from_string(r[3]);
        e.certificate_ref = r[5];
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace mrgrid
