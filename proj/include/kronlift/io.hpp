#pragma once

// JSON serialisation of systems and collocation problems.
//
// SystemFile layout:
//   { "schema_version": 1, "n": N, "D": [[...]], "G": [[...]] (optional),
//     "R": [[...]] (optional), "b": [...], "meta": "..." }
//
// Numbers are written with the shortest decimal form that round-trips the
// binary64 value, so load(save(S)) reproduces S bit for bit.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "kronlift/mwr_frontend.hpp"
#include "kronlift/system_model.hpp"

namespace kronlift::io {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

json system_to_json(const PolynomialSystem& sys);

/// Throws ParseError naming the offending field.
PolynomialSystem system_from_json(const json& doc);

/// Canonical text form: one matrix row per line, trailing newline.
std::string format_system(const PolynomialSystem& sys);

/// Parses text, reporting line and column on malformed JSON.
json parse_json(const std::string& text, const std::string& origin = "<input>");

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

PolynomialSystem load_system(const std::filesystem::path& path);
void save_system(const std::filesystem::path& path, const PolynomialSystem& sys);

/// MwrProblem descriptor:
///   { "domain": [a, b], "p": [{"order": 0, "coefficient": [1]}], "r": [...],
///     "L": [...], "f": 4 | [c0, c1, ...] | {"node_values": [...]},
///     "n_basis": N, "basis": "monomial" | "chebyshev",
///     "bc": [{"at": 0, "kind": "value" | "derivative", "value": 0}] }
MwrProblem problem_from_json(const json& doc);
json problem_to_json(const MwrProblem& problem);

} // namespace kronlift::io
