#pragma once

#include "ratk/fm.hpp"
#include "ratk/hom.hpp"
#include "ratk/stability.hpp"
#include "ratk/system.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ratk {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// System documents
// ---------------------------------------------------------------------------

/// Parses a system document. Errors carry a line/column for syntax problems
/// and a field path (e.g. "maps[0].entries[0][0]") for everything else.
InductiveSystem parse_system(const std::string& text);
InductiveSystem system_from_json(const Json& doc);

/// Integers are written as decimal strings, so values of any size survive.
Json system_to_json(const InductiveSystem& sys, const Json& meta = Json::object());
std::string emit_system(const InductiveSystem& sys, const Json& meta = Json::object());

// ---------------------------------------------------------------------------
// Hom documents
// ---------------------------------------------------------------------------

struct HomDocument {
    TypeAHom hom;
    std::size_t grid = kDefaultGridSize;
};

/// Permutations are 1-based, either cycle notation "(1 2)(3)" or one-line
/// arrays [sigma(1), ..., sigma(a)].
HomDocument parse_hom(const std::string& text);

std::vector<std::size_t> parse_permutation(const Json& value, std::size_t size, const std::string& where);

Json signature_to_json(const SignatureMatrix& s);
Json diagonal_to_json(const DiagonalHom& hom);

// ---------------------------------------------------------------------------
// Builtins
// ---------------------------------------------------------------------------

struct BuiltinParams {
    Integer c = 4;  // goodearl size ratio r_{n+1} / r_n
    Integer p = 2;  // goodearl point evaluations per step
};

std::vector<std::string> builtin_names();

/// "bunce-deddens": sizes 2^n, every step of signature (2, 1).
/// "goodearl": sizes c^n, every step of signature (c, c - p); needs c >= 2, 1 <= p < c.
/// "constant": C(T) with the identity map at every step.
InductiveSystem builtin_system(const std::string& name, const BuiltinParams& params = {});
Json builtin_meta(const std::string& name, const BuiltinParams& params = {});

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct FmRow {
    int m;
    ColimitReport report;
};

Json fm_rows_to_json(const std::vector<FmRow>& rows);
std::string fm_rows_to_text(const std::vector<FmRow>& rows);

Json report_to_json(const StabilityReport& report);
std::string report_to_text(const StabilityReport& report);

Json af_system_to_json(const AfSystem& af);

/// Integer <-> JSON: decimal strings on output; strings or JSON integers on input.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& v, const std::string& where);

} // namespace ratk
