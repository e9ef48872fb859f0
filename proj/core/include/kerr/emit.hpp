#pragma once

#include <iosfwd>
#include <string>

#include "kerr/probability.hpp"
#include "kerr/profile.hpp"

namespace kerr {

enum class EmitFormat { Csv, Json };

EmitFormat format_from_string(const std::string& s);  // "csv" | "json"

// Deterministic double rendering: 17 significant digits, round-trip safe.
std::string format_double(double v);

// CSV layout: header "x,<stage columns present>", one row per grid point,
// LF line endings, no trailing separators. JSON carries the same data plus
// scenario metadata. Identical inputs produce byte-identical output.
void emit(const Profile& p, std::ostream& os, EmitFormat fmt);
void emit(const PeakSet& p, std::ostream& os, EmitFormat fmt);
void emit(const DiscrepancyReport& r, std::ostream& os, EmitFormat fmt);

// File variants: create parent directories, write in binary mode (LF endings
// regardless of platform).
void emit_file(const Profile& p, const std::string& path, EmitFormat fmt);
void emit_file(const PeakSet& p, const std::string& path, EmitFormat fmt);
void emit_file(const DiscrepancyReport& r, const std::string& path, EmitFormat fmt);

}  // namespace kerr
