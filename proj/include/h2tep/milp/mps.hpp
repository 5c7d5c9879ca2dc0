#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "h2tep/milp/model.hpp"

namespace h2tep::milp {

// MPS writer/reader. Sections are written in the classic fixed-column layout
// but names may be longer than 8 characters (up to 255, no blanks), so the
// reader tokenizes on whitespace like a free-format reader. Integer columns
// are wrapped in INTORG/INTEND markers; the objective constant is stored as
// the negated RHS entry of the objective row.
void write_mps(const Model& model, std::ostream& out);
void export_mps(const Model& model, const std::filesystem::path& path);

// Throws ParseError("<source>:<line>: ...") on malformed input. Columns with
// no BOUNDS entry get [0, +inf), including integer columns.
Model read_mps(std::istream& in, const std::string& source = "<mps>");
Model import_mps(const std::filesystem::path& path);

}  // namespace h2tep::milp
