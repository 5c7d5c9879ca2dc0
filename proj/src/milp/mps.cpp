#include "h2tep/milp/mps.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "h2tep/errors.hpp"

namespace h2tep::milp {

namespace {

constexpr const char* kObjectiveRow = "COST";
constexpr std::size_t kMaxNameLength = 255;

std::string fmt_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_name(const std::string& name) {
  if (name.empty() || name.size() > kMaxNameLength ||
      name.find_first_of(" \t\r\n") != std::string::npos) {
    throw PreconditionError("name not representable in MPS: '" + name + "'");
  }
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

void write_mps(const Model& model, std::ostream& out) {
  check_well_formed(model);
  for (const auto& c : model.columns) check_name(c.name);
  for (const auto& r : model.rows) {
    check_name(r.name);
    if (r.name == kObjectiveRow) throw PreconditionError("row name COST is reserved for the objective");
  }

  out << "NAME          " << (model.name.empty() ? "MODEL" : model.name) << '\n';
  out << "ROWS\n";
  out << " N  " << kObjectiveRow << '\n';
  for (const auto& r : model.rows) {
    const char* type = "L";
    if (r.sense == Sense::kEqual) type = "E";
    if (r.sense == Sense::kGreaterEqual || r.sense == Sense::kRanged) type = "G";
    out << ' ' << type << "  " << r.name << '\n';
  }

  // Column-wise view of the row coefficients, in row order.
  std::vector<std::vector<std::pair<int, double>>> by_column(model.column_count());
  for (int i = 0; i < model.row_count(); ++i) {
    for (const auto& t : model.rows[i].terms) by_column[t.column].emplace_back(i, t.value);
  }

  out << "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  for (int j = 0; j < model.column_count(); ++j) {
    const auto& c = model.columns[j];
    if (c.integer != in_integer_block) {
      out << "    " << pad("MARKER" + std::to_string(marker++), 10) << pad("'MARKER'", 22)
          << (c.integer ? "'INTORG'" : "'INTEND'") << '\n';
      in_integer_block = c.integer;
    }
    const auto name = pad(c.name, 10);
    if (c.cost != 0.0 || by_column[j].empty()) {
      out << "    " << name << pad(kObjectiveRow, 10) << fmt_number(c.cost) << '\n';
    }
    for (const auto& [row, value] : by_column[j]) {
      out << "    " << name << pad(model.rows[row].name, 10) << fmt_number(value) << '\n';
    }
  }
  if (in_integer_block) {
    out << "    " << pad("MARKER" + std::to_string(marker++), 10) << pad("'MARKER'", 22) << "'INTEND'\n";
  }

  out << "RHS\n";
  if (model.objective_offset != 0.0) {
    out << "    " << pad("RHS", 10) << pad(kObjectiveRow, 10) << fmt_number(-model.objective_offset) << '\n';
  }
  for (const auto& r : model.rows) {
    if (r.rhs != 0.0) out << "    " << pad("RHS", 10) << pad(r.name, 10) << fmt_number(r.rhs) << '\n';
  }

  out << "RANGES\n";
  for (const auto& r : model.rows) {
    if (r.sense == Sense::kRanged) {
      out << "    " << pad("RNG", 10) << pad(r.name, 10) << fmt_number(r.range) << '\n';
    }
  }

  out << "BOUNDS\n";
  for (const auto& c : model.columns) {
    const auto name = c.name;
    auto line = [&](const char* type, std::optional<double> v) {
      out << ' ' << type << ' ' << pad("BND", 10) << pad(name, 10);
      if (v) out << fmt_number(*v);
      out << '\n';
    };
    if (c.integer && c.lower == 0.0 && c.upper == 1.0) {
      line("BV", std::nullopt);
    } else if (c.lower == c.upper) {
      line("FX", c.lower);
    } else if (c.lower == -kInfinity && c.upper == kInfinity) {
      line("FR", std::nullopt);
    } else {
      if (c.lower == -kInfinity) {
        line("MI", std::nullopt);
      } else if (c.lower != 0.0) {
        line("LO", c.lower);
      }
      if (c.upper != kInfinity) line("UP", c.upper);
    }
  }
  out << "ENDATA\n";
}

void export_mps(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write MPS file " + path.string());
  write_mps(model, out);
  if (!out) throw IoError("write failed for " + path.string());
}

namespace {

enum class Section { kNone, kName, kObjsense, kRows, kColumns, kRhs, kRanges, kBounds, kEnd };

int rank(Section s) {
  switch (s) {
    case Section::kNone: return 0;
    case Section::kName: return 1;
    case Section::kObjsense: return 2;
    case Section::kRows: return 3;
    case Section::kColumns: return 4;
    case Section::kRhs: return 5;
    case Section::kRanges: return 6;
    case Section::kBounds: return 7;
    case Section::kEnd: return 8;
  }
  return 0;
}

std::optional<Section> section_of(const std::string& word) {
  static const std::map<std::string, Section> kSections = {
      {"NAME", Section::kName},       {"OBJSENSE", Section::kObjsense}, {"ROWS", Section::kRows},
      {"COLUMNS", Section::kColumns}, {"RHS", Section::kRhs},           {"RANGES", Section::kRanges},
      {"BOUNDS", Section::kBounds},   {"ENDATA", Section::kEnd}};
  auto it = kSections.find(word);
  if (it == kSections.end()) return std::nullopt;
  return it->second;
}

struct RawRow {
  char type = 'L';
  double rhs = 0.0;
  std::optional<double> range;
};

class MpsReader {
 public:
  explicit MpsReader(std::string source) : source_(std::move(source)) {}

  Model read(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '*') continue;
      std::istringstream ss(line);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      if (tok.empty()) continue;

      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        const auto next = section_of(tok[0]);
        if (!next) fail("unknown section '" + tok[0] + "'");
        enter(*next, tok);
        if (section_ == Section::kEnd) break;
        continue;
      }
      switch (section_) {
        case Section::kRows: row_line(tok); break;
        case Section::kColumns: column_line(tok); break;
        case Section::kRhs: rhs_line(tok); break;
        case Section::kRanges: range_line(tok); break;
        case Section::kBounds: bound_line(tok); break;
        case Section::kObjsense:
          if (tok[0] == "MAX" || tok[0] == "MAXIMIZE") fail("maximization models are not supported");
          break;
        default: fail("data line outside of a section");
      }
    }
    if (section_ != Section::kEnd) fail("missing ENDATA");
    return finish();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(source_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  // Magnitudes of 1e30 and beyond are read as infinite, as most MPS
  // writers use them for that purpose.
  double parse_number(const std::string& s) const {
    double v = 0.0;
    const char* begin = s.data();
    const auto* end = s.data() + s.size();
    if (begin != end && *begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) fail("invalid number '" + s + "'");
    if (v >= 1e30) return kInfinity;
    if (v <= -1e30) return -kInfinity;
    return v;
  }

  void enter(Section next, const std::vector<std::string>& tok) {
    if (rank(next) <= rank(section_)) fail("section " + tok[0] + " out of order");
    if (next == Section::kColumns && !seen_rows_) fail("COLUMNS before ROWS");
    if (rank(next) > rank(Section::kColumns) && next != Section::kEnd && !seen_columns_) {
      fail(tok[0] + " before COLUMNS");
    }
    if (next == Section::kRows) seen_rows_ = true;
    if (next == Section::kColumns) seen_columns_ = true;
    if (next == Section::kName && tok.size() > 1) model_.name = tok[1];
    if (next == Section::kObjsense && tok.size() > 1 && (tok[1] == "MAX" || tok[1] == "MAXIMIZE")) {
      fail("maximization models are not supported");
    }
    section_ = next;
  }

  void row_line(const std::vector<std::string>& tok) {
    if (tok.size() != 2 || tok[0].size() != 1) fail("ROWS entries are '<type> <name>'");
    const char type = tok[0][0];
    if (type == 'N') {
      if (objective_.empty()) objective_ = tok[1];
      else free_rows_.insert({tok[1], 0});
      return;
    }
    if (type != 'L' && type != 'G' && type != 'E') fail("unknown row type '" + tok[0] + "'");
    if (row_index_.count(tok[1]) || tok[1] == objective_) fail("duplicate row " + tok[1]);
    row_index_[tok[1]] = static_cast<int>(raw_rows_.size());
    raw_rows_.push_back({type, 0.0, std::nullopt});
    Row r;
    r.name = tok[1];
    model_.rows.push_back(std::move(r));
  }

  int column(const std::string& name) {
    auto it = column_index_.find(name);
    if (it != column_index_.end()) return it->second;
    Column c;
    c.name = name;
    c.integer = integer_block_;
    const int j = model_.add_column(std::move(c));
    column_index_[name] = j;
    return j;
  }

  void column_line(const std::vector<std::string>& tok) {
    if (tok.size() >= 3 && tok[1] == "'MARKER'") {
      if (tok[2] == "'INTORG'") integer_block_ = true;
      else if (tok[2] == "'INTEND'") integer_block_ = false;
      else fail("unknown marker " + tok[2]);
      return;
    }
    if (tok.size() != 3 && tok.size() != 5) fail("COLUMNS entries are '<col> <row> <value> [<row> <value>]'");
    const int j = column(tok[0]);
    for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
      const double v = parse_number(tok[k + 1]);
      if (tok[k] == objective_) {
        model_.columns[j].cost += v;
      } else if (auto it = row_index_.find(tok[k]); it != row_index_.end()) {
        model_.rows[it->second].terms.push_back({j, v});
      } else if (!free_rows_.count(tok[k])) {
        fail("unknown row " + tok[k]);
      }
    }
  }

  // Entries of RHS/RANGES: optional set name followed by (row, value) pairs.
  template <typename F>
  void pairs(const std::vector<std::string>& tok, F&& f) {
    const std::size_t start = tok.size() % 2 == 1 ? 1 : 0;
    if (tok.size() < 2 || tok.size() - start > 4) fail("malformed entry");
    for (std::size_t k = start; k + 1 < tok.size(); k += 2) f(tok[k], parse_number(tok[k + 1]));
  }

  void rhs_line(const std::vector<std::string>& tok) {
    pairs(tok, [&](const std::string& row, double v) {
      if (row == objective_) {
        model_.objective_offset = -v;
      } else if (auto it = row_index_.find(row); it != row_index_.end()) {
        raw_rows_[it->second].rhs = v;
      } else if (!free_rows_.count(row)) {
        fail("unknown row " + row);
      }
    });
  }

  void range_line(const std::vector<std::string>& tok) {
    pairs(tok, [&](const std::string& row, double v) {
      auto it = row_index_.find(row);
      if (it == row_index_.end()) fail("RANGES references unknown row " + row);
      raw_rows_[it->second].range = v;
    });
  }

  void bound_line(const std::vector<std::string>& tok) {
    if (tok.size() < 2) fail("malformed BOUNDS entry");
    const std::string& type = tok[0];
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" || type == "LI" || type == "UI";
    std::string name;
    std::optional<double> value;
    if (needs_value) {
      if (tok.size() == 4) name = tok[2];
      else if (tok.size() == 3) name = tok[1];
      else fail("BOUNDS " + type + " expects a value");
      value = parse_number(tok.back());
    } else {
      if (tok.size() == 3) name = tok[2];
      else if (tok.size() == 2) name = tok[1];
      else fail("malformed BOUNDS " + type + " entry");
    }
    auto it = column_index_.find(name);
    if (it == column_index_.end()) fail("BOUNDS references unknown column " + name);
    auto& c = model_.columns[it->second];
    if (type == "UP" || type == "UI") {
      c.upper = *value;
      if (*value < 0.0 && c.lower == 0.0 && !lower_set_.count(it->second)) c.lower = -kInfinity;
      if (type == "UI") c.integer = true;
    } else if (type == "LO" || type == "LI") {
      c.lower = *value;
      lower_set_.insert({it->second, 0});
      if (type == "LI") c.integer = true;
    } else if (type == "FX") {
      c.lower = c.upper = *value;
    } else if (type == "FR") {
      c.lower = -kInfinity;
      c.upper = kInfinity;
    } else if (type == "MI") {
      c.lower = -kInfinity;
    } else if (type == "PL") {
      c.upper = kInfinity;
    } else if (type == "BV") {
      c.lower = 0.0;
      c.upper = 1.0;
      c.integer = true;
    } else {
      fail("unknown bound type " + type);
    }
  }

  Model finish() {
    for (std::size_t i = 0; i < raw_rows_.size(); ++i) {
      const auto& raw = raw_rows_[i];
      auto& row = model_.rows[i];
      if (!raw.range) {
        row.rhs = raw.rhs;
        row.sense = raw.type == 'L' ? Sense::kLessEqual : raw.type == 'G' ? Sense::kGreaterEqual : Sense::kEqual;
        continue;
      }
      const double r = *raw.range;
      double lo = raw.rhs;
      double hi = raw.rhs;
      if (raw.type == 'G') hi = raw.rhs + std::abs(r);
      else if (raw.type == 'L') lo = raw.rhs - std::abs(r);
      else if (r >= 0.0) hi = raw.rhs + r;
      else lo = raw.rhs + r;
      row.sense = lo == hi ? Sense::kEqual : Sense::kRanged;
      row.rhs = lo;
      row.range = hi - lo;
    }
    check_well_formed(model_);
    return std::move(model_);
  }

  std::string source_;
  int line_no_ = 0;
  Section section_ = Section::kNone;
  bool seen_rows_ = false;
  bool seen_columns_ = false;
  bool integer_block_ = false;
  std::string objective_;
  std::unordered_map<std::string, int> free_rows_;
  std::unordered_map<std::string, int> row_index_;
  std::unordered_map<std::string, int> column_index_;
  std::unordered_map<int, int> lower_set_;
  std::vector<RawRow> raw_rows_;
  Model model_;
};

}  // namespace

Model read_mps(std::istream& in, const std::string& source) {
  MpsReader reader(source);
  return reader.read(in);
}

Model import_mps(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open MPS file " + path.string());
  return read_mps(in, path.string());
}

}  // namespace h2tep::milp
