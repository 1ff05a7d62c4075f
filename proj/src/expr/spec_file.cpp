#include "expstar/expr/spec_file.hpp"

#include <cctype>
#include <set>

#include "expstar/error.hpp"
#include "expstar/expr/parser.hpp"
#include "expstar/fps/gauss_rational.hpp"

namespace expstar::expr {

namespace {

struct Line {
  std::string_view text;  // comment stripped
  std::size_t offset;     // of text[0] in the file
  int number;
};

std::size_t skip_space(std::string_view s, std::size_t pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  return pos;
}

/// Cursor over one line that reports errors at absolute file offsets.
class LineReader {
 public:
  explicit LineReader(const Line& line) : line_(line) {}

  std::string word() {
    pos_ = skip_space(line_.text, pos_);
    const std::size_t start = pos_;
    while (pos_ < line_.text.size() && !std::isspace(static_cast<unsigned char>(line_.text[pos_])) &&
           line_.text[pos_] != '=') {
      ++pos_;
    }
    return std::string(line_.text.substr(start, pos_ - start));
  }

  int index(int line_number) {
    const std::size_t at = offset();
    const std::string w = word();
    if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("line " + std::to_string(line_number) + ": bad index '" + w + "'", at,
                       "positive integer");
    }
    const int v = std::stoi(w);
    if (v < 1) throw ParseError("line " + std::to_string(line_number) + ": indices start at 1", at, "positive integer");
    return v - 1;
  }

  void equals() {
    pos_ = skip_space(line_.text, pos_);
    if (pos_ >= line_.text.size() || line_.text[pos_] != '=') {
      throw ParseError("line " + std::to_string(line_.number) + ": missing '='", offset(), "'='");
    }
    ++pos_;
  }

  std::string_view rest() {
    pos_ = skip_space(line_.text, pos_);
    auto r = line_.text.substr(pos_);
    while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.remove_suffix(1);
    return r;
  }

  std::size_t offset() const { return line_.offset + skip_space(line_.text, pos_); }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

ExprPtr parse_at(std::string_view source, std::size_t offset, int line_number) {
  if (source.empty()) throw ParseError("line " + std::to_string(line_number) + ": missing expression", offset, "expression");
  try {
    return parse_expression(source);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    msg = msg.substr(0, msg.find(" at offset "));
    throw ParseError("line " + std::to_string(line_number) + ": " + msg, offset + e.offset(), e.expected());
  }
}

mpq_class rational_at(std::string_view text, std::size_t offset, int line_number) {
  try {
    return fps::parse_rational(std::string(text));
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_number) + ": bad rational '" + std::string(text) + "'",
                     offset, "rational");
  }
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

bool is_reserved(const std::string& s) {
  static const std::set<std::string> reserved{"i",   "kappa", "sqrt", "exp",  "log",  "sin",
                                              "cos", "sinh",  "cosh", "tan",  "tanh", "ucoth_sq"};
  if (reserved.count(s)) return true;
  return s.size() > 1 && s[0] == 'd' && s.find_first_not_of("0123456789", 1) == std::string::npos;
}

}  // namespace

RealizationSpecFile parse_spec_file(std::string_view text) {
  std::vector<Line> lines;
  {
    std::size_t start = 0;
    int number = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      auto body = text.substr(start, end - start);
      if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
      lines.push_back({body, start, number++});
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  RealizationSpecFile spec;
  bool have_dim = false, have_kappa = false;
  struct PhiEntry {
    int a, j;
    ExprPtr e;
    std::size_t offset;
    int line;
  };
  std::vector<PhiEntry> phi_entries;
  std::vector<std::size_t> structure_offsets;
  std::set<std::string> param_names;

  for (const Line& line : lines) {
    LineReader r(line);
    const std::size_t key_offset = r.offset();
    const std::string key = r.word();
    if (key.empty()) continue;
    const std::string where = "line " + std::to_string(line.number) + ": ";
    if (key == "dim") {
      if (have_dim) throw ParseError(where + "dim given twice", key_offset);
      r.equals();
      const std::size_t at = r.offset();
      const std::string v(r.rest());
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || std::stoi(v) < 1) {
        throw ParseError(where + "bad dimension '" + v + "'", at, "positive integer");
      }
      spec.n = std::stoi(v);
      have_dim = true;
    } else if (key == "kappa") {
      if (have_kappa) throw ParseError(where + "kappa given twice", key_offset);
      r.equals();
      const std::size_t at = r.offset();
      spec.kappa = rational_at(r.rest(), at, line.number);
      have_kappa = true;
    } else if (key == "param") {
      const std::size_t at = r.offset();
      const std::string name = r.word();
      if (!is_identifier(name) || is_reserved(name)) {
        throw ParseError(where + "bad parameter name '" + name + "'", at, "identifier");
      }
      if (!param_names.insert(name).second) throw ParseError(where + "parameter '" + name + "' given twice", at);
      r.equals();
      const std::size_t vat = r.offset();
      spec.parameters.emplace_back(name, rational_at(r.rest(), vat, line.number));
    } else if (key == "C") {
      RealizationSpecFile::StructureEntry entry{};
      entry.i = r.index(line.number);
      entry.j = r.index(line.number);
      entry.k = r.index(line.number);
      r.equals();
      const std::size_t at = r.offset();
      entry.coefficient = parse_at(r.rest(), at, line.number);
      entry.line = line.number;
      for (const auto& other : spec.structure) {
        if (other.i == entry.i && other.j == entry.j && other.k == entry.k) {
          throw ParseError(where + "structure constant given twice", key_offset);
        }
      }
      spec.structure.push_back(entry);
      structure_offsets.push_back(key_offset);
    } else if (key == "phi") {
      PhiEntry entry{};
      entry.a = r.index(line.number);
      entry.j = r.index(line.number);
      r.equals();
      const std::size_t at = r.offset();
      entry.e = parse_at(r.rest(), at, line.number);
      entry.offset = key_offset;
      entry.line = line.number;
      for (const auto& other : phi_entries) {
        if (other.a == entry.a && other.j == entry.j) throw ParseError(where + "phi entry given twice", key_offset);
      }
      phi_entries.push_back(entry);
    } else {
      throw ParseError(where + "unknown statement '" + key + "'", key_offset, "dim, kappa, param, C or phi");
    }
  }

  if (!have_dim) throw ParseError("missing 'dim = <n>' statement", text.size(), "dim");
  for (std::size_t s = 0; s < spec.structure.size(); ++s) {
    const auto& e = spec.structure[s];
    if (e.i >= spec.n || e.j >= spec.n || e.k >= spec.n) {
      throw ParseError("line " + std::to_string(e.line) + ": structure index exceeds dim", structure_offsets[s]);
    }
  }
  spec.phi.assign(static_cast<std::size_t>(spec.n), std::vector<ExprPtr>(static_cast<std::size_t>(spec.n)));
  for (const auto& p : phi_entries) {
    if (p.a >= spec.n || p.j >= spec.n) {
      throw ParseError("line " + std::to_string(p.line) + ": phi index exceeds dim", p.offset);
    }
    spec.phi[static_cast<std::size_t>(p.a)][static_cast<std::size_t>(p.j)] = p.e;
  }
  return spec;
}

}  // namespace expstar::expr
