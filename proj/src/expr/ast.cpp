#include "expstar/expr/ast.hpp"

#include <algorithm>

namespace expstar::expr {

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case NodeKind::number:
    case NodeKind::power:
      if (a.value != b.value) return false;
      break;
    case NodeKind::parameter:
      if (a.name != b.name) return false;
      break;
    case NodeKind::variable:
      if (a.variable != b.variable) return false;
      break;
    case NodeKind::call:
      if (a.function != b.function) return false;
      break;
    default: break;
  }
  for (std::size_t c = 0; c < a.children.size(); ++c) {
    if (!structurally_equal(*a.children[c], *b.children[c])) return false;
  }
  return true;
}

namespace {

// Literals come from integer or decimal source text, so the denominator is 2^a 5^b
// and a finite decimal expansion always exists.
std::string decimal_text(const mpq_class& v) {
  mpz_class num = v.get_num(), den = v.get_den();
  if (den == 1) return num.get_str(10);
  int digits = 0;
  mpz_class scale = 1;
  while (scale % den != 0) {
    scale *= 10;
    ++digits;
    if (digits > 4096) return "(" + num.get_str(10) + "/" + den.get_str(10) + ")";
  }
  mpz_class scaled = num * (scale / den);
  const bool negative = scaled < 0;
  std::string s = (negative ? mpz_class(-scaled) : scaled).get_str(10);
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return (negative ? "-" : "") + s;
}

int precedence(const ExprNode& e) {
  switch (e.kind) {
    case NodeKind::add:
    case NodeKind::sub: return 1;
    case NodeKind::mul:
    case NodeKind::div: return 2;
    case NodeKind::neg: return 3;
    case NodeKind::power: return 4;
    default: return 5;
  }
}

void print(const ExprNode& e, std::string& out);

void print_at(const ExprNode& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const ExprNode& e, std::string& out) {
  switch (e.kind) {
    case NodeKind::number: out += decimal_text(e.value); return;
    case NodeKind::imaginary_unit: out += 'i'; return;
    case NodeKind::parameter: out += e.name; return;
    case NodeKind::variable: out += "d" + std::to_string(e.variable + 1); return;
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
      const int p = precedence(e);
      print_at(*e.children[0], p, out);
      const char* op = e.kind == NodeKind::add ? " + " : e.kind == NodeKind::sub ? " - "
                       : e.kind == NodeKind::mul ? "*" : "/";
      out += op;
      print_at(*e.children[1], p + 1, out);
      return;
    }
    case NodeKind::neg:
      out += '-';
      print_at(*e.children[0], 3, out);
      return;
    case NodeKind::power: {
      print_at(*e.children[0], 5, out);
      out += '^';
      if (e.value.get_den() == 1 && sgn(e.value) >= 0) {
        out += e.value.get_num().get_str(10);
      } else {
        out += "(" + e.value.get_str(10) + ")";
      }
      return;
    }
    case NodeKind::call:
      out += e.name.empty() ? std::string(fps::analytic_kind_name(e.function)) : e.name;
      out += '(';
      print(*e.children[0], out);
      out += ')';
      return;
  }
}

}  // namespace

std::string print_expression(const ExprNode& e) {
  std::string out;
  print(e, out);
  return out;
}

bool is_constant_expression(const ExprNode& e) {
  if (e.kind == NodeKind::variable) return false;
  return std::all_of(e.children.begin(), e.children.end(),
                     [](const ExprPtr& c) { return is_constant_expression(*c); });
}

}  // namespace expstar::expr
