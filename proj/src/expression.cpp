#include "ckm/expression.hpp"

#include <cctype>
#include <string>

#include "ckm/error.hpp"

namespace ckm {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

bool looks_rational(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/') return false;
  return true;
}

}  // namespace

std::vector<Rational> parse_expression(const GradedBasisRing& ring, std::string_view text) {
  std::vector<Rational> out(ring.size());
  std::string s = trim(text);
  if (s.empty()) fail(ErrorKind::MalformedExpression, "empty expression");

  // Split into signed terms at top-level '+'/'-'.
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  bool negative = false;
  std::string current;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && (c == '+' || c == '-')) {
      if (!trim(current).empty()) {
        terms.emplace_back(negative, trim(current));
        negative = c == '-';
      } else if (c == '-') {
        negative = !negative;
      }
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  if (depth != 0) fail(ErrorKind::MalformedExpression, "unbalanced brackets in '" + s + "'");
  if (trim(current).empty()) fail(ErrorKind::MalformedExpression, "dangling sign in '" + s + "'");
  terms.emplace_back(negative, trim(current));

  for (const auto& [neg, term] : terms) {
    Rational coeff = 1;
    std::string label = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      std::string head = trim(std::string_view(term).substr(0, star));
      if (looks_rational(head)) {
        coeff = parse_rational(head);
        label = trim(std::string_view(term).substr(star + 1));
      }
    }
    if (neg) coeff = -coeff;
    if (looks_rational(label)) {
      if (!ring.unit()) fail(ErrorKind::MalformedExpression, "ring has no unit for constant term");
      out[*ring.unit()] += coeff * parse_rational(label);
      continue;
    }
    auto idx = ring.find(label);
    if (!idx) fail(ErrorKind::MalformedExpression, "unknown basis label '" + label + "' in '" + s + "'");
    out[*idx] += coeff;
  }
  return out;
}

ClassVector parse_class(const RingPtr& ring, std::string_view text) {
  auto dense = parse_expression(*ring, text);
  return ClassVector::from_dense(ring, dense);
}

}  // namespace ckm
