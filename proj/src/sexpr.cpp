#include "sigmakernel/sexpr.hpp"

namespace sigma {

namespace {

struct Reader {
  const std::string& s;
  size_t pos = 0;
  int line = 1, col = 1;

  bool eof() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void advance() {
    if (s[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {  // comment to end of line
        while (!eof() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  Result<SExpr> read() {
    skip_ws();
    if (eof()) return Diag{"unexpected end of input", line, col};
    SExpr e;
    e.line = line;
    e.col = col;
    char c = peek();
    if (c == ')') return Diag{"unexpected )", line, col};
    if (c == '(') {
      advance();
      e.atom = false;
      while (true) {
        skip_ws();
        if (eof()) return Diag{"unclosed (", e.line, e.col};
        if (peek() == ')') {
          advance();
          return e;
        }
        auto sub = read();
        if (!sub) return sub;
        e.items.push_back(*sub);
      }
    }
    e.atom = true;
    while (!eof()) {
      char d = peek();
      if (d == '(' || d == ')' || d == ';' || d == ' ' || d == '\t' || d == '\r' || d == '\n')
        break;
      e.text += d;
      advance();
    }
    if (e.text.empty()) return Diag{"empty token", line, col};
    return e;
  }
};

}  // namespace

std::string SExpr::str() const {
  if (atom) return text;
  std::string s = "(";
  for (size_t j = 0; j < items.size(); ++j) {
    if (j) s += ' ';
    s += items[j].str();
  }
  return s + ")";
}

Result<SExpr> read_sexpr(const std::string& text) {
  Reader r{text};
  auto e = r.read();
  if (!e) return e;
  r.skip_ws();
  if (!r.eof()) return Diag{"trailing content after expression", r.line, r.col};
  return e;
}

Result<std::vector<SExpr>> read_sexprs(const std::string& text) {
  Reader r{text};
  std::vector<SExpr> out;
  while (true) {
    r.skip_ws();
    if (r.eof()) return out;
    auto e = r.read();
    if (!e) return e.error();
    out.push_back(*e);
  }
}

}  // namespace sigma
