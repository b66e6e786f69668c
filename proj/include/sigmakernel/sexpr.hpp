#pragma once

#include <string>
#include <vector>

#include "sigmakernel/diag.hpp"

namespace sigma {

struct SExpr {
  bool atom = false;
  std::string text;          // atom payload
  std::vector<SExpr> items;  // list payload
  int line = 1, col = 1;

  bool is_list() const { return !atom; }
  size_t size() const { return items.size(); }
  const SExpr& operator[](size_t j) const { return items[j]; }
  // True for a list whose first element is the given atom.
  bool headed(const std::string& h) const {
    return !atom && !items.empty() && items[0].atom && items[0].text == h;
  }
  Diag error(std::string msg) const { return Diag{std::move(msg), line, col}; }
  std::string str() const;
};

// Reads a single s-expression (trailing content is an error).
Result<SExpr> read_sexpr(const std::string& text);
// Reads a whole file of s-expressions.
Result<std::vector<SExpr>> read_sexprs(const std::string& text);

}  // namespace sigma
