#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sigma {

enum class Sel : uint8_t { Left, Right, Body };
using Path = std::vector<Sel>;

inline std::string path_str(const Path& p) {
  if (p.empty()) return "[]";
  std::string s = "[";
  for (size_t j = 0; j < p.size(); ++j) {
    if (j) s += ' ';
    s += (p[j] == Sel::Left ? 'l' : p[j] == Sel::Right ? 'r' : 'b');
  }
  return s + "]";
}

// A positioned diagnostic. `line`/`col` refer to source text when the value
// came from a parser; `path` points into a formula when relevant.
struct Diag {
  std::string message;
  int line = 0;
  int col = 0;
  Path path;

  std::string str() const {
    std::string s;
    if (line > 0) s += std::to_string(line) + ":" + std::to_string(col) + ": ";
    s += message;
    if (!path.empty()) s += " at " + path_str(path);
    return s;
  }
};

// Minimal value-or-diagnostic carrier.
template <typename T>
class Result {
public:
  Result(T v) : value_(std::move(v)) {}
  Result(Diag d) : error_(std::move(d)) {}

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& operator*() const { return *value_; }
  T& operator*() { return *value_; }
  const T* operator->() const { return &*value_; }

  const Diag& error() const { return *error_; }

  // Unwraps; only for cases the caller has made impossible.
  const T& value() const {
    if (!ok()) throw std::logic_error("Result::value on error: " + error_->str());
    return *value_;
  }

private:
  std::optional<T> value_;
  std::optional<Diag> error_;
};

struct Ok {};

inline Result<Ok> ok_result() { return Result<Ok>(Ok{}); }

}  // namespace sigma
