#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lore {

enum class ValueKind { Missing, Number, Category };

// One cell of a tabular instance. Missing only appears between CSV load
// and imputation.
struct Value {
  ValueKind kind = ValueKind::Missing;
  double num = 0.0;
  std::string cat;

  static Value number(double v) {
    Value out;
    out.kind = ValueKind::Number;
    out.num = v;
    return out;
  }

  static Value category(std::string v) {
    Value out;
    out.kind = ValueKind::Category;
    out.cat = std::move(v);
    return out;
  }

  static Value missing() { return Value{}; }

  bool is_missing() const { return kind == ValueKind::Missing; }

  // Exact equality: label equality for categories, bitwise-identical
  // numeric value for numbers.
  friend bool operator==(const Value& a, const Value& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case ValueKind::Missing: return true;
      case ValueKind::Number: return a.num == b.num;
      case ValueKind::Category: return a.cat == b.cat;
    }
    return false;
  }
};

using Instance = std::vector<Value>;

inline bool instances_equal(const Instance& a, const Instance& b) {
  return a == b;
}

}  // namespace lore
