#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lore/schema.hpp"
#include "lore/value.hpp"

namespace lore {

// One univariate split condition: either a categorical equality test or
// a numeric interval with open/closed bounds.
struct SplitCondition {
  int feature = -1;
  bool categorical = false;

  std::string category;  // categorical equality target

  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_closed = false;
  bool upper_closed = false;

  static SplitCondition equals(int feature, std::string value) {
    SplitCondition sc;
    sc.feature = feature;
    sc.categorical = true;
    sc.category = std::move(value);
    return sc;
  }

  static SplitCondition interval(int feature, double lower, bool lower_closed,
                                 double upper, bool upper_closed) {
    SplitCondition sc;
    sc.feature = feature;
    sc.lower = lower;
    sc.lower_closed = lower_closed;
    sc.upper = upper;
    sc.upper_closed = upper_closed;
    return sc;
  }

  static SplitCondition at_most(int feature, double v) {
    return interval(feature, -std::numeric_limits<double>::infinity(), false, v, true);
  }
  static SplitCondition greater_than(int feature, double v) {
    return interval(feature, v, false, std::numeric_limits<double>::infinity(), false);
  }

  bool holds(const Instance& x) const;
  bool empty_interval() const;

  friend bool operator==(const SplitCondition&, const SplitCondition&) = default;
};

// Conjunction of split conditions, at most one per feature.
struct Premise {
  std::vector<SplitCondition> conditions;

  const SplitCondition* find(int feature) const;

  friend bool operator==(const Premise&, const Premise&) = default;
};

struct Rule {
  Premise premise;
  int outcome = 0;  // index into schema labels

  friend bool operator==(const Rule&, const Rule&) = default;
};

bool satisfies(const Instance& x, const Premise& p);

// p[delta]: conditions in delta overwrite same-feature conditions of p,
// fresh-feature conditions are appended.
Premise update_premise(const Premise& p, const std::vector<SplitCondition>& delta);

// nf: number of conditions in p falsified by x.
int count_falsified(const Premise& p, const Instance& x);

// Paper-style display forms: `age <= 25`, `900 < income <= 1500`, `job = clerk`.
std::string render_condition(const FeatureSchema& schema, const SplitCondition& sc);
std::string render_premise(const FeatureSchema& schema, const Premise& p);
std::string render_rule(const FeatureSchema& schema, const Rule& r);
std::string format_number(double v);

}  // namespace lore
