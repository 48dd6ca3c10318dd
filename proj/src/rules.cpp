#include "lore/rules.hpp"

#include <cmath>
#include <cstdio>

#include "lore/error.hpp"

namespace lore {

bool SplitCondition::holds(const Instance& x) const {
  const Value& v = x.at(static_cast<std::size_t>(feature));
  if (categorical) return v.kind == ValueKind::Category && v.cat == category;
  if (v.kind != ValueKind::Number) return false;
  if (lower_closed ? v.num < lower : v.num <= lower) return false;
  if (upper_closed ? v.num > upper : v.num >= upper) return false;
  return true;
}

bool SplitCondition::empty_interval() const {
  if (categorical) return false;
  if (lower < upper) return false;
  return !(lower == upper && lower_closed && upper_closed);
}

const SplitCondition* Premise::find(int feature) const {
  for (const auto& sc : conditions)
    if (sc.feature == feature) return &sc;
  return nullptr;
}

bool satisfies(const Instance& x, const Premise& p) {
  for (const auto& sc : p.conditions)
    if (!sc.holds(x)) return false;
  return true;
}

Premise update_premise(const Premise& p, const std::vector<SplitCondition>& delta) {
  Premise out;
  out.conditions = delta;
  for (const auto& sc : p.conditions) {
    bool overwritten = false;
    for (const auto& d : delta)
      if (d.feature == sc.feature) { overwritten = true; break; }
    if (!overwritten) out.conditions.push_back(sc);
  }
  return out;
}

int count_falsified(const Premise& p, const Instance& x) {
  int n = 0;
  for (const auto& sc : p.conditions)
    if (!sc.holds(x)) ++n;
  return n;
}

std::string format_number(double v) {
  char buf[64];
  // shortest form that round-trips; trailing zeros trimmed by %g
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

std::string render_condition(const FeatureSchema& schema, const SplitCondition& sc) {
  const std::string& name = schema.features.at(static_cast<std::size_t>(sc.feature)).name;
  if (sc.categorical) return name + " = " + sc.category;

  const bool has_lower = std::isfinite(sc.lower);
  const bool has_upper = std::isfinite(sc.upper);
  if (has_lower && has_upper) {
    if (sc.lower == sc.upper) return name + " = " + format_number(sc.lower);
    return format_number(sc.lower) + (sc.lower_closed ? " <= " : " < ") + name +
           (sc.upper_closed ? " <= " : " < ") + format_number(sc.upper);
  }
  if (has_upper) return name + (sc.upper_closed ? " <= " : " < ") + format_number(sc.upper);
  if (has_lower) return name + (sc.lower_closed ? " >= " : " > ") + format_number(sc.lower);
  return name + " = any";
}

std::string render_premise(const FeatureSchema& schema, const Premise& p) {
  std::string out = "{";
  for (std::size_t i = 0; i < p.conditions.size(); ++i) {
    if (i) out += ", ";
    out += render_condition(schema, p.conditions[i]);
  }
  out += "}";
  return out;
}

std::string render_rule(const FeatureSchema& schema, const Rule& r) {
  return render_premise(schema, r.premise) + " -> " + schema.target_name + " = " +
         schema.labels.at(static_cast<std::size_t>(r.outcome));
}

}  // namespace lore
