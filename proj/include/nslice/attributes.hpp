#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nslice {

/// Ordinal requirement levels, totally ordered for feasibility comparisons:
/// NotAConcern < Medium < High < VeryHigh.
enum class Level { NotAConcern = 0, Medium = 1, High = 2, VeryHigh = 3 };

enum class Category { Performance, Functional, Operational };

enum class Presence { Mandatory, Optional, Conditional };

/// A single numeric quantity with a unit, e.g. "50 Mbps" or "99.999%".
struct Scalar {
  double value = 0.0;
  std::string unit;
  bool operator==(const Scalar&) const = default;
};

/// A numeric interval with a unit. An absent lower bound renders as an
/// upper-bound constraint ("<20 ms").
struct Range {
  std::optional<double> lower;
  double upper = 0.0;
  std::string unit;
  bool operator==(const Range&) const = default;
};

struct OrdinalValue {
  Level level = Level::NotAConcern;
  bool operator==(const OrdinalValue&) const = default;
};

struct TextValue {
  std::string value;
  bool operator==(const TextValue&) const = default;
};

struct BoolValue {
  bool value = false;
  bool operator==(const BoolValue&) const = default;
};

using AttributeValue = std::variant<Scalar, Range, OrdinalValue, TextValue, BoolValue>;

bool is_numeric(const AttributeValue& v);

/// Numeric interval view of a value: a Scalar maps to the degenerate
/// interval [v, v]; a lower-open Range maps to [0, upper].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool operator==(const Interval&) const = default;
};
std::optional<Interval> numeric_interval(const AttributeValue& v);

struct AttributeSpec {
  std::string name;
  Category category = Category::Performance;
  AttributeValue value;
  Presence presence = Presence::Mandatory;
  bool operator==(const AttributeSpec&) const = default;
};

const char* level_name(Level l);
const char* category_name(Category c);

/// Renders a value exactly as it appears in a template document cell.
std::string format_value(const AttributeValue& v);

/// Expected value kind for a schema attribute.
enum class ValueKind { Numeric, Ordinal, Text, Boolean };

/// One row of the per-service-category attribute schema.
struct SchemaAttribute {
  std::string name;
  Category category;
  ValueKind kind;
  std::string unit;  // empty for non-numeric rows
};

/// The fixed 19-row requirement schema (6 performance, 6 functional,
/// 7 operational), all Mandatory for slice-level templates.
const std::vector<SchemaAttribute>& standard_schema();

const SchemaAttribute* schema_lookup(const std::string& name);

/// Parses a cell string into a typed value. When `hint` is given the schema
/// kind disambiguates; otherwise the shape of the text decides.
std::optional<AttributeValue> parse_value(const std::string& text, const SchemaAttribute* hint);

std::string format_number(double v);

}  // namespace nslice
