#include "nslice/attributes.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>

namespace nslice {

bool is_numeric(const AttributeValue& v) {
  return std::holds_alternative<Scalar>(v) || std::holds_alternative<Range>(v);
}

std::optional<Interval> numeric_interval(const AttributeValue& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return Interval{s->value, s->value};
  if (const auto* r = std::get_if<Range>(&v)) return Interval{r->lower.value_or(0.0), r->upper};
  return std::nullopt;
}

const char* level_name(Level l) {
  switch (l) {
    case Level::NotAConcern: return "Not a concern";
    case Level::Medium: return "Medium";
    case Level::High: return "High";
    case Level::VeryHigh: return "Very high";
  }
  return "?";
}

const char* category_name(Category c) {
  switch (c) {
    case Category::Performance: return "Performance";
    case Category::Functional: return "Functional";
    case Category::Operational: return "Operational";
  }
  return "?";
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

static std::string with_unit(const std::string& body, const std::string& unit) {
  if (unit.empty()) return body;
  if (unit == "%") return body + "%";
  return body + " " + unit;
}

std::string format_value(const AttributeValue& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return with_unit(format_number(s->value), s->unit);
  if (const auto* r = std::get_if<Range>(&v)) {
    if (r->lower) return with_unit(format_number(*r->lower) + "-" + format_number(r->upper), r->unit);
    return with_unit("<" + format_number(r->upper), r->unit);
  }
  if (const auto* o = std::get_if<OrdinalValue>(&v)) return level_name(o->level);
  if (const auto* t = std::get_if<TextValue>(&v)) return t->value;
  return std::get<BoolValue>(v).value ? "Yes" : "No";
}

const std::vector<SchemaAttribute>& standard_schema() {
  static const std::vector<SchemaAttribute> rows = {
      {"Latency", Category::Performance, ValueKind::Numeric, "ms"},
      {"Reliability", Category::Performance, ValueKind::Numeric, "%"},
      {"Availability", Category::Performance, ValueKind::Numeric, "%"},
      {"Mobility", Category::Performance, ValueKind::Numeric, "Km/hr"},
      {"Device density", Category::Performance, ValueKind::Ordinal, ""},
      {"Data rate", Category::Performance, ValueKind::Numeric, "Mbps"},
      {"Isolation", Category::Functional, ValueKind::Ordinal, ""},
      {"Security", Category::Functional, ValueKind::Ordinal, ""},
      {"Application server positioning", Category::Functional, ValueKind::Text, ""},
      {"Scheduling", Category::Functional, ValueKind::Text, ""},
      {"Priority", Category::Functional, ValueKind::Ordinal, ""},
      {"Battery life", Category::Functional, ValueKind::Ordinal, ""},
      {"Coverage type", Category::Operational, ValueKind::Text, ""},
      {"Supported APIs", Category::Operational, ValueKind::Boolean, ""},
      {"Energy efficiency", Category::Operational, ValueKind::Ordinal, ""},
      {"Resources/policies", Category::Operational, ValueKind::Text, ""},
      {"Monitoring", Category::Operational, ValueKind::Text, ""},
      {"Communication mode", Category::Operational, ValueKind::Text, ""},
      {"Communication primitive", Category::Operational, ValueKind::Text, ""},
  };
  return rows;
}

const SchemaAttribute* schema_lookup(const std::string& name) {
  for (const auto& row : standard_schema())
    if (row.name == name) return &row;
  return nullptr;
}

static std::optional<Level> parse_level(const std::string& s) {
  if (s == "Not a concern") return Level::NotAConcern;
  if (s == "Medium") return Level::Medium;
  if (s == "High") return Level::High;
  if (s == "Very high") return Level::VeryHigh;
  return std::nullopt;
}

static bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc{} && p == e;
}

// Splits "1-10 ms" / "<20 ms" / "99.999%" / "50 Mbps" into body + unit.
static std::optional<AttributeValue> parse_numeric(const std::string& text) {
  std::string body = text;
  std::string unit;
  if (!body.empty() && body.back() == '%') {
    unit = "%";
    body.pop_back();
  } else if (auto sp = body.rfind(' '); sp != std::string::npos) {
    unit = body.substr(sp + 1);
    body = body.substr(0, sp);
  }
  if (body.empty()) return std::nullopt;
  if (body.front() == '<') {
    double u;
    if (!parse_double(std::string_view(body).substr(1), u)) return std::nullopt;
    return Range{std::nullopt, u, unit};
  }
  // A '-' after the first character separates range bounds.
  if (auto dash = body.find('-', 1); dash != std::string::npos) {
    double lo, hi;
    if (parse_double(std::string_view(body).substr(0, dash), lo) &&
        parse_double(std::string_view(body).substr(dash + 1), hi))
      return Range{lo, hi, unit};
  }
  double v;
  if (!parse_double(body, v)) return std::nullopt;
  return Scalar{v, unit};
}

std::optional<AttributeValue> parse_value(const std::string& text, const SchemaAttribute* hint) {
  if (hint) {
    switch (hint->kind) {
      case ValueKind::Numeric: return parse_numeric(text);
      case ValueKind::Ordinal: {
        auto l = parse_level(text);
        if (!l) return std::nullopt;
        return OrdinalValue{*l};
      }
      case ValueKind::Boolean:
        if (text == "Yes") return BoolValue{true};
        if (text == "No") return BoolValue{false};
        return std::nullopt;
      case ValueKind::Text: return TextValue{text};
    }
  }
  if (text == "Yes") return BoolValue{true};
  if (text == "No") return BoolValue{false};
  if (auto l = parse_level(text)) return OrdinalValue{*l};
  if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text.front())) || text.front() == '<')) {
    if (auto n = parse_numeric(text)) return n;
  }
  return TextValue{text};
}

}  // namespace nslice
