#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "nslice/attributes.hpp"
#include "nslice/slice_model.hpp"

namespace nslice::testing {

inline std::string fixture(const std::string& name) {
  return std::string(NSLICE_FIXTURES_DIR) + "/" + name;
}

/// Fully schema-complete template with plausible fixed values.
inline SliceTemplate make_template(const std::string& id, TemplateFlavor flavor,
                                   const std::string& use_case = "uc") {
  SliceTemplate t;
  t.flavor = flavor;
  t.id_info.template_id = id;
  t.id_info.tenant_id = "tenant-a";
  t.id_info.vertical_id = "vert-a";
  switch (flavor) {
    case TemplateFlavor::UsNsit:
      t.id_info.level = TemplateLevel::UseCaseSpecific;
      t.id_info.use_case_id = use_case;
      t.service_category = ServiceCategory::eMBB;
      break;
    case TemplateFlavor::SNsit:
      t.id_info.level = TemplateLevel::Sub;
      t.id_info.use_case_id = use_case;
      t.service_category = ServiceCategory::eMBB;
      break;
    case TemplateFlavor::GnNsit:
      t.id_info.level = TemplateLevel::VerticalGeneric;
      break;
    default:
      t.id_info.level = TemplateLevel::Subnet;
      break;
  }
  for (const auto& row : standard_schema()) {
    AttributeSpec spec;
    spec.name = row.name;
    spec.category = row.category;
    switch (row.kind) {
      case ValueKind::Numeric:
        spec.value = row.unit == "%" ? Scalar{99.9, row.unit} : Scalar{10.0, row.unit};
        break;
      case ValueKind::Ordinal: spec.value = OrdinalValue{Level::High}; break;
      case ValueKind::Text: spec.value = TextValue{"Generic"}; break;
      case ValueKind::Boolean: spec.value = BoolValue{true}; break;
    }
    t.attributes.push_back(std::move(spec));
  }
  t.resources.quantity = {8, 6, 4, 10};
  return t;
}

/// Randomized but always-valid slice-level template.
inline SliceTemplate random_template(std::mt19937& rng, const std::string& id,
                                     TemplateFlavor flavor = TemplateFlavor::UsNsit) {
  SliceTemplate t = make_template(id, flavor);
  std::uniform_real_distribution<double> pct(0.0, 100.0);
  std::uniform_real_distribution<double> num(0.1, 500.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> lvl(0, 3);
  std::uniform_int_distribution<std::int64_t> qty(0, 50);
  for (auto& attr : t.attributes) {
    const auto* row = schema_lookup(attr.name);
    switch (row->kind) {
      case ValueKind::Numeric: {
        const bool percent = row->unit == "%";
        // Two-decimal quantities survive the canonical decimal rendering
        // without rounding drift.
        auto quantize = [](double x) { return std::round(x * 100.0) / 100.0; };
        double a = quantize(percent ? pct(rng) : num(rng));
        double b = quantize(percent ? pct(rng) : num(rng));
        if (a > b) std::swap(a, b);
        if (coin(rng))
          attr.value = Scalar{b, row->unit};
        else
          attr.value = Range{coin(rng) ? std::optional<double>(a) : std::nullopt, b, row->unit};
        break;
      }
      case ValueKind::Ordinal:
        attr.value = OrdinalValue{static_cast<Level>(lvl(rng))};
        break;
      case ValueKind::Text:
        attr.value = TextValue{coin(rng) ? "Alpha beta" : "Gamma/delta"};
        break;
      case ValueKind::Boolean:
        attr.value = BoolValue{coin(rng) == 1};
        break;
    }
  }
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    t.resources.quantity[d] = qty(rng);
    t.resources.sharing[d] = coin(rng) ? Sharing::Shared : Sharing::Dedicated;
  }
  return t;
}

}  // namespace nslice::testing
