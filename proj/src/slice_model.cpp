#include "nslice/slice_model.hpp"

#include <algorithm>
#include <set>

namespace nslice {

const char* level_token(TemplateLevel l) {
  switch (l) {
    case TemplateLevel::VerticalGeneric: return "VerticalGeneric";
    case TemplateLevel::Sub: return "Sub";
    case TemplateLevel::UseCaseSpecific: return "UseCaseSpecific";
    case TemplateLevel::Subnet: return "Subnet";
  }
  return "?";
}

const char* flavor_token(TemplateFlavor f) {
  switch (f) {
    case TemplateFlavor::UsNsit: return "US-NSIT";
    case TemplateFlavor::GnNsit: return "GN-NSIT";
    case TemplateFlavor::SNsit: return "S-NSIT";
    case TemplateFlavor::Nssit5GC: return "5GC-NSSIT";
    case TemplateFlavor::NssitNgRan: return "NG-RAN-NSSIT";
    case TemplateFlavor::NssitTn: return "TN-NSSIT";
  }
  return "?";
}

const char* category_token(ServiceCategory c) {
  switch (c) {
    case ServiceCategory::eMBB: return "eMBB";
    case ServiceCategory::mMTC: return "mMTC";
    case ServiceCategory::uRLLC: return "uRLLC";
  }
  return "?";
}

const char* mode_token(ProvisioningMode m) {
  return m == ProvisioningMode::UseCaseSpecific ? "UseCaseSpecific" : "SubNetworkSlicing";
}

std::optional<TemplateLevel> parse_level_token(const std::string& s) {
  for (auto l : {TemplateLevel::VerticalGeneric, TemplateLevel::Sub, TemplateLevel::UseCaseSpecific,
                 TemplateLevel::Subnet})
    if (s == level_token(l)) return l;
  return std::nullopt;
}

std::optional<TemplateFlavor> parse_flavor_token(const std::string& s) {
  for (auto f : {TemplateFlavor::UsNsit, TemplateFlavor::GnNsit, TemplateFlavor::SNsit,
                 TemplateFlavor::Nssit5GC, TemplateFlavor::NssitNgRan, TemplateFlavor::NssitTn})
    if (s == flavor_token(f)) return f;
  return std::nullopt;
}

std::optional<ServiceCategory> parse_category_token(const std::string& s) {
  for (auto c : {ServiceCategory::eMBB, ServiceCategory::mMTC, ServiceCategory::uRLLC})
    if (s == category_token(c)) return c;
  return std::nullopt;
}

const char* dim_name(ResourceDim d) {
  switch (d) {
    case ResourceDim::Communication: return "communication";
    case ResourceDim::Computation: return "computation";
    case ResourceDim::Storage: return "storage";
    case ResourceDim::Radio: return "radio";
  }
  return "?";
}

const AttributeSpec* SliceTemplate::find_attribute(const std::string& name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a;
  return nullptr;
}

static TemplateLevel expected_level(TemplateFlavor f) {
  switch (f) {
    case TemplateFlavor::UsNsit: return TemplateLevel::UseCaseSpecific;
    case TemplateFlavor::GnNsit: return TemplateLevel::VerticalGeneric;
    case TemplateFlavor::SNsit: return TemplateLevel::Sub;
    default: return TemplateLevel::Subnet;
  }
}

static bool is_slice_level(TemplateFlavor f) {
  return f == TemplateFlavor::UsNsit || f == TemplateFlavor::GnNsit || f == TemplateFlavor::SNsit;
}

static const char* kEmptySubTemplates = "GN-NSIT requires 1..8 sub_templates";

ValidationReport validate_template(const SliceTemplate& tpl) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  if (tpl.id_info.template_id.empty()) add("missing template_id");
  if (tpl.id_info.level != expected_level(tpl.flavor))
    add(std::string("level does not match flavor ") + flavor_token(tpl.flavor));
  const bool needs_use_case =
      tpl.id_info.level == TemplateLevel::Sub || tpl.id_info.level == TemplateLevel::UseCaseSpecific;
  if (needs_use_case && !tpl.id_info.use_case_id)
    add("use_case_id required at this level");
  if (tpl.id_info.level == TemplateLevel::VerticalGeneric && tpl.id_info.use_case_id)
    add("use_case_id must be absent on a VerticalGeneric template");
  if (tpl.flavor == TemplateFlavor::GnNsit && tpl.service_category)
    add("GN-NSIT aggregates several service categories; leave service_category unset");

  std::set<std::string> seen;
  for (const auto& attr : tpl.attributes) {
    if (!seen.insert(attr.name).second) add("duplicate attribute: " + attr.name);
    if (const auto* r = std::get_if<Range>(&attr.value)) {
      if (r->lower && *r->lower > r->upper)
        add("range lower > upper in " + attr.name);
      if (r->unit.empty()) add("numeric attribute without unit: " + attr.name);
    }
    if (const auto* s = std::get_if<Scalar>(&attr.value))
      if (s->unit.empty()) add("numeric attribute without unit: " + attr.name);
    if (auto iv = numeric_interval(attr.value)) {
      const std::string unit = std::holds_alternative<Scalar>(attr.value)
                                   ? std::get<Scalar>(attr.value).unit
                                   : std::get<Range>(attr.value).unit;
      if (unit == "%" && (iv->lower < 0.0 || iv->upper > 100.0))
        add("percentage out of [0,100] in " + attr.name);
    }
    if (const auto* row = schema_lookup(attr.name)) {
      if (attr.category != row->category)
        add("attribute " + attr.name + " belongs to category " +
            std::string(category_name(row->category)));
      const bool kind_ok = (row->kind == ValueKind::Numeric && is_numeric(attr.value)) ||
                           (row->kind == ValueKind::Ordinal &&
                            std::holds_alternative<OrdinalValue>(attr.value)) ||
                           (row->kind == ValueKind::Text &&
                            std::holds_alternative<TextValue>(attr.value)) ||
                           (row->kind == ValueKind::Boolean &&
                            std::holds_alternative<BoolValue>(attr.value));
      if (!kind_ok) add("attribute " + attr.name + " has the wrong value kind");
      if (row->kind == ValueKind::Numeric) {
        const std::string unit = std::holds_alternative<Scalar>(attr.value)
                                     ? std::get<Scalar>(attr.value).unit
                                     : std::holds_alternative<Range>(attr.value)
                                           ? std::get<Range>(attr.value).unit
                                           : "";
        if (!unit.empty() && unit != row->unit)
          add("attribute " + attr.name + " expects unit " + row->unit);
      }
    }
  }

  if (is_slice_level(tpl.flavor)) {
    std::vector<std::string> missing;
    for (const auto& row : standard_schema())
      if (!seen.count(row.name)) missing.push_back(row.name);
    if (missing.size() == standard_schema().size()) {
      add("missing mandatory attributes");
    } else {
      for (const auto& name : missing) add("missing mandatory attribute: " + name);
    }
  }

  if (tpl.flavor == TemplateFlavor::GnNsit) {
    if (tpl.sub_templates.empty() || tpl.sub_templates.size() > kMaxSubSlices)
      add(kEmptySubTemplates);
  } else if (!tpl.sub_templates.empty()) {
    add("sub_templates are only valid on a GN-NSIT");
  }

  for (std::size_t d = 0; d < kResourceDims; ++d)
    if (tpl.resources.quantity[d] < 0)
      add(std::string("negative resource quantity: ") + dim_name(static_cast<ResourceDim>(d)));

  return report;
}

// A GN-NSIT being derived from has no S-NSIT ids yet; every other violation
// still disqualifies it as a parent.
static bool parent_invalid(const SliceTemplate& gn) {
  auto report = validate_template(gn);
  std::erase_if(report.violations, [](const std::string& v) { return v == kEmptySubTemplates; });
  return !report.violations.empty();
}

static void apply_override(std::vector<AttributeSpec>& attrs, const AttributeSpec& ov) {
  for (auto& attr : attrs) {
    if (attr.name != ov.name) continue;
    // Numeric overrides may tighten the parent's interval, never widen it.
    auto parent_iv = numeric_interval(attr.value);
    auto child_iv = numeric_interval(ov.value);
    if (parent_iv && child_iv) {
      if (child_iv->lower >= parent_iv->lower && child_iv->upper <= parent_iv->upper)
        attr.value = ov.value;
    } else if (!parent_iv && !child_iv) {
      attr.value = ov.value;
    }
    return;
  }
  // Names absent from the parent are dropped: subset law.
}

SnsitResult derive_snsits(const SliceTemplate& gn, const Vertical& vertical) {
  SnsitResult result;
  if (gn.flavor != TemplateFlavor::GnNsit || parent_invalid(gn)) {
    result.error = DeriveError::InvalidParent;
    return result;
  }
  if (vertical.use_cases.size() > kMaxSubSlices) {
    result.error = DeriveError::TooManyUseCases;
    return result;
  }
  for (const auto& uc : vertical.use_cases) {
    SliceTemplate s;
    s.flavor = TemplateFlavor::SNsit;
    s.service_category = uc.service_category;
    s.id_info = gn.id_info;
    s.id_info.level = TemplateLevel::Sub;
    s.id_info.use_case_id = uc.use_case_id;
    s.id_info.template_id = gn.id_info.template_id + "." + uc.use_case_id;
    s.attributes = gn.attributes;
    for (const auto& ov : uc.overrides) apply_override(s.attributes, ov);
    s.resources = gn.resources;
    result.snsits.push_back(std::move(s));
  }
  return result;
}

NssitTriple derive_nssits(const SliceTemplate& nsit) {
  NssitTriple triple;
  const bool flavor_ok =
      nsit.flavor == TemplateFlavor::UsNsit || nsit.flavor == TemplateFlavor::SNsit;
  if (!flavor_ok || !validate_template(nsit).ok()) {
    triple.error = DeriveError::InvalidParent;
    return triple;
  }

  auto child = [&](TemplateFlavor flavor, const char* suffix) {
    SliceTemplate c;
    c.flavor = flavor;
    c.id_info = nsit.id_info;
    c.id_info.level = TemplateLevel::Subnet;
    c.id_info.template_id = nsit.id_info.template_id + suffix;
    c.resources.sharing = nsit.resources.sharing;
    return c;
  };

  triple.core = child(TemplateFlavor::Nssit5GC, ".5gc");
  triple.core.resources[ResourceDim::Computation] = nsit.resources[ResourceDim::Computation];
  triple.core.resources[ResourceDim::Storage] = nsit.resources[ResourceDim::Storage];

  triple.ran = child(TemplateFlavor::NssitNgRan, ".ran");
  triple.ran.resources[ResourceDim::Radio] = nsit.resources[ResourceDim::Radio];

  triple.tn = child(TemplateFlavor::NssitTn, ".tn");
  triple.tn.resources[ResourceDim::Communication] = nsit.resources[ResourceDim::Communication];

  return triple;
}

SliceCardinality required_slice_count(const Vertical& vertical, ProvisioningMode mode) {
  const std::size_t n = vertical.use_cases.size();
  if (mode == ProvisioningMode::UseCaseSpecific) return {n, 0};
  return {1, n};
}

}  // namespace nslice
