#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nslice/attributes.hpp"

namespace nslice {

enum class TemplateLevel { VerticalGeneric, Sub, UseCaseSpecific, Subnet };

enum class TemplateFlavor { UsNsit, GnNsit, SNsit, Nssit5GC, NssitNgRan, NssitTn };

enum class ServiceCategory { eMBB, mMTC, uRLLC };

enum class ProvisioningMode { UseCaseSpecific, SubNetworkSlicing };

const char* level_token(TemplateLevel l);
const char* flavor_token(TemplateFlavor f);
const char* category_token(ServiceCategory c);
const char* mode_token(ProvisioningMode m);
std::optional<TemplateLevel> parse_level_token(const std::string& s);
std::optional<TemplateFlavor> parse_flavor_token(const std::string& s);
std::optional<ServiceCategory> parse_category_token(const std::string& s);

struct IdentificationInfo {
  std::string tenant_id;
  std::string vertical_id;
  std::optional<std::string> use_case_id;
  TemplateLevel level = TemplateLevel::UseCaseSpecific;
  std::string template_id;
  bool operator==(const IdentificationInfo&) const = default;
};

enum class ResourceDim { Communication = 0, Computation = 1, Storage = 2, Radio = 3 };
constexpr std::size_t kResourceDims = 4;
const char* dim_name(ResourceDim d);

enum class Sharing { Dedicated, Shared };

/// Abstract integer resource demand per dimension, with a sharing mode per
/// dimension.
struct ResourceRequirement {
  std::array<std::int64_t, kResourceDims> quantity{0, 0, 0, 0};
  std::array<Sharing, kResourceDims> sharing{Sharing::Dedicated, Sharing::Dedicated,
                                             Sharing::Dedicated, Sharing::Dedicated};

  std::int64_t& operator[](ResourceDim d) { return quantity[static_cast<std::size_t>(d)]; }
  std::int64_t operator[](ResourceDim d) const { return quantity[static_cast<std::size_t>(d)]; }
  Sharing sharing_of(ResourceDim d) const { return sharing[static_cast<std::size_t>(d)]; }
  bool operator==(const ResourceRequirement&) const = default;
};

struct SliceTemplate {
  IdentificationInfo id_info;
  TemplateFlavor flavor = TemplateFlavor::UsNsit;
  std::optional<ServiceCategory> service_category;
  std::vector<AttributeSpec> attributes;  // document order
  ResourceRequirement resources;
  std::vector<std::string> sub_templates;  // GnNsit only: S-NSIT ids, 1..8

  const AttributeSpec* find_attribute(const std::string& name) const;
  bool operator==(const SliceTemplate&) const = default;
};

struct UseCase {
  std::string use_case_id;
  ServiceCategory service_category = ServiceCategory::eMBB;
  /// Per-use-case attribute overrides applied on top of the parent template.
  std::vector<AttributeSpec> overrides;
  bool operator==(const UseCase&) const = default;
};

struct Vertical {
  std::string vertical_id;
  std::string tenant_id;
  std::vector<UseCase> use_cases;  // n >= 1, ids unique
  bool operator==(const Vertical&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// A GN-NSI clusters at most eight S-NSIs; a UE attaches to at most eight
/// slices. Both caps trace to the same NG-RAN limit.
constexpr std::size_t kMaxSubSlices = 8;

ValidationReport validate_template(const SliceTemplate& tpl);

enum class DeriveError { TooManyUseCases, InvalidParent };

struct SnsitResult {
  std::vector<SliceTemplate> snsits;
  std::optional<DeriveError> error;
};

/// One S-NSIT per use case, in use-case order; attribute names are a subset
/// of the parent GN-NSIT's, values copied (overrides may tighten, not widen).
SnsitResult derive_snsits(const SliceTemplate& gn, const Vertical& vertical);

struct NssitTriple {
  SliceTemplate core;   // Nssit5GC: computation + storage
  SliceTemplate ran;    // NssitNgRan: radio
  SliceTemplate tn;     // NssitTn: communication
  std::optional<DeriveError> error;
};

NssitTriple derive_nssits(const SliceTemplate& nsit);

struct SliceCardinality {
  std::size_t top_level = 0;
  std::size_t sub = 0;
  bool operator==(const SliceCardinality&) const = default;
};

SliceCardinality required_slice_count(const Vertical& vertical, ProvisioningMode mode);

}  // namespace nslice
