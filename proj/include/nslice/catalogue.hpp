#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nslice/slice_model.hpp"

namespace nslice {

enum class Provenance { Standard, NonStandard };

enum class CatalogueError { DuplicateId, DanglingSubTemplate, InvalidTemplate };
const char* catalogue_error_name(CatalogueError e);

/// Numeric bounds an operator is willing to grant, per attribute name.
struct OperatorPolicy {
  std::map<std::string, Interval> bounds;
};

struct RejectionReport {
  std::vector<std::string> rejected_attributes;  // mandatory attrs with empty intersection
};

/// The network slice catalogue: template store keyed by id, with a
/// (vertical, use case) index and per-template provenance.
class Catalogue {
 public:
  std::optional<CatalogueError> insert(const SliceTemplate& tpl, Provenance provenance);

  /// Inserts a GN-NSIT together with its S-NSITs as one batch, so the
  /// cross-references resolve regardless of order.
  std::optional<CatalogueError> insert_batch(const std::vector<SliceTemplate>& batch,
                                             Provenance provenance);

  struct Resolved {
    SliceTemplate tpl;
    Provenance provenance;
  };

  /// All slice-level templates for a vertical relevant to the given mode:
  /// US-NSITs for UseCaseSpecific, the GN-NSIT plus its S-NSITs otherwise.
  std::vector<Resolved> lookup(const std::string& vertical_id, ProvisioningMode mode) const;

  const SliceTemplate* get(const std::string& template_id) const;
  std::optional<Provenance> provenance_of(const std::string& template_id) const;
  std::vector<std::string> ids() const;  // sorted
  std::size_t size() const { return entries_.size(); }

  /// Full re-validation pass: per-template validity, referential integrity of
  /// sub_template ids, the S-NSIT attribute-subset law, and index consistency.
  std::vector<std::string> check_integrity() const;

  std::variant<SliceTemplate, RejectionReport> negotiate_non_standard(
      const SliceTemplate& draft, const OperatorPolicy& policy);

  std::string save() const;  // deterministic, ordered by template_id
  static Catalogue load(const std::string& text);  // throws ParseError

 private:
  void index_insert(const SliceTemplate& tpl);

  std::map<std::string, SliceTemplate> entries_;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> index_;
  std::map<std::string, Provenance> provenance_;
  int non_standard_seq_ = 0;
};

}  // namespace nslice
