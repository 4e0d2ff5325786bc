#include "nslice/catalogue.hpp"

#include <algorithm>
#include <sstream>

#include "nslice/text_format.hpp"

namespace nslice {

const char* catalogue_error_name(CatalogueError e) {
  switch (e) {
    case CatalogueError::DuplicateId: return "DuplicateId";
    case CatalogueError::DanglingSubTemplate: return "DanglingSubTemplate";
    case CatalogueError::InvalidTemplate: return "InvalidTemplate";
  }
  return "?";
}

void Catalogue::index_insert(const SliceTemplate& tpl) {
  const auto key = std::make_pair(tpl.id_info.vertical_id, tpl.id_info.use_case_id.value_or(""));
  index_[key].insert(tpl.id_info.template_id);
}

std::optional<CatalogueError> Catalogue::insert(const SliceTemplate& tpl, Provenance provenance) {
  return insert_batch({tpl}, provenance);
}

std::optional<CatalogueError> Catalogue::insert_batch(const std::vector<SliceTemplate>& batch,
                                                      Provenance provenance) {
  std::set<std::string> batch_ids;
  for (const auto& tpl : batch) {
    if (!validate_template(tpl).ok()) return CatalogueError::InvalidTemplate;
    const auto& id = tpl.id_info.template_id;
    if (entries_.count(id) || !batch_ids.insert(id).second) return CatalogueError::DuplicateId;
  }
  for (const auto& tpl : batch)
    for (const auto& sub : tpl.sub_templates)
      if (!entries_.count(sub) && !batch_ids.count(sub)) return CatalogueError::DanglingSubTemplate;
  for (const auto& tpl : batch) {
    entries_[tpl.id_info.template_id] = tpl;
    provenance_[tpl.id_info.template_id] = provenance;
    index_insert(tpl);
  }
  return std::nullopt;
}

std::vector<Catalogue::Resolved> Catalogue::lookup(const std::string& vertical_id,
                                                   ProvisioningMode mode) const {
  std::vector<Resolved> result;
  for (const auto& [id, tpl] : entries_) {
    if (tpl.id_info.vertical_id != vertical_id) continue;
    if (mode == ProvisioningMode::UseCaseSpecific) {
      if (tpl.flavor == TemplateFlavor::UsNsit) result.push_back({tpl, provenance_.at(id)});
    } else if (tpl.flavor == TemplateFlavor::GnNsit) {
      result.push_back({tpl, provenance_.at(id)});
      for (const auto& sub : tpl.sub_templates) {
        if (const auto it = entries_.find(sub); it != entries_.end())
          result.push_back({it->second, provenance_.at(sub)});
      }
    }
  }
  return result;
}

const SliceTemplate* Catalogue::get(const std::string& template_id) const {
  const auto it = entries_.find(template_id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<Provenance> Catalogue::provenance_of(const std::string& template_id) const {
  const auto it = provenance_.find(template_id);
  if (it == provenance_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Catalogue::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

std::vector<std::string> Catalogue::check_integrity() const {
  std::vector<std::string> problems;
  for (const auto& [id, tpl] : entries_) {
    auto report = validate_template(tpl);
    for (const auto& v : report.violations) problems.push_back(id + ": " + v);
    if (!provenance_.count(id)) problems.push_back(id + ": missing provenance");
    for (const auto& sub_id : tpl.sub_templates) {
      const auto it = entries_.find(sub_id);
      if (it == entries_.end()) {
        problems.push_back(id + ": dangling sub_template " + sub_id);
        continue;
      }
      const SliceTemplate& sub = it->second;
      if (sub.flavor != TemplateFlavor::SNsit)
        problems.push_back(id + ": sub_template " + sub_id + " is not an S-NSIT");
      for (const auto& attr : sub.attributes)
        if (!tpl.find_attribute(attr.name))
          problems.push_back(sub_id + ": attribute '" + attr.name + "' not in parent " + id);
    }
  }
  for (const auto& [key, ids] : index_)
    for (const auto& id : ids)
      if (!entries_.count(id)) problems.push_back("index references unknown id " + id);
  return problems;
}

std::variant<SliceTemplate, RejectionReport> Catalogue::negotiate_non_standard(
    const SliceTemplate& draft, const OperatorPolicy& policy) {
  RejectionReport rejection;
  SliceTemplate result = draft;
  std::vector<AttributeSpec> kept;
  for (auto attr : result.attributes) {
    const auto iv = numeric_interval(attr.value);
    const auto bound = policy.bounds.find(attr.name);
    if (!iv || bound == policy.bounds.end()) {
      kept.push_back(std::move(attr));
      continue;
    }
    const double lo = std::max(iv->lower, bound->second.lower);
    const double hi = std::min(iv->upper, bound->second.upper);
    if (lo > hi) {
      if (attr.presence == Presence::Mandatory) rejection.rejected_attributes.push_back(attr.name);
      continue;  // empty intersection: optional/conditional proposals are dropped
    }
    if (const auto* s = std::get_if<Scalar>(&attr.value)) {
      attr.value = Scalar{std::clamp(s->value, lo, hi), s->unit};
    } else {
      const auto& r = std::get<Range>(attr.value);
      attr.value = Range{lo, hi, r.unit};
    }
    kept.push_back(std::move(attr));
  }
  if (!rejection.rejected_attributes.empty()) return rejection;
  result.attributes = std::move(kept);
  result.id_info.template_id = draft.id_info.template_id + ".ns" + std::to_string(++non_standard_seq_);
  const auto report = validate_template(result);
  if (!report.ok()) {
    rejection.rejected_attributes = report.violations;
    return rejection;
  }
  if (const auto err = insert(result, Provenance::NonStandard)) {
    rejection.rejected_attributes.push_back(catalogue_error_name(*err));
    return rejection;
  }
  return result;
}

std::string Catalogue::save() const {
  std::ostringstream out;
  out << "[catalogue]\n";
  out << "entries = " << entries_.size() << "\n";
  for (const auto& [id, tpl] : entries_) out << "\n" << serialize_template(tpl);
  out << "\n[provenance]\n";
  for (const auto& [id, prov] : provenance_)
    out << id << " = " << (prov == Provenance::Standard ? "Standard" : "NonStandard") << "\n";
  return out.str();
}

Catalogue Catalogue::load(const std::string& text) {
  const Document doc = parse_document(text);
  Catalogue cat;
  for (auto& tpl : parse_templates(doc)) {
    const std::string id = tpl.id_info.template_id;
    cat.entries_[id] = std::move(tpl);
    cat.provenance_[id] = Provenance::Standard;
    cat.index_insert(cat.entries_[id]);
  }
  for (const auto& section : doc.sections) {
    if (section.name != "provenance") continue;
    for (const auto& entry : section.entries) {
      if (entry.value == "NonStandard")
        cat.provenance_[entry.key] = Provenance::NonStandard;
      else if (entry.value != "Standard")
        throw ParseError(entry.line, "unknown provenance '" + entry.value + "'");
    }
  }
  return cat;
}

}  // namespace nslice
