#include "nslice/infrastructure.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "nslice/text_format.hpp"

namespace nslice {

std::uint64_t fnv1a(std::uint64_t seed, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed ? seed : 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a_str(std::uint64_t seed, const std::string& s) {
  return fnv1a(seed, s.data(), s.size());
}

static std::uint64_t fnv1a_i64(std::uint64_t seed, std::int64_t v) {
  return fnv1a(seed, &v, sizeof v);
}

std::vector<std::string> Substrate::validate() const {
  std::vector<std::string> problems;
  std::set<std::string> node_ids, component_ids;
  for (const auto& cn : core_nodes) {
    if (!node_ids.insert(cn.id).second) problems.push_back("duplicate node id " + cn.id);
    if (cn.compute < 0 || cn.storage < 0) problems.push_back("negative capacity on " + cn.id);
  }
  for (const auto& g : gnbs) {
    if (!node_ids.insert(g.id).second) problems.push_back("duplicate node id " + g.id);
    if (g.radio < 0) problems.push_back("negative capacity on " + g.id);
    if (!component_ids.insert(g.cu_id).second) problems.push_back("duplicate component " + g.cu_id);
    for (const auto& du : g.dus) {
      if (!component_ids.insert(du.id).second) problems.push_back("duplicate component " + du.id);
      for (const auto& ru : du.ru_ids)
        if (!component_ids.insert(ru).second)
          problems.push_back("RU " + ru + " attached to more than one DU");
    }
  }
  std::set<std::string> link_ids;
  for (const auto& l : tn_links) {
    if (!link_ids.insert(l.id).second) problems.push_back("duplicate link id " + l.id);
    if (l.bandwidth < 0) problems.push_back("negative capacity on " + l.id);
    for (const auto& ep : {l.endpoint_a, l.endpoint_b})
      if (!node_ids.count(ep)) problems.push_back("link " + l.id + " endpoint " + ep + " unknown");
  }
  return problems;
}

const Gnb* Substrate::find_gnb(const std::string& id) const {
  for (const auto& g : gnbs)
    if (g.id == id) return &g;
  return nullptr;
}

std::string Substrate::serialize() const {
  std::ostringstream out;
  out << "[substrate]\nname = " << name << "\n";
  for (const auto& cn : core_nodes) {
    out << "\n[core_node " << cn.id << "]\n";
    out << "functions = ";
    bool first = true;
    for (const auto& f : cn.functions) {
      if (!first) out << ",";
      out << f;
      first = false;
    }
    out << "\ncompute = " << cn.compute << "\nstorage = " << cn.storage << "\n";
  }
  for (const auto& g : gnbs) {
    out << "\n[gnb " << g.id << "]\n";
    out << "radio = " << g.radio << "\ncu = " << g.cu_id << "\n";
    for (const auto& du : g.dus) {
      out << "du " << du.id << " = ";
      for (std::size_t i = 0; i < du.ru_ids.size(); ++i) out << (i ? "," : "") << du.ru_ids[i];
      out << "\n";
    }
  }
  for (const auto& l : tn_links) {
    out << "\n[link " << l.id << "]\n";
    out << "endpoints = " << l.endpoint_a << "," << l.endpoint_b << "\n";
    out << "bandwidth = " << l.bandwidth << "\n";
  }
  return out.str();
}

static std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Substrate Substrate::parse(const std::string& text) {
  const Document doc = parse_document(text);
  Substrate sub;
  for (const auto& section : doc.sections) {
    if (section.name == "substrate") {
      if (const auto* e = section.find("name")) sub.name = e->value;
    } else if (section.name == "core_node") {
      CoreNode cn;
      cn.id = section.arg;
      if (cn.id.empty()) throw ParseError(section.line, "core_node needs an id");
      if (const auto* e = section.find("functions"))
        for (auto& f : split_csv(e->value)) cn.functions.insert(f);
      cn.compute = std::stoll(section.require("compute"));
      cn.storage = std::stoll(section.require("storage"));
      sub.core_nodes.push_back(std::move(cn));
    } else if (section.name == "gnb") {
      Gnb g;
      g.id = section.arg;
      if (g.id.empty()) throw ParseError(section.line, "gnb needs an id");
      g.radio = std::stoll(section.require("radio"));
      g.cu_id = section.require("cu");
      for (const auto& entry : section.entries) {
        if (entry.key.rfind("du ", 0) != 0) continue;
        DistributedUnit du;
        du.id = entry.key.substr(3);
        du.ru_ids = split_csv(entry.value);
        g.dus.push_back(std::move(du));
      }
      sub.gnbs.push_back(std::move(g));
    } else if (section.name == "link") {
      TnLink l;
      l.id = section.arg;
      if (l.id.empty()) throw ParseError(section.line, "link needs an id");
      const auto eps = split_csv(section.require("endpoints"));
      if (eps.size() != 2) throw ParseError(section.line, "link needs two endpoints");
      l.endpoint_a = eps[0];
      l.endpoint_b = eps[1];
      l.bandwidth = std::stoll(section.require("bandwidth"));
      sub.tn_links.push_back(std::move(l));
    }
  }
  const auto problems = sub.validate();
  if (!problems.empty()) throw ParseError(0, "substrate invalid: " + problems.front());
  return sub;
}

SubstrateState::SubstrateState(Substrate substrate) : substrate_(std::move(substrate)) {}

std::int64_t SubstrateState::capacity(const std::string& element_id, ResourceDim dim) const {
  for (const auto& cn : substrate_.core_nodes)
    if (cn.id == element_id)
      return dim == ResourceDim::Computation ? cn.compute
             : dim == ResourceDim::Storage   ? cn.storage
                                             : 0;
  for (const auto& g : substrate_.gnbs)
    if (g.id == element_id) return dim == ResourceDim::Radio ? g.radio : 0;
  for (const auto& l : substrate_.tn_links)
    if (l.id == element_id) return dim == ResourceDim::Communication ? l.bandwidth : 0;
  return 0;
}

std::int64_t SubstrateState::consumed(const std::string& element_id, ResourceDim dim) const {
  std::int64_t dedicated = 0, shared_max = 0;
  for (const auto& [slice, alloc] : allocations_)
    for (const auto& grant : alloc.grants) {
      if (grant.element_id != element_id || grant.dim != dim) continue;
      if (grant.sharing == Sharing::Dedicated)
        dedicated += grant.quantity;
      else
        shared_max = std::max(shared_max, grant.quantity);
    }
  return dedicated + shared_max;
}

bool SubstrateState::du_in_use(const std::string& du_id) const {
  for (const auto& [slice, alloc] : allocations_)
    if (alloc.placement.du_id == du_id) return true;
  return false;
}

// Hypothetical-add check on one element/dimension.
static bool fits(std::int64_t cap, std::int64_t dedicated, std::int64_t shared_max,
                 std::int64_t qty, Sharing sharing) {
  if (sharing == Sharing::Dedicated) return dedicated + shared_max + qty <= cap;
  return dedicated + std::max(shared_max, qty) <= cap;
}

bool SubstrateState::placement_fits(const Placement& p, const ResourceRequirement& demand,
                                    std::string* bottleneck) const {
  auto split_consumed = [&](const std::string& el, ResourceDim dim, std::int64_t& ded,
                            std::int64_t& shmax) {
    ded = 0;
    shmax = 0;
    for (const auto& [slice, alloc] : allocations_)
      for (const auto& grant : alloc.grants) {
        if (grant.element_id != el || grant.dim != dim) continue;
        if (grant.sharing == Sharing::Dedicated)
          ded += grant.quantity;
        else
          shmax = std::max(shmax, grant.quantity);
      }
  };
  auto check = [&](const std::string& el, ResourceDim dim) {
    std::int64_t ded, shmax;
    split_consumed(el, dim, ded, shmax);
    if (fits(capacity(el, dim), ded, shmax, demand[dim], demand.sharing_of(dim))) return true;
    if (bottleneck) *bottleneck = el;
    return false;
  };
  if (!check(p.core_node_id, ResourceDim::Computation)) return false;
  if (!check(p.core_node_id, ResourceDim::Storage)) return false;
  if (!check(p.gnb_id, ResourceDim::Radio)) return false;
  if (du_in_use(p.du_id)) {
    if (bottleneck) *bottleneck = p.du_id;
    return false;
  }
  if (!check(p.link_id, ResourceDim::Communication)) return false;
  return true;
}

template <typename T>
static std::vector<const T*> sorted_by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& item : items) out.push_back(&item);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

FeasibilityResult SubstrateState::feasibility_check(const ResourceRequirement& demand) const {
  const auto batch = feasibility_check_batch({demand});
  FeasibilityResult result;
  result.feasible = batch.feasible;
  if (batch.feasible) result.placement = batch.placements.front();
  result.bottleneck = batch.bottleneck;
  return result;
}

SubstrateState::BatchResult SubstrateState::feasibility_check_batch(
    const std::vector<ResourceRequirement>& demands) const {
  BatchResult result;
  if (demands.empty()) {
    result.feasible = true;
    return result;
  }
  SubstrateState scratch = *this;
  std::vector<Placement> chosen(demands.size());
  std::size_t deepest = 0;
  std::string deepest_bottleneck;

  const auto cores = sorted_by_id(substrate_.core_nodes);
  const auto gnbs = sorted_by_id(substrate_.gnbs);
  const auto links = sorted_by_id(substrate_.tn_links);

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == demands.size()) return true;
    bool any_candidate = false;
    for (const auto* cn : cores)
      for (const auto* g : gnbs)
        for (const auto* du : sorted_by_id(g->dus))
          for (const auto* l : links) {
            const bool connects = (l->endpoint_a == cn->id && l->endpoint_b == g->id) ||
                                  (l->endpoint_a == g->id && l->endpoint_b == cn->id);
            if (!connects) continue;
            any_candidate = true;
            Placement p{cn->id, g->id, du->id, l->id};
            std::string bottleneck;
            if (!scratch.placement_fits(p, demands[i], &bottleneck)) {
              if (i >= deepest) {
                deepest = i;
                deepest_bottleneck = bottleneck;
              }
              continue;
            }
            const std::string tmp_id = "\t_batch" + std::to_string(i);
            scratch.allocate(p, tmp_id, demands[i]);
            if (place(i + 1)) {
              chosen[i] = p;
              scratch.release(tmp_id);
              return true;
            }
            scratch.release(tmp_id);
          }
    if (!any_candidate && i >= deepest) {
      deepest = i;
      deepest_bottleneck = "no connected core/gNB/link placement exists";
    }
    return false;
  };

  if (place(0)) {
    result.feasible = true;
    result.placements = std::move(chosen);
  } else {
    result.bottleneck = deepest_bottleneck;
    result.blocked_index = deepest;
  }
  return result;
}

std::optional<AllocError> SubstrateState::allocate(const Placement& placement,
                                                   const std::string& slice_id,
                                                   const ResourceRequirement& demand) {
  if (allocations_.count(slice_id)) return AllocError::StalePlacement;
  if (!placement_fits(placement, demand, nullptr)) return AllocError::StalePlacement;
  Allocation alloc;
  alloc.slice_id = slice_id;
  alloc.placement = placement;
  alloc.grants = {
      {placement.core_node_id, ResourceDim::Computation, demand[ResourceDim::Computation],
       demand.sharing_of(ResourceDim::Computation)},
      {placement.core_node_id, ResourceDim::Storage, demand[ResourceDim::Storage],
       demand.sharing_of(ResourceDim::Storage)},
      {placement.gnb_id, ResourceDim::Radio, demand[ResourceDim::Radio],
       demand.sharing_of(ResourceDim::Radio)},
      {placement.link_id, ResourceDim::Communication, demand[ResourceDim::Communication],
       demand.sharing_of(ResourceDim::Communication)},
  };
  allocations_[slice_id] = std::move(alloc);
  return std::nullopt;
}

std::optional<AllocError> SubstrateState::release(const std::string& slice_id) {
  if (!allocations_.erase(slice_id)) return AllocError::UnknownSlice;
  return std::nullopt;
}

std::vector<std::string> SubstrateState::sharers_of(const std::string& element_id) const {
  std::vector<std::string> out;
  for (const auto& [slice, alloc] : allocations_)
    for (const auto& grant : alloc.grants)
      if (grant.element_id == element_id) {
        out.push_back(slice);
        break;
      }
  return out;
}

std::array<std::int64_t, kResourceDims> SubstrateState::total_capacity() const {
  std::array<std::int64_t, kResourceDims> totals{0, 0, 0, 0};
  for (const auto& cn : substrate_.core_nodes) {
    totals[static_cast<std::size_t>(ResourceDim::Computation)] += cn.compute;
    totals[static_cast<std::size_t>(ResourceDim::Storage)] += cn.storage;
  }
  for (const auto& g : substrate_.gnbs)
    totals[static_cast<std::size_t>(ResourceDim::Radio)] += g.radio;
  for (const auto& l : substrate_.tn_links)
    totals[static_cast<std::size_t>(ResourceDim::Communication)] += l.bandwidth;
  return totals;
}

std::array<std::int64_t, kResourceDims> SubstrateState::total_consumed() const {
  std::array<std::int64_t, kResourceDims> totals{0, 0, 0, 0};
  auto add = [&](const std::string& el) {
    for (std::size_t d = 0; d < kResourceDims; ++d)
      totals[d] += consumed(el, static_cast<ResourceDim>(d));
  };
  for (const auto& cn : substrate_.core_nodes) add(cn.id);
  for (const auto& g : substrate_.gnbs) add(g.id);
  for (const auto& l : substrate_.tn_links) add(l.id);
  return totals;
}

std::uint64_t SubstrateState::state_hash() const {
  std::uint64_t h = 0;
  auto element = [&](const std::string& el) {
    h = fnv1a_str(h, el);
    for (std::size_t d = 0; d < kResourceDims; ++d)
      h = fnv1a_i64(h, residual(el, static_cast<ResourceDim>(d)));
  };
  for (const auto& cn : substrate_.core_nodes) element(cn.id);
  for (const auto& g : substrate_.gnbs) element(g.id);
  for (const auto& l : substrate_.tn_links) element(l.id);
  for (const auto& [slice, alloc] : allocations_) {
    h = fnv1a_str(h, slice);
    h = fnv1a_str(h, alloc.placement.core_node_id);
    h = fnv1a_str(h, alloc.placement.gnb_id);
    h = fnv1a_str(h, alloc.placement.du_id);
    h = fnv1a_str(h, alloc.placement.link_id);
    for (const auto& grant : alloc.grants) {
      h = fnv1a_str(h, grant.element_id);
      h = fnv1a_i64(h, static_cast<std::int64_t>(grant.dim));
      h = fnv1a_i64(h, grant.quantity);
      h = fnv1a_i64(h, grant.sharing == Sharing::Shared);
    }
  }
  return h;
}

}  // namespace nslice
