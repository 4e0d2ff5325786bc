#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nslice/slice_model.hpp"

namespace nslice {

struct CoreNode {
  std::string id;
  std::set<std::string> functions;  // hosted function kinds: AMF, SMF, ...
  std::int64_t compute = 0;
  std::int64_t storage = 0;
};

struct DistributedUnit {
  std::string id;
  std::vector<std::string> ru_ids;  // each RU attaches to exactly one DU
};

struct Gnb {
  std::string id;
  std::string cu_id;
  std::vector<DistributedUnit> dus;
  std::int64_t radio = 0;
};

struct TnLink {
  std::string id;
  std::string endpoint_a;
  std::string endpoint_b;
  std::int64_t bandwidth = 0;
};

struct Substrate {
  std::string name;
  std::vector<CoreNode> core_nodes;
  std::vector<Gnb> gnbs;
  std::vector<TnLink> tn_links;

  std::vector<std::string> validate() const;
  const Gnb* find_gnb(const std::string& id) const;

  std::string serialize() const;
  static Substrate parse(const std::string& text);  // throws ParseError
};

/// One granted quantity on one capacity-bearing element.
struct Grant {
  std::string element_id;
  ResourceDim dim = ResourceDim::Communication;
  std::int64_t quantity = 0;
  Sharing sharing = Sharing::Dedicated;
  bool operator==(const Grant&) const = default;
};

/// Deterministic first-fit placement: one core node, one gNB subtree
/// (gNB + a dedicated DU and its RUs), one TN link joining the two.
struct Placement {
  std::string core_node_id;
  std::string gnb_id;
  std::string du_id;
  std::string link_id;
  bool operator==(const Placement&) const = default;
};

struct Allocation {
  std::string slice_id;
  Placement placement;
  std::vector<Grant> grants;
};

struct FeasibilityResult {
  bool feasible = false;
  Placement placement;
  std::string bottleneck;  // element id, set when infeasible
};

enum class AllocError { StalePlacement, UnknownSlice };

/// Substrate plus live allocations. Dedicated grants count fully against an
/// element's capacity; Shared grants on one element overlap (the pool
/// consumes the largest shared grant once) and utilization attribution is
/// split usage/k among the k sharers.
class SubstrateState {
 public:
  SubstrateState() = default;
  explicit SubstrateState(Substrate substrate);

  const Substrate& substrate() const { return substrate_; }
  const std::map<std::string, Allocation>& allocations() const { return allocations_; }

  std::int64_t capacity(const std::string& element_id, ResourceDim dim) const;
  std::int64_t consumed(const std::string& element_id, ResourceDim dim) const;
  std::int64_t residual(const std::string& element_id, ResourceDim dim) const {
    return capacity(element_id, dim) - consumed(element_id, dim);
  }
  bool du_in_use(const std::string& du_id) const;

  FeasibilityResult feasibility_check(const ResourceRequirement& demand) const;

  /// Simultaneous placement for a batch of demands; complete deterministic
  /// backtracking search (lexicographic in element ids). Empty result means
  /// infeasible; `bottleneck` then names the blocking element.
  struct BatchResult {
    bool feasible = false;
    std::vector<Placement> placements;
    std::string bottleneck;
    std::size_t blocked_index = 0;  // demand index that could not be placed
  };
  BatchResult feasibility_check_batch(const std::vector<ResourceRequirement>& demands) const;

  std::optional<AllocError> allocate(const Placement& placement, const std::string& slice_id,
                                     const ResourceRequirement& demand);
  std::optional<AllocError> release(const std::string& slice_id);

  /// Slices holding a grant on the given element (any dimension).
  std::vector<std::string> sharers_of(const std::string& element_id) const;

  /// Total capacity and consumption over all elements, per dimension.
  std::array<std::int64_t, kResourceDims> total_capacity() const;
  std::array<std::int64_t, kResourceDims> total_consumed() const;

  /// Order-insensitive digest of residuals and grants.
  std::uint64_t state_hash() const;

 private:
  bool placement_fits(const Placement& p, const ResourceRequirement& demand,
                      std::string* bottleneck) const;

  Substrate substrate_;
  std::map<std::string, Allocation> allocations_;
};

std::uint64_t fnv1a(std::uint64_t seed, const void* data, std::size_t len);
std::uint64_t fnv1a_str(std::uint64_t seed, const std::string& s);

}  // namespace nslice
