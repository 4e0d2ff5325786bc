#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "helpers.hpp"
#include "nslice/infrastructure.hpp"
#include "nslice/text_format.hpp"

using namespace nslice;
using nslice::testing::fixture;

// ---------------------------------------------------------------------------
// Independent oracle machinery. Nothing below reuses SubstrateState logic:
// capacity accounting and placement search are re-derived from first
// principles so the two implementations can check each other.
// ---------------------------------------------------------------------------

namespace {

struct OracleGrant {
  std::string element;
  ResourceDim dim;
  std::int64_t qty;
  Sharing sharing;
};

struct OracleAssignment {
  Placement placement;
  ResourceRequirement demand;
};

std::int64_t oracle_capacity(const Substrate& sub, const std::string& el, ResourceDim dim) {
  for (const auto& cn : sub.core_nodes)
    if (cn.id == el)
      return dim == ResourceDim::Computation ? cn.compute
             : dim == ResourceDim::Storage   ? cn.storage
                                             : 0;
  for (const auto& g : sub.gnbs)
    if (g.id == el) return dim == ResourceDim::Radio ? g.radio : 0;
  for (const auto& l : sub.tn_links)
    if (l.id == el) return dim == ResourceDim::Communication ? l.bandwidth : 0;
  return 0;
}

std::vector<OracleGrant> grants_of(const OracleAssignment& a) {
  return {{a.placement.core_node_id, ResourceDim::Computation,
           a.demand[ResourceDim::Computation], a.demand.sharing_of(ResourceDim::Computation)},
          {a.placement.core_node_id, ResourceDim::Storage, a.demand[ResourceDim::Storage],
           a.demand.sharing_of(ResourceDim::Storage)},
          {a.placement.gnb_id, ResourceDim::Radio, a.demand[ResourceDim::Radio],
           a.demand.sharing_of(ResourceDim::Radio)},
          {a.placement.link_id, ResourceDim::Communication,
           a.demand[ResourceDim::Communication],
           a.demand.sharing_of(ResourceDim::Communication)}};
}

/// Dedicated grants add up; shared grants on one element/dim form a pool that
/// consumes its largest member once.
bool oracle_within_capacity(const Substrate& sub, const std::vector<OracleAssignment>& all) {
  std::map<std::pair<std::string, int>, std::pair<std::int64_t, std::int64_t>> use;  // ded, shmax
  std::set<std::string> dus;
  for (const auto& a : all) {
    if (!dus.insert(a.placement.du_id).second) return false;  // a DU serves one slice
    for (const auto& g : grants_of(a)) {
      auto& [ded, shmax] = use[{g.element, static_cast<int>(g.dim)}];
      if (g.sharing == Sharing::Dedicated)
        ded += g.qty;
      else
        shmax = std::max(shmax, g.qty);
    }
  }
  for (const auto& [key, val] : use)
    if (val.first + val.second >
        oracle_capacity(sub, key.first, static_cast<ResourceDim>(key.second)))
      return false;
  return true;
}

std::vector<Placement> all_placements(const Substrate& sub) {
  std::vector<Placement> out;
  for (const auto& cn : sub.core_nodes)
    for (const auto& g : sub.gnbs)
      for (const auto& du : g.dus)
        for (const auto& l : sub.tn_links) {
          const bool connects = (l.endpoint_a == cn.id && l.endpoint_b == g.id) ||
                                (l.endpoint_a == g.id && l.endpoint_b == cn.id);
          if (connects) out.push_back({cn.id, g.id, du.id, l.id});
        }
  return out;
}

/// Exhaustive search over every joint placement of the batch.
bool oracle_batch_feasible(const Substrate& sub, const std::vector<ResourceRequirement>& demands,
                           std::vector<OracleAssignment> partial = {}) {
  if (partial.size() == demands.size()) return true;
  for (const auto& p : all_placements(sub)) {
    partial.push_back({p, demands[partial.size()]});
    if (oracle_within_capacity(sub, partial) && oracle_batch_feasible(sub, demands, partial))
      return true;
    partial.pop_back();
  }
  return false;
}

Substrate random_substrate(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_cores(1, 3), n_gnbs(1, 2), n_dus(1, 3), n_links(1, 3);
  std::uniform_int_distribution<std::int64_t> cap(0, 40);
  Substrate sub;
  sub.name = "random";
  const int cores = n_cores(rng);
  for (int c = 0; c < cores; ++c) {
    CoreNode cn;
    cn.id = "cn" + std::to_string(c);
    cn.functions = {"AMF", "SMF", "UPF"};
    cn.compute = cap(rng);
    cn.storage = cap(rng);
    sub.core_nodes.push_back(std::move(cn));
  }
  const int gnbs = n_gnbs(rng);
  for (int g = 0; g < gnbs; ++g) {
    Gnb gnb;
    gnb.id = "g" + std::to_string(g);
    gnb.cu_id = gnb.id + "-cu";
    gnb.radio = cap(rng);
    const int dus = n_dus(rng);
    for (int d = 0; d < dus; ++d)
      gnb.dus.push_back({gnb.id + "-du" + std::to_string(d), {gnb.id + "-ru" + std::to_string(d)}});
    sub.gnbs.push_back(std::move(gnb));
  }
  const int links = n_links(rng);
  for (int l = 0; l < links; ++l) {
    TnLink link;
    link.id = "l" + std::to_string(l);
    link.endpoint_a = "cn" + std::to_string(std::uniform_int_distribution<int>(0, cores - 1)(rng));
    link.endpoint_b = "g" + std::to_string(std::uniform_int_distribution<int>(0, gnbs - 1)(rng));
    link.bandwidth = cap(rng);
    sub.tn_links.push_back(std::move(link));
  }
  return sub;
}

ResourceRequirement random_demand(std::mt19937& rng) {
  std::uniform_int_distribution<std::int64_t> qty(0, 20);
  std::uniform_int_distribution<int> coin(0, 1);
  ResourceRequirement d;
  for (std::size_t i = 0; i < kResourceDims; ++i) {
    d.quantity[i] = qty(rng);
    d.sharing[i] = coin(rng) ? Sharing::Shared : Sharing::Dedicated;
  }
  return d;
}

}  // namespace

TEST_CASE("fixture substrate parses, validates and round-trips") {
  const auto text = read_file(fixture("substrate_v2x.sub"));
  const auto sub = Substrate::parse(text);
  CHECK(sub.name == "v2x-metro");
  REQUIRE(sub.core_nodes.size() == 1);
  CHECK(sub.core_nodes[0].functions.count("AMF") == 1);
  CHECK(sub.core_nodes[0].functions.count("NSB") == 1);
  REQUIRE(sub.gnbs.size() == 1);
  CHECK(sub.gnbs[0].dus.size() == 3);
  CHECK(sub.gnbs[0].dus[0].ru_ids.size() == 2);
  REQUIRE(sub.tn_links.size() == 1);
  CHECK(sub.validate().empty());
  CHECK(sub.serialize() == text);
}

TEST_CASE("substrate validation catches duplicate ids and negative capacity") {
  auto sub = Substrate::parse(read_file(fixture("substrate_v2x.sub")));
  sub.core_nodes.push_back(sub.core_nodes[0]);
  CHECK(!sub.validate().empty());

  auto neg = Substrate::parse(read_file(fixture("substrate_v2x.sub")));
  neg.gnbs[0].radio = -5;
  CHECK(!neg.validate().empty());
}

TEST_CASE("single placement feasibility against the exhaustive oracle") {
  std::mt19937 rng(2024);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto sub = random_substrate(rng);
    SubstrateState state(sub);
    const auto demand = random_demand(rng);
    const auto got = state.feasibility_check(demand);
    const bool expect = oracle_batch_feasible(sub, {demand});
    INFO("trial ", trial);
    CHECK(got.feasible == expect);
    if (expect) {
      ++feasible_seen;
      // The returned placement must itself be a valid witness.
      CHECK(oracle_within_capacity(sub, {{got.placement, demand}}));
    } else {
      ++infeasible_seen;
      CHECK(!got.bottleneck.empty());
    }
  }
  // The generator must exercise both outcomes for the check to mean anything.
  CHECK(feasible_seen > 30);
  CHECK(infeasible_seen > 30);
}

TEST_CASE("batch feasibility matches the exhaustive oracle on 250 random trials") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> batch_size(1, 4);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const auto sub = random_substrate(rng);
    SubstrateState state(sub);
    std::vector<ResourceRequirement> demands;
    const int n = batch_size(rng);
    for (int i = 0; i < n; ++i) demands.push_back(random_demand(rng));
    const auto got = state.feasibility_check_batch(demands);
    const bool expect = oracle_batch_feasible(sub, demands);
    INFO("trial ", trial, " batch ", n);
    CHECK(got.feasible == expect);
    if (expect) {
      ++feasible_seen;
      REQUIRE(got.placements.size() == demands.size());
      std::vector<OracleAssignment> witness;
      for (std::size_t i = 0; i < demands.size(); ++i)
        witness.push_back({got.placements[i], demands[i]});
      CHECK(oracle_within_capacity(sub, witness));
    } else {
      ++infeasible_seen;
      CHECK(!got.bottleneck.empty());
    }
    // The check itself must not mutate state.
    CHECK(state.allocations().empty());
  }
  CHECK(feasible_seen > 25);
  CHECK(infeasible_seen > 25);
}

TEST_CASE("feasibility respects existing allocations") {
  auto sub = Substrate::parse(read_file(fixture("substrate_v2x.sub")));
  SubstrateState state(sub);
  ResourceRequirement big;
  big[ResourceDim::Radio] = 40;
  const auto first = state.feasibility_check(big);
  REQUIRE(first.feasible);
  REQUIRE(!state.allocate(first.placement, "s1", big).has_value());
  // 40 left < 40+40: a second dedicated demand of 40 must not fit.
  const auto second = state.feasibility_check(big);
  CHECK(!second.feasible);
  CHECK(second.bottleneck == "g1");
  ResourceRequirement small;
  small[ResourceDim::Radio] = 20;
  CHECK(state.feasibility_check(small).feasible);
}

// Residual replay oracle: after any sequence of allocate/release, the
// consumed figure per (element, dim) must equal a from-scratch recomputation
// over the surviving grants.
TEST_CASE("residuals replay exactly over random allocate/release sequences") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int round = 0; round < 40; ++round) {
    const auto sub = random_substrate(rng);
    SubstrateState state(sub);
    std::vector<OracleAssignment> live;
    std::map<std::string, OracleAssignment> by_id;
    int seq = 0;
    for (int step = 0; step < 30; ++step) {
      if (by_id.empty() || coin(rng)) {
        const auto demand = random_demand(rng);
        const auto fr = state.feasibility_check(demand);
        if (!fr.feasible) continue;
        const std::string id = "s" + std::to_string(seq++);
        REQUIRE(!state.allocate(fr.placement, id, demand).has_value());
        by_id[id] = {fr.placement, demand};
      } else {
        auto it = by_id.begin();
        std::advance(it, std::uniform_int_distribution<std::size_t>(0, by_id.size() - 1)(rng));
        REQUIRE(!state.release(it->first).has_value());
        by_id.erase(it);
      }
      // Recompute every element/dim from the oracle's own books.
      std::map<std::pair<std::string, int>, std::pair<std::int64_t, std::int64_t>> use;
      for (const auto& [id, a] : by_id)
        for (const auto& g : grants_of(a)) {
          auto& [ded, shmax] = use[{g.element, static_cast<int>(g.dim)}];
          if (g.sharing == Sharing::Dedicated)
            ded += g.qty;
          else
            shmax = std::max(shmax, g.qty);
        }
      auto check_element = [&](const std::string& el) {
        for (std::size_t d = 0; d < kResourceDims; ++d) {
          const auto dim = static_cast<ResourceDim>(d);
          const auto it = use.find({el, static_cast<int>(d)});
          const std::int64_t expect =
              it == use.end() ? 0 : it->second.first + it->second.second;
          CHECK(state.consumed(el, dim) == expect);
          CHECK(state.residual(el, dim) >= 0);
        }
      };
      for (const auto& cn : sub.core_nodes) check_element(cn.id);
      for (const auto& g : sub.gnbs) check_element(g.id);
      for (const auto& l : sub.tn_links) check_element(l.id);
    }
  }
}

TEST_CASE("allocate/release error paths") {
  SubstrateState state(Substrate::parse(read_file(fixture("substrate_v2x.sub"))));
  ResourceRequirement d;
  d[ResourceDim::Radio] = 10;
  const auto fr = state.feasibility_check(d);
  REQUIRE(fr.feasible);
  CHECK(!state.allocate(fr.placement, "s1", d).has_value());
  // Same slice id twice.
  CHECK(state.allocate(fr.placement, "s1", d) == AllocError::StalePlacement);
  // Same DU again under a different id: stale.
  CHECK(state.allocate(fr.placement, "s2", d) == AllocError::StalePlacement);
  CHECK(state.release("nobody") == AllocError::UnknownSlice);
  CHECK(!state.release("s1").has_value());
  CHECK(state.release("s1") == AllocError::UnknownSlice);
}

TEST_CASE("shared grants pool while dedicated grants accumulate") {
  auto sub = Substrate::parse(read_file(fixture("substrate_v2x.sub")));
  SubstrateState state(sub);
  ResourceRequirement shared;
  shared[ResourceDim::Computation] = 30;
  shared.sharing[static_cast<std::size_t>(ResourceDim::Computation)] = Sharing::Shared;
  ResourceRequirement shared2 = shared;
  shared2[ResourceDim::Computation] = 20;

  auto f1 = state.feasibility_check(shared);
  REQUIRE(f1.feasible);
  REQUIRE(!state.allocate(f1.placement, "a", shared).has_value());
  auto f2 = state.feasibility_check(shared2);
  REQUIRE(f2.feasible);
  REQUIRE(!state.allocate(f2.placement, "b", shared2).has_value());
  // Pool consumes the max once: 30, not 50.
  CHECK(state.consumed("cn1", ResourceDim::Computation) == 30);

  SubstrateState fresh(sub);
  ResourceRequirement ded = shared;
  ded.sharing[static_cast<std::size_t>(ResourceDim::Computation)] = Sharing::Dedicated;
  ResourceRequirement ded2 = ded;
  ded2[ResourceDim::Computation] = 20;
  auto g1 = fresh.feasibility_check(ded);
  REQUIRE(g1.feasible);
  fresh.allocate(g1.placement, "a", ded);
  auto g2 = fresh.feasibility_check(ded2);
  REQUIRE(g2.feasible);
  fresh.allocate(g2.placement, "b", ded2);
  CHECK(fresh.consumed("cn1", ResourceDim::Computation) == 50);
  CHECK(fresh.sharers_of("cn1") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("state hash: identical histories agree, insertion order is irrelevant") {
  const auto sub = Substrate::parse(read_file(fixture("substrate_v2x.sub")));
  ResourceRequirement d1, d2;
  d1[ResourceDim::Radio] = 5;
  d2[ResourceDim::Radio] = 7;

  SubstrateState s1(sub), s2(sub), s3(sub);
  const auto p1 = s1.feasibility_check(d1).placement;
  s1.allocate(p1, "a", d1);
  const auto p2 = s1.feasibility_check(d2).placement;
  s1.allocate(p2, "b", d2);

  s2.allocate(p1, "a", d1);
  s2.allocate(p2, "b", d2);
  CHECK(s1.state_hash() == s2.state_hash());

  // Insert in the opposite order onto the same placements.
  s3.allocate(p2, "b", d2);
  s3.allocate(p1, "a", d1);
  CHECK(s1.state_hash() == s3.state_hash());

  SubstrateState different(sub);
  different.allocate(p1, "a", d2);  // different quantity
  CHECK(s1.state_hash() != different.state_hash());
  s1.release("b");
  s2.release("b");
  CHECK(s1.state_hash() == s2.state_hash());
}

TEST_CASE("dimension-wise totals add up across all elements") {
  std::mt19937 rng(5);
  const auto sub = random_substrate(rng);
  SubstrateState state(sub);
  for (int i = 0; i < 5; ++i) {
    const auto d = random_demand(rng);
    const auto fr = state.feasibility_check(d);
    if (fr.feasible) state.allocate(fr.placement, "s" + std::to_string(i), d);
  }
  auto caps = state.total_capacity();
  auto used = state.total_consumed();
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    const auto dim = static_cast<ResourceDim>(d);
    std::int64_t cap_sum = 0, use_sum = 0;
    auto visit = [&](const std::string& el) {
      cap_sum += state.capacity(el, dim);
      use_sum += state.consumed(el, dim);
    };
    for (const auto& cn : sub.core_nodes) visit(cn.id);
    for (const auto& g : sub.gnbs) visit(g.id);
    for (const auto& l : sub.tn_links) visit(l.id);
    CHECK(caps[d] == cap_sum);
    CHECK(used[d] == use_sum);
    CHECK(used[d] <= caps[d]);
  }
}
