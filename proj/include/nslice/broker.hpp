#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nslice/orchestration.hpp"

namespace nslice {

struct SlaTerms {
  std::map<std::string, Interval> attribute_bounds;
};

/// Northbound slice request: n US-NSIT refs, or a single GN-NSIT ref whose
/// S-NSITs come from the catalogue.
struct SliceRequest {
  std::string request_id;
  std::string tenant_id;
  ProvisioningMode mode = ProvisioningMode::UseCaseSpecific;
  std::vector<std::string> template_refs;
  SlaTerms sla_terms;
  std::int64_t arrival_time = 0;
  /// US-NSI batches may be admitted atomically (all-or-nothing) or slice by
  /// slice; GN-NSI admission is always atomic.
  bool atomic_batch = true;
};

enum class ChannelRole { ScsAs, MasterScsAs, SlaveScsAs };
const char* channel_role_name(ChannelRole r);

struct ApiChannel {
  std::string channel_id;
  std::string tenant_id;
  std::string bound_slice;  // slice instance id
  std::optional<std::string> use_case_id;
  ChannelRole role = ChannelRole::ScsAs;
  std::string nef_endpoint;
  std::string cluster_id;  // GN-NSI instance id; empty in US-NSI mode
};

enum class AdmissionOutcome { Granted, Denied };

struct AdmissionDecision {
  std::string request_id;
  AdmissionOutcome outcome = AdmissionOutcome::Denied;
  std::string reason;
  std::vector<std::string> leases;  // admitted slice instance ids holding grants
  std::vector<std::string> instances;  // all created instances (incl. GN-NSI)
  std::vector<std::pair<std::string, bool>> per_slice;  // template ref -> admitted
  std::int64_t decision_time = 0;
};

struct AdmissionPolicy {
  // Feasibility-only first-come-first-served; SLA terms are recorded, not
  // priced. Nothing to configure yet.
};

enum class NefQuery { UeCount, UeStatus, Connectivity, Reachability, LinkFailure };
const char* nef_query_name(NefQuery q);

enum class NefError { Unauthorized, UnboundChannel };

struct NefReport {
  std::optional<NefError> error;
  std::size_t ue_count = 0;
  std::vector<std::string> ue_ids;
  bool degraded = false;      // Connectivity / LinkFailure view
  std::vector<std::string> lines;
};

enum class RouteOutcome { Forwarded, RejectedDirection };

struct RouteResult {
  RouteOutcome outcome = RouteOutcome::RejectedDirection;
  std::string detail;
  TransitionResult transition;  // populated when the forwarded op ran
};

/// UE attachment view the NEF exposes; owned by the simulator.
using UeDirectory = std::map<std::string, std::set<std::string>>;  // slice instance -> UE ids

class Broker {
 public:
  Broker(Orchestrator* orch, const Catalogue* catalogue)
      : orch_(orch), catalogue_(catalogue) {}

  AdmissionDecision nsb_admit(const SliceRequest& req, const AdmissionPolicy& policy = {});

  const std::map<std::string, ApiChannel>& channels() const { return channels_; }
  const ApiChannel* channel(const std::string& id) const;
  std::vector<const ApiChannel*> channels_of_cluster(const std::string& cluster_id) const;

  NefReport nef_expose(const std::string& channel_id, NefQuery query,
                       const std::string& requesting_tenant, const UeDirectory& ues,
                       const std::optional<std::string>& target_slice = std::nullopt);

  RouteResult master_slave_route(const std::string& issuer_channel_id,
                                 const std::string& target_slice, LifecycleEvent op);

  const std::vector<LogRecord>& trace() const { return trace_; }
  const std::vector<AdmissionDecision>& decisions() const { return decisions_; }

 private:
  struct Constituent {
    const SliceTemplate* tpl;
    ResourceRequirement demand;
  };
  std::optional<std::string> resolve(const SliceRequest& req, const SliceTemplate** gn,
                                     std::vector<Constituent>* out) const;
  void wire_channels(const SliceRequest& req, const std::optional<std::string>& gn_instance,
                     const std::vector<std::string>& slice_instances);
  void note(const std::string& channel, const std::string& kind, const std::string& outcome,
            std::int64_t time);

  Orchestrator* orch_;
  const Catalogue* catalogue_;
  std::map<std::string, ApiChannel> channels_;
  std::vector<LogRecord> trace_;
  std::vector<AdmissionDecision> decisions_;
  int channel_seq_ = 0;
};

}  // namespace nslice
