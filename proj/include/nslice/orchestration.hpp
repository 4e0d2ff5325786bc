#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nslice/catalogue.hpp"
#include "nslice/infrastructure.hpp"
#include "nslice/slice_model.hpp"

namespace nslice {

enum class Phase { Prepared = 0, Instantiated, Activated, Running, Deactivated, Terminated };
enum class LifecycleEvent { Instantiate, Activate, Run, Deactivate, Terminate };
enum class InstanceKind { UsNsi, GnNsi, SNsi };
enum class SubnetKind { FiveGC, NgRan, Tn };

const char* phase_name(Phase p);
const char* lifecycle_event_name(LifecycleEvent e);

/// Legal lifecycle edges; everything else is IllegalTransition.
std::optional<Phase> legal_transition(Phase from, LifecycleEvent event);

struct ManagedComponent {
  std::string component_id;
  std::string nfmf_id;
};

struct SubnetInstance {
  std::string id;
  SubnetKind kind = SubnetKind::FiveGC;
  std::string nssit_id;
  Phase phase = Phase::Prepared;
  std::vector<ManagedComponent> components;
};

struct SliceInstance {
  std::string instance_id;
  std::string template_id;
  InstanceKind kind = InstanceKind::UsNsi;
  Phase phase = Phase::Prepared;
  std::optional<std::string> sla_id;       // UsNsi and GnNsi only
  std::vector<std::string> subnet_ids;     // three, absent for GnNsi
  std::vector<std::string> children;       // GnNsi only, 1..8 S-NSI ids
  std::optional<std::string> parent;       // SNsi only
  bool has_allocation = false;
  bool degraded = false;
  std::string tenant_id;
  std::string vertical_id;
  std::optional<std::string> use_case_id;
};

enum class FcapsKind { Fault, Configuration, Accounting, Performance, Security };
const char* fcaps_kind_name(FcapsKind k);

struct FcapsEvent {
  FcapsKind kind = FcapsKind::Fault;
  std::string component_id;
  std::string payload;
  std::int64_t timestamp = 0;
};

enum class ManagementOp { Scale, Reconfigure, Monitor, Heal };
const char* management_op_name(ManagementOp op);

/// The MLA: which operations a tenant's t-MANO may execute on which slices.
/// The c-MANO retains a veto on every delegated operation.
struct ManagementDelegation {
  std::string tenant_id;
  std::set<ManagementOp> delegated;
  std::set<std::string> scope;  // slice instance ids
};

struct VetoRule {
  std::optional<ManagementOp> op;  // unset: any op
  std::optional<Phase> phase;      // unset: any phase
  std::string clause;
};

struct VetoPolicy {
  std::vector<VetoRule> rules;
};

enum class TmanoOutcome { Applied, RefusedByMla, VetoedByCMano };

struct TmanoResult {
  TmanoOutcome outcome = TmanoOutcome::Applied;
  std::string clause;  // the violated MLA clause or matching veto rule
};

enum class TransitionError { IllegalTransition, AllocationFailed, UnknownInstance };

struct TransitionResult {
  bool ok = false;
  std::optional<TransitionError> error;
  std::string detail;
};

enum class NfmfError { UnknownComponent };

struct ManagementAction {
  std::string description;
  std::string subnet_id;  // empty when no subnet is attributable
};

struct NfmfResult {
  std::vector<ManagementAction> actions;
  std::optional<NfmfError> error;
};

struct LogRecord {
  std::int64_t time = 0;
  std::string subject;
  std::string event;
  std::string outcome;
};

struct SliceRequirement {
  std::optional<std::string> template_id;  // unset: CreateNew (non-standard path)
  bool create_new = false;
  bool defaults_filled = false;  // service description was empty, template defaults used
  std::string use_case_id;       // empty for a GN-NSI requirement
  std::optional<ServiceCategory> service_category;
  std::vector<SliceRequirement> sub_requirements;  // GN-NSI requirement embeds n of these
};

/// CSMF: translates a vertical's service request into per-slice requirements,
/// resolving against the catalogue where templates exist.
std::vector<SliceRequirement> csmf_translate(const Vertical& vertical, ProvisioningMode mode,
                                             const Catalogue& catalogue);

/// NSMF/NSSMF/NFMF state machines over one substrate. All mutations run on
/// the caller's (single) event-loop thread.
class Orchestrator {
 public:
  Orchestrator(const Catalogue* catalogue, Substrate substrate)
      : catalogue_(catalogue), state_(std::move(substrate)) {}

  const SubstrateState& state() const { return state_; }
  SubstrateState& state() { return state_; }
  const std::map<std::string, SliceInstance>& instances() const { return instances_; }
  const std::map<std::string, SubnetInstance>& subnets() const { return subnets_; }
  const SliceInstance* instance(const std::string& id) const;
  std::size_t sla_count() const { return slas_.size(); }

  void set_time(std::int64_t t) { now_ = t; }
  const std::vector<LogRecord>& log() const { return log_; }

  /// Creates a Prepared instance from a template; UsNsi/GnNsi get a fresh SLA.
  std::string create_slice(const SliceTemplate& tpl, InstanceKind kind,
                           const std::optional<std::string>& parent = std::nullopt);

  /// Records an admission lease committed by the broker.
  void attach_allocation(const std::string& instance_id);

  TransitionResult nsmf_transition(const std::string& instance_id, LifecycleEvent event);

  NfmfResult nfmf_handle(const FcapsEvent& event);

  /// Hook invoked on Performance events (SON plug-in point).
  void set_son_hook(std::function<void(const FcapsEvent&)> hook) { son_hook_ = std::move(hook); }

  TmanoResult tmano_execute(const ManagementDelegation& mla, const std::string& tenant_id,
                            ManagementOp op, const std::string& target_instance,
                            const VetoPolicy& veto) const;

  const std::vector<FcapsEvent>& fcaps_log() const { return fcaps_log_; }
  std::size_t performance_samples() const { return performance_samples_; }

  /// Continuous invariant audit; non-empty result means an internal bug.
  std::vector<std::string> check_invariants() const;

 private:
  TransitionResult transition_single(SliceInstance& inst, LifecycleEvent event, bool cascading);
  bool cascade_legal(const SliceInstance& parent, LifecycleEvent event) const;
  std::optional<TransitionError> do_instantiate(SliceInstance& inst);
  void create_subnets(SliceInstance& inst);
  void set_subnet_phases(SliceInstance& inst, Phase phase);
  void record(const std::string& subject, const std::string& event, const std::string& outcome);

  const Catalogue* catalogue_;
  SubstrateState state_;
  std::map<std::string, SliceInstance> instances_;
  std::map<std::string, SubnetInstance> subnets_;
  std::map<std::string, std::string> slas_;  // sla_id -> instance_id
  std::vector<FcapsEvent> fcaps_log_;
  std::size_t performance_samples_ = 0;
  std::function<void(const FcapsEvent&)> son_hook_;
  std::vector<LogRecord> log_;
  std::int64_t now_ = 0;
  int instance_seq_ = 0;
  int sla_seq_ = 0;
};

}  // namespace nslice
