#include "nslice/orchestration.hpp"

#include <algorithm>

namespace nslice {

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Prepared: return "Prepared";
    case Phase::Instantiated: return "Instantiated";
    case Phase::Activated: return "Activated";
    case Phase::Running: return "Running";
    case Phase::Deactivated: return "Deactivated";
    case Phase::Terminated: return "Terminated";
  }
  return "?";
}

const char* lifecycle_event_name(LifecycleEvent e) {
  switch (e) {
    case LifecycleEvent::Instantiate: return "Instantiate";
    case LifecycleEvent::Activate: return "Activate";
    case LifecycleEvent::Run: return "Run";
    case LifecycleEvent::Deactivate: return "Deactivate";
    case LifecycleEvent::Terminate: return "Terminate";
  }
  return "?";
}

const char* fcaps_kind_name(FcapsKind k) {
  switch (k) {
    case FcapsKind::Fault: return "Fault";
    case FcapsKind::Configuration: return "Configuration";
    case FcapsKind::Accounting: return "Accounting";
    case FcapsKind::Performance: return "Performance";
    case FcapsKind::Security: return "Security";
  }
  return "?";
}

const char* management_op_name(ManagementOp op) {
  switch (op) {
    case ManagementOp::Scale: return "Scale";
    case ManagementOp::Reconfigure: return "Reconfigure";
    case ManagementOp::Monitor: return "Monitor";
    case ManagementOp::Heal: return "Heal";
  }
  return "?";
}

std::optional<Phase> legal_transition(Phase from, LifecycleEvent event) {
  switch (event) {
    case LifecycleEvent::Instantiate:
      if (from == Phase::Prepared) return Phase::Instantiated;
      return std::nullopt;
    case LifecycleEvent::Activate:
      if (from == Phase::Instantiated || from == Phase::Deactivated) return Phase::Activated;
      return std::nullopt;
    case LifecycleEvent::Run:
      if (from == Phase::Activated) return Phase::Running;
      return std::nullopt;
    case LifecycleEvent::Deactivate:
      if (from == Phase::Running) return Phase::Deactivated;
      return std::nullopt;
    case LifecycleEvent::Terminate:
      if (from == Phase::Deactivated) return Phase::Terminated;
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<SliceRequirement> csmf_translate(const Vertical& vertical, ProvisioningMode mode,
                                             const Catalogue& catalogue) {
  const auto resolved = catalogue.lookup(vertical.vertical_id, mode);
  auto find_for_use_case = [&](const std::string& uc, TemplateFlavor flavor) -> const SliceTemplate* {
    for (const auto& r : resolved)
      if (r.tpl.flavor == flavor && r.tpl.id_info.use_case_id == uc) return catalogue.get(r.tpl.id_info.template_id);
    return nullptr;
  };

  std::vector<SliceRequirement> result;
  if (mode == ProvisioningMode::UseCaseSpecific) {
    for (const auto& uc : vertical.use_cases) {
      SliceRequirement req;
      req.use_case_id = uc.use_case_id;
      req.service_category = uc.service_category;
      if (const auto* tpl = find_for_use_case(uc.use_case_id, TemplateFlavor::UsNsit)) {
        req.template_id = tpl->id_info.template_id;
        req.defaults_filled = uc.overrides.empty();
      } else {
        req.create_new = true;
      }
      result.push_back(std::move(req));
    }
    return result;
  }

  SliceRequirement gn_req;
  const SliceTemplate* gn = nullptr;
  for (const auto& r : resolved)
    if (r.tpl.flavor == TemplateFlavor::GnNsit) {
      gn = catalogue.get(r.tpl.id_info.template_id);
      break;
    }
  if (gn)
    gn_req.template_id = gn->id_info.template_id;
  else
    gn_req.create_new = true;
  for (const auto& uc : vertical.use_cases) {
    SliceRequirement sub;
    sub.use_case_id = uc.use_case_id;
    sub.service_category = uc.service_category;
    if (const auto* s = find_for_use_case(uc.use_case_id, TemplateFlavor::SNsit)) {
      sub.template_id = s->id_info.template_id;
      sub.defaults_filled = uc.overrides.empty();
    } else {
      sub.create_new = true;
    }
    gn_req.sub_requirements.push_back(std::move(sub));
  }
  result.push_back(std::move(gn_req));
  return result;
}

const SliceInstance* Orchestrator::instance(const std::string& id) const {
  const auto it = instances_.find(id);
  return it == instances_.end() ? nullptr : &it->second;
}

void Orchestrator::record(const std::string& subject, const std::string& event,
                          const std::string& outcome) {
  log_.push_back({now_, subject, event, outcome});
}

std::string Orchestrator::create_slice(const SliceTemplate& tpl, InstanceKind kind,
                                       const std::optional<std::string>& parent) {
  SliceInstance inst;
  inst.instance_id = tpl.id_info.template_id + "@" + std::to_string(++instance_seq_);
  inst.template_id = tpl.id_info.template_id;
  inst.kind = kind;
  inst.parent = parent;
  inst.tenant_id = tpl.id_info.tenant_id;
  inst.vertical_id = tpl.id_info.vertical_id;
  inst.use_case_id = tpl.id_info.use_case_id;
  if (kind == InstanceKind::UsNsi || kind == InstanceKind::GnNsi) {
    const std::string sla = "sla-" + std::to_string(++sla_seq_);
    slas_[sla] = inst.instance_id;
    inst.sla_id = sla;
  }
  if (parent) instances_.at(*parent).children.push_back(inst.instance_id);
  const std::string id = inst.instance_id;
  instances_[id] = std::move(inst);
  record(id, "create", "Prepared");
  return id;
}

void Orchestrator::attach_allocation(const std::string& instance_id) {
  instances_.at(instance_id).has_allocation = true;
}

void Orchestrator::create_subnets(SliceInstance& inst) {
  const auto& placement = state_.allocations().at(inst.instance_id).placement;
  const Gnb* gnb = state_.substrate().find_gnb(placement.gnb_id);

  auto make = [&](SubnetKind kind, const char* tag, const char* nssit_suffix,
                  std::vector<std::string> components) {
    SubnetInstance subnet;
    subnet.id = inst.instance_id + "/" + tag;
    subnet.kind = kind;
    subnet.nssit_id = inst.template_id + nssit_suffix;
    subnet.phase = inst.phase;
    for (auto& c : components) subnet.components.push_back({c, c + "/nfmf"});
    inst.subnet_ids.push_back(subnet.id);
    subnets_[subnet.id] = std::move(subnet);
  };

  make(SubnetKind::FiveGC, "5gc", ".5gc", {placement.core_node_id});
  std::vector<std::string> ran_components;
  if (gnb) {
    ran_components.push_back(gnb->cu_id);
    for (const auto& du : gnb->dus) {
      if (du.id != placement.du_id) continue;
      ran_components.push_back(du.id);
      for (const auto& ru : du.ru_ids) ran_components.push_back(ru);
    }
  }
  make(SubnetKind::NgRan, "ran", ".ran", std::move(ran_components));
  make(SubnetKind::Tn, "tn", ".tn", {placement.link_id});
}

void Orchestrator::set_subnet_phases(SliceInstance& inst, Phase phase) {
  for (const auto& id : inst.subnet_ids) subnets_.at(id).phase = phase;
}

std::optional<TransitionError> Orchestrator::do_instantiate(SliceInstance& inst) {
  const SliceTemplate* tpl = catalogue_ ? catalogue_->get(inst.template_id) : nullptr;
  if (!inst.has_allocation) {
    if (!tpl) return TransitionError::AllocationFailed;
    const auto triple = derive_nssits(*tpl);
    if (triple.error) return TransitionError::AllocationFailed;
    // The three subnet demands recombine dimension-wise into one placement demand.
    ResourceRequirement demand;
    demand.sharing = tpl->resources.sharing;
    for (std::size_t d = 0; d < kResourceDims; ++d)
      demand.quantity[d] = triple.core.resources.quantity[d] + triple.ran.resources.quantity[d] +
                           triple.tn.resources.quantity[d];
    const auto feas = state_.feasibility_check(demand);
    if (!feas.feasible) return TransitionError::AllocationFailed;
    if (state_.allocate(feas.placement, inst.instance_id, demand))
      return TransitionError::AllocationFailed;
    inst.has_allocation = true;
  }
  create_subnets(inst);
  return std::nullopt;
}

bool Orchestrator::cascade_legal(const SliceInstance& parent, LifecycleEvent event) const {
  const auto target = legal_transition(parent.phase, event);
  if (!target) return false;
  for (const auto& child_id : parent.children) {
    const SliceInstance& child = instances_.at(child_id);
    if (child.phase == *target) continue;  // already there (individually managed sibling)
    if (!legal_transition(child.phase, event)) return false;
  }
  return true;
}

TransitionResult Orchestrator::transition_single(SliceInstance& inst, LifecycleEvent event,
                                                 bool cascading) {
  TransitionResult result;
  const auto target = legal_transition(inst.phase, event);
  if (!target) {
    result.error = TransitionError::IllegalTransition;
    result.detail = std::string(phase_name(inst.phase)) + " does not accept " +
                    lifecycle_event_name(event);
    return result;
  }
  // A child S-NSI can be individually deactivated/reactivated, but its
  // termination only happens through the parent GN-NSI's cascade.
  if (event == LifecycleEvent::Terminate && inst.parent && !cascading) {
    result.error = TransitionError::IllegalTransition;
    result.detail = "S-NSI termination requires terminating the parent GN-NSI";
    return result;
  }

  if (event == LifecycleEvent::Instantiate && inst.kind != InstanceKind::GnNsi) {
    if (const auto err = do_instantiate(inst)) {
      result.error = *err;
      result.detail = "instantiation rolled back to Prepared";
      return result;
    }
  }
  if (event == LifecycleEvent::Terminate) {
    if (inst.has_allocation) {
      state_.release(inst.instance_id);
      inst.has_allocation = false;
    }
  }
  inst.phase = *target;
  set_subnet_phases(inst, *target);
  result.ok = true;
  return result;
}

TransitionResult Orchestrator::nsmf_transition(const std::string& instance_id,
                                               LifecycleEvent event) {
  const auto it = instances_.find(instance_id);
  if (it == instances_.end()) {
    record(instance_id, lifecycle_event_name(event), "UnknownInstance");
    return {false, TransitionError::UnknownInstance, "no such instance"};
  }
  SliceInstance& inst = it->second;

  if (inst.kind == InstanceKind::GnNsi) {
    if (!cascade_legal(inst, event)) {
      record(instance_id, lifecycle_event_name(event), "IllegalTransition");
      return {false, TransitionError::IllegalTransition,
              "cascade not legal for every child from phase " + std::string(phase_name(inst.phase))};
    }
    const auto target = *legal_transition(inst.phase, event);
    std::vector<std::string> advanced;
    for (const auto& child_id : inst.children) {
      SliceInstance& child = instances_.at(child_id);
      if (child.phase == target) continue;
      const auto r = transition_single(child, event, /*cascading=*/true);
      if (!r.ok) {
        // Atomic: undo instantiations already performed in this cascade.
        for (const auto& done : advanced) {
          SliceInstance& undo = instances_.at(done);
          if (event == LifecycleEvent::Instantiate) {
            if (undo.has_allocation) {
              state_.release(undo.instance_id);
              undo.has_allocation = false;
            }
            for (const auto& sid : undo.subnet_ids) subnets_.erase(sid);
            undo.subnet_ids.clear();
            undo.phase = Phase::Prepared;
          }
        }
        record(instance_id, lifecycle_event_name(event), "AllocationFailed");
        return {false, r.error, "child " + child_id + ": " + r.detail};
      }
      advanced.push_back(child_id);
    }
    inst.phase = target;
    record(instance_id, lifecycle_event_name(event), phase_name(target));
    return {true, std::nullopt, ""};
  }

  auto result = transition_single(inst, event, /*cascading=*/false);
  if (result.ok && event == LifecycleEvent::Instantiate) {
    // Rollback semantics: on failure the phase never moved; on success the
    // three subnets now exist.
  } else if (!result.ok && result.error == TransitionError::AllocationFailed) {
    inst.phase = Phase::Prepared;
  }
  record(instance_id, lifecycle_event_name(event),
         result.ok ? phase_name(inst.phase)
                   : (result.error == TransitionError::AllocationFailed ? "AllocationFailed"
                                                                        : "IllegalTransition"));
  return result;
}

NfmfResult Orchestrator::nfmf_handle(const FcapsEvent& event) {
  NfmfResult result;

  // Resolve the component to substrate elements and the slices bound to it.
  enum class CompKind { Core, Cu, Du, Ru, Link, None } comp_kind = CompKind::None;
  std::string owner_gnb, owner_du;
  const Substrate& sub = state_.substrate();
  for (const auto& cn : sub.core_nodes)
    if (cn.id == event.component_id) comp_kind = CompKind::Core;
  for (const auto& l : sub.tn_links)
    if (l.id == event.component_id) comp_kind = CompKind::Link;
  for (const auto& g : sub.gnbs) {
    if (g.cu_id == event.component_id) {
      comp_kind = CompKind::Cu;
      owner_gnb = g.id;
    }
    for (const auto& du : g.dus) {
      if (du.id == event.component_id) {
        comp_kind = CompKind::Du;
        owner_gnb = g.id;
        owner_du = du.id;
      }
      for (const auto& ru : du.ru_ids)
        if (ru == event.component_id) {
          comp_kind = CompKind::Ru;
          owner_gnb = g.id;
          owner_du = du.id;
        }
    }
  }
  if (comp_kind == CompKind::None) {
    result.error = NfmfError::UnknownComponent;
    return result;
  }

  fcaps_log_.push_back(event);

  std::vector<std::string> bound_slices;
  SubnetKind subnet_kind = SubnetKind::FiveGC;
  for (const auto& [slice_id, alloc] : state_.allocations()) {
    bool bound = false;
    switch (comp_kind) {
      case CompKind::Core: bound = alloc.placement.core_node_id == event.component_id; break;
      case CompKind::Link: bound = alloc.placement.link_id == event.component_id; break;
      case CompKind::Cu: bound = alloc.placement.gnb_id == owner_gnb; break;  // CU is shared
      case CompKind::Du:
      case CompKind::Ru: bound = alloc.placement.du_id == owner_du; break;  // DU subtree dedicated
      default: break;
    }
    if (bound) bound_slices.push_back(slice_id);
  }
  switch (comp_kind) {
    case CompKind::Core: subnet_kind = SubnetKind::FiveGC; break;
    case CompKind::Link: subnet_kind = SubnetKind::Tn; break;
    default: subnet_kind = SubnetKind::NgRan; break;
  }

  auto subnet_of = [&](const std::string& slice_id) -> std::string {
    const auto it = instances_.find(slice_id);
    if (it == instances_.end()) return "";
    for (const auto& sid : it->second.subnet_ids)
      if (subnets_.at(sid).kind == subnet_kind) return sid;
    return "";
  };

  switch (event.kind) {
    case FcapsKind::Fault:
      for (const auto& slice_id : bound_slices) {
        if (auto it = instances_.find(slice_id); it != instances_.end()) {
          it->second.degraded = true;
          result.actions.push_back({"mark " + slice_id + " degraded", subnet_of(slice_id)});
        }
      }
      record(event.component_id, "Fault", std::to_string(result.actions.size()) + " slices degraded");
      break;
    case FcapsKind::Performance:
      ++performance_samples_;
      result.actions.push_back({"performance sample recorded", ""});
      if (son_hook_) son_hook_(event);
      record(event.component_id, "Performance", "sample");
      break;
    case FcapsKind::Configuration:
      result.actions.push_back({"configuration change applied to " + event.component_id, ""});
      record(event.component_id, "Configuration", "applied");
      break;
    case FcapsKind::Accounting:
    case FcapsKind::Security:
      // Recorded without state change.
      record(event.component_id, fcaps_kind_name(event.kind), "recorded");
      break;
  }
  return result;
}

TmanoResult Orchestrator::tmano_execute(const ManagementDelegation& mla,
                                        const std::string& tenant_id, ManagementOp op,
                                        const std::string& target_instance,
                                        const VetoPolicy& veto) const {
  if (tenant_id != mla.tenant_id)
    return {TmanoOutcome::RefusedByMla, "requester is not the MLA tenant"};
  if (!mla.delegated.count(op))
    return {TmanoOutcome::RefusedByMla,
            std::string("operation ") + management_op_name(op) + " not delegated"};
  if (!mla.scope.count(target_instance))
    return {TmanoOutcome::RefusedByMla, "target outside MLA scope"};
  const auto it = instances_.find(target_instance);
  const Phase phase = it == instances_.end() ? Phase::Prepared : it->second.phase;
  for (const auto& rule : veto.rules) {
    const bool op_match = !rule.op || *rule.op == op;
    const bool phase_match = !rule.phase || *rule.phase == phase;
    if (op_match && phase_match) return {TmanoOutcome::VetoedByCMano, rule.clause};
  }
  return {TmanoOutcome::Applied, ""};
}

std::vector<std::string> Orchestrator::check_invariants() const {
  std::vector<std::string> problems;

  auto check_element = [&](const std::string& el) {
    for (std::size_t d = 0; d < kResourceDims; ++d) {
      const auto dim = static_cast<ResourceDim>(d);
      if (state_.residual(el, dim) < 0)
        problems.push_back("capacity exceeded on " + el + " dim " + dim_name(dim));
    }
  };
  for (const auto& cn : state_.substrate().core_nodes) check_element(cn.id);
  for (const auto& g : state_.substrate().gnbs) check_element(g.id);
  for (const auto& l : state_.substrate().tn_links) check_element(l.id);

  for (const auto& [slice_id, alloc] : state_.allocations()) {
    const auto it = instances_.find(slice_id);
    if (it == instances_.end())
      problems.push_back("phantom grant: allocation for unknown slice " + slice_id);
    else if (!it->second.has_allocation)
      problems.push_back("allocation not recorded on instance " + slice_id);
  }

  std::size_t sla_owners = 0;
  for (const auto& [id, inst] : instances_) {
    const bool slice_level = inst.kind == InstanceKind::UsNsi || inst.kind == InstanceKind::GnNsi;
    if (slice_level) {
      ++sla_owners;
      if (!inst.sla_id) problems.push_back(id + ": missing SLA");
    } else if (inst.sla_id) {
      problems.push_back(id + ": S-NSI must not own an SLA");
    }
    if (inst.kind == InstanceKind::GnNsi &&
        (inst.children.empty() || inst.children.size() > kMaxSubSlices))
      problems.push_back(id + ": GN-NSI child count out of 1..8");
    if (inst.phase == Phase::Terminated &&
        (inst.has_allocation || state_.allocations().count(id)))
      problems.push_back(id + ": Terminated slice still holds grants");
    for (const auto& sid : inst.subnet_ids) {
      const auto sit = subnets_.find(sid);
      if (sit == subnets_.end()) {
        problems.push_back(id + ": missing subnet " + sid);
        continue;
      }
      if (static_cast<int>(sit->second.phase) > static_cast<int>(inst.phase))
        problems.push_back(sid + ": subnet phase beyond parent slice phase");
    }
  }
  if (slas_.size() != sla_owners)
    problems.push_back("SLA cardinality broken: " + std::to_string(slas_.size()) + " SLAs vs " +
                       std::to_string(sla_owners) + " slice-level instances");
  return problems;
}

}  // namespace nslice
