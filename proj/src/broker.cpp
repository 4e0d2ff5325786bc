#include "nslice/broker.hpp"

namespace nslice {

const char* channel_role_name(ChannelRole r) {
  switch (r) {
    case ChannelRole::ScsAs: return "SCS/AS";
    case ChannelRole::MasterScsAs: return "Master-SCS/AS";
    case ChannelRole::SlaveScsAs: return "Slave-SCS/AS";
  }
  return "?";
}

const char* nef_query_name(NefQuery q) {
  switch (q) {
    case NefQuery::UeCount: return "UeCount";
    case NefQuery::UeStatus: return "UeStatus";
    case NefQuery::Connectivity: return "Connectivity";
    case NefQuery::Reachability: return "Reachability";
    case NefQuery::LinkFailure: return "LinkFailure";
  }
  return "?";
}

void Broker::note(const std::string& channel, const std::string& kind, const std::string& outcome,
                  std::int64_t time) {
  trace_.push_back({time, channel, kind, outcome});
}

static ResourceRequirement demand_of(const SliceTemplate& tpl) {
  const auto triple = derive_nssits(tpl);
  ResourceRequirement demand;
  demand.sharing = tpl.resources.sharing;
  for (std::size_t d = 0; d < kResourceDims; ++d)
    demand.quantity[d] = triple.core.resources.quantity[d] + triple.ran.resources.quantity[d] +
                         triple.tn.resources.quantity[d];
  return demand;
}

std::optional<std::string> Broker::resolve(const SliceRequest& req, const SliceTemplate** gn,
                                           std::vector<Constituent>* out) const {
  *gn = nullptr;
  if (req.template_refs.empty()) return "request carries no template refs";
  if (req.mode == ProvisioningMode::UseCaseSpecific) {
    for (const auto& ref : req.template_refs) {
      const SliceTemplate* tpl = catalogue_->get(ref);
      if (!tpl) return "unresolved template ref " + ref;
      if (tpl->flavor != TemplateFlavor::UsNsit) return ref + " is not a US-NSIT";
      out->push_back({tpl, demand_of(*tpl)});
    }
    return std::nullopt;
  }
  if (req.template_refs.size() != 1) return "GN-NSI request takes exactly one template ref";
  const SliceTemplate* gn_tpl = catalogue_->get(req.template_refs.front());
  if (!gn_tpl) return "unresolved template ref " + req.template_refs.front();
  if (gn_tpl->flavor != TemplateFlavor::GnNsit)
    return req.template_refs.front() + " is not a GN-NSIT";
  if (gn_tpl->sub_templates.size() > kMaxSubSlices)
    return "GN-NSIT clusters more than eight S-NSITs";
  for (const auto& sub_id : gn_tpl->sub_templates) {
    const SliceTemplate* sub = catalogue_->get(sub_id);
    if (!sub) return "dangling S-NSIT " + sub_id;
    out->push_back({sub, demand_of(*sub)});
  }
  *gn = gn_tpl;
  return std::nullopt;
}

void Broker::wire_channels(const SliceRequest& req, const std::optional<std::string>& gn_instance,
                           const std::vector<std::string>& slice_instances) {
  auto add = [&](ChannelRole role, const std::string& bound,
                 const std::optional<std::string>& use_case, const std::string& cluster) {
    ApiChannel ch;
    ch.channel_id = "ch-" + std::to_string(++channel_seq_);
    ch.tenant_id = req.tenant_id;
    ch.bound_slice = bound;
    ch.use_case_id = use_case;
    ch.role = role;
    ch.nef_endpoint = "nef/" + ch.channel_id;
    ch.cluster_id = cluster;
    note(ch.channel_id, "channel-open", channel_role_name(role), req.arrival_time);
    channels_[ch.channel_id] = std::move(ch);
  };
  if (gn_instance) {
    add(ChannelRole::MasterScsAs, *gn_instance, std::nullopt, *gn_instance);
    for (const auto& inst_id : slice_instances) {
      const SliceInstance* inst = orch_->instance(inst_id);
      add(ChannelRole::SlaveScsAs, inst_id, inst ? inst->use_case_id : std::nullopt, *gn_instance);
    }
  } else {
    for (const auto& inst_id : slice_instances) {
      const SliceInstance* inst = orch_->instance(inst_id);
      add(ChannelRole::ScsAs, inst_id, inst ? inst->use_case_id : std::nullopt, "");
    }
  }
}

AdmissionDecision Broker::nsb_admit(const SliceRequest& req, const AdmissionPolicy&) {
  AdmissionDecision decision;
  decision.request_id = req.request_id;
  decision.decision_time = req.arrival_time;

  const SliceTemplate* gn = nullptr;
  std::vector<Constituent> constituents;
  if (const auto problem = resolve(req, &gn, &constituents)) {
    decision.reason = *problem;
    note(req.request_id, "admission", "Denied: " + decision.reason, req.arrival_time);
    decisions_.push_back(decision);
    return decision;
  }

  const bool atomic = req.mode == ProvisioningMode::SubNetworkSlicing || req.atomic_batch;
  std::vector<std::string> created;

  if (atomic) {
    std::vector<ResourceRequirement> demands;
    for (const auto& c : constituents) demands.push_back(c.demand);
    const auto batch = orch_->state().feasibility_check_batch(demands);
    if (!batch.feasible) {
      const auto& blocked = constituents[std::min(batch.blocked_index, constituents.size() - 1)];
      decision.reason = "slice " + blocked.tpl->id_info.template_id + " infeasible at " +
                        batch.bottleneck;
      for (const auto& c : constituents) decision.per_slice.emplace_back(c.tpl->id_info.template_id, false);
      note(req.request_id, "admission", "Denied: " + decision.reason, req.arrival_time);
      decisions_.push_back(decision);
      return decision;
    }
    std::optional<std::string> gn_instance;
    if (gn) gn_instance = orch_->create_slice(*gn, InstanceKind::GnNsi);
    for (std::size_t i = 0; i < constituents.size(); ++i) {
      const auto kind = gn ? InstanceKind::SNsi : InstanceKind::UsNsi;
      const std::string inst_id = orch_->create_slice(*constituents[i].tpl, kind, gn_instance);
      orch_->state().allocate(batch.placements[i], inst_id, constituents[i].demand);
      orch_->attach_allocation(inst_id);
      created.push_back(inst_id);
      decision.per_slice.emplace_back(constituents[i].tpl->id_info.template_id, true);
    }
    decision.outcome = AdmissionOutcome::Granted;
    decision.leases = created;
    decision.instances = created;
    if (gn_instance) decision.instances.insert(decision.instances.begin(), *gn_instance);
    wire_channels(req, gn_instance, created);
  } else {
    // Independent submission: each US-NSI stands alone; partial grants allowed.
    std::string first_denial;
    for (const auto& c : constituents) {
      const auto feas = orch_->state().feasibility_check(c.demand);
      if (!feas.feasible) {
        decision.per_slice.emplace_back(c.tpl->id_info.template_id, false);
        if (first_denial.empty())
          first_denial = "slice " + c.tpl->id_info.template_id + " infeasible at " + feas.bottleneck;
        continue;
      }
      const std::string inst_id = orch_->create_slice(*c.tpl, InstanceKind::UsNsi);
      orch_->state().allocate(feas.placement, inst_id, c.demand);
      orch_->attach_allocation(inst_id);
      created.push_back(inst_id);
      decision.per_slice.emplace_back(c.tpl->id_info.template_id, true);
    }
    if (created.empty()) {
      decision.reason = first_denial.empty() ? "nothing admitted" : first_denial;
    } else {
      decision.outcome = AdmissionOutcome::Granted;
      decision.leases = created;
      decision.instances = created;
      if (!first_denial.empty()) decision.reason = "partial: " + first_denial;
      wire_channels(req, std::nullopt, created);
    }
  }

  note(req.request_id, "admission",
       decision.outcome == AdmissionOutcome::Granted
           ? "Granted (" + std::to_string(decision.leases.size()) + " leases)"
           : "Denied: " + decision.reason,
       req.arrival_time);
  decisions_.push_back(decision);
  return decision;
}

const ApiChannel* Broker::channel(const std::string& id) const {
  const auto it = channels_.find(id);
  return it == channels_.end() ? nullptr : &it->second;
}

std::vector<const ApiChannel*> Broker::channels_of_cluster(const std::string& cluster_id) const {
  std::vector<const ApiChannel*> out;
  for (const auto& [id, ch] : channels_)
    if (ch.cluster_id == cluster_id) out.push_back(&ch);
  return out;
}

NefReport Broker::nef_expose(const std::string& channel_id, NefQuery query,
                             const std::string& requesting_tenant, const UeDirectory& ues,
                             const std::optional<std::string>& target_slice) {
  NefReport report;
  const ApiChannel* ch = channel(channel_id);
  if (!ch || ch->bound_slice.empty()) {
    report.error = NefError::UnboundChannel;
    return report;
  }
  const std::string target = target_slice.value_or(ch->bound_slice);
  // Channel isolation: a channel only ever reports on its own bound slice,
  // and only to the tenant that owns it.
  if (requesting_tenant != ch->tenant_id || target != ch->bound_slice) {
    report.error = NefError::Unauthorized;
    note(channel_id, nef_query_name(query), "Unauthorized", 0);
    return report;
  }
  const SliceInstance* inst = orch_->instance(target);
  if (!inst) {
    report.error = NefError::UnboundChannel;
    return report;
  }

  const auto it = ues.find(target);
  const std::set<std::string> empty;
  const auto& attached = it == ues.end() ? empty : it->second;

  bool link_faulted = false;
  if (const auto alloc = orch_->state().allocations().find(target);
      alloc != orch_->state().allocations().end()) {
    for (const auto& ev : orch_->fcaps_log())
      if (ev.kind == FcapsKind::Fault && ev.component_id == alloc->second.placement.link_id)
        link_faulted = true;
  }

  switch (query) {
    case NefQuery::UeCount:
      report.ue_count = attached.size();
      report.lines.push_back("ue_count = " + std::to_string(attached.size()));
      break;
    case NefQuery::UeStatus:
      for (const auto& ue : attached) {
        report.ue_ids.push_back(ue);
        report.lines.push_back("ue " + ue + " attached");
      }
      break;
    case NefQuery::Connectivity:
      report.degraded = inst->degraded || link_faulted;
      report.lines.push_back(std::string("connectivity = ") +
                             (report.degraded ? "degraded" : "ok"));
      break;
    case NefQuery::Reachability:
      report.degraded = inst->phase != Phase::Running && inst->phase != Phase::Activated;
      report.lines.push_back(std::string("reachability = ") +
                             (report.degraded ? "unreachable" : "reachable"));
      break;
    case NefQuery::LinkFailure:
      report.degraded = link_faulted;
      report.lines.push_back(std::string("link_failure = ") + (link_faulted ? "yes" : "no"));
      break;
  }
  note(channel_id, nef_query_name(query), "ok", 0);
  return report;
}

RouteResult Broker::master_slave_route(const std::string& issuer_channel_id,
                                       const std::string& target_slice, LifecycleEvent op) {
  RouteResult result;
  const ApiChannel* issuer = channel(issuer_channel_id);
  if (!issuer) {
    result.detail = "unknown issuer channel";
    return result;
  }
  if (issuer->role != ChannelRole::MasterScsAs) {
    result.detail = "control flows only from Master to Slave";
    note(issuer_channel_id, "route", "RejectedDirection", 0);
    return result;
  }
  const ApiChannel* target_channel = nullptr;
  for (const auto& [id, ch] : channels_)
    if (ch.role == ChannelRole::SlaveScsAs && ch.bound_slice == target_slice) target_channel = &ch;
  if (!target_channel || target_channel->cluster_id != issuer->cluster_id) {
    result.detail = "target is not a Slave of this cluster";
    note(issuer_channel_id, "route", "RejectedDirection", 0);
    return result;
  }
  result.outcome = RouteOutcome::Forwarded;
  result.transition = orch_->nsmf_transition(target_slice, op);
  result.detail = result.transition.ok ? "applied" : result.transition.detail;
  note(issuer_channel_id, "route",
       std::string("Forwarded ") + lifecycle_event_name(op) + " -> " + target_slice, 0);
  return result;
}

}  // namespace nslice
