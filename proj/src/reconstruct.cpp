#include "typal/reconstruct.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "typal/parser.hpp"
#include "typal/pretty.hpp"

namespace typal {

namespace {

struct MemberRef {
  const ActionChainMeta* owner;
  size_t position;  // index into owner->chain
};

}  // namespace

std::vector<SourcePlanStep> reconstruct_plan(const PlanFile& plan, const StripsModel& sm,
                                             const ChainMetadata& meta) {
  std::map<std::string, MemberRef> member_of;
  std::map<std::string, const ActionChainMeta*> main_of;
  for (const auto& ac : meta.actions) {
    for (size_t i = 0; i < ac.chain.size(); i++) member_of[ac.chain[i].name] = {&ac, i};
    main_of[ac.original] = &ac;
  }
  std::map<std::string, size_t> goal_member;
  for (size_t i = 0; i < meta.goal_chain.size(); i++) goal_member[meta.goal_chain[i]] = i;

  std::vector<SourcePlanStep> out;
  const ActionChainMeta* active = nullptr;  // chain currently being gathered
  size_t next_pos = 0;
  std::map<std::string, bool> gathered;

  auto begin_chain = [&](const ActionChainMeta* ac) {
    active = ac;
    next_pos = 0;
    gathered.clear();
  };

  for (size_t si = 0; si < plan.steps.size(); si++) {
    const PlanStep& step = plan.steps[si];

    if (goal_member.count(step.action) ||
        (!meta.finish_action.empty() && step.action == meta.finish_action)) {
      continue;  // goal-chain bookkeeping carries no source action
    }

    auto mit = member_of.find(step.action);
    if (mit != member_of.end()) {
      const MemberRef& mr = mit->second;
      if (active != mr.owner || next_pos != mr.position) {
        if (active == mr.owner || mr.position != 0)
          throw EvalError(EvalErrorKind::Other,
                          "broken chain: auxiliary " + step.action + " out of order at step " +
                              std::to_string(si));
        begin_chain(mr.owner);
      }
      const ChainMemberMeta& cm = mr.owner->chain[mr.position];
      for (size_t i = 0; i < cm.arg_bit_keys.size(); i++)
        gathered[cm.arg_bit_keys[i]] = step.args[i];
      next_pos = mr.position + 1;
      continue;
    }

    auto ait = main_of.find(step.action);
    if (ait == main_of.end())
      throw EvalError(EvalErrorKind::Other, "plan action " + step.action +
                                                " is neither an original action nor a chain "
                                                "member");
    const ActionChainMeta* ac = ait->second;
    if (!ac->chain.empty()) {
      if (active != ac || next_pos != ac->chain.size())
        throw EvalError(EvalErrorKind::Other, "broken chain: " + step.action +
                                                  " executed without its full auxiliary chain");
    } else if (active) {
      throw EvalError(EvalErrorKind::Other,
                      "broken chain: " + step.action + " interrupts another chain");
    }

    for (size_t i = 0; i < ac->main_arg_bit_keys.size(); i++)
      gathered[ac->main_arg_bit_keys[i]] = step.args[i];
    for (const auto& [k, v] : ac->fixed_bits) gathered[k] = v;

    SourcePlanStep sps;
    sps.action = ac->original;
    for (const auto& pm : ac->params) {
      std::vector<bool> bits;
      bits.reserve(pm.bit_keys.size());
      for (const auto& key : pm.bit_keys) {
        auto git = gathered.find(key);
        if (git == gathered.end())
          throw EvalError(EvalErrorKind::Other,
                          "parameter bit " + key + " of " + ac->original + " was never bound");
        bits.push_back(git->second);
      }
      TypeExpr t = parse_type_text(pm.type_text);
      sps.args.push_back(decode_leaves(t, bits, pm.name));
    }
    out.push_back(std::move(sps));
    active = nullptr;
    next_pos = 0;
    gathered.clear();
  }
  (void)sm;
  return out;
}

std::string format_source_plan(const std::vector<SourcePlanStep>& plan) {
  std::ostringstream os;
  for (const auto& s : plan) {
    os << s.action;
    if (!s.args.empty()) {
      os << "(";
      for (size_t i = 0; i < s.args.size(); i++)
        os << (i ? ", " : "") << value_to_string(s.args[i]);
      os << ")";
    }
    os << "\n";
  }
  return os.str();
}

std::string meta_to_json(const ChainMetadata& meta) {
  nlohmann::json j;
  j["finish_action"] = meta.finish_action;
  j["goal_chain"] = meta.goal_chain;
  auto& acts = j["actions"] = nlohmann::json::array();
  for (const auto& ac : meta.actions) {
    nlohmann::json a;
    a["original"] = ac.original;
    a["main_args"] = ac.main_arg_bit_keys;
    auto& chain = a["chain"] = nlohmann::json::array();
    for (const auto& cm : ac.chain) chain.push_back({{"name", cm.name}, {"args", cm.arg_bit_keys}});
    auto& params = a["params"] = nlohmann::json::array();
    for (const auto& pm : ac.params)
      params.push_back({{"name", pm.name}, {"type", pm.type_text}, {"bits", pm.bit_keys}});
    a["fixed"] = ac.fixed_bits;
    a["moved_owner"] = ac.moved_owner;
    a["moved_store"] = ac.moved_store;
    a["w_formulas"] = ac.w_formulas;
    acts.push_back(std::move(a));
  }
  return j.dump(2) + "\n";
}

ChainMetadata meta_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ChainMetadata meta;
  meta.finish_action = j.value("finish_action", std::string());
  meta.goal_chain = j.value("goal_chain", std::vector<std::string>{});
  for (const auto& a : j.at("actions")) {
    ActionChainMeta ac;
    ac.original = a.at("original").get<std::string>();
    ac.main_arg_bit_keys = a.at("main_args").get<std::vector<std::string>>();
    for (const auto& cm : a.at("chain")) {
      ChainMemberMeta m;
      m.name = cm.at("name").get<std::string>();
      m.arg_bit_keys = cm.at("args").get<std::vector<std::string>>();
      ac.chain.push_back(std::move(m));
    }
    for (const auto& pm : a.at("params")) {
      OrigParamMeta p;
      p.name = pm.at("name").get<std::string>();
      p.type_text = pm.at("type").get<std::string>();
      p.bit_keys = pm.at("bits").get<std::vector<std::string>>();
      ac.params.push_back(std::move(p));
    }
    ac.fixed_bits = a.at("fixed").get<std::map<std::string, bool>>();
    ac.moved_owner = a.at("moved_owner").get<std::map<std::string, std::string>>();
    ac.moved_store = a.at("moved_store").get<std::map<std::string, std::string>>();
    ac.w_formulas = a.at("w_formulas").get<std::map<std::string, std::string>>();
    meta.actions.push_back(std::move(ac));
  }
  return meta;
}

}  // namespace typal
