#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "typal/booleanize.hpp"

namespace typal {

/// Negation normal form; equivalences are expanded here and nowhere else.
FormulaPtr to_nnf(const FormulaPtr& f);

struct Literal {
  int bit;
  bool positive;
};

struct StripsEffect {
  std::vector<Literal> cond;  // empty = unconditional
  int bit;
  bool value;
};

enum class StripsActionKind { Main, Aux, Finish };

struct StripsAction {
  std::string name;
  StripsActionKind kind = StripsActionKind::Main;
  std::string original;  // owning source action; empty for the goal chain
  std::vector<int> param_bits;
  std::vector<std::vector<int>> param_groups;  // one-hot groups, whole within the action
  std::vector<int> free_bits;
  std::vector<Literal> pre;
  std::vector<StripsEffect> effects;
};

/// Normalized model: conditions are literal conjunctions, effects add/delete
/// single bits, every action has at most max-params parameter bits.
struct StripsModel {
  VarTable vars;
  std::vector<int> state_bits;  // original bits first, then auxiliaries
  std::vector<bool> init;       // indexed by variable id (param positions unused)
  std::vector<Literal> goal;
  std::vector<StripsAction> actions;

  // Original-model structure, for decoding and validation.
  int num_original_bits = 0;
  std::vector<std::vector<int>> exactly_one_groups;
  std::map<std::string, std::vector<int>> var_bits;
  std::map<std::string, TypeExpr> var_type;
  std::vector<std::string> var_order;

  const StripsAction* find_action(const std::string& n) const {
    for (const auto& a : actions)
      if (a.name == n) return &a;
    return nullptr;
  }
};

/// Inverse-mapping data: which auxiliary actions belong to which original
/// action, where every original parameter bit is bound, and what was fixed
/// away by splitting.
struct ChainMemberMeta {
  std::string name;
  std::vector<std::string> arg_bit_keys;  // original bit registry keys, in plan-argument order
};

struct OrigParamMeta {
  std::string name;
  std::string type_text;
  std::vector<std::string> bit_keys;  // depth-first leaf order
};

struct ActionChainMeta {
  std::string original;
  std::vector<ChainMemberMeta> chain;  // auxiliaries in execution order
  std::vector<std::string> main_arg_bit_keys;
  std::vector<OrigParamMeta> params;
  std::map<std::string, bool> fixed_bits;           // bit key -> value forced by splitting
  std::map<std::string, std::string> moved_owner;   // bit key -> auxiliary action binding it
  std::map<std::string, std::string> moved_store;   // bit key -> shadow/store state variable
  std::map<std::string, std::string> w_formulas;    // auxiliary variable -> eliminated subformula
};

struct ChainMetadata {
  std::vector<ActionChainMeta> actions;
  std::string finish_action;                 // empty when the goal needed no chain
  std::vector<std::string> goal_chain;       // auxiliary actions before finish

  const ActionChainMeta* find(const std::string& original) const {
    for (const auto& a : actions)
      if (a.original == original) return &a;
    return nullptr;
  }
};

struct LoweredModel {
  StripsModel strips;
  ChainMetadata meta;
};

/// Disjunction elimination, parameter moving with shadow state variables,
/// action splitting and turnstile sequencing, applied to every action and to
/// the goal. max_params bounds the parameter bits per emitted action.
LoweredModel lower_to_strips(const BoolModel& bm, int max_params = 8);

}  // namespace typal
