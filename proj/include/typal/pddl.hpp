#pragma once

#include <set>
#include <string>
#include <vector>

#include "typal/strips.hpp"

namespace typal {

struct PddlDocument {
  std::string domain_text;
  std::string problem_text;
};

/// Render the normalized model. Every state bit becomes a 0-ary predicate;
/// parameter bits become boolval-typed parameters read through the static
/// (istrue ?b) predicate. Output is deterministic: declaration order, then
/// chain order.
PddlDocument emit_pddl(const StripsModel& m, const std::string& name);

struct PlanStep {
  std::string action;
  std::vector<bool> args;  // parameter bit values, in parameter order
};

struct PlanFile {
  std::vector<PlanStep> steps;
};

/// One action per line, "(name arg*)", ';' comments and blank lines ignored.
/// Resolves names and btrue/bfalse bindings against the model.
PlanFile parse_plan(const std::string& text, const StripsModel& m);

std::string plan_to_text(const PlanFile& plan);

/// Independent interpreter over emitted PDDL text: re-parses the two
/// documents and executes ground actions. Used to check that replaying a
/// plan through the emitted text reproduces the normalized model's state
/// trace bit for bit.
class GroundedPddl {
 public:
  static GroundedPddl parse(const std::string& domain_text, const std::string& problem_text);

  /// Execute a plan from the initial state; returns the trace of states
  /// (initial state first), each a sorted set of true ground atoms.
  /// Throws EvalError on an inapplicable step or conflicting effects.
  std::vector<std::set<std::string>> run_plan(const PlanFile& plan) const;

  bool goal_satisfied(const std::set<std::string>& state) const;

 private:
  struct Sexp {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexp> kids;
  };
  struct GAction {
    std::string name;
    std::vector<std::string> params;  // ?names
    Sexp pre;
    bool has_pre = false;
    Sexp effect;
  };

  static Sexp parse_sexp(const std::string& text, size_t& at);

  std::vector<GAction> actions_;
  std::set<std::string> init_;
  Sexp goal_;
  std::vector<std::string> objects_;
};

}  // namespace typal
