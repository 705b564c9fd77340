#include "typal/pddl.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace typal {

namespace {

std::string literal_text(const StripsModel& m, const Literal& l,
                         const std::set<int>& param_bits) {
  std::string inner;
  if (param_bits.count(l.bit))
    inner = "(istrue ?" + m.vars.display(l.bit) + ")";
  else
    inner = "(" + m.vars.display(l.bit) + ")";
  return l.positive ? inner : "(not " + inner + ")";
}

std::string cond_text(const StripsModel& m, const std::vector<Literal>& lits,
                      const std::set<int>& param_bits) {
  std::string out = "(and";
  for (const auto& l : lits) out += " " + literal_text(m, l, param_bits);
  return out + ")";
}

}  // namespace

PddlDocument emit_pddl(const StripsModel& m, const std::string& name) {
  std::ostringstream dom;
  dom << "(define (domain " << name << ")\n";
  dom << "  (:requirements :strips :typing :negative-preconditions :conditional-effects)\n";
  dom << "  (:types boolval)\n";
  dom << "  (:predicates\n    (istrue ?b - boolval)\n";
  for (int bit : m.state_bits) dom << "    (" << m.vars.display(bit) << ")\n";
  dom << "  )\n";

  for (const auto& a : m.actions) {
    std::set<int> pbits(a.param_bits.begin(), a.param_bits.end());
    dom << "  (:action " << a.name << "\n";
    dom << "    :parameters (";
    for (size_t i = 0; i < a.param_bits.size(); i++)
      dom << (i ? " " : "") << "?" << m.vars.display(a.param_bits[i]);
    if (!a.param_bits.empty()) dom << " - boolval";
    dom << ")\n";
    if (!a.pre.empty())
      dom << "    :precondition " << cond_text(m, a.pre, pbits) << "\n";
    dom << "    :effect (and";
    for (const auto& e : a.effects) {
      const std::string lit =
          e.value ? "(" + m.vars.display(e.bit) + ")" : "(not (" + m.vars.display(e.bit) + "))";
      if (e.cond.empty())
        dom << " " << lit;
      else
        dom << " (when " << cond_text(m, e.cond, pbits) << " " << lit << ")";
    }
    dom << ")\n  )\n";
  }
  dom << ")\n";

  std::ostringstream prob;
  prob << "(define (problem " << name << "-prob)\n";
  prob << "  (:domain " << name << ")\n";
  prob << "  (:objects btrue bfalse - boolval)\n";
  prob << "  (:init (istrue btrue)";
  for (int bit : m.state_bits)
    if (m.init[bit]) prob << " (" << m.vars.display(bit) << ")";
  prob << ")\n";
  prob << "  (:goal (and";
  std::set<int> none;
  for (const auto& l : m.goal) prob << " " << literal_text(m, l, none);
  prob << "))\n)\n";

  return {dom.str(), prob.str()};
}

PlanFile parse_plan(const std::string& text, const StripsModel& m) {
  PlanFile out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    const size_t semi = line.find(';');
    if (semi != std::string::npos) line = line.substr(0, semi);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    if (trimmed.front() != '(' || trimmed.back() != ')')
      throw ParseError("plan step must be of the form (name arg*)", {lineno, 1});
    std::istringstream ws(trimmed.substr(1, trimmed.size() - 2));
    std::string name;
    ws >> name;
    if (name.empty()) throw ParseError("empty plan step", {lineno, 1});
    const StripsAction* a = m.find_action(name);
    if (!a) throw ParseError("unknown action in plan: " + name, {lineno, 1});
    PlanStep step;
    step.action = name;
    std::string arg;
    while (ws >> arg) {
      if (arg == "btrue")
        step.args.push_back(true);
      else if (arg == "bfalse")
        step.args.push_back(false);
      else
        throw ParseError("unknown object in plan: " + arg, {lineno, 1});
    }
    if (step.args.size() != a->param_bits.size())
      throw ParseError("arity mismatch for " + name + ": expected " +
                           std::to_string(a->param_bits.size()) + " arguments, found " +
                           std::to_string(step.args.size()),
                       {lineno, 1});
    out.steps.push_back(std::move(step));
  }
  return out;
}

std::string plan_to_text(const PlanFile& plan) {
  std::ostringstream os;
  for (const auto& s : plan.steps) {
    os << "(" << s.action;
    for (bool b : s.args) os << " " << (b ? "btrue" : "bfalse");
    os << ")\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Grounded interpreter over emitted text
// ---------------------------------------------------------------------------

GroundedPddl::Sexp GroundedPddl::parse_sexp(const std::string& text, size_t& at) {
  auto skip = [&]() {
    for (;;) {
      while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) at++;
      if (at < text.size() && text[at] == ';') {
        while (at < text.size() && text[at] != '\n') at++;
        continue;
      }
      break;
    }
  };
  skip();
  if (at >= text.size()) throw ParseError("unexpected end of PDDL text");
  Sexp s;
  if (text[at] == '(') {
    at++;
    skip();
    while (at < text.size() && text[at] != ')') {
      s.kids.push_back(parse_sexp(text, at));
      skip();
    }
    if (at >= text.size()) throw ParseError("missing ')' in PDDL text");
    at++;
    return s;
  }
  s.is_atom = true;
  while (at < text.size() && !std::isspace(static_cast<unsigned char>(text[at])) &&
         text[at] != '(' && text[at] != ')')
    s.atom += text[at++];
  return s;
}

GroundedPddl GroundedPddl::parse(const std::string& domain_text, const std::string& problem_text) {
  GroundedPddl g;
  size_t at = 0;
  Sexp dom = parse_sexp(domain_text, at);
  for (const auto& sec : dom.kids) {
    if (sec.is_atom || sec.kids.empty() || !sec.kids[0].is_atom) continue;
    if (sec.kids[0].atom == ":action") {
      GAction a;
      a.name = sec.kids[1].atom;
      for (size_t i = 2; i + 1 < sec.kids.size(); i += 2) {
        const std::string& kw = sec.kids[i].atom;
        const Sexp& val = sec.kids[i + 1];
        if (kw == ":parameters") {
          for (const auto& p : val.kids)
            if (p.is_atom && !p.atom.empty() && p.atom[0] == '?') a.params.push_back(p.atom);
        } else if (kw == ":precondition") {
          a.pre = val;
          a.has_pre = true;
        } else if (kw == ":effect") {
          a.effect = val;
        }
      }
      g.actions_.push_back(std::move(a));
    }
  }

  at = 0;
  Sexp prob = parse_sexp(problem_text, at);
  for (const auto& sec : prob.kids) {
    if (sec.is_atom || sec.kids.empty() || !sec.kids[0].is_atom) continue;
    if (sec.kids[0].atom == ":objects") {
      for (const auto& o : sec.kids)
        if (o.is_atom && o.atom != ":objects" && o.atom != "-" && o.atom != "boolval")
          g.objects_.push_back(o.atom);
    } else if (sec.kids[0].atom == ":init") {
      for (size_t i = 1; i < sec.kids.size(); i++) {
        std::string ground = sec.kids[i].kids[0].atom;
        for (size_t j = 1; j < sec.kids[i].kids.size(); j++)
          ground += " " + sec.kids[i].kids[j].atom;
        g.init_.insert(ground);
      }
    } else if (sec.kids[0].atom == ":goal") {
      g.goal_ = sec.kids[1];
    }
  }
  return g;
}

bool GroundedPddl::goal_satisfied(const std::set<std::string>& state) const {
  // goal is (and lit*)
  struct Rec {
    static bool eval(const Sexp& s, const std::set<std::string>& st) {
      if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "and") {
        for (size_t i = 1; i < s.kids.size(); i++)
          if (!eval(s.kids[i], st)) return false;
        return true;
      }
      if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "not")
        return !eval(s.kids[1], st);
      std::string ground = s.kids[0].atom;
      for (size_t j = 1; j < s.kids.size(); j++) ground += " " + s.kids[j].atom;
      return st.count(ground) > 0;
    }
  };
  return Rec::eval(goal_, state);
}

std::vector<std::set<std::string>> GroundedPddl::run_plan(const PlanFile& plan) const {
  auto subst_atom = [](const Sexp& s, const std::map<std::string, std::string>& bind) {
    std::string ground = s.kids[0].atom;
    for (size_t j = 1; j < s.kids.size(); j++) {
      const std::string& a = s.kids[j].atom;
      auto it = bind.find(a);
      ground += " " + (it != bind.end() ? it->second : a);
    }
    return ground;
  };

  struct Effects {
    std::set<std::string> adds, dels;
  };

  std::function<bool(const Sexp&, const std::set<std::string>&,
                     const std::map<std::string, std::string>&)>
      eval_cond = [&](const Sexp& s, const std::set<std::string>& st,
                      const std::map<std::string, std::string>& bind) -> bool {
    if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "and") {
      for (size_t i = 1; i < s.kids.size(); i++)
        if (!eval_cond(s.kids[i], st, bind)) return false;
      return true;
    }
    if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "not")
      return !eval_cond(s.kids[1], st, bind);
    return st.count(subst_atom(s, bind)) > 0;
  };

  std::function<void(const Sexp&, const std::set<std::string>&,
                     const std::map<std::string, std::string>&, Effects&)>
      walk_effect = [&](const Sexp& s, const std::set<std::string>& st,
                        const std::map<std::string, std::string>& bind, Effects& out) {
    if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "and") {
      for (size_t i = 1; i < s.kids.size(); i++) walk_effect(s.kids[i], st, bind, out);
      return;
    }
    if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "when") {
      if (eval_cond(s.kids[1], st, bind)) walk_effect(s.kids[2], st, bind, out);
      return;
    }
    if (!s.kids.empty() && s.kids[0].is_atom && s.kids[0].atom == "not") {
      out.dels.insert(subst_atom(s.kids[1], bind));
      return;
    }
    out.adds.insert(subst_atom(s, bind));
  };

  std::vector<std::set<std::string>> trace;
  std::set<std::string> state = init_;
  trace.push_back(state);
  for (size_t step = 0; step < plan.steps.size(); step++) {
    const auto& ps = plan.steps[step];
    const GAction* act = nullptr;
    for (const auto& a : actions_)
      if (a.name == ps.action) act = &a;
    if (!act)
      throw EvalError(EvalErrorKind::Other, "unknown action in plan: " + ps.action);
    if (act->params.size() != ps.args.size())
      throw EvalError(EvalErrorKind::Other, "arity mismatch for " + ps.action);
    std::map<std::string, std::string> bind;
    for (size_t i = 0; i < act->params.size(); i++)
      bind[act->params[i]] = ps.args[i] ? "btrue" : "bfalse";
    if (act->has_pre && !eval_cond(act->pre, state, bind))
      throw EvalError(EvalErrorKind::PreconditionFailed,
                      "precondition of " + ps.action + " false at step " + std::to_string(step));
    Effects eff;
    walk_effect(act->effect, state, bind, eff);
    for (const auto& a : eff.adds)
      if (eff.dels.count(a))
        throw EvalError(EvalErrorKind::WriteConflict,
                        "conflicting effects on " + a + " at step " + std::to_string(step));
    for (const auto& d : eff.dels) state.erase(d);
    for (const auto& a : eff.adds) state.insert(a);
    trace.push_back(state);
  }
  return trace;
}

}  // namespace typal
