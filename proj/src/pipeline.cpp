#include "typal/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "typal/lower_types.hpp"
#include "typal/parser.hpp"
#include "typal/pretty.hpp"
#include "typal/typecheck.hpp"

namespace typal {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

CompileResult compile_text(const std::string& text, const std::string& name,
                           const PipelineConfig& cfg) {
  set_simplification(cfg.simplify);
  CompileResult r;
  r.name = name;
  r.parsed = parse_domain(text, name);
  CheckOptions copts{cfg.domain_cap};
  typecheck(r.parsed, copts);
  r.lowered = lower_records_unions(r.parsed);
  typecheck(r.lowered, copts);
  r.boolean = booleanize_model(r.lowered, cfg.domain_cap);
  LoweredModel lm = lower_to_strips(r.boolean, cfg.max_params);
  r.strips = std::move(lm.strips);
  r.meta = std::move(lm.meta);
  r.pddl = emit_pddl(r.strips, name);
  return r;
}

CompileResult compile_file(const PipelineConfig& cfg) {
  const std::filesystem::path p(cfg.input_path);
  return compile_text(read_file(cfg.input_path), p.stem().string(), cfg);
}

std::string dump_bool_model(const BoolModel& bm) {
  std::ostringstream os;
  os << "state bits (" << bm.num_state_bits << "):";
  for (int i = 0; i < bm.num_state_bits; i++) os << " " << bm.vars.display(i);
  os << "\ninit:";
  for (int i = 0; i < bm.num_state_bits; i++)
    if (bm.init[i]) os << " " << bm.vars.display(i);
  os << "\nexactly-one groups: " << bm.exactly_one_groups.size();
  os << "\ngoal: " << formula_to_string(bm.goal, bm.vars) << "\n";
  for (const auto& a : bm.actions) {
    os << "action " << a.name << "(";
    for (size_t i = 0; i < a.params.size(); i++) {
      if (i) os << ", ";
      os << a.params[i].name << ": " << type_to_string(a.params[i].type) << " ["
         << a.params[i].flat.size() << " bits]";
    }
    os << ")\n  pre " << formula_to_string(a.pre, bm.vars) << "\n";
    for (const auto& e : a.effects)
      os << "  when " << formula_to_string(e.cond, bm.vars) << " set "
         << bm.vars.display(e.bit) << " := " << (e.value ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string dump_strips_model(const StripsModel& sm) {
  auto lit = [&](const Literal& l) {
    return (l.positive ? "" : "!") + sm.vars.display(l.bit);
  };
  std::ostringstream os;
  os << "state bits (" << sm.state_bits.size() << "), original " << sm.num_original_bits << "\n";
  os << "goal:";
  for (const auto& l : sm.goal) os << " " << lit(l);
  os << "\n";
  for (const auto& a : sm.actions) {
    os << (a.kind == StripsActionKind::Main ? "action " : "aux ") << a.name;
    if (!a.param_bits.empty()) {
      os << " [";
      for (size_t i = 0; i < a.param_bits.size(); i++)
        os << (i ? " " : "") << sm.vars.display(a.param_bits[i]);
      os << "]";
    }
    os << "\n  pre";
    for (const auto& l : a.pre) os << " " << lit(l);
    os << "\n";
    for (const auto& e : a.effects) {
      os << "  ";
      if (!e.cond.empty()) {
        os << "when";
        for (const auto& l : e.cond) os << " " << lit(l);
        os << " ";
      }
      os << "set " << sm.vars.display(e.bit) << " := " << (e.value ? "true" : "false") << "\n";
    }
  }
  return os.str();
}

}  // namespace typal
