#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "typal/pipeline.hpp"
#include "typal/pretty.hpp"
#include "typal/reconstruct.hpp"
#include "typal/search.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUnsolvable = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapExceeded = 3;

struct Options {
  typal::PipelineConfig cfg;
  std::string plan_path;
  std::string level = "strips";
};

std::string stem_of(const Options& o) {
  if (!o.cfg.output_stem.empty()) return o.cfg.output_stem;
  std::filesystem::path p(o.cfg.input_path);
  p.replace_extension();
  return p.string();
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.cfg.input_path, "model file")->required();
  cmd->add_option("-o,--output", o.cfg.output_stem, "output stem");
  cmd->add_option("--max-params", o.cfg.max_params, "parameter bits per emitted action")
      ->check(CLI::PositiveNumber);
  cmd->add_flag_callback("--no-simplify", [&o]() { o.cfg.simplify = false; },
                         "disable formula simplification");
  cmd->add_option("--cap-domain", o.cfg.domain_cap, "value-domain enumeration cap");
  cmd->add_option("--cap-states", o.cfg.state_cap, "search state cap");
  cmd->add_option("--dump", [&o](const std::vector<std::string>& vals) {
        for (const auto& v : vals) o.cfg.dumps.insert(v);
        return true;
      },
      "dump a stage (ast|bool|strips)")->expected(1)->allow_extra_args(false);
  cmd->add_option("--seed", o.cfg.seed, "seed for random-model tooling");
}

void print_dumps(const typal::CompileResult& r, const Options& o) {
  if (o.cfg.dumps.count("ast")) std::cout << typal::print_model(r.parsed);
  if (o.cfg.dumps.count("bool")) std::cout << typal::dump_bool_model(r.boolean);
  if (o.cfg.dumps.count("strips")) std::cout << typal::dump_strips_model(r.strips);
}

int cmd_compile(Options& o) {
  typal::CompileResult r = typal::compile_file(o.cfg);
  print_dumps(r, o);
  const std::string stem = stem_of(o);
  typal::write_file(stem + ".domain.pddl", r.pddl.domain_text);
  typal::write_file(stem + ".problem.pddl", r.pddl.problem_text);
  typal::write_file(stem + ".meta", typal::meta_to_json(r.meta));

  size_t aux = 0, effects = 0;
  for (const auto& a : r.strips.actions) {
    if (a.kind != typal::StripsActionKind::Main) aux++;
    effects += a.effects.size();
  }
  std::cout << "state bits: " << r.strips.state_bits.size() << " (original "
            << r.strips.num_original_bits << ")\n"
            << "actions: " << r.strips.actions.size() << " (auxiliary " << aux << ")\n"
            << "effects: " << effects << "\n"
            << "wrote " << stem << ".domain.pddl, " << stem << ".problem.pddl, " << stem
            << ".meta\n";
  return kExitSolved;
}

int cmd_solve(Options& o) {
  typal::CompileResult r = typal::compile_file(o.cfg);
  print_dumps(r, o);
  typal::SearchLimits lim{o.cfg.state_cap};

  std::vector<typal::SourcePlanStep> plan;
  bool solved = false, capped = false;
  typal::SearchStats stats;
  if (o.level == "source") {
    auto res = typal::bfs_source(r.lowered, lim, o.cfg.domain_cap);
    solved = res.solved;
    capped = res.cap_exceeded;
    stats = res.stats;
    plan = std::move(res.plan);
  } else if (o.level == "bool") {
    auto res = typal::bfs_bool(r.boolean, lim);
    solved = res.solved;
    capped = res.cap_exceeded;
    stats = res.stats;
    if (solved) plan = typal::bool_plan_to_source(r.boolean, res.plan);
  } else {
    auto res = typal::bfs_strips(r.strips, lim);
    solved = res.solved;
    capped = res.cap_exceeded;
    stats = res.stats;
    if (solved) {
      auto steps = typal::to_plan_steps(r.strips, res.plan);
      plan = typal::reconstruct_plan(typal::PlanFile{steps}, r.strips, r.meta);
    }
  }
  std::cerr << "expanded " << stats.expanded << " states, frontier peak " << stats.frontier_peak
            << "\n";
  if (capped) {
    std::cerr << "state cap of " << o.cfg.state_cap << " exceeded\n";
    return kExitCapExceeded;
  }
  if (!solved) {
    std::cerr << "unsolvable\n";
    return kExitUnsolvable;
  }
  std::cout << typal::format_source_plan(plan);
  return kExitSolved;
}

int cmd_validate(Options& o, bool reconstruct) {
  typal::CompileResult r = typal::compile_file(o.cfg);
  typal::PlanFile plan = typal::parse_plan(typal::read_file(o.plan_path), r.strips);
  auto v = typal::validate_strips_plan(r.strips, plan.steps);
  if (!v.ok) {
    std::cout << "INVALID at step " << v.failing_step << ": " << v.reason << "\n";
    return kExitUnsolvable;
  }
  if (!reconstruct) {
    std::cout << "VALID, " << plan.steps.size() << " steps\n";
    return kExitSolved;
  }
  // Prefer the sidecar metadata when it is present next to the output stem.
  typal::ChainMetadata meta = r.meta;
  const std::string meta_path = stem_of(o) + ".meta";
  if (std::filesystem::exists(meta_path))
    meta = typal::meta_from_json(typal::read_file(meta_path));
  std::cout << typal::format_source_plan(typal::reconstruct_plan(plan, r.strips, meta));
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"typed planning model compiler"};
  app.require_subcommand(1);

  Options o;
  CLI::App* compile = app.add_subcommand("compile", "translate a model to PDDL");
  add_common(compile, o);
  CLI::App* solve = app.add_subcommand("solve", "solve with the built-in search");
  add_common(solve, o);
  solve->add_option("--level", o.level, "search level: source|bool|strips")
      ->check(CLI::IsMember({"source", "bool", "strips"}));
  CLI::App* validate = app.add_subcommand("validate", "check a plan file");
  add_common(validate, o);
  validate->add_option("plan", o.plan_path, "plan file")->required();
  CLI::App* reconstruct = app.add_subcommand("reconstruct", "map a plan back to source level");
  add_common(reconstruct, o);
  reconstruct->add_option("plan", o.plan_path, "plan file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitInputError : kExitSolved;
  }

  try {
    if (compile->parsed()) return cmd_compile(o);
    if (solve->parsed()) return cmd_solve(o);
    if (validate->parsed()) return cmd_validate(o, false);
    if (reconstruct->parsed()) return cmd_validate(o, true);
  } catch (const typal::CapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const typal::Error& e) {
    std::cerr << o.cfg.input_path;
    if (e.pos.valid()) std::cerr << ":" << e.pos.line << ":" << e.pos.col;
    std::cerr << ": error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
