#pragma once

#include <set>
#include <string>

#include "typal/booleanize.hpp"
#include "typal/pddl.hpp"
#include "typal/strips.hpp"

namespace typal {

struct PipelineConfig {
  std::string input_path;
  std::string output_stem;  // defaults to the input path without extension
  int max_params = 8;
  bool simplify = true;
  uint64_t domain_cap = kDefaultDomainCap;
  uint64_t state_cap = 1'000'000;
  std::set<std::string> dumps;  // "ast" | "bool" | "strips"
  uint64_t seed = 0;            // reserved for random-model tooling
};

struct CompileResult {
  std::string name;
  SourceModel parsed;   // typechecked surface model
  SourceModel lowered;  // records/unions compiled away
  BoolModel boolean;
  StripsModel strips;
  ChainMetadata meta;
  PddlDocument pddl;
};

CompileResult compile_text(const std::string& text, const std::string& name,
                           const PipelineConfig& cfg = {});
CompileResult compile_file(const PipelineConfig& cfg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::string dump_bool_model(const BoolModel& bm);
std::string dump_strips_model(const StripsModel& sm);

}  // namespace typal
