// Copyright 2026 The Reflexion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reflexion/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace reflexion::cli {
namespace {

using json = nlohmann::ordered_json;

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream contents;
  contents << in.rdbuf();
  return contents.str();
}

json SnapshotJson(const std::optional<ProgramSnapshot>& snapshot) {
  if (!snapshot) return nullptr;
  json j;
  j["program"] = Print(snapshot->top_level_expr);
  j["env"] = Print(snapshot->env_at_step.AsExpr());
  j["completed_steps"] = snapshot->completed_steps;
  return j;
}

void ReportHookFailures(const Trace& trace, std::ostream& err) {
  for (const StepRecord& record : trace) {
    if (record.hook_failure) {
      err << "warning: hook failed at step " << record.step_index << ": "
          << record.hook_failure->message << "\n";
    }
  }
}

void WriteTrace(const Trace& trace, OutputFormat format, std::ostream& out) {
  for (const StepRecord& record : trace) {
    out << (format == OutputFormat::kHuman ? FormatHuman(record)
                                           : FormatLine(record))
        << "\n";
  }
}

}  // namespace

Expr LoadProgram(const std::filesystem::path& path) {
  const std::string text = Slurp(path);
  std::vector<Datum> data = ReadAllWithSpans(text);
  if (data.empty()) {
    throw ReadError(path.string() + ": no expression", {0, text.size()});
  }
  if (data.size() > 1) {
    throw ReadError(path.string() + ": expected one expression, found " +
                        std::to_string(data.size()),
                    data[1].span);
  }
  return data.front().expr;
}

Env LoadEnv(const std::filesystem::path& path) {
  const std::string text = Slurp(path);
  try {
    std::vector<Expr> data = ReadAll(text);
    if (data.size() != 1) {
      throw ConfigError(path.string() +
                        ": environment file must hold one list, found " +
                        std::to_string(data.size()) + " expressions");
    }
    return Env::FromExpr(data.front());
  } catch (const ReadError& ex) {
    throw ConfigError(path.string() + ": " + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(path.string() + ": " + ex.what());
  }
}

std::string FormatHuman(const StepRecord& record) {
  return FormatStepLine(record.input_expr, record.input_env,
                        record.mirror_output.value_or(record.output_expr));
}

std::string FormatLine(const StepRecord& record) {
  json j;
  j["index"] = record.step_index;
  j["input"] = Print(record.input_expr);
  j["env"] = Print(record.input_env.AsExpr());
  j["output"] = Print(record.output_expr);
  j["mirror"] = record.mirror_output ? json(Print(*record.mirror_output))
                                     : json(nullptr);
  j["snapshot"] = SnapshotJson(record.global_snapshot);
  return j.dump();
}

std::string HumanFromLine(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
    const json& mirror = j.at("mirror");
    const std::string value = mirror.is_null()
                                  ? j.at("output").get<std::string>()
                                  : mirror.get<std::string>();
    return "(" + j.at("input").get<std::string>() + " " +
           j.at("env").get<std::string>() + ") -> " + value;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed trace record: ") +
                                ex.what());
  }
}

int RunFile(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Expr program;
  Env env;
  try {
    program = LoadProgram(config.program);
    if (config.env) env = LoadEnv(*config.env);
  } catch (const ReadError& ex) {
    err << "error: ParseError: " << ex.what() << "\n";
    return kExitParseError;
  } catch (const ConfigError& ex) {
    err << "error: ConfigError: " << ex.what() << "\n";
    return kExitConfigError;
  }

  std::ofstream trace_file;
  std::ostream* trace_out = &out;
  if (config.trace_out) {
    trace_file.open(*config.trace_out, std::ios::binary | std::ios::trunc);
    if (!trace_file) {
      err << "error: ConfigError: cannot write " << config.trace_out->string()
          << "\n";
      return kExitConfigError;
    }
    trace_out = &trace_file;
  }

  const Limits limits{config.max_depth};
  std::optional<Hook> hook;
  if (config.mode >= Mode::kAugmentation) hook = BuiltinMirrorHook(limits);
  RunResult result = EvalReflexive(program, env, config.mode, hook, limits);

  WriteTrace(result.trace, config.format, *trace_out);
  trace_out->flush();
  ReportHookFailures(result.trace, err);
  if (!result.ok()) {
    const EvalError& error = *result.error;
    err << "error: " << ErrorKindName(error.kind()) << ": "
        << Print(error.expr()) << " (step " << error.step() << ")\n";
    return kExitEvalError;
  }
  out << Print(*result.value) << "\n";
  return kExitOk;
}

std::string VerifyReport::Describe() const {
  std::ostringstream os;
  if (run_error) {
    os << "FAIL: run failed: " << *run_error;
  } else if (pass) {
    os << "PASS: " << actual_lines << " trace lines match";
  } else {
    os << "FAIL at step " << *first_divergence << " (expected "
       << expected_lines << " lines, got " << actual_lines << ")\n"
       << "  expected: " << (expected.empty() ? "<end of trace>" : expected)
       << "\n"
       << "  actual:   " << (actual.empty() ? "<end of trace>" : actual);
  }
  return os.str();
}

VerifyReport VerifyTranscript(const Expr& program, const Env& env,
                              const std::vector<std::string>& expected,
                              const Limits& limits) {
  RunResult result = EvalReflexive(program, env, Mode::kReflexion,
                                   BuiltinMirrorHook(limits), limits);
  VerifyReport report;
  report.expected_lines = expected.size();
  report.actual_lines = result.trace.size();
  if (!result.ok()) {
    report.run_error = result.error->what();
    return report;
  }
  const std::size_t n = std::max(expected.size(), result.trace.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::string want = i < expected.size() ? expected[i] : "";
    std::string got = i < result.trace.size() ? FormatHuman(result.trace[i])
                                              : "";
    if (want != got) {
      report.first_divergence = i;
      report.expected = std::move(want);
      report.actual = std::move(got);
      return report;
    }
  }
  report.pass = true;
  return report;
}

std::vector<std::string> LoadTranscript(const std::filesystem::path& path) {
  std::istringstream in(Slurp(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == ';') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

int VerifyFile(const RunConfig& config,
               const std::filesystem::path& expected_trace, std::ostream& out,
               std::ostream& err) {
  Expr program;
  Env env;
  std::vector<std::string> expected;
  try {
    program = LoadProgram(config.program);
    if (config.env) env = LoadEnv(*config.env);
    expected = LoadTranscript(expected_trace);
  } catch (const ReadError& ex) {
    err << "error: ParseError: " << ex.what() << "\n";
    return kExitParseError;
  } catch (const ConfigError& ex) {
    err << "error: ConfigError: " << ex.what() << "\n";
    return kExitConfigError;
  }
  VerifyReport report =
      VerifyTranscript(program, env, expected, Limits{config.max_depth});
  out << report.Describe() << "\n";
  if (report.run_error) return kExitEvalError;
  return report.pass ? kExitOk : kExitTranscriptMismatch;
}

}  // namespace reflexion::cli
