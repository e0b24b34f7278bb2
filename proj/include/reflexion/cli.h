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

#ifndef REFLEXION_CLI_H_
#define REFLEXION_CLI_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reflexion/core_eval.h"
#include "reflexion/reflexive_loop.h"
#include "reflexion/sexpr.h"

namespace reflexion::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitEvalError = 1,
  kExitParseError = 2,
  kExitConfigError = 3,
  kExitTranscriptMismatch = 4,
};

enum class OutputFormat { kHuman, kLines };

struct RunConfig {
  std::filesystem::path program;
  std::optional<std::filesystem::path> env;
  Mode mode = Mode::kStandard;
  OutputFormat format = OutputFormat::kHuman;
  std::size_t max_depth = Limits{}.max_depth;
  // Trace records go to standard output when unset.
  std::optional<std::filesystem::path> trace_out;
};

// Input file problems that are not s-expression syntax errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a file holding exactly one expression. Throws ReadError (bad syntax,
// or not exactly one expression) or ConfigError (unreadable).
Expr LoadProgram(const std::filesystem::path& path);
// Reads a file holding one list of (symbol value) bindings. Throws
// ConfigError for anything else.
Env LoadEnv(const std::filesystem::path& path);

// "(<input> <env>) -> <output>", using the mirrored value when present.
std::string FormatHuman(const StepRecord& record);

// One JSON object per record with the fields index, input, env, output,
// mirror and snapshot. Expressions are canonical printed strings; absent
// optional fields are null.
std::string FormatLine(const StepRecord& record);

// Re-renders a FormatLine record as FormatHuman would. Throws
// std::invalid_argument on malformed input.
std::string HumanFromLine(std::string_view line);

// Loads, evaluates and reports. The final value's printed form is the last
// line written to `out`; diagnostics go to `err`. Returns an ExitCode.
int RunFile(const RunConfig& config, std::ostream& out, std::ostream& err);

struct VerifyReport {
  bool pass = false;
  std::size_t expected_lines = 0;
  std::size_t actual_lines = 0;
  // Step index of the first line that differs, when the traces disagree.
  std::optional<std::size_t> first_divergence;
  std::string expected;
  std::string actual;
  // Set when the run itself failed.
  std::optional<std::string> run_error;

  std::string Describe() const;
};

// Runs `program` in reflexion mode and compares its human-format trace with
// `expected`, line by line.
VerifyReport VerifyTranscript(const Expr& program, const Env& env,
                              const std::vector<std::string>& expected,
                              const Limits& limits = {});

// Expected-trace files hold one line per step; blank lines and lines starting
// with ';' are ignored.
std::vector<std::string> LoadTranscript(const std::filesystem::path& path);

// File-level driver for VerifyTranscript. Returns an ExitCode.
int VerifyFile(const RunConfig& config,
               const std::filesystem::path& expected_trace,
               std::ostream& out, std::ostream& err);

}  // namespace reflexion::cli

#endif  // REFLEXION_CLI_H_
