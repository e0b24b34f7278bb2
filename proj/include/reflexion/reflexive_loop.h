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

#ifndef REFLEXION_REFLEXIVE_LOOP_H_
#define REFLEXION_REFLEXIVE_LOOP_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "reflexion/core_eval.h"
#include "reflexion/sexpr.h"

namespace reflexion {

// Variants of the interpretation loop, each enriching the previous one:
//
//   kStandard      lower step only
//   kTracing       + single introspection: every step is recorded
//   kMirroring     + single upper step: every step is re-executed
//   kAugmentation  upper step plus instructions inserted by a hook
//   kReflexion     + global introspection of the whole program
enum class Mode {
  kStandard,
  kTracing,
  kMirroring,
  kAugmentation,
  kReflexion,
};

// Lower-case name, e.g. "reflexion".
std::string_view ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view name);
inline constexpr Mode kAllModes[] = {Mode::kStandard, Mode::kTracing,
                                     Mode::kMirroring, Mode::kAugmentation,
                                     Mode::kReflexion};

// An instruction inserted into the upper step by a hook.
struct Emission {
  enum class Kind { kTraceLine, kMirrorResult, kCustom };

  Kind kind;
  std::variant<Expr, std::string> payload;

  friend bool operator==(const Emission&, const Emission&) = default;
};

// Result of global introspection: the whole target program plus where the
// run currently is.
struct ProgramSnapshot {
  Expr top_level_expr;
  Env env_at_step;
  // Records appended before the one carrying this snapshot.
  std::size_t completed_steps = 0;

  friend bool operator==(const ProgramSnapshot&,
                         const ProgramSnapshot&) = default;
};

struct HookFailure {
  std::string message;

  friend bool operator==(const HookFailure&, const HookFailure&) = default;
};

// One completed occurrence of the interpretation loop.
struct StepRecord {
  // Position in post-order: a step completes after all of its sub-steps.
  std::size_t step_index = 0;
  Expr input_expr;
  Env input_env;
  Expr output_expr;
  // Set in kMirroring and above; always equal to output_expr.
  std::optional<Expr> mirror_output;
  // Non-empty only in kAugmentation and above.
  std::vector<Emission> hook_emissions;
  // Set in kReflexion only.
  std::optional<ProgramSnapshot> global_snapshot;
  std::optional<HookFailure> hook_failure;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

// Append-only sequence of step records with consecutive indices from 0.
class Trace {
 public:
  const std::vector<StepRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const StepRecord& operator[](std::size_t i) const { return records_[i]; }
  const StepRecord& back() const { return records_.back(); }
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  friend class TraceWriter;

  std::vector<StepRecord> records_;
};

// Receives the trace so far, whose last record is the current step, and
// returns the instructions to insert. A hook sees the trace read-only and so
// cannot alter the program, its environment or any result.
using Hook = std::function<std::vector<Emission>(const Trace&)>;

struct RunResult {
  // Exactly one of value / error is set.
  std::optional<Expr> value;
  std::optional<EvalError> error;
  // Steps completed before the run ended; partial on error.
  Trace trace;

  bool ok() const { return value.has_value(); }
};

// Evaluates `e` in `a` with the loop enriched according to `mode`.
//
// Every sub-evaluation, cond tests and bodies and lambda arguments included,
// is a step and is recorded post-order. The result always equals EvalCore's.
// A hook is required from kAugmentation on (std::invalid_argument otherwise)
// and ignored below it. A hook that throws is recorded on its step as a
// HookFailure; the run continues.
RunResult EvalReflexive(const Expr& e, const Env& a, Mode mode,
                        std::optional<Hook> hook = std::nullopt,
                        const Limits& limits = {});

// Single introspection: reifies the instruction under execution and its
// environment as data.
std::pair<Expr, Env> LocalIntrospect(const Expr& current, const Env& a);

// Single upper step: re-executes a recorded step with the core evaluator.
// Throws EvalError.
Expr MirrorStep(const StepRecord& record, const Limits& limits = {});

struct RunState {
  Expr top_level_expr;
  Env env;
  std::size_t completed_steps = 0;
};

// Global introspection.
ProgramSnapshot GlobalIntrospect(const RunState& state);

// Appends the completed step (input, output) to `trace`, then runs `hook` on
// the extended trace and attaches its emissions to the new record.
Trace Augment(const std::pair<Expr, Env>& input, const Expr& output,
              const Hook& hook, Trace trace);

// The mirroring hook: re-executes the last step and emits its transcript line
// followed by the mirrored value.
Hook BuiltinMirrorHook(Limits limits = {});

// "(<input> <env>) -> <output>", as printed by the mirroring hook.
std::string FormatStepLine(const Expr& input, const Env& env,
                           const Expr& output);

}  // namespace reflexion

#endif  // REFLEXION_REFLEXIVE_LOOP_H_
