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

#include "reflexion/reflexive_loop.h"

#include <exception>
#include <stdexcept>

#include "eval_stack.h"
#include "symbols.h"

namespace reflexion {

using internal::IsKeyword;
using internal::Kw;
using internal::Nth;

// The only code allowed to grow a Trace.
class TraceWriter {
 public:
  static void Append(Trace& trace, StepRecord record) {
    record.step_index = trace.records_.size();
    trace.records_.push_back(std::move(record));
  }

  // Runs `hook` on the trace whose last record is the current step and
  // attaches what it returns to that record.
  static void RunHook(Trace& trace, const Hook& hook) {
    std::vector<Emission> emissions;
    std::optional<HookFailure> failure;
    try {
      emissions = hook(trace);
    } catch (const std::exception& ex) {
      failure = HookFailure{ex.what()};
    } catch (...) {
      failure = HookFailure{"unknown exception"};
    }
    StepRecord& current = trace.records_.back();
    current.hook_emissions = std::move(emissions);
    current.hook_failure = std::move(failure);
  }
};

class ReflexiveEvaluator {
 public:
  ReflexiveEvaluator(const Expr& program, Mode mode, const Hook* hook,
                     const Limits& limits)
      : program_(program), mode_(mode), hook_(hook), limits_(limits) {}

  Expr Eval(const Expr& e, const Env& a) {
    ++entries_;
    Nesting nesting(*this, e);
    Expr output = LowerStep(e, a);
    if (mode_ >= Mode::kTracing) Complete(e, a, output);
    return output;
  }

  Trace TakeTrace() { return std::move(trace_); }

 private:
  class Nesting {
   public:
    Nesting(ReflexiveEvaluator& ev, const Expr& e) : ev_(ev) {
      if (++ev_.depth_ > ev_.limits_.max_depth) {
        --ev_.depth_;
        ev_.Fail(ErrorKind::kDepthExceeded, e);
      }
    }
    ~Nesting() { --ev_.depth_; }
    Nesting(const Nesting&) = delete;
    Nesting& operator=(const Nesting&) = delete;

   private:
    ReflexiveEvaluator& ev_;
  };

  Expr LowerStep(const Expr& e, const Env& a) {
    if (e.IsAtom()) {
      if (std::optional<Expr> value = a.Find(e)) return *std::move(value);
      if (e.IsSymbol() && !e.IsNil()) Fail(ErrorKind::kUnboundSymbol, e);
      return Expr();
    }

    const Expr& op = e.Head();
    const Expr& args = e.Tail();
    const auto& kw = Kw();
    if (op.IsAtom()) {
      if (op.IsSymbol()) {
        const Symbol s = op.AsSymbol();
        if (s == kw.quote) {
          Arity(e, 1);
          return args.Head();
        }
        if (s == kw.atom) {
          Arity(e, 1);
          return Eval(args.Head(), a).IsAtom() ? True() : Expr();
        }
        if (s == kw.eq) {
          Arity(e, 2);
          Expr x = Eval(args.Head(), a);
          Expr y = Eval(Nth(args, 1), a);
          return Eq(x, y) ? True() : Expr();
        }
        if (s == kw.car || s == kw.cdr) {
          Arity(e, 1);
          Expr x = Eval(args.Head(), a);
          if (x.IsNil()) return x;
          if (x.IsAtom()) {
            Fail(s == kw.car ? ErrorKind::kCarOfAtom : ErrorKind::kCdrOfAtom,
                 e);
          }
          return s == kw.car ? x.Head() : x.Tail();
        }
        if (s == kw.cons) {
          Arity(e, 2);
          Expr x = Eval(args.Head(), a);
          Expr y = Eval(Nth(args, 1), a);
          if (!y.IsList()) Fail(ErrorKind::kImproperList, e);
          return Expr::Cons(std::move(x), std::move(y));
        }
        if (s == kw.cond) {
          for (const Expr& clause : args) {
            if (!clause.IsCons()) Fail(ErrorKind::kBadArity, clause);
            if (!Eval(clause.Head(), a).IsTruthy()) continue;
            if (clause.Length() != 2) Fail(ErrorKind::kBadArity, clause);
            return Eval(Nth(clause, 1), a);
          }
          Fail(ErrorKind::kCondFellThrough, e);
        }
      }
      std::optional<Expr> fn = a.Find(op);
      if (!fn) Fail(ErrorKind::kNotApplicable, e);
      return Eval(Expr::Cons(*std::move(fn), args), a);
    }

    if (IsKeyword(op.Head(), kw.label)) {
      if (op.Length() != 3) Fail(ErrorKind::kBadArity, e);
      return Eval(Expr::Cons(Nth(op, 2), args), a.Extend(Nth(op, 1), op));
    }
    if (IsKeyword(op.Head(), kw.lambda)) {
      if (op.Length() != 3) Fail(ErrorKind::kBadArity, e);
      std::vector<Expr> values;
      for (const Expr& arg : args) values.push_back(Eval(arg, a));
      Env body_env(Append(Pair(Nth(op, 1), Expr::List(values)), a.AsExpr()));
      return Eval(Nth(op, 2), body_env);
    }
    Fail(ErrorKind::kNotApplicable, e);
  }

  // Everything the enriched loop does once the lower step has its output.
  [[gnu::noinline]] void Complete(const Expr& e, const Env& a,
                                  const Expr& output) {
    auto [input_expr, input_env] = LocalIntrospect(e, a);
    StepRecord record;
    record.input_expr = std::move(input_expr);
    record.input_env = std::move(input_env);
    record.output_expr = output;
    if (mode_ >= Mode::kMirroring) record.mirror_output = UpperStep(record);
    if (mode_ == Mode::kReflexion) {
      record.global_snapshot = GlobalIntrospect(
          {program_, record.input_env, trace_.size()});
    }
    TraceWriter::Append(trace_, std::move(record));
    if (mode_ >= Mode::kAugmentation) TraceWriter::RunHook(trace_, *hook_);
  }

  Expr UpperStep(const StepRecord& record) {
    try {
      Expr mirrored = MirrorStep(record, limits_);
      if (mirrored == record.output_expr) return mirrored;
    } catch (const EvalError&) {
    }
    Fail(ErrorKind::kMirrorDivergence, record.input_expr);
  }

  void Arity(const Expr& e, std::size_t n) {
    if (e.Length() != n + 1) Fail(ErrorKind::kBadArity, e);
  }

  [[noreturn]] void Fail(ErrorKind kind, const Expr& e) {
    throw EvalError(kind, e, entries_);
  }

  const Expr& program_;
  const Mode mode_;
  const Hook* hook_;
  const Limits& limits_;
  std::size_t depth_ = 0;
  std::size_t entries_ = 0;
  Trace trace_;
};

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kStandard:
      return "standard";
    case Mode::kTracing:
      return "tracing";
    case Mode::kMirroring:
      return "mirroring";
    case Mode::kAugmentation:
      return "augmentation";
    case Mode::kReflexion:
      return "reflexion";
  }
  return "unknown";
}

std::optional<Mode> ParseMode(std::string_view name) {
  for (Mode mode : kAllModes) {
    if (ModeName(mode) == name) return mode;
  }
  return std::nullopt;
}

RunResult EvalReflexive(const Expr& e, const Env& a, Mode mode,
                        std::optional<Hook> hook, const Limits& limits) {
  if (mode >= Mode::kAugmentation && !(hook && *hook)) {
    throw std::invalid_argument(std::string(ModeName(mode)) +
                                " mode requires a hook");
  }
  return internal::WithEvalStack(limits.max_depth, [&] {
    ReflexiveEvaluator evaluator(e, mode, hook ? &*hook : nullptr, limits);
    RunResult result;
    try {
      result.value = evaluator.Eval(e, a);
    } catch (const EvalError& err) {
      result.error = err;
    }
    result.trace = evaluator.TakeTrace();
    return result;
  });
}

std::pair<Expr, Env> LocalIntrospect(const Expr& current, const Env& a) {
  return {current, a};
}

Expr MirrorStep(const StepRecord& record, const Limits& limits) {
  return EvalCore(record.input_expr, record.input_env, limits);
}

ProgramSnapshot GlobalIntrospect(const RunState& state) {
  return {state.top_level_expr, state.env, state.completed_steps};
}

Trace Augment(const std::pair<Expr, Env>& input, const Expr& output,
              const Hook& hook, Trace trace) {
  StepRecord record;
  record.input_expr = input.first;
  record.input_env = input.second;
  record.output_expr = output;
  TraceWriter::Append(trace, std::move(record));
  TraceWriter::RunHook(trace, hook);
  return trace;
}

Hook BuiltinMirrorHook(Limits limits) {
  return [limits](const Trace& trace) {
    const StepRecord& current = trace.back();
    Expr mirrored = MirrorStep(current, limits);
    return std::vector<Emission>{
        {Emission::Kind::kTraceLine,
         FormatStepLine(current.input_expr, current.input_env, mirrored)},
        {Emission::Kind::kMirrorResult, mirrored},
    };
  };
}

std::string FormatStepLine(const Expr& input, const Env& env,
                           const Expr& output) {
  return Print(List2(input, env.AsExpr())) + " -> " + Print(output);
}

}  // namespace reflexion
