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

#ifndef REFLEXION_CORE_EVAL_H_
#define REFLEXION_CORE_EVAL_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "reflexion/sexpr.h"

namespace reflexion {

// Association-list environment: a list of two-element lists searched front to
// back. Wraps the list itself, so snapshots share structure and converting to
// and from an Expr is free.
class Env {
 public:
  Env() = default;

  // Validates that `bindings` is a list of (symbol value) lists. Throws
  // std::invalid_argument otherwise.
  static Env FromExpr(const Expr& bindings);

  const Expr& AsExpr() const { return bindings_; }
  bool IsEmpty() const { return bindings_.IsNil(); }

  // Value of the first binding whose key is `eq` to `key`.
  std::optional<Expr> Find(const Expr& key) const;

  // A new environment with (key value) in front.
  Env Extend(const Expr& key, Expr value) const;

  friend bool operator==(const Env& a, const Env& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  friend class CoreEvaluator;
  friend class ReflexiveEvaluator;

  explicit Env(Expr bindings) : bindings_(std::move(bindings)) {}

  Expr bindings_;
};

enum class ErrorKind {
  kUnboundSymbol,
  kNotApplicable,
  kBadArity,
  kCarOfAtom,
  kCdrOfAtom,
  kCondFellThrough,
  kDepthExceeded,
  // `cons` onto a non-list atom: dotted pairs are not representable.
  kImproperList,
  // The upper step disagreed with the lower step it mirrors.
  kMirrorDivergence,
};

std::string_view ErrorKindName(ErrorKind kind);

class EvalError : public std::runtime_error {
 public:
  EvalError(ErrorKind kind, Expr expr, std::size_t step);

  ErrorKind kind() const { return kind_; }
  // The expression whose evaluation failed.
  const Expr& expr() const { return expr_; }
  // Number of eval-loop entries made when the failure was raised.
  std::size_t step() const { return step_; }

 private:
  ErrorKind kind_;
  Expr expr_;
  std::size_t step_;
};

struct Limits {
  // Maximum nesting of eval calls.
  std::size_t max_depth = 10'000;
};

// Optional instrumentation for EvalCore.
struct EvalProbe {
  // Incremented on every entry to the evaluator.
  std::size_t calls = 0;
  std::size_t max_depth_reached = 0;
};

// The unmodified interpretation loop: atom lookup, the seven primitives
// (quote atom eq car cdr cons cond), operator indirection through the
// environment, `label` self-binding and `lambda` application. Throws
// EvalError. Pure: inputs are never modified.
Expr EvalCore(const Expr& e, const Env& a, const Limits& limits = {},
              EvalProbe* probe = nullptr);

// Evaluates cond clauses in order and returns the body of the first one whose
// test is non-NIL.
Expr EvalCond(const Expr& clauses, const Env& a, const Limits& limits = {});
// Evaluates each element of `m` in order.
Expr EvalList(const Expr& m, const Env& a, const Limits& limits = {});

// The list helpers of the meta-circular evaluator, as plain functions over
// data. They mirror their object-language definitions exactly, including
// their behaviour on inputs the evaluator never produces.

// Value of the first (x value) binding in `y`, or NIL.
Expr Assoc(const Expr& x, const Expr& y);
// Zips two lists into two-element lists; on unequal lengths returns the
// zipped prefix.
Expr Pair(const Expr& x, const Expr& y);
Expr Append(const Expr& x, const Expr& y);
// Two-element list constructor used by Pair.
Expr List2(const Expr& x, const Expr& y);
Expr Null(const Expr& x);
Expr And(const Expr& x, const Expr& y);
Expr Not(const Expr& x);

// `eq` on values: equal atoms, or both NIL. Distinct non-empty lists are
// never eq.
bool Eq(const Expr& x, const Expr& y);

// The canonical truth value T.
const Expr& True();

}  // namespace reflexion

#endif  // REFLEXION_CORE_EVAL_H_
