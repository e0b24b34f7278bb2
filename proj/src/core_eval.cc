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

#include "reflexion/core_eval.h"

#include <utility>
#include <vector>

#include "eval_stack.h"
#include "symbols.h"

namespace reflexion {

using internal::IsKeyword;
using internal::Kw;
using internal::Nth;

const Expr& True() {
  static const Expr t = Expr::Sym("T");
  return t;
}

bool Eq(const Expr& x, const Expr& y) {
  if (x.IsCons() || y.IsCons()) return false;
  if (x.IsNil() || y.IsNil()) return x.IsNil() && y.IsNil();
  if (x.IsSymbol() && y.IsSymbol()) return x.AsSymbol() == y.AsSymbol();
  if (x.IsInteger() && y.IsInteger()) return x.AsInteger() == y.AsInteger();
  return false;
}

Expr Null(const Expr& x) { return x.IsNil() ? True() : Expr(); }

Expr And(const Expr& x, const Expr& y) {
  return (x.IsTruthy() && y.IsTruthy()) ? True() : Expr();
}

Expr Not(const Expr& x) { return x.IsTruthy() ? Expr() : True(); }

Expr List2(const Expr& x, const Expr& y) {
  return Expr::Cons(x, Expr::Cons(y, Expr()));
}

Expr Append(const Expr& x, const Expr& y) {
  std::vector<Expr> prefix(x.begin(), x.end());
  Expr result = y;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    result = Expr::Cons(*it, std::move(result));
  }
  return result;
}

Expr Pair(const Expr& x, const Expr& y) {
  std::vector<Expr> zipped;
  const Expr* xs = &x;
  const Expr* ys = &y;
  while (xs->IsCons() && ys->IsCons()) {
    zipped.push_back(List2(xs->Head(), ys->Head()));
    xs = &xs->Tail();
    ys = &ys->Tail();
  }
  return Expr::List(zipped);
}

Expr Assoc(const Expr& x, const Expr& y) {
  for (const Expr& binding : y) {
    // caar/cadar of a non-list binding read as NIL, as car/cdr of NIL do.
    const Expr key = binding.IsCons() ? binding.Head() : Expr();
    if (Eq(key, x)) return binding.Length() >= 2 ? Nth(binding, 1) : Expr();
  }
  return Expr();
}

Env Env::FromExpr(const Expr& bindings) {
  if (!bindings.IsList()) {
    throw std::invalid_argument("environment must be a list, got " +
                                Print(bindings));
  }
  for (const Expr& binding : bindings) {
    if (binding.Length() != 2 || !binding.Head().IsSymbol()) {
      throw std::invalid_argument(
          "environment binding must be a (symbol value) list, got " +
          Print(binding));
    }
  }
  return Env(bindings);
}

std::optional<Expr> Env::Find(const Expr& key) const {
  for (const Expr& binding : bindings_) {
    if (Eq(binding.Head(), key)) return Nth(binding, 1);
  }
  return std::nullopt;
}

Env Env::Extend(const Expr& key, Expr value) const {
  return Env(Expr::Cons(List2(key, value), bindings_));
}

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnboundSymbol:
      return "UnboundSymbol";
    case ErrorKind::kNotApplicable:
      return "NotApplicable";
    case ErrorKind::kBadArity:
      return "BadArity";
    case ErrorKind::kCarOfAtom:
      return "CarOfAtom";
    case ErrorKind::kCdrOfAtom:
      return "CdrOfAtom";
    case ErrorKind::kCondFellThrough:
      return "CondFellThrough";
    case ErrorKind::kDepthExceeded:
      return "DepthExceeded";
    case ErrorKind::kImproperList:
      return "ImproperList";
    case ErrorKind::kMirrorDivergence:
      return "MirrorDivergence";
  }
  return "Unknown";
}

EvalError::EvalError(ErrorKind kind, Expr expr, std::size_t step)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " +
                         Print(expr)),
      kind_(kind),
      expr_(std::move(expr)),
      step_(step) {}

class CoreEvaluator {
 public:
  CoreEvaluator(const Limits& limits, EvalProbe* probe)
      : limits_(limits), probe_(probe) {}

  Expr Eval(const Expr& e, const Env& a) {
    ++calls_;
    if (probe_ != nullptr) ++probe_->calls;
    Nesting nesting(*this, e);

    if (e.IsAtom()) return Lookup(e, a);

    const Expr& op = e.Head();
    const Expr& args = e.Tail();
    if (op.IsAtom()) {
      const auto& kw = Kw();
      if (op.IsSymbol()) {
        const Symbol s = op.AsSymbol();
        if (s == kw.quote) {
          RequireArity(e, 1);
          return args.Head();
        }
        if (s == kw.atom) {
          RequireArity(e, 1);
          return Eval(args.Head(), a).IsAtom() ? True() : Expr();
        }
        if (s == kw.eq) {
          RequireArity(e, 2);
          Expr x = Eval(args.Head(), a);
          Expr y = Eval(Nth(args, 1), a);
          return Eq(x, y) ? True() : Expr();
        }
        if (s == kw.car) {
          RequireArity(e, 1);
          Expr x = Eval(args.Head(), a);
          if (x.IsNil()) return x;
          if (x.IsAtom()) Fail(ErrorKind::kCarOfAtom, e);
          return x.Head();
        }
        if (s == kw.cdr) {
          RequireArity(e, 1);
          Expr x = Eval(args.Head(), a);
          if (x.IsNil()) return x;
          if (x.IsAtom()) Fail(ErrorKind::kCdrOfAtom, e);
          return x.Tail();
        }
        if (s == kw.cons) {
          RequireArity(e, 2);
          Expr x = Eval(args.Head(), a);
          Expr y = Eval(Nth(args, 1), a);
          if (!y.IsList()) Fail(ErrorKind::kImproperList, e);
          return Expr::Cons(std::move(x), std::move(y));
        }
        if (s == kw.cond) return Cond(args, a);
      }
      std::optional<Expr> fn = a.Find(op);
      if (!fn) Fail(ErrorKind::kNotApplicable, e);
      return Eval(Expr::Cons(*std::move(fn), args), a);
    }

    if (IsKeyword(op.Head(), Kw().label)) {
      if (op.Length() != 3) Fail(ErrorKind::kBadArity, e);
      return Eval(Expr::Cons(Nth(op, 2), args), a.Extend(Nth(op, 1), op));
    }
    if (IsKeyword(op.Head(), Kw().lambda)) {
      if (op.Length() != 3) Fail(ErrorKind::kBadArity, e);
      Expr values = List(args, a);
      return Eval(Nth(op, 2), Env(Append(Pair(Nth(op, 1), values),
                                          a.AsExpr())));
    }
    Fail(ErrorKind::kNotApplicable, e);
  }

  Expr Cond(const Expr& clauses, const Env& a) {
    for (const Expr& clause : clauses) {
      if (!clause.IsCons()) Fail(ErrorKind::kBadArity, clause);
      if (Eval(clause.Head(), a).IsTruthy()) {
        if (clause.Length() != 2) Fail(ErrorKind::kBadArity, clause);
        return Eval(Nth(clause, 1), a);
      }
    }
    Fail(ErrorKind::kCondFellThrough, Expr::Cons(Expr::Sym("COND"), clauses));
  }

  Expr List(const Expr& m, const Env& a) {
    std::vector<Expr> values;
    for (const Expr& item : m) values.push_back(Eval(item, a));
    return Expr::List(values);
  }

 private:
  class Nesting {
   public:
    Nesting(CoreEvaluator& ev, const Expr& e) : ev_(ev) {
      if (++ev_.depth_ > ev_.limits_.max_depth) {
        --ev_.depth_;
        ev_.Fail(ErrorKind::kDepthExceeded, e);
      }
      if (ev_.probe_ != nullptr && ev_.depth_ > ev_.probe_->max_depth_reached) {
        ev_.probe_->max_depth_reached = ev_.depth_;
      }
    }
    ~Nesting() { --ev_.depth_; }
    Nesting(const Nesting&) = delete;
    Nesting& operator=(const Nesting&) = delete;

   private:
    CoreEvaluator& ev_;
  };

  Expr Lookup(const Expr& e, const Env& a) {
    if (std::optional<Expr> value = a.Find(e)) return *std::move(value);
    // An unbound NIL or integer yields NIL, as assoc does.
    if (e.IsSymbol() && !e.IsNil()) Fail(ErrorKind::kUnboundSymbol, e);
    return Expr();
  }

  void RequireArity(const Expr& e, std::size_t n) {
    if (e.Length() != n + 1) Fail(ErrorKind::kBadArity, e);
  }

  [[noreturn]] void Fail(ErrorKind kind, const Expr& e) {
    throw EvalError(kind, e, calls_);
  }

  const Limits& limits_;
  EvalProbe* probe_;
  std::size_t depth_ = 0;
  std::size_t calls_ = 0;
};

Expr EvalCore(const Expr& e, const Env& a, const Limits& limits,
              EvalProbe* probe) {
  return internal::WithEvalStack(
      limits.max_depth, [&] { return CoreEvaluator(limits, probe).Eval(e, a); });
}

Expr EvalCond(const Expr& clauses, const Env& a, const Limits& limits) {
  return internal::WithEvalStack(limits.max_depth, [&] {
    return CoreEvaluator(limits, nullptr).Cond(clauses, a);
  });
}

Expr EvalList(const Expr& m, const Env& a, const Limits& limits) {
  return internal::WithEvalStack(limits.max_depth, [&] {
    return CoreEvaluator(limits, nullptr).List(m, a);
  });
}

}  // namespace reflexion
