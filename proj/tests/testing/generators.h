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

// Random expression and program generators for property tests.

#ifndef REFLEXION_TESTS_TESTING_GENERATORS_H_
#define REFLEXION_TESTS_TESTING_GENERATORS_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reflexion/sexpr.h"

namespace reflexion::testing {

// Nesting depth: 0 for atoms, 1 + deepest element for lists.
inline int Depth(const Expr& e) {
  if (!e.IsCons()) return 0;
  int deepest = 0;
  for (const Expr& item : e) deepest = std::max(deepest, Depth(item));
  return deepest + 1;
}

// Arbitrary s-expressions over the full symbol alphabet, including integers
// at the int64 extremes and symbols that look almost like numbers.
class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

  Expr Next(int max_depth = 5) { return Gen(max_depth); }

 private:
  Expr Gen(int depth) {
    if (depth == 0 || Chance(0.35)) return Atom();
    std::vector<Expr> items(Uniform(0, 4));
    for (Expr& item : items) item = Gen(depth - 1);
    return Expr::List(items);
  }

  Expr Atom() {
    switch (Uniform(0, 5)) {
      case 0:
        return Expr();
      case 1:
        return Expr::Int(static_cast<std::int64_t>(rng_()));
      case 2: {
        static constexpr std::int64_t kEdges[] = {
            0, -1, 1, INT64_MAX, INT64_MIN, 42};
        return Expr::Int(kEdges[Uniform(0, 5)]);
      }
      default:
        return Expr::Sym(SymbolName());
    }
  }

  std::string SymbolName() {
    static const std::string kFirst =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ-+*/.<>=?!";
    static const std::string kRest = kFirst + "0123456789";
    std::string name(1, kFirst[Uniform(0, kFirst.size() - 1)]);
    const int extra = Uniform(0, 6);
    for (int i = 0; i < extra; ++i) name += kRest[Uniform(0, kRest.size() - 1)];
    // A sign followed only by digits would read back as an integer.
    if ((name[0] == '+' || name[0] == '-') && name.size() > 1 &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
      name += 'x';
    }
    return name;
  }

  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::mt19937_64 rng_;
};

// Closed programs over the seven primitives, lambda, label and operator
// indirection, with variables drawn from a small pool. Programs never exceed
// the requested depth; many evaluate successfully, some fail.
class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint64_t seed) : rng_(seed) {}

  Expr Next(int max_depth = 6) { return Gen(max_depth, {}, {}); }

 private:
  using Scope = std::vector<Expr>;

  Expr Gen(int d, const Scope& vars, const Scope& fns) {
    if (d == 0) return Leaf(vars);
    // Weighted choice; forms that need more depth fall back to simpler ones.
    const int pick = Uniform(0, 99);
    if (pick < 12) return Leaf(vars);
    if (pick < 24) return Quote(d);
    if (pick < 42) return Unary(d, vars, fns);
    if (pick < 58) return Binary(d, vars, fns);
    if (pick < 72 && d >= 2) return Cond(d, vars, fns);
    if (pick < 84 && d >= 3) return LambdaApp(d, vars, fns);
    if (pick < 90 && d >= 4) return LabelApp(d, vars, fns);
    if (pick < 95 && d >= 4) return Indirection(d, vars, fns);
    if (pick < 100 && d >= 2 && !fns.empty()) {
      return Expr::List({Pick(fns), Gen(d - 1, vars, fns)});
    }
    return Quote(d);
  }

  Expr Leaf(const Scope& vars) {
    if (vars.empty() || Chance(0.1)) return Expr();
    return Pick(vars);
  }

  Expr Quote(int d) { return Expr::List({Sym("QUOTE"), Datum(d - 1)}); }

  Expr Datum(int d) {
    if (d == 0 || Chance(0.4)) {
      const int pick = Uniform(0, 9);
      if (pick == 0) return Expr();
      if (pick == 1) return Expr::Int(Uniform(0, 3));
      if (pick == 2) return Sym("T");
      return Sym(std::string(1, static_cast<char>('A' + Uniform(0, 3))));
    }
    std::vector<Expr> items(Uniform(0, 3));
    for (Expr& item : items) item = Datum(d - 1);
    return Expr::List(items);
  }

  Expr Unary(int d, const Scope& vars, const Scope& fns) {
    static const char* const kOps[] = {"ATOM", "CAR", "CDR"};
    return Expr::List({Sym(kOps[Uniform(0, 2)]), Gen(d - 1, vars, fns)});
  }

  Expr Binary(int d, const Scope& vars, const Scope& fns) {
    const bool is_cons = Chance(0.5);
    Expr first = Gen(d - 1, vars, fns);
    // Bias cons tails toward lists so fewer programs build dotted pairs.
    Expr second = (is_cons && d >= 3 && Chance(0.5))
                      ? Expr::List({Sym("QUOTE"), ListDatum(d - 2)})
                      : Gen(d - 1, vars, fns);
    return Expr::List({Sym(is_cons ? "CONS" : "EQ"), first, second});
  }

  Expr ListDatum(int d) {
    std::vector<Expr> items(Uniform(0, 3));
    for (Expr& item : items) item = Datum(std::max(d - 1, 0));
    return Expr::List(items);
  }

  Expr Cond(int d, const Scope& vars, const Scope& fns) {
    std::vector<Expr> form = {Sym("COND")};
    const int clauses = Uniform(1, 3);
    for (int i = 0; i < clauses; ++i) {
      form.push_back(
          Expr::List({Gen(d - 2, vars, fns), Gen(d - 2, vars, fns)}));
    }
    if (Chance(0.7)) {
      form.push_back(Expr::List({Expr::List({Sym("QUOTE"), Sym("T")}),
                                 Gen(d - 2, vars, fns)}));
    }
    return Expr::List(form);
  }

  // ((LAMBDA (p...) body) arg...)
  Expr LambdaApp(int d, const Scope& vars, const Scope& fns) {
    Scope params = Params();
    Scope inner = Extend(vars, params);
    Expr lambda = Expr::List(
        {Sym("LAMBDA"), Expr::List(params), Gen(d - 2, inner, fns)});
    std::vector<Expr> app = {lambda};
    std::size_t argc = params.size();
    if (Chance(0.05)) argc = Uniform(0, 3);
    for (std::size_t i = 0; i < argc; ++i) app.push_back(Gen(d - 1, vars, fns));
    return Expr::List(app);
  }

  // ((LABEL F (LAMBDA (X) body)) arg)
  Expr LabelApp(int d, const Scope& vars, const Scope& fns) {
    const Expr name = Sym(Chance(0.5) ? "F" : "G");
    Scope params = Params();
    Expr lambda =
        Expr::List({Sym("LAMBDA"), Expr::List(params),
                    Gen(d - 3, Extend(vars, params), Extend(fns, {name}))});
    std::vector<Expr> app = {Expr::List({Sym("LABEL"), name, lambda})};
    for (std::size_t i = 0; i < params.size(); ++i) {
      app.push_back(Gen(d - 1, vars, fns));
    }
    return Expr::List(app);
  }

  // ((LAMBDA (H) (H arg)) (QUOTE (LAMBDA (X) body))): the operator H is
  // looked up in the environment and replaced by its value.
  Expr Indirection(int d, const Scope& vars, const Scope& fns) {
    const Expr h = Sym("H");
    const Expr x = Sym("X");
    Expr fn = Expr::List({Sym("LAMBDA"), Expr::List({x}),
                          Gen(std::max(d - 4, 0), {x}, {})});
    Expr call = Expr::List({h, Gen(d - 3, vars, fns)});
    return Expr::List({Expr::List({Sym("LAMBDA"), Expr::List({h}), call}),
                       Expr::List({Sym("QUOTE"), fn})});
  }

  Scope Params() {
    static const char* const kPool[] = {"X", "Y", "Z"};
    Scope params = {Sym(kPool[Uniform(0, 2)])};
    if (Chance(0.4)) {
      Expr second = Sym(kPool[Uniform(0, 2)]);
      if (!(second == params[0])) params.push_back(second);
    }
    return params;
  }

  static Scope Extend(Scope scope, const Scope& more) {
    scope.insert(scope.end(), more.begin(), more.end());
    return scope;
  }

  static Expr Sym(const std::string& name) { return Expr::Sym(name); }

  const Expr& Pick(const Scope& scope) {
    return scope[Uniform(0, static_cast<int>(scope.size()) - 1)];
  }

  int Uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::mt19937_64 rng_;
};

}  // namespace reflexion::testing

#endif  // REFLEXION_TESTS_TESTING_GENERATORS_H_
