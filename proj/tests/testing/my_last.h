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

// The worked examples: atom lookup, car of a quoted list and the recursive
// my-last, with the environment that defines my-last.

#ifndef REFLEXION_TESTS_TESTING_MY_LAST_H_
#define REFLEXION_TESTS_TESTING_MY_LAST_H_

#include <string>

#include "reflexion/core_eval.h"
#include "reflexion/sexpr.h"

namespace reflexion::testing {

inline constexpr char kMyLastEnv[] = R"(
((my-last (label my-last
                 (lambda (x)
                   (cond
                     ((null. x) 'nil)
                     ((null. (cdr x)) (car x))
                     ('t (my-last (cdr x)))))))
 (null. (label null. (lambda (x) (eq x nil)))))
)";

inline Env MyLastEnv() { return Env::FromExpr(Read(kMyLastEnv)); }

// (my-last '(e0 e1 ... e{n-1})) with integer elements.
inline Expr MyLastCall(int n) {
  std::string list;
  for (int i = 0; i < n; ++i) list += " " + std::to_string(i);
  return Read("(my-last '(" + list + "))");
}

// Eval calls made by (my-last '(...)) on an n-element list, n >= 1, counted
// by hand from the evaluator's recursion: 4 for the call, label, lambda and
// argument; then the cond costs 18 for one element and 22 more per extra
// element ((null. x) = 7, (null. (cdr x)) = 8, 't = 1, the recursive call
// form 3 + (cdr x) 2, the cond itself 1).
inline std::size_t MyLastSteps(std::size_t n) { return 22 * n; }

}  // namespace reflexion::testing

#endif  // REFLEXION_TESTS_TESTING_MY_LAST_H_
