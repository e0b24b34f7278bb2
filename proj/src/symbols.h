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

#ifndef REFLEXION_SRC_SYMBOLS_H_
#define REFLEXION_SRC_SYMBOLS_H_

#include "reflexion/sexpr.h"

namespace reflexion::internal {

// Operator names recognised by the evaluators.
struct Keywords {
  Symbol quote = Symbol::Intern("QUOTE");
  Symbol atom = Symbol::Intern("ATOM");
  Symbol eq = Symbol::Intern("EQ");
  Symbol car = Symbol::Intern("CAR");
  Symbol cdr = Symbol::Intern("CDR");
  Symbol cons = Symbol::Intern("CONS");
  Symbol cond = Symbol::Intern("COND");
  Symbol label = Symbol::Intern("LABEL");
  Symbol lambda = Symbol::Intern("LAMBDA");
};

inline const Keywords& Kw() {
  static const Keywords keywords;
  return keywords;
}

inline bool IsKeyword(const Expr& e, Symbol s) {
  return e.IsSymbol() && e.AsSymbol() == s;
}

// Element `i` (0-based) of a list known to be long enough.
inline const Expr& Nth(const Expr& list, std::size_t i) {
  const Expr* cell = &list;
  for (; i > 0; --i) cell = &cell->Tail();
  return cell->Head();
}

}  // namespace reflexion::internal

#endif  // REFLEXION_SRC_SYMBOLS_H_
