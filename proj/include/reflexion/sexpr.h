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

#ifndef REFLEXION_SEXPR_H_
#define REFLEXION_SEXPR_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <iterator>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace reflexion {

// An interned, upper-case symbol name. Two symbols are equal iff they were
// interned from the same name (case-insensitively), so comparison is a
// pointer compare.
class Symbol {
 public:
  // Upper-cases `name` and returns the unique symbol for it.
  static Symbol Intern(std::string_view name);

  std::string_view name() const { return *name_; }

  friend bool operator==(Symbol a, Symbol b) { return a.name_ == b.name_; }

 private:
  explicit Symbol(const std::string* name) : name_(name) {}

  const std::string* name_;
};

// Byte offsets into the text handed to the reader; `start <= end`.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ReadError : public std::runtime_error {
 public:
  ReadError(const std::string& message, SourceSpan span);

  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

// Immutable s-expression: a symbol atom, an integer atom, or a proper list.
//
// The default-constructed value is NIL, which is at once the empty list and
// the symbol NIL. Lists are persistent cons chains, so `Tail()` and copies are
// O(1) and share structure.
class Expr {
 public:
  class Iterator;

  Expr() = default;

  static Expr Sym(Symbol symbol);
  static Expr Sym(std::string_view name);
  static Expr Int(std::int64_t value);
  // `tail` must be a list (NIL or a cons); throws std::invalid_argument
  // otherwise, since dotted pairs are not representable.
  static Expr Cons(Expr head, Expr tail);
  static Expr List(std::initializer_list<Expr> items);
  static Expr List(std::span<const Expr> items);

  bool IsNil() const { return node_ == nullptr; }
  // NIL, symbols and integers are atoms; every non-empty list is not.
  bool IsAtom() const;
  // True for NIL as well.
  bool IsSymbol() const;
  bool IsInteger() const;
  bool IsCons() const;
  bool IsList() const { return IsNil() || IsCons(); }
  // Any value other than NIL.
  bool IsTruthy() const { return !IsNil(); }

  // Preconditions: IsSymbol() / IsInteger() / IsCons() respectively.
  Symbol AsSymbol() const;
  std::int64_t AsInteger() const;
  const Expr& Head() const;
  const Expr& Tail() const;

  // Number of elements of a list; 0 for atoms.
  std::size_t Length() const;

  Iterator begin() const;
  Iterator end() const;

  // Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

  // Identity of the underlying node; equal identities imply equal values.
  const void* identity() const { return node_.get(); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Expr::Node {
  struct ConsCell {
    Expr head;
    Expr tail;
  };

  explicit Node(Symbol s) : value(s) {}
  explicit Node(std::int64_t i) : value(i) {}
  explicit Node(ConsCell c) : value(std::move(c)) {}
  // Releases long cdr chains iteratively instead of recursing once per cell.
  ~Node();

  std::variant<Symbol, std::int64_t, ConsCell> value;
};

// Forward iterator over the elements of a list.
class Expr::Iterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = Expr;
  using difference_type = std::ptrdiff_t;
  using pointer = const Expr*;
  using reference = const Expr&;

  Iterator() = default;
  explicit Iterator(const Expr* cell) : cell_(cell) {}

  reference operator*() const { return cell_->Head(); }
  pointer operator->() const { return &cell_->Head(); }
  Iterator& operator++() {
    cell_ = &cell_->Tail();
    if (cell_->IsNil()) cell_ = nullptr;
    return *this;
  }
  Iterator operator++(int) {
    Iterator copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const Iterator& a, const Iterator& b) {
    return a.cell_ == b.cell_;
  }

 private:
  const Expr* cell_ = nullptr;
};

// Canonical printed form: upper-case symbols, `NIL` for the empty list,
// single spaces between elements, no quote re-sugaring.
std::string Print(const Expr& expr);
std::ostream& operator<<(std::ostream& os, const Expr& expr);

// A top-level datum and where it came from.
struct Datum {
  Expr expr;
  SourceSpan span;
};

// Reads the first complete datum; anything after it is ignored.
Expr Read(std::string_view text);
// Reads every datum in `text`, skipping whitespace and `;` comments.
std::vector<Expr> ReadAll(std::string_view text);
std::vector<Datum> ReadAllWithSpans(std::string_view text);

// Maximum list nesting accepted by the reader.
inline constexpr std::size_t kMaxReadNesting = 10'000;

}  // namespace reflexion

#endif  // REFLEXION_SEXPR_H_
