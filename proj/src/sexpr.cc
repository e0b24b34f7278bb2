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

#include "reflexion/sexpr.h"

#include <cctype>
#include <charconv>
#include <mutex>
#include <ostream>
#include <unordered_set>
#include <utility>

namespace reflexion {
namespace {

struct InternTable {
  std::mutex mu;
  // Node-based, so element addresses are stable across rehashing.
  std::unordered_set<std::string> names;
};

InternTable& Interned() {
  static auto* table = new InternTable;
  return *table;
}

bool IsSymbolChar(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '-':
    case '+':
    case '*':
    case '/':
    case '.':
    case '<':
    case '>':
    case '=':
    case '?':
    case '!':
      return true;
    default:
      return false;
  }
}

bool IsDelimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
         c == ')' || c == '\'' || c == ';';
}

bool LooksLikeInteger(std::string_view token) {
  std::size_t i = (token[0] == '+' || token[0] == '-') ? 1 : 0;
  if (i == token.size()) return false;
  for (; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
  }
  return true;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool AtEnd() {
    SkipAtmosphere();
    return pos_ >= text_.size();
  }

  // Reads one datum with an explicit stack, so deeply nested input cannot
  // exhaust the host stack.
  Datum Next() {
    SkipAtmosphere();
    if (pos_ >= text_.size()) {
      throw ReadError("unexpected end of input", {pos_, pos_});
    }
    struct Frame {
      std::size_t start;
      bool quote;  // waiting for the single datum following '
      std::vector<Expr> items;
    };
    std::vector<Frame> stack;
    const std::size_t datum_start = pos_;

    while (true) {
      SkipAtmosphere();
      if (pos_ >= text_.size()) {
        const std::size_t open = stack.empty() ? pos_ : stack.back().start;
        throw ReadError(stack.back().quote ? "quote without a datum"
                                           : "unbalanced parentheses: "
                                             "missing ')'",
                        {open, pos_});
      }
      const char c = text_[pos_];
      Expr completed;
      if (c == '(' || c == '\'') {
        if (stack.size() >= kMaxReadNesting) {
          throw ReadError("nesting too deep", {pos_, pos_ + 1});
        }
        stack.push_back({pos_, c == '\'', {}});
        ++pos_;
        continue;
      }
      if (c == ')') {
        if (stack.empty() || stack.back().quote) {
          throw ReadError("unbalanced parentheses: unexpected ')'",
                          {pos_, pos_ + 1});
        }
        ++pos_;
        completed = Expr::List(stack.back().items);
        stack.pop_back();
      } else {
        completed = ReadAtom();
      }
      // Deliver the datum upward, closing any quote frames waiting on it.
      while (true) {
        if (stack.empty()) return {completed, {datum_start, pos_}};
        Frame& top = stack.back();
        if (!top.quote) {
          top.items.push_back(std::move(completed));
          break;
        }
        completed = Expr::List({Expr::Sym("QUOTE"), std::move(completed)});
        stack.pop_back();
      }
    }
  }

 private:
  void SkipAtmosphere() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Expr ReadAtom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !IsDelimiter(text_[pos_])) {
      if (!IsSymbolChar(text_[pos_])) {
        throw ReadError(
            "unexpected character '" + std::string(1, text_[pos_]) + "'",
            {pos_, pos_ + 1});
      }
      ++pos_;
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    if (LooksLikeInteger(token)) {
      std::int64_t value = 0;
      const char* first = token.data() + (token[0] == '+' ? 1 : 0);
      const char* last = token.data() + token.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last) {
        throw ReadError("integer out of range: " + std::string(token),
                        {start, pos_});
      }
      return Expr::Int(value);
    }
    if (std::isdigit(static_cast<unsigned char>(token[0]))) {
      throw ReadError("malformed number: " + std::string(token),
                      {start, pos_});
    }
    return Expr::Sym(token);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void PrintTo(const Expr& expr, std::string& out) {
  if (expr.IsNil()) {
    out += "NIL";
  } else if (expr.IsSymbol()) {
    out += expr.AsSymbol().name();
  } else if (expr.IsInteger()) {
    out += std::to_string(expr.AsInteger());
  } else {
    out += '(';
    bool first = true;
    for (const Expr& item : expr) {
      if (!first) out += ' ';
      first = false;
      PrintTo(item, out);
    }
    out += ')';
  }
}

}  // namespace

Symbol Symbol::Intern(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  InternTable& table = Interned();
  std::lock_guard<std::mutex> lock(table.mu);
  return Symbol(&*table.names.insert(std::move(upper)).first);
}

ReadError::ReadError(const std::string& message, SourceSpan span)
    : std::runtime_error(message + " at byte " + std::to_string(span.start)),
      span_(span) {}

Expr::Node::~Node() {
  auto* cell = std::get_if<ConsCell>(&value);
  if (cell == nullptr) return;
  std::shared_ptr<const Node> next = std::move(cell->tail.node_);
  while (next != nullptr && next.use_count() == 1) {
    // Sole owner: detach the successor before this cell is destroyed.
    auto* node = const_cast<Node*>(next.get());
    auto* next_cell = std::get_if<ConsCell>(&node->value);
    if (next_cell == nullptr) break;
    std::shared_ptr<const Node> after = std::move(next_cell->tail.node_);
    next = std::move(after);
  }
}

Expr Expr::Sym(Symbol symbol) {
  static const Symbol nil = Symbol::Intern("NIL");
  if (symbol == nil) return Expr();
  return Expr(std::make_shared<const Node>(symbol));
}

Expr Expr::Sym(std::string_view name) { return Sym(Symbol::Intern(name)); }

Expr Expr::Int(std::int64_t value) {
  return Expr(std::make_shared<const Node>(value));
}

Expr Expr::Cons(Expr head, Expr tail) {
  if (!tail.IsList()) {
    throw std::invalid_argument("cons tail must be a list, got " +
                                Print(tail));
  }
  return Expr(std::make_shared<const Node>(
      Node::ConsCell{std::move(head), std::move(tail)}));
}

Expr Expr::List(std::initializer_list<Expr> items) {
  return List(std::span<const Expr>(items.begin(), items.size()));
}

Expr Expr::List(std::span<const Expr> items) {
  Expr result;
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    result = Cons(*it, std::move(result));
  }
  return result;
}

bool Expr::IsAtom() const { return !IsCons(); }

bool Expr::IsSymbol() const {
  return IsNil() || std::holds_alternative<Symbol>(node_->value);
}

bool Expr::IsInteger() const {
  return !IsNil() && std::holds_alternative<std::int64_t>(node_->value);
}

bool Expr::IsCons() const {
  return !IsNil() && std::holds_alternative<Node::ConsCell>(node_->value);
}

Symbol Expr::AsSymbol() const {
  static const Symbol nil = Symbol::Intern("NIL");
  if (IsNil()) return nil;
  return std::get<Symbol>(node_->value);
}

std::int64_t Expr::AsInteger() const {
  return std::get<std::int64_t>(node_->value);
}

const Expr& Expr::Head() const {
  return std::get<Node::ConsCell>(node_->value).head;
}

const Expr& Expr::Tail() const {
  return std::get<Node::ConsCell>(node_->value).tail;
}

std::size_t Expr::Length() const {
  std::size_t n = 0;
  for (const Expr* cell = this; cell->IsCons(); cell = &cell->Tail()) ++n;
  return n;
}

Expr::Iterator Expr::begin() const {
  return IsCons() ? Iterator(this) : Iterator();
}

Expr::Iterator Expr::end() const { return Iterator(); }

bool operator==(const Expr& a, const Expr& b) {
  const Expr* x = &a;
  const Expr* y = &b;
  while (true) {
    if (x->node_ == y->node_) return true;
    if (x->IsNil() || y->IsNil()) return false;
    if (x->node_->value.index() != y->node_->value.index()) return false;
    if (!x->IsCons()) {
      if (x->IsSymbol()) return x->AsSymbol() == y->AsSymbol();
      return x->AsInteger() == y->AsInteger();
    }
    if (!(x->Head() == y->Head())) return false;
    x = &x->Tail();
    y = &y->Tail();
  }
}

std::string Print(const Expr& expr) {
  std::string out;
  PrintTo(expr, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Expr& expr) {
  return os << Print(expr);
}

Expr Read(std::string_view text) { return Reader(text).Next().expr; }

std::vector<Expr> ReadAll(std::string_view text) {
  std::vector<Expr> result;
  for (Datum& d : ReadAllWithSpans(text)) result.push_back(std::move(d.expr));
  return result;
}

std::vector<Datum> ReadAllWithSpans(std::string_view text) {
  Reader reader(text);
  std::vector<Datum> result;
  while (!reader.AtEnd()) result.push_back(reader.Next());
  return result;
}

}  // namespace reflexion
