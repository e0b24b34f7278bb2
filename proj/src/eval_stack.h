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

#ifndef REFLEXION_SRC_EVAL_STACK_H_
#define REFLEXION_SRC_EVAL_STACK_H_

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

namespace reflexion::internal {

// Host stack reserved per level of eval nesting. Release builds use a few
// hundred bytes; the rest covers unoptimised and instrumented builds.
inline constexpr std::size_t kStackBytesPerLevel = 2048;
inline constexpr std::size_t kStackSlackBytes = std::size_t{1} << 20;
// Nesting bounds this small run on the caller's stack.
inline constexpr std::size_t kInlineDepth = 256;

// Runs `body` on a fresh thread whose stack can hold `max_depth` levels of
// evaluation twice over (a run plus one mirrored sub-evaluation), and joins
// it. Throws std::system_error if the thread cannot be created.
void RunOnEvalStack(std::size_t max_depth, const std::function<void()>& body);

// Depth bound the current thread's stack was sized for, or 0.
std::size_t CurrentEvalStackDepth();

// Calls `fn` where a recursion of `max_depth` evaluator levels cannot exhaust
// the host stack, forwarding its result or exception.
template <class Fn>
std::invoke_result_t<Fn&> WithEvalStack(std::size_t max_depth, Fn fn) {
  if (max_depth <= kInlineDepth || max_depth <= CurrentEvalStackDepth()) {
    return fn();
  }
  using Result = std::invoke_result_t<Fn&>;
  std::optional<Result> result;
  std::exception_ptr error;
  RunOnEvalStack(max_depth, [&] {
    try {
      result.emplace(fn());
    } catch (...) {
      error = std::current_exception();
    }
  });
  if (error) std::rethrow_exception(error);
  return std::move(*result);
}

}  // namespace reflexion::internal

#endif  // REFLEXION_SRC_EVAL_STACK_H_
