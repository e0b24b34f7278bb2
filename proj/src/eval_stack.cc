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

#include "eval_stack.h"

#include <pthread.h>

#include <cerrno>
#include <system_error>

namespace reflexion::internal {
namespace {

thread_local std::size_t eval_stack_depth = 0;

struct ThreadArgs {
  std::size_t max_depth;
  const std::function<void()>* body;
};

void* ThreadMain(void* raw) {
  auto* args = static_cast<ThreadArgs*>(raw);
  eval_stack_depth = args->max_depth;
  (*args->body)();
  return nullptr;
}

}  // namespace

std::size_t CurrentEvalStackDepth() { return eval_stack_depth; }

void RunOnEvalStack(std::size_t max_depth,
                    const std::function<void()>& body) {
  const std::size_t bytes =
      2 * max_depth * kStackBytesPerLevel + kStackSlackBytes;
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  int rc = pthread_attr_setstacksize(&attr, bytes);
  ThreadArgs args{max_depth, &body};
  pthread_t thread;
  if (rc == 0) rc = pthread_create(&thread, &attr, &ThreadMain, &args);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    throw std::system_error(rc, std::generic_category(),
                            "cannot create evaluation thread");
  }
  pthread_join(thread, nullptr);
}

}  // namespace reflexion::internal
