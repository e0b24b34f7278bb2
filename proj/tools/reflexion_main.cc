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

// Command-line front end: evaluates a program file in one of the five loop
// modes and prints the trace and the result.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "reflexion/cli.h"

int main(int argc, char** argv) {
  using reflexion::Mode;
  using reflexion::cli::OutputFormat;

  CLI::App app{"Run an s-expression program under an enriched interpreter."};
  reflexion::cli::RunConfig config;
  std::string env_path;
  std::string trace_out;
  std::string verify_path;

  const std::map<std::string, Mode> modes = {
      {"standard", Mode::kStandard},
      {"tracing", Mode::kTracing},
      {"mirroring", Mode::kMirroring},
      {"augmentation", Mode::kAugmentation},
      {"reflexion", Mode::kReflexion},
  };
  const std::map<std::string, OutputFormat> formats = {
      {"human", OutputFormat::kHuman},
      {"lines", OutputFormat::kLines},
  };

  std::string program_path;
  app.add_option("program", program_path, "File holding one expression")
      ->required();
  app.add_option("--mode", config.mode, "Interpretation loop variant")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--env", env_path, "File holding the environment a-list");
  app.add_option("--format", config.format, "Trace format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--max-depth", config.max_depth, "Eval nesting bound")
      ->check(CLI::PositiveNumber);
  app.add_option("--trace-out", trace_out, "Write trace records here");
  app.add_option("--verify", verify_path,
                 "Run in reflexion mode and compare the trace with this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return reflexion::cli::kExitConfigError;
  }

  config.program = program_path;
  if (!env_path.empty()) config.env = env_path;
  if (!trace_out.empty()) config.trace_out = trace_out;

  if (!verify_path.empty()) {
    return reflexion::cli::VerifyFile(config, verify_path, std::cout,
                                      std::cerr);
  }
  return reflexion::cli::RunFile(config, std::cout, std::cerr);
}
