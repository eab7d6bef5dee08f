// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ocrs: run one experiment from a JSON config.
//
// Exit codes: 0 success, 1 invalid config, 2 verification failure,
// 3 internal error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ocrs/experiment.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerification = 2;
constexpr int kExitInternal = 3;

ocrs::Json LoadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ocrs::ConfigError("cannot open config " + path);
  try {
    return ocrs::Json::parse(in);
  } catch (const ocrs::Json::parse_error& e) {
    throw ocrs::ConfigError("config " + path + " is not valid JSON: " +
                            e.what());
  }
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("short write to " + path);
}

std::string CsvPathFor(const std::string& json_path) {
  std::filesystem::path p(json_path);
  p.replace_extension(".csv");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample-based online contention resolution experiments"};
  std::string config_path;
  std::string mode;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out_path;
  std::string csv_path;
  int threads = 0;
  bool timing = false;
  app.add_option("--config", config_path, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* mode_opt = app.add_option("--mode", mode, "Override the config mode");
  auto* seed_opt = app.add_option("--seed", seed, "Override the master seed");
  auto* trials_opt =
      app.add_option("--trials", trials, "Override the trial count")
          ->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out_path, "Report path (JSON)");
  app.add_option("--csv", csv_path,
                 "Selectability table path (ocrs mode; defaults next to "
                 "--out)");
  auto* threads_opt =
      app.add_option("--threads", threads, "Worker threads (0 = all cores)")
          ->envname("OCRS_THREADS")
          ->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", timing, "Record wall-clock time in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    ocrs::Json raw = LoadJson(config_path);
    if (!raw.is_object()) throw ocrs::ConfigError("config must be an object");
    if (!mode_opt->empty()) raw["mode"] = mode;
    if (!seed_opt->empty()) raw["seed"] = seed;
    if (!trials_opt->empty()) raw["trials"] = trials;
    if (!out_opt->empty()) raw["output"] = out_path;
    if (!threads_opt->empty()) raw["threads"] = threads;
    if (timing) raw["record_wall_clock"] = true;

    const ocrs::ExperimentConfig config = ocrs::ParseConfig(raw);
    const ocrs::RunOutcome outcome = ocrs::Run(config);
    const std::string report = outcome.report.dump(2) + "\n";
    if (config.output.empty()) {
      std::cout << report;
    } else {
      WriteFile(config.output, report);
    }
    if (!outcome.csv.empty()) {
      if (csv_path.empty() && !config.output.empty()) {
        csv_path = CsvPathFor(config.output);
      }
      if (!csv_path.empty()) WriteFile(csv_path, outcome.csv);
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::cerr << "ocrs: " << ocrs::ModeName(config.mode) << " "
              << (outcome.passed ? "passed" : "FAILED") << " in "
              << elapsed.count() << " s\n";
    return outcome.passed ? kExitOk : kExitVerification;
  } catch (const ocrs::ConfigError& e) {
    std::cerr << "ocrs: invalid config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "ocrs: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
