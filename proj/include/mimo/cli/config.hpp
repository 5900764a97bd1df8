// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration: a sectioned key = value text file.
//
//   # comment
//   [plan]
//   scheme = s24d            # s22d s22t s23t s23d s24d ex1..ex8 custom
//   band = -25 25            # N1 N2
//   L = 26                   # optional override
//
//   [system]                 # required for scheme = custom
//   M = 2
//   R = 2
//   h11 = 1                  # channel responses, 1-based (m, r)
//   h12 = d1
//   alpha = 0.0456           # translation parameter for preset schemes
//
//   [signals]
//   preset = bl51            # bl51 hardy custom
//   K = 1024                 # truncation for non-band-limited inputs
//   x1 = -1:0.5:0, 0:1:0     # custom inputs: n:re:im, ...
//
//   [reconstruct]
//   mode = pseudoinverse     # pseudoinverse explicit
//   output_counts = 416 416
//
//   [noise]
//   sigma = 0.05
//   seed = 7
//   realizations = 64
//   postfilter = 26
//   sigma_list = 0.01 0.02 0.03
//
//   [sweep]
//   L_list = 11 15 19 23
//
//   [output]
//   dir = out

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mimo/reconstruct.hpp"
#include "mimo/spectrum.hpp"

namespace mimo::cli {

struct ExperimentConfig {
  // [plan]
  std::string scheme = "s22t";
  int N1 = -25;
  int N2 = 25;
  std::optional<int> L_override;
  // [system]
  int M = 0;
  int R = 0;
  std::vector<std::string> responses;  // row-major, M * R entries
  std::optional<double> alpha;
  // [signals]
  std::string signals = "bl51";
  std::optional<int> truncation;
  std::vector<SpectrumSignal> custom_inputs;
  // [reconstruct]
  InverseSource mode = InverseSource::Pseudoinverse;
  std::vector<int> output_counts;
  // [noise]
  std::optional<double> sigma;
  std::uint64_t seed = 0;
  int realizations = 1;
  std::optional<int> postfilter;
  std::vector<double> sigma_list;
  // [sweep]
  std::vector<int> L_list;
  // [output]
  std::filesystem::path output_dir = "out";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses config text. `source` names the origin in diagnostics, which read
/// "source:line: [section] key: message". Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");

ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

}  // namespace mimo::cli
