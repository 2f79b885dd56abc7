// Copyright 2026 The thermosup Authors
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

// Command-line front end: configuration, execution and serialisation of every
// experiment. `Main` is the whole program; the executable only forwards argv.

#ifndef THERMOSUP_TOOLS_CLI_CLI_H_
#define THERMOSUP_TOOLS_CLI_CLI_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermosup/collision.h"
#include "thermosup/thermal.h"

namespace thermosup::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitResource = 4;

// Malformed input: unknown keys, unreadable numbers, bad config lines.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output file could not be written, or the config file could not be read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kGibbs, kTwoBath, kOneBath, kCollide, kHeatmap, kMaxVis };
enum class Format { kCsv, kJson };

std::string CommandName(Command command);

struct ExperimentConfig {
  Command command = Command::kGibbs;
  std::string out = "-";
  std::uint64_t seed = 1;
  Format format = Format::kCsv;

  // Shared spectrum: `dim` equally spaced levels `gap` apart, unless
  // `energies` is given.
  std::size_t dim = 2;
  double gap = 1.0;
  std::vector<double> energies;

  Temperature t = Temperature::FromKelvin(1.0);
  Temperature t0 = Temperature::FromKelvin(1.0);
  Temperature t1 = Temperature::FromKelvin(1.0);
  std::string probe = "ground";  // ground | excited | mixed | plus

  double phi = 0.0;
  double phi_c = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;
  std::string unitaries = "identity";  // identity | max | zero | random
  std::string ancilla_basis = "same";  // same | shift | random

  double eta = 0.8;
  std::size_t m = 1;
  double threshold = 1e-3;
  std::string scenario = "plain";  // plain | twobath | onebath
  std::string engine = "compact";  // compact | statevector
  std::size_t max_amplitudes = kDefaultMaxAmplitudes;

  GridSpec grid;
  std::size_t threads = 0;

  std::size_t trials = 20000;
  std::size_t refine = 4000;

  HamiltonianSpec Hamiltonian() const;
};

// Rectangular numeric table; the CSV contract with external plotters.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

struct ResultRecord {
  std::string experiment;
  nlohmann::ordered_json inputs;
  nlohmann::ordered_json outputs;
  Table table;
  nlohmann::ordered_json tolerances;
  nlohmann::ordered_json versions;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

// "inf" and "0" select the temperature markers; anything else is a kelvin
// value. Throws ParseError on text that is not a number.
Temperature ParseTemperature(const std::string& text);

// Flat `key = value` lines with `#` comments, as accepted by --config. Keys map
// to long flag names (underscores become dashes); returns `--key=value` tokens.
std::vector<std::string> ParseConfigText(const std::string& text);
std::vector<std::string> ReadConfigFile(const std::filesystem::path& path);

// Parses a command line without the program name. Throws ParseError.
ExperimentConfig ParseCommandLine(std::vector<std::string> args);

// Throws thermosup::InvalidArgument or ResourceExhausted from the library.
ResultRecord Execute(const ExperimentConfig& config);

nlohmann::ordered_json ToJson(const ResultRecord& record);
ResultRecord FromJson(const nlohmann::ordered_json& json);

// 17 significant digits, header line first.
void EmitCsv(const Table& table, std::ostream& out);
void EmitJson(const ResultRecord& record, std::ostream& out);
// Writes to `path`, or standard output for "-". Throws IoError.
void EmitCsv(const Table& table, const std::string& path);
void EmitJson(const ResultRecord& record, const std::string& path);

// Full program: returns the process exit code.
int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermosup::cli

#endif  // THERMOSUP_TOOLS_CLI_CLI_H_
