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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

namespace thermosup::cli {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = Main(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<double> Fields(const std::string& line) {
  std::vector<double> values;
  std::istringstream in(line);
  for (std::string item; std::getline(in, item, ',');) values.push_back(std::stod(item));
  return values;
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("thermosup_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliExamplesTest, TwoBathVisibility) {
  const RunResult r = Invoke({"run", "twobath", "--t0", "1", "--t1", "1", "--probe", "ground", "--phi", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "t0,t1,phi,visibility,phase,probability,max_visibility");
  EXPECT_NEAR(Fields(lines[1])[3], 0.534447, 5e-7);
}

TEST(CliExamplesTest, CollideThermalisesInOneStep) {
  const RunResult r = Invoke({"run", "collide", "--eta", "1", "--m", "1", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "collision,trace_distance");
  const auto row = Fields(lines[1]);
  EXPECT_EQ(row[0], 1.0);
  EXPECT_LT(row[1], 1e-12);
}

TEST(CliExamplesTest, OneBathHeatmap) {
  const RunResult r =
      Invoke({"run", "heatmap", "--scenario", "onebath", "--eta", "0.8", "--m", "3", "--grid", "25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 626u);
  EXPECT_EQ(lines[0], "t0,t1,visibility");
  int diagonal = 0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto row = Fields(lines[k]);
    ASSERT_EQ(row.size(), 3u);
    if (row[0] == row[1]) {
      ++diagonal;
      EXPECT_NEAR(row[2], 1.0, 1e-10);
    }
  }
  EXPECT_EQ(diagonal, 25);
}

TEST(CliOutputTest, EmptyGridGivesHeaderOnly) {
  const RunResult r = Invoke({"heatmap", "--grid", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "t0,t1,visibility\n");
}

TEST(CliOutputTest, CurveRowCountEqualsCollisions) {
  for (int m : {1, 3, 6}) {
    const RunResult r = Invoke({"collide", "--eta", "0.8", "--m", std::to_string(m)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Lines(r.out).size(), static_cast<std::size_t>(m) + 1);
  }
}

TEST(CliOutputTest, SeventeenSignificantDigits) {
  const RunResult r = Invoke({"gibbs", "--t", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "level,energy,weight");
  EXPECT_EQ(lines[1], "0,0,0.7310585786300049");
  EXPECT_EQ(lines[2], "1,1,0.2689414213699951");
}

TEST(CliOutputTest, JsonRoundTrip) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"twobath", "--t0", "inf", "--t1", "0.5", "--unitaries", "random",
                                 "--format", "json"},
        std::vector<std::string>{"onebath", "--dim", "3", "--ancilla-basis", "shift", "--format",
                                 "json"},
        std::vector<std::string>{"collide", "--scenario", "twobath", "--m", "3", "--t1", "2",
                                 "--format", "json"},
        std::vector<std::string>{"gibbs", "--t", "0", "--energies", "0,0.5,2", "--format", "json"}}) {
    const RunResult r = Invoke(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const ResultRecord parsed = FromJson(nlohmann::ordered_json::parse(r.out));
    ExperimentConfig config = ParseCommandLine(args);
    EXPECT_EQ(parsed, Execute(config)) << args.front();
    std::ostringstream again;
    EmitJson(parsed, again);
    EXPECT_EQ(again.str(), r.out);
  }
}

TEST(CliOutputTest, JsonRecordFields) {
  const RunResult r = Invoke({"collide", "--eta", "0.8", "--m", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto json = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(json.at("experiment"), "collide");
  EXPECT_EQ(json.at("outputs").at("collisions_to_threshold"), 4);
  EXPECT_EQ(json.at("outputs").at("records").size(), 5u);
  EXPECT_TRUE(json.at("tolerances").is_object());
  EXPECT_TRUE(json.at("versions").contains("thermosup"));
}

TEST(CliOutputTest, WritesToFile) {
  TempDir dir;
  const auto path = dir / "out.csv";
  const RunResult r = Invoke({"gibbs", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(ReadFile(path).rfind("level,energy,weight\n", 0), 0u);
}

TEST(CliOutputTest, Deterministic) {
  const std::vector<std::string> args{"maxvis", "--trials", "200", "--refine", "50",
                                      "--seed", "7", "--format", "json"};
  const RunResult a = Invoke(args);
  const RunResult b = Invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const RunResult c = Invoke({"maxvis", "--trials", "200", "--refine", "50", "--seed", "8",
                           "--format", "json"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliConfigTest, ParsesFlatKeyValueText) {
  const auto tokens = ParseConfigText(
      "# comment\n"
      "t0 = 0.5\n"
      "probe = \"mixed\"  # trailing\n"
      "\n"
      "ancilla_basis = shift\n"
      "energies = [0, 1, 3]\n");
  EXPECT_EQ(tokens, (std::vector<std::string>{"--t0=0.5", "--probe=mixed",
                                              "--ancilla-basis=shift", "--energies=0,1,3"}));
  EXPECT_THROW(ParseConfigText("missing equals\n"), ParseError);
  EXPECT_THROW(ParseConfigText("config = other.toml\n"), ParseError);
}

TEST(CliConfigTest, FlagsOverrideConfig) {
  TempDir dir;
  const auto path = dir / "exp.toml";
  WriteFile(path, "t0 = 2\nt1 = 0.5\nphi = 1.0\n");
  const ExperimentConfig from_file = ParseCommandLine({"twobath", "--config", path.string()});
  EXPECT_EQ(from_file.t0.kelvin(), 2.0);
  EXPECT_EQ(from_file.phi, 1.0);
  const ExperimentConfig overridden =
      ParseCommandLine({"twobath", "--t0", "3", "--config", path.string(), "--phi=0.25"});
  EXPECT_EQ(overridden.t0.kelvin(), 3.0);
  EXPECT_EQ(overridden.t1.kelvin(), 0.5);
  EXPECT_EQ(overridden.phi, 0.25);
}

TEST(CliConfigTest, TemperatureLiterals) {
  EXPECT_TRUE(ParseTemperature("inf").is_infinite());
  EXPECT_TRUE(ParseTemperature("0").is_zero());
  EXPECT_EQ(ParseTemperature("2.5").kelvin(), 2.5);
  EXPECT_THROW(ParseTemperature("warm"), ParseError);
}

TEST(CliExitCodeTest, ParseErrors) {
  EXPECT_EQ(Invoke({}).code, kExitParse);
  EXPECT_EQ(Invoke({"bogus"}).code, kExitParse);
  EXPECT_EQ(Invoke({"twobath", "--no-such-flag", "1"}).code, kExitParse);
  EXPECT_EQ(Invoke({"twobath", "--t0", "hot"}).code, kExitParse);
  EXPECT_EQ(Invoke({"twobath", "--probe", "sideways"}).code, kExitParse);
  EXPECT_EQ(Invoke({"gibbs", "--format", "xml"}).code, kExitParse);
  TempDir dir;
  const auto path = dir / "bad.toml";
  WriteFile(path, "unknown_key = 1\n");
  const RunResult r = Invoke({"gibbs", "--config", path.string()});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliExitCodeTest, DomainErrors) {
  EXPECT_EQ(Invoke({"twobath", "--t0", "-1"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"collide", "--eta", "1.5"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"collide", "--m", "0"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"gibbs", "--dim", "1"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"heatmap", "--t-min", "3", "--t-max", "1"}).code, kExitDomain);
}

TEST(CliExitCodeTest, ResourceAndIoErrors) {
  EXPECT_EQ(Invoke({"gibbs", "--out", "/nonexistent-dir/x.csv"}).code, kExitResource);
  EXPECT_EQ(Invoke({"gibbs", "--config", "/nonexistent-dir/x.toml"}).code, kExitResource);
  ::setenv("THERMOSUP_MAX_DIM", "64", 1);
  EXPECT_EQ(Invoke({"collide", "--engine", "statevector", "--m", "3"}).code, kExitResource);
  EXPECT_EQ(Invoke({"collide", "--m", "3"}).code, kExitOk);
  ::setenv("THERMOSUP_MAX_DIM", "lots", 1);
  EXPECT_EQ(Invoke({"collide", "--m", "3"}).code, kExitParse);
  ::unsetenv("THERMOSUP_MAX_DIM");
}

TEST(CliExitCodeTest, HelpSucceeds) {
  const RunResult r = Invoke({"twobath", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--t0"), std::string::npos);
}

}  // namespace
}  // namespace thermosup::cli
