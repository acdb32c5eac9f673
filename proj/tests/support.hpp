// Copyright 2026 The bbmc Authors.
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

#ifndef BBMC_TESTS_SUPPORT_HPP
#define BBMC_TESTS_SUPPORT_HPP

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>
#include <string>

#include <bbmc/bbmc.hpp>

namespace bbmc::testing {

inline std::string sample_path(const std::string& name) {
  return std::string(BBMC_SAMPLES_DIR) + "/" + name;
}

inline HostSystem sample_system(const std::string& name) {
  return parse_system(read_file(sample_path(name)));
}

inline MealyMachine sample_component(const std::string& name) {
  return parse_component(read_file(sample_path(name)));
}

inline Tableau sample_tableau(const std::string& name) {
  return parse_tableau(read_file(sample_path(name)));
}

/// Session on a reference machine using M's symbol numbering.
inline ComponentSession session(const HostSystem& m, const MealyMachine& x, std::size_t bound,
                                bool cache = true) {
  SessionOptions o;
  o.cache = cache;
  return ComponentSession(std::make_unique<ReferenceBackend>(x), m.inputs(), m.outputs(), bound,
                          o);
}

inline ComponentSession session(const HostSystem& m, const MealyMachine& x) {
  return session(m, x, x.state_count());
}

/// Session with the machine's own numbering, for tests without a host.
inline ComponentSession bare_session(const MealyMachine& x, bool cache = true) {
  SessionOptions o;
  o.cache = cache;
  return ComponentSession(std::make_unique<ReferenceBackend>(x), x.inputs(), x.outputs(),
                          x.state_count(), o);
}

/// Forwards to a reference machine and remembers every transmitted
/// experiment, one entry per reset.
class RecordingBackend final : public ComponentBackend {
 public:
  RecordingBackend(const MealyMachine& x, std::vector<std::vector<std::string>>* sent)
      : inner_(x), sent_(sent) {}

  void reset() override {
    inner_.reset();
    sent_->emplace_back();
  }
  std::string step(const std::string& input) override {
    if (sent_->empty()) sent_->emplace_back();
    sent_->back().push_back(input);
    return inner_.step(input);
  }

 private:
  ReferenceBackend inner_;
  std::vector<std::vector<std::string>>* sent_;
};

inline ComponentSession recording_session(const HostSystem& m, const MealyMachine& x,
                                          std::size_t bound,
                                          std::vector<std::vector<std::string>>* sent,
                                          bool cache = true) {
  SessionOptions o;
  o.cache = cache;
  return ComponentSession(std::make_unique<RecordingBackend>(x, sent), m.inputs(), m.outputs(),
                          bound, o);
}

/// Runs the CLI, capturing standard output and the exit status.
struct CliRun {
  int status = -1;
  std::string out;
  std::string err;
};

inline CliRun run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() / ("bbmc_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  fs::path err = dir / ("err" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(BBMC_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

/// Value of a "key: value" line in a CLI report, or "" when absent.
inline std::string report_value(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  const std::string prefix = key + ": ";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    if (line.rfind(key + " ", 0) == 0 && (key == "RESULT" || key == "SOURCE")) {
      return line.substr(key.size() + 1);
    }
  }
  return {};
}

}  // namespace bbmc::testing

#endif  // BBMC_TESTS_SUPPORT_HPP
