// Copyright 2026 The qroute Authors
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

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qroute/arch_graph.hpp"

namespace qroute::testing {

inline std::filesystem::path source_dir() { return QROUTE_SOURCE_DIR; }

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) {
  return read_text(source_dir() / "fixtures" / "revlib" / (name + ".qasm"));
}

/// The six-node directed test graph of the worked routing example.
inline ArchGraph ag_test() {
  return ArchGraph("ag-test", 6,
                   {{1, 0}, {1, 2}, {2, 3}, {5, 2}, {5, 0}, {3, 4}, {4, 5}});
}

}  // namespace qroute::testing
