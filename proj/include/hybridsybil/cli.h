// Copyright 2026 The HybridSybil Authors
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

#ifndef HYBRIDSYBIL_CLI_H_
#define HYBRIDSYBIL_CLI_H_

#include <iosfwd>
#include <span>
#include <string>

namespace hybridsybil {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDegenerateData = 3;
inline constexpr int kExitInternal = 4;

// Entry point of the `hybridsybil` tool. Arguments exclude the program name.
// Output that is not written to files goes to `out`, diagnostics to `err`.
int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err);

}  // namespace hybridsybil

#endif  // HYBRIDSYBIL_CLI_H_
