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

#ifndef COUPLED_TOOLS_CLI_H_
#define COUPLED_TOOLS_CLI_H_

#include <ostream>

namespace coupled {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// Entry point of the coupled_cli tool. Normal output goes to `out`,
// diagnostics and usage to `err`. Returns the process exit code:
// 0 on success, 1 on usage or configuration errors, 2 on runtime errors.
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace coupled

#endif  // COUPLED_TOOLS_CLI_H_
