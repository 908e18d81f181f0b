// Copyright 2026 The triplechannel Authors
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

#ifndef TRIPLECHANNEL_TOOLS_CLI_APP_H_
#define TRIPLECHANNEL_TOOLS_CLI_APP_H_

#include <ostream>
#include <string>
#include <vector>

namespace triplechannel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumerical = 2;

// Runs one command line. args[0] is the program name. Reports go to `out`
// unless --out is given; diagnostics go to `err`. Feasibility failures are
// findings and never change the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace triplechannel::cli

#endif  // TRIPLECHANNEL_TOOLS_CLI_APP_H_
