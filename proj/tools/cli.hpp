/*
Copyright 2026 The gelc Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef GELC_TOOLS_CLI_HPP
#define GELC_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace gelc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Runs `gelc <args>`. Input "-" is stdin, output "-" is `out`.
/// Diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace gelc::cli

#endif  // GELC_TOOLS_CLI_HPP
