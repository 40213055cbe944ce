// SPDX-License-Identifier: Apache-2.0
//
// pointscat: identification of point-like acoustic objects from multi-frequency sparse data
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef POINTSCAT_CLI_HPP
#define POINTSCAT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pointscat::cli
{
    // Exit codes: 0 success, 2 validation or parse error, 3 pipeline error.
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_input = 2;
    inline constexpr int exit_pipeline = 3;

    // Runs the command line `args` (args[0] is the program name).
    int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
