// Copyright (C) 2026 The wiretap authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wiretap::cli {

/// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2,
    kNoConvergence = 3,
    kIoFailure = 4,
};

/// Runs the command line `args` (args[0] is the subcommand, no program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wiretap::cli
