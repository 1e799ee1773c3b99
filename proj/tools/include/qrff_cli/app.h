// Copyright 2026 The qrff Authors
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

#ifndef QRFF_CLI_APP_H_
#define QRFF_CLI_APP_H_

#include <ostream>

namespace qrff::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitNumerical = 1,
    kExitConfig = 2,
    kExitCapacity = 3,
    kExitPostselection = 4,
    kExitIo = 5,
};

/// Entry point of the `qrff` tool; returns the process exit status.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Fast invariant suite behind `qrff selftest`. One line per check; true if all pass.
bool run_selftest(std::ostream &out);

}  // namespace qrff::cli

#endif  // QRFF_CLI_APP_H_
