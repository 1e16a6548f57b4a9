// include/orna/cli/cli.h

// Copyright 2026  The orna Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ORNA_CLI_CLI_H_
#define ORNA_CLI_CLI_H_

#include <ostream>

namespace orna::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Runs one subcommand: features, chunk, synth, train, predict, eval, kappa,
// experiment or serve. Flags override --config values, which override the
// built-in defaults. Machine output goes to `out`, progress to `err`.
int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace orna::cli

#endif  // ORNA_CLI_CLI_H_
