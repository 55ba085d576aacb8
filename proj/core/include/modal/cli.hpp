// SPDX-License-Identifier: Apache-2.0
//
// modal-arrays: estimation of damped complex exponential modes with
// uniform, sparse, and co-prime line arrays.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modal {

/// Runs the modal-arrays command line (subcommands: estimate, sweep, crb,
/// beampattern, selftest) against the given streams. args excludes the
/// program name. Returns the process exit code: 0 on success, 1 on config
/// or usage errors (message names the offending field), 2 when the
/// estimator itself fails inside `estimate`.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modal
