// Copyright 2026 The QEDL Authors.
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

#ifndef QEDL_TOOLS_CLI_H_
#define QEDL_TOOLS_CLI_H_

#include <ostream>

namespace qedl::cli {

// Entry point of the qedl tool. Returns the process exit code: 0 on
// success, 1 on a pipeline error, other non-zero codes on usage errors.
int Main(int argc, const char *const *argv, std::ostream &out,
         std::ostream &err);

}  // namespace qedl::cli

#endif  // QEDL_TOOLS_CLI_H_
