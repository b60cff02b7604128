// Copyright 2026 The mubc Authors
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

#ifndef MUBC_EXEC_HPP_
#define MUBC_EXEC_HPP_

namespace mubc {

// Every data-parallel kernel has an OpenMP path and a serial reference path.
// Both produce bit-identical results; the serial one exists for testing and
// benchmarking.
enum class ExecPolicy { kSerial, kParallel };

int max_threads();

}  // namespace mubc

#endif  // MUBC_EXEC_HPP_
