/*******************************************************************************
 * Copyright 2026 The juliashape authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#ifndef JULIASHAPE_CLI_HPP
#define JULIASHAPE_CLI_HPP

#include <string>
#include <vector>

namespace juliashape::cli {

/// Runs the full CLI (validate / solve / build / render / study) and returns
/// the process exit code: 0 success, 1 validation failure, 2 numerical
/// failure, 3 I/O or parse failure.
int run(const std::vector<std::string>& args);

} // namespace juliashape::cli

#endif // JULIASHAPE_CLI_HPP
