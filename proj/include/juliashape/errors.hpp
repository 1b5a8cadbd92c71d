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
#ifndef JULIASHAPE_ERRORS_HPP
#define JULIASHAPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace juliashape {

// Exit-code families used by the CLI: 1 validation, 2 numerical, 3 I/O or parse.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ambiguous_boundary : validation_error {
    explicit ambiguous_boundary(const std::string& msg) : validation_error(msg) {}
};

struct too_close_to_boundary : numerical_error {
    explicit too_close_to_boundary(const std::string& msg) : numerical_error(msg) {}
};

struct invalid_resolution : validation_error {
    explicit invalid_resolution(const std::string& msg) : validation_error(msg) {}
};

struct singular_system : numerical_error {
    explicit singular_system(const std::string& msg) : numerical_error(msg) {}
};

struct too_few_roots : validation_error {
    explicit too_few_roots(const std::string& msg) : validation_error(msg) {}
};

struct degree_too_large : validation_error {
    explicit degree_too_large(const std::string& msg) : validation_error(msg) {}
};

struct empty_mask : validation_error {
    explicit empty_mask(const std::string& msg) : validation_error(msg) {}
};

} // namespace juliashape

#endif // JULIASHAPE_ERRORS_HPP
