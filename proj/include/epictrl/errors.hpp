/* Copyright (C) 2026 epictrl contributors
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
 */
#ifndef EPICTRL_ERRORS_HPP
#define EPICTRL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epictrl {

// Non-finite or otherwise unusable argument to a pure computation.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two containers that must share a time grid do not.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A scenario document failed validation; `field` is the offending path.
struct ParseError : std::runtime_error {
    ParseError(const std::string& field_path, const std::string& message)
        : std::runtime_error(field_path + ": " + message), field(field_path) {}
    std::string field;
};

// An integration produced a non-finite state.  `step` is the first bad node.
struct DivergenceError : std::runtime_error {
    DivergenceError(std::size_t step_index, const std::string& message)
        : std::runtime_error(message), step(step_index) {}
    std::size_t step;
};

} // namespace epictrl

#endif
