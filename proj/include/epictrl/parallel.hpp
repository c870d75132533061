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
#ifndef EPICTRL_PARALLEL_HPP
#define EPICTRL_PARALLEL_HPP

#include <cstddef>

namespace epictrl {

enum class ExecPolicy { Serial, Parallel };

// Runs body(i) for i in [0, n).  Every parallel call site writes to a slot
// owned by index i and performs no reductions, so Serial and Parallel produce
// bit-identical results; reductions happen serially over the filled buffers.
template <typename F>
void for_each_index(std::size_t n, ExecPolicy policy, F&& body) {
    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
    }
}

} // namespace epictrl

#endif
