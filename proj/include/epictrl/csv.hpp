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
#ifndef EPICTRL_CSV_HPP
#define EPICTRL_CSV_HPP

#include <string>

#include "epictrl/solver.hpp"

namespace epictrl {

// One row per grid node, LF line endings, header
// t,S,E,Ia,Is,H,R,D,u1..u9,alpha1..alpha7.  Doubles are written in the
// shortest form that parses back to the identical bits.
std::string write_trajectory_csv(const Solution& solution);

// Inverse of write_trajectory_csv; used for round-trip verification.
Solution read_trajectory_csv(const std::string& text);

// Shortest round-trip decimal form of one double.
std::string format_double(double value);

} // namespace epictrl

#endif
