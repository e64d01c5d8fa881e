// SPDX-License-Identifier: Apache-2.0
//
// dfsim - bearing dispersion simulator for directional sources in multipath channels
// Copyright (C) 2026 dfsim contributors
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
// ------------------------------------------------------------------------

#ifndef DFSIM_ERRORS_HPP
#define DFSIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dfsim {

// File could not be opened / read / written.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed record in a text input; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace dfsim

#endif  // DFSIM_ERRORS_HPP
