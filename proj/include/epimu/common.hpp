/*
 * Copyright 2026 The epimu Authors
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

#ifndef EPIMU_COMMON_HPP
#define EPIMU_COMMON_HPP

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace epimu {

/// Set of states of some finite system, indexed densely from 0.
using StateSet = boost::dynamic_bitset<>;

/// Raised for malformed textual input (formulas, structure files, automata).
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position_(pos)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Raised when an object violates a semantic precondition of an operation.
class ValidationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

} // namespace epimu

#endif
