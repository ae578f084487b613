/**************************************************************************
 * error.hpp
 *
 * Copyright 2026 The hmsr Authors
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
 **************************************************************************/

#pragma once

#include <stdexcept>
#include <string>

namespace hmsr {

enum class ErrorKind {
    domain,              // argument outside the operation's domain
    unsupported_field,   // m does not divide q-1
    degenerate_field,    // N == 0 mod q
    insufficient_field,  // q too small for the requested code
    singular,            // linear system has no unique solution
    non_mds,             // a data-collector matrix is rank deficient
    construction,        // a repair plan lost its full-rank guarantee
    invalid_descriptor,  // descriptor violates its invariants
    size,                // vector/file length mismatch
    format,              // malformed persisted data
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hmsr
