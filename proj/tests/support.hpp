/**************************************************************************
 * support.hpp
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

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "hmsr/error.hpp"

#include "hmsr/linear_code.hpp"
#include "oracles.hpp"

namespace testsupport {

/// Kind of the hmsr::Error thrown by fn, or nullopt if it returns normally.
template <class Fn>
std::optional<hmsr::ErrorKind> kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const hmsr::Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline hmsr::Matrix to_matrix(const oracle::Mat& m) {
    hmsr::Matrix out(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = static_cast<hmsr::Elem>(m[r][c]);
    return out;
}

inline hmsr::Vector random_vector(std::size_t n, std::uint32_t q, std::mt19937_64& rng) {
    hmsr::Vector v(n);
    for (auto& e : v) e = static_cast<hmsr::Elem>(rng() % q);
    return v;
}

inline std::vector<hmsr::NodeContents> without(const std::vector<hmsr::NodeContents>& nodes, hmsr::NodeId id) {
    std::vector<hmsr::NodeContents> out;
    for (const auto& n : nodes)
        if (n.id != id) out.push_back(n);
    return out;
}

inline const hmsr::NodeContents& find(const std::vector<hmsr::NodeContents>& nodes, hmsr::NodeId id) {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw std::out_of_range("node not present");
}

inline std::uint32_t smallest_prime_at_least(std::uint32_t n) {
    while (!oracle::trial_prime(n)) ++n;
    return n;
}

}  // namespace testsupport
