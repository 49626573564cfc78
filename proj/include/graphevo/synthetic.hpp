// Copyright 2026 The graphevo Authors.
//
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

// Small synthetic classification problems with known structure.

#ifndef GRAPHEVO_SYNTHETIC_HPP_
#define GRAPHEVO_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "graphevo/dataset.hpp"

namespace graphevo {

enum class SyntheticKind { kTwoGaussians, kXorGrid, kRings };

// Accepts "gauss2", "xor" and "rings". Throws ConfigError.
SyntheticKind parse_synthetic_kind(std::string_view name);
std::string_view to_string(SyntheticKind kind);

// Two balanced classes with unit within-class sd whose means sit at -1 and +1
// in every coordinate.
Dataset make_two_gaussians(std::size_t n, std::size_t dims, std::uint64_t seed);

// Four clusters at (+-1, +-1) with sd 0.35; the label is the sign of x*y and
// a `noise` fraction of labels is flipped.
Dataset make_xor_grid(std::size_t n, double noise, std::uint64_t seed);

// Two concentric noisy rings of radius 1 and 2.
Dataset make_rings(std::size_t n, std::uint64_t seed);

// Defaults: 5 dimensions for gauss2, 5% flips for xor.
Dataset make_synthetic(SyntheticKind kind, std::size_t n, std::uint64_t seed);

}  // namespace graphevo

#endif  // GRAPHEVO_SYNTHETIC_HPP_
