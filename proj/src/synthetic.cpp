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

#include "graphevo/synthetic.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "graphevo/errors.hpp"
#include "graphevo/rng.hpp"

namespace graphevo {

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "gauss2") return SyntheticKind::kTwoGaussians;
  if (name == "xor") return SyntheticKind::kXorGrid;
  if (name == "rings") return SyntheticKind::kRings;
  throw ConfigError(fmt::format("unknown dataset kind '{}'", name));
}

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kTwoGaussians: return "gauss2";
    case SyntheticKind::kXorGrid: return "xor";
    case SyntheticKind::kRings: return "rings";
  }
  return "unknown";
}

namespace {

Dataset empty_dataset(std::size_t n, std::size_t dims) {
  if (n < 4) throw DomainError("synthetic datasets need at least 4 rows");
  Dataset data;
  data.features = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dims));
  data.labels.resize(n);
  data.class_names = {"c0", "c1"};
  for (std::size_t j = 0; j < dims; ++j) data.feature_names.push_back(fmt::format("x{}", j));
  return data;
}

Rng stream_for(SyntheticKind kind, std::uint64_t seed) {
  return Rng(seed, StreamId{streams::kSynthetic, static_cast<std::uint64_t>(kind)});
}

}  // namespace

Dataset make_two_gaussians(std::size_t n, std::size_t dims, std::uint64_t seed) {
  if (dims == 0) throw DomainError("need at least one dimension");
  Dataset data = empty_dataset(n, dims);
  Rng rng = stream_for(SyntheticKind::kTwoGaussians, seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    data.labels[i] = label;
    const double centre = label == 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < dims; ++j) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rng.normal(centre, 1.0);
    }
  }
  return data;
}

Dataset make_xor_grid(std::size_t n, double noise, std::uint64_t seed) {
  if (!(noise >= 0.0 && noise < 0.5)) throw DomainError("label noise must lie in [0, 0.5)");
  Dataset data = empty_dataset(n, 2);
  Rng rng = stream_for(SyntheticKind::kXorGrid, seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int quadrant = static_cast<int>(i % 4);
    const double cx = (quadrant & 1) ? 1.0 : -1.0;
    const double cy = (quadrant & 2) ? 1.0 : -1.0;
    const auto row = static_cast<Eigen::Index>(i);
    data.features(row, 0) = rng.normal(cx, 0.35);
    data.features(row, 1) = rng.normal(cy, 0.35);
    int label = cx * cy > 0 ? 0 : 1;
    if (rng.bernoulli(noise)) label = 1 - label;
    data.labels[i] = label;
  }
  return data;
}

Dataset make_rings(std::size_t n, std::uint64_t seed) {
  Dataset data = empty_dataset(n, 2);
  Rng rng = stream_for(SyntheticKind::kRings, seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const double radius = (label == 0 ? 1.0 : 2.0) + rng.normal(0.0, 0.15);
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const auto row = static_cast<Eigen::Index>(i);
    data.features(row, 0) = radius * std::cos(angle);
    data.features(row, 1) = radius * std::sin(angle);
    data.labels[i] = label;
  }
  return data;
}

Dataset make_synthetic(SyntheticKind kind, std::size_t n, std::uint64_t seed) {
  switch (kind) {
    case SyntheticKind::kTwoGaussians: return make_two_gaussians(n, 5, seed);
    case SyntheticKind::kXorGrid: return make_xor_grid(n, 0.05, seed);
    case SyntheticKind::kRings: return make_rings(n, seed);
  }
  throw ConfigError("unknown dataset kind");
}

}  // namespace graphevo
