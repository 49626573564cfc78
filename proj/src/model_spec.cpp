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

#include "graphevo/model_spec.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "graphevo/errors.hpp"

namespace graphevo {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double clamp_unit(double u) { return std::clamp(u, 0.0, 1.0); }

}  // namespace

std::string_view to_string(ModelRole role) {
  switch (role) {
    case ModelRole::kInput: return "input";
    case ModelRole::kPreprocessor: return "preprocessor";
    case ModelRole::kClassifier: return "classifier";
    case ModelRole::kRegressor: return "regressor";
    case ModelRole::kUnsupervised: return "unsupervised";
  }
  return "unknown";
}

ModelRole parse_role(std::string_view text) {
  for (auto role : {ModelRole::kInput, ModelRole::kPreprocessor, ModelRole::kClassifier,
                    ModelRole::kRegressor, ModelRole::kUnsupervised}) {
    if (to_string(role) == text) return role;
  }
  throw ParseError(fmt::format("unknown model role '{}'", text));
}

std::string format_param(const ParamValue& value) {
  return std::visit(Overloaded{
                        [](double v) { return fmt::format("{:.6g}", v); },
                        [](std::int64_t v) { return fmt::format("{}", v); },
                        [](const std::string& v) { return v; },
                    },
                    value);
}

ParamDomain::ParamDomain(std::string name, Kind kind) : name_(std::move(name)), kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [&](const ContinuousRange& r) {
                   if (!(r.lo < r.hi)) throw ConfigError(fmt::format("{}: lo must be < hi", name_));
                   if (r.log_scale && r.lo <= 0.0)
                     throw ConfigError(fmt::format("{}: log range needs lo > 0", name_));
                 },
                 [&](const IntegerRange& r) {
                   if (!(r.lo < r.hi)) throw ConfigError(fmt::format("{}: lo must be < hi", name_));
                 },
                 [&](const CategoricalChoice& c) {
                   if (c.options.empty()) throw ConfigError(fmt::format("{}: no options", name_));
                 },
             },
             kind_);
}

ParamDomain ParamDomain::continuous(std::string name, double lo, double hi) {
  return ParamDomain(std::move(name), ContinuousRange{lo, hi, false});
}

ParamDomain ParamDomain::log_continuous(std::string name, double lo, double hi) {
  return ParamDomain(std::move(name), ContinuousRange{lo, hi, true});
}

ParamDomain ParamDomain::integer(std::string name, std::int64_t lo, std::int64_t hi) {
  return ParamDomain(std::move(name), IntegerRange{lo, hi});
}

ParamDomain ParamDomain::categorical(std::string name, std::vector<std::string> options) {
  return ParamDomain(std::move(name), CategoricalChoice{std::move(options)});
}

std::size_t ParamDomain::encoded_width() const {
  if (const auto* c = std::get_if<CategoricalChoice>(&kind_)) return c->options.size();
  return 1;
}

ParamValue ParamDomain::midpoint() const {
  return std::visit(Overloaded{
                        [](const ContinuousRange& r) -> ParamValue {
                          return r.log_scale ? std::sqrt(r.lo * r.hi) : 0.5 * (r.lo + r.hi);
                        },
                        [](const IntegerRange& r) -> ParamValue {
                          return static_cast<std::int64_t>(std::llround(0.5 * static_cast<double>(r.lo + r.hi)));
                        },
                        [](const CategoricalChoice& c) -> ParamValue {
                          return c.options[(c.options.size() - 1) / 2];
                        },
                    },
                    kind_);
}

bool ParamDomain::contains(const ParamValue& value) const {
  return std::visit(Overloaded{
                        [&](const ContinuousRange& r) {
                          const auto* v = std::get_if<double>(&value);
                          return v && *v >= r.lo && *v <= r.hi;
                        },
                        [&](const IntegerRange& r) {
                          const auto* v = std::get_if<std::int64_t>(&value);
                          return v && *v >= r.lo && *v <= r.hi;
                        },
                        [&](const CategoricalChoice& c) {
                          const auto* v = std::get_if<std::string>(&value);
                          return v && std::find(c.options.begin(), c.options.end(), *v) != c.options.end();
                        },
                    },
                    kind_);
}

ParamValue ParamDomain::decode(const double* unit) const {
  return std::visit(
      Overloaded{
          [&](const ContinuousRange& r) -> ParamValue {
            const double u = clamp_unit(unit[0]);
            if (r.log_scale) {
              const double lo = std::log(r.lo);
              const double hi = std::log(r.hi);
              return std::clamp(std::exp(lo + u * (hi - lo)), r.lo, r.hi);
            }
            return r.lo + u * (r.hi - r.lo);
          },
          [&](const IntegerRange& r) -> ParamValue {
            const double u = clamp_unit(unit[0]);
            return r.lo + static_cast<std::int64_t>(std::llround(u * static_cast<double>(r.hi - r.lo)));
          },
          [&](const CategoricalChoice& c) -> ParamValue {
            std::size_t best = 0;
            for (std::size_t i = 1; i < c.options.size(); ++i) {
              if (unit[i] > unit[best]) best = i;
            }
            return c.options[best];
          },
      },
      kind_);
}

void ParamDomain::encode(const ParamValue& value, double* unit) const {
  if (!contains(value)) {
    throw ConfigError(fmt::format("value {} outside domain of {}", format_param(value), name_));
  }
  std::visit(Overloaded{
                 [&](const ContinuousRange& r) {
                   const double v = std::get<double>(value);
                   unit[0] = r.log_scale ? (std::log(v) - std::log(r.lo)) / (std::log(r.hi) - std::log(r.lo))
                                         : (v - r.lo) / (r.hi - r.lo);
                 },
                 [&](const IntegerRange& r) {
                   unit[0] = static_cast<double>(std::get<std::int64_t>(value) - r.lo) /
                             static_cast<double>(r.hi - r.lo);
                 },
                 [&](const CategoricalChoice& c) {
                   const auto& v = std::get<std::string>(value);
                   for (std::size_t i = 0; i < c.options.size(); ++i) unit[i] = c.options[i] == v ? 1.0 : 0.0;
                 },
             },
             kind_);
}

double param_as_double(const ParamAssignment& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) throw ConfigError(fmt::format("missing hyperparameter '{}'", name));
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
  throw ConfigError(fmt::format("hyperparameter '{}' is not numeric", name));
}

std::int64_t param_as_int(const ParamAssignment& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) throw ConfigError(fmt::format("missing hyperparameter '{}'", name));
  if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
  if (const auto* d = std::get_if<double>(&it->second)) return std::llround(*d);
  throw ConfigError(fmt::format("hyperparameter '{}' is not numeric", name));
}

const std::string& param_as_string(const ParamAssignment& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) throw ConfigError(fmt::format("missing hyperparameter '{}'", name));
  if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  throw ConfigError(fmt::format("hyperparameter '{}' is not categorical", name));
}

}  // namespace graphevo
