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

#ifndef GRAPHEVO_ERRORS_HPP_
#define GRAPHEVO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace graphevo {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GRAPHEVO_DEFINE_ERROR(Name)      \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// graph-core
GRAPHEVO_DEFINE_ERROR(CycleError);
GRAPHEVO_DEFINE_ERROR(InvalidGraph);
GRAPHEVO_DEFINE_ERROR(DomainError);

// evolutionary operators
GRAPHEVO_DEFINE_ERROR(RetrialExhausted);
GRAPHEVO_DEFINE_ERROR(NoEligibleReplacement);
GRAPHEVO_DEFINE_ERROR(NoInteriorLayer);
GRAPHEVO_DEFINE_ERROR(EmptyPopulation);

// models and pipelines
GRAPHEVO_DEFINE_ERROR(ShapeMismatch);
GRAPHEVO_DEFINE_ERROR(TrainingFailure);
GRAPHEVO_DEFINE_ERROR(TimeoutExceeded);
GRAPHEVO_DEFINE_ERROR(EmptyInput);
GRAPHEVO_DEFINE_ERROR(ClassTooSmall);

// ingestion, configuration and files
GRAPHEVO_DEFINE_ERROR(ParseError);
GRAPHEVO_DEFINE_ERROR(LabelError);
GRAPHEVO_DEFINE_ERROR(DatasetError);
GRAPHEVO_DEFINE_ERROR(ConfigError);
GRAPHEVO_DEFINE_ERROR(IoError);

#undef GRAPHEVO_DEFINE_ERROR

}  // namespace graphevo

#endif  // GRAPHEVO_ERRORS_HPP_
