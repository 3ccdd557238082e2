// Copyright 2026 The geosyn Authors
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

#ifndef GEOSYN_ERRORS_HPP_
#define GEOSYN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace geosyn {

// Malformed input: schema violations, broken invariants, shape mismatches.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integration blew up, a metric became degenerate, or a solver failed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solver hit its iteration cap. Carries the best residual seen.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace geosyn

#endif  // GEOSYN_ERRORS_HPP_
