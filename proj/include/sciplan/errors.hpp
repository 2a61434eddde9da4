// Copyright 2026 The Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace sciplan {

// Probability vector or CPT row that is negative, empty, or does not sum to 1.
class InvalidDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent world, net, or trial configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cell, rock or observation outside the grid.
class OutOfBounds : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class IllegalAction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised by planners when no action fits the remaining budget.
class TerminalState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Search-tree bookkeeping violated (e.g. child visited more than its parent).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sciplan
