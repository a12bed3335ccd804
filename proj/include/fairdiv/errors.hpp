/*
 * Copyright (C) 2026 The fairdiv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

/// Invalid argument to a public operation (range, shape, or parse errors).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dual was requested for a valuation with a zero-density segment.
class NotPositiveError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// The referee refused a query because the budget is spent.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A protocol returned an allocation that breaks its guarantee.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pieces of an allocation overlap or fail to cover [0,1].
class PartitionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density comparison fell inside the floating-point ambiguity guard.
class NumericalAmbiguity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of the operation does not hold.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fairdiv
