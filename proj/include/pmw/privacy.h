//
// Copyright 2026 The PMW Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PMW_PRIVACY_H_
#define PMW_PRIVACY_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmw {

// Pure epsilon-DP or rho-zero-concentrated DP.
enum class PrivacyKind { kPure, kZcdp };

// "pdp" / "zcdp". Throws std::invalid_argument on anything else.
PrivacyKind ParsePrivacyKind(std::string_view name);
std::string_view PrivacyKindName(PrivacyKind kind);

// Runtime estimator failures. Precondition violations use
// std::invalid_argument instead.
class EstimatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A private quantile search reached its step cap.
class GridExhaustedError : public EstimatorError {
 public:
  GridExhaustedError() : EstimatorError("grid exhausted") {}
};

// The theoretical clip level zeta is not below 1/2.
class ClipLevelError : public EstimatorError {
 public:
  using EstimatorError::EstimatorError;
};

}  // namespace pmw

#endif  // PMW_PRIVACY_H_
