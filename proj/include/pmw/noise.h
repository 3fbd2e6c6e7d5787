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

#ifndef PMW_NOISE_H_
#define PMW_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace pmw {

enum class NoiseKind {
  kStandardLaplace,
  kStandardGaussian,
  kStandardExponential,
  kZero,
};

// Source of uniform draws behind every noise sample in the library.
//
// A stream is one of three things:
//   * seeded: a 64-bit Mersenne Twister keyed by (seed, stream_id) through
//     std::seed_seq, so equal keys replay bit-for-bit on any conforming
//     standard library and distinct stream ids give unrelated sequences;
//   * zero: every noise sample is exactly 0 and index draws are the
//     identity. Test hook only; release paths refuse it;
//   * scripted: replays a fixed list of uniforms, then throws. Used to pin
//     inverse-CDF arithmetic in tests.
//
// Streams are move-only. Copying one would silently reuse randomness.
class RandomStream {
 public:
  RandomStream(uint64_t seed, uint64_t stream_id);

  static RandomStream Zero();
  static RandomStream Scripted(std::vector<double> uniforms);

  RandomStream(RandomStream&&) = default;
  RandomStream& operator=(RandomStream&&) = default;
  RandomStream(const RandomStream&) = delete;
  RandomStream& operator=(const RandomStream&) = delete;

  // Uniform on the open interval (0, 1).
  double NextUniform();

  // Uniform integer in [0, bound). For the zero stream returns bound - 1,
  // which turns a Fisher-Yates pass into the identity permutation.
  uint64_t NextIndex(uint64_t bound);

  // Independent child stream keyed by this stream's identity and `child`.
  // Does not advance this stream. Children of the zero stream are zero.
  RandomStream Split(uint64_t child) const;

  bool is_zero() const { return std::holds_alternative<ZeroState>(state_); }
  bool is_scripted() const {
    return std::holds_alternative<ScriptState>(state_);
  }
  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

 private:
  struct ZeroState {};
  struct ScriptState {
    std::vector<double> uniforms;
    std::size_t next = 0;
  };

  explicit RandomStream(ZeroState);
  explicit RandomStream(ScriptState);

  uint64_t seed_ = 0;
  uint64_t stream_id_ = 0;
  uint64_t lineage_ = 0;
  std::variant<std::mt19937_64, ZeroState, ScriptState> state_;
};

// Inverse CDFs of the standard laws, exposed so hand-checked values can be
// pinned without going through a stream.
double LaplaceFromUniform(double u);
double ExponentialFromUniform(double u);
double GaussianFromUniform(double u);

// One draw from `kind`. Consumes exactly one uniform unless the kind or the
// stream is zero, in which case it returns 0 and consumes nothing.
double Sample(NoiseKind kind, RandomStream& stream);

}  // namespace pmw

#endif  // PMW_NOISE_H_
