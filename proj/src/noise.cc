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

#include "pmw/noise.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/erf.hpp>

namespace pmw {
namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

std::mt19937_64 MakeEngine(uint64_t seed, uint64_t stream_id,
                           uint64_t lineage) {
  std::seed_seq seq{
      static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
      static_cast<uint32_t>(stream_id), static_cast<uint32_t>(stream_id >> 32),
      static_cast<uint32_t>(lineage), static_cast<uint32_t>(lineage >> 32)};
  return std::mt19937_64(seq);
}

// SplitMix64 finalizer, used to derive child lineages.
uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      state_(MakeEngine(seed, stream_id, 0)) {}

RandomStream::RandomStream(ZeroState z) : state_(z) {}
RandomStream::RandomStream(ScriptState s) : state_(std::move(s)) {}

RandomStream RandomStream::Zero() { return RandomStream(ZeroState{}); }

RandomStream RandomStream::Scripted(std::vector<double> uniforms) {
  for (double u : uniforms) {
    if (!(u > 0.0 && u < 1.0)) {
      throw std::invalid_argument("scripted uniforms must lie in (0, 1)");
    }
  }
  return RandomStream(ScriptState{std::move(uniforms), 0});
}

double RandomStream::NextUniform() {
  if (auto* engine = std::get_if<std::mt19937_64>(&state_)) {
    // 53 random bits, shifted by half an ulp to stay off 0.
    return (static_cast<double>((*engine)() >> 11) + 0.5) * kTwoPow53Inv;
  }
  if (auto* script = std::get_if<ScriptState>(&state_)) {
    if (script->next >= script->uniforms.size()) {
      throw std::out_of_range("scripted stream exhausted");
    }
    return script->uniforms[script->next++];
  }
  return 1.0 - kTwoPow53Inv;
}

uint64_t RandomStream::NextIndex(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("NextIndex bound must be > 0");
  if (is_zero()) return bound - 1;
  if (auto* engine = std::get_if<std::mt19937_64>(&state_)) {
    // Rejection sampling keeps the draw exactly uniform.
    const uint64_t limit =
        std::numeric_limits<uint64_t>::max() -
        std::numeric_limits<uint64_t>::max() % bound;
    uint64_t x;
    do {
      x = (*engine)();
    } while (x >= limit);
    return x % bound;
  }
  const double u = NextUniform();
  const auto idx = static_cast<uint64_t>(u * static_cast<double>(bound));
  return idx < bound ? idx : bound - 1;
}

RandomStream RandomStream::Split(uint64_t child) const {
  if (is_zero()) return Zero();
  if (is_scripted()) {
    throw std::logic_error("scripted streams cannot be split");
  }
  RandomStream out(seed_, stream_id_);
  out.lineage_ = Mix(lineage_ ^ Mix(child + 1));
  out.state_ = MakeEngine(seed_, stream_id_, out.lineage_);
  return out;
}

double LaplaceFromUniform(double u) {
  if (u < 0.5) return std::log(2.0 * u);
  return -std::log(2.0 * (1.0 - u));
}

double ExponentialFromUniform(double u) { return -std::log1p(-u); }

double GaussianFromUniform(double u) {
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

double Sample(NoiseKind kind, RandomStream& stream) {
  if (kind == NoiseKind::kZero || stream.is_zero()) return 0.0;
  const double u = stream.NextUniform();
  switch (kind) {
    case NoiseKind::kStandardLaplace:
      return LaplaceFromUniform(u);
    case NoiseKind::kStandardGaussian:
      return GaussianFromUniform(u);
    case NoiseKind::kStandardExponential:
      return ExponentialFromUniform(u);
    case NoiseKind::kZero:
      break;
  }
  return 0.0;
}

}  // namespace pmw
