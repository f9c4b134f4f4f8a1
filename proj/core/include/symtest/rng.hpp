// Copyright 2026 The symtest Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace symtest {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A (key, counter) pair maps to 128 random bits with no hidden state, so any
/// substream can be reached directly. Streams are addressed by a 64-bit seed
/// (the key) and a 64-bit stream index (upper half of the counter); the lower
/// half of the counter walks through blocks of the stream.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  static Block generate(std::uint64_t key, std::uint64_t stream, std::uint64_t block);
};

/// Seed for substream `index` derived from `seed`. Used to give every Monte
/// Carlo replicate its own independent generator key.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Sequential view of one Philox substream producing uniforms and standard
/// normals. Normals use the Box-Muller transform on pairs of 53-bit
/// uniforms; both outputs of each transform are used.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();

 private:
  std::uint64_t next_u64();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int buffered_words_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace symtest
