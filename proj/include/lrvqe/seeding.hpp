// Copyright 2026 The lrvqe Authors
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

#include <bit>
#include <cstdint>
#include <string_view>

namespace lrvqe {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive combination of seed material.
class SeedMixer {
 public:
  explicit SeedMixer(std::uint64_t base) : state_(splitmix64(base)) {}

  SeedMixer& add(std::uint64_t v) {
    state_ = splitmix64(state_ ^ splitmix64(v));
    return *this;
  }
  SeedMixer& add(double v) { return add(std::bit_cast<std::uint64_t>(v)); }
  SeedMixer& add(int v) { return add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  SeedMixer& add(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return add(h);
  }

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace lrvqe
