// Copyright 2026 The qvote Authors
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

#ifndef QVOTE_RANDOM_HPP
#define QVOTE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace qvote {

/// SplitMix64 finalizer. Used to turn structured keys into well-mixed seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Key of an independent substream. Each coordinate is folded in with its own
/// mixing round, so the stream for (machine, trial) depends only on those
/// values and the master seed, never on how many other streams exist.
constexpr std::uint64_t derive_stream_key(std::uint64_t master_seed, std::uint64_t machine,
                                          std::uint64_t trial) noexcept {
    std::uint64_t key = splitmix64(master_seed);
    key = splitmix64(key ^ splitmix64(machine + 0x6A09E667F3BCC909ULL));
    key = splitmix64(key ^ splitmix64(trial + 0xBB67AE8584CAA73BULL));
    return key;
}

/// A single-owner random stream. Not thread-safe; hand each worker its own.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : engine_(key) {}

    static RandomStream for_machine(std::uint64_t master_seed, std::uint64_t machine,
                                    std::uint64_t trial) {
        return RandomStream(derive_stream_key(master_seed, machine, trial));
    }

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() { return normal_(engine_); }

    std::uint64_t next_u64() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qvote

#endif  // QVOTE_RANDOM_HPP
