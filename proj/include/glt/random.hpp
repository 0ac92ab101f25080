// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef GLT_RANDOM_HPP
#define GLT_RANDOM_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace glt {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11) exposed as a
/// UniformRandomBitGenerator. The 64-bit seed is the key; `stream` occupies
/// the upper half of the counter, so (seed, stream) pairs give independent,
/// reproducible substreams.
class Philox4x32 {
public:
    using result_type = std::uint32_t;
    using block_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    explicit Philox4x32(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream)
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        if (pos_ == 4) {
            block_ = bijection({static_cast<std::uint32_t>(block_index_), static_cast<std::uint32_t>(block_index_ >> 32),
                                static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                               key_);
            ++block_index_;
            pos_ = 0;
        }
        return block_[pos_++];
    }

    void discard(unsigned long long n) noexcept
    {
        while (n--)
            (*this)();
    }

    /// Ten-round Philox bijection of one counter block.
    static constexpr block_type bijection(block_type ctr, key_type key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    key_type key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    block_type block_{};
    int pos_ = 4;
};

} // namespace glt

#endif // GLT_RANDOM_HPP
