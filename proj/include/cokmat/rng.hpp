#pragma once

#include <array>
#include <cstdint>

namespace cokmat {

// Philox 4x32-10 counter block function (Salmon et al., SC 2011).
// Stateless: output is a pure function of (key, counter), which is what
// makes trial-parallel sampling bit-reproducible under any scheduling.
struct Philox4x32 {
    static constexpr uint32_t kMulA = 0xD2511F53u;
    static constexpr uint32_t kMulB = 0xCD9E8D57u;
    static constexpr uint32_t kKeyA = 0x9E3779B9u;
    static constexpr uint32_t kKeyB = 0xBB67AE85u;

    static std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr,
                                         std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kKeyA;
                key[1] += kKeyB;
            }
            const uint64_t prod0 = uint64_t(kMulA) * ctr[0];
            const uint64_t prod1 = uint64_t(kMulB) * ctr[2];
            const uint32_t lo0 = uint32_t(prod0), hi0 = uint32_t(prod0 >> 32);
            const uint32_t lo1 = uint32_t(prod1), hi1 = uint32_t(prod1 >> 32);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

// Addressable stream of 64-bit words: word(substream, j) is a pure function
// of (seed, stream, substream, j).  An experiment maps stream -> trial index
// and substream -> entry index, so every variate is derived from
// (seed, trial, entry) with no sequential state anywhere.
class RandomStream {
  public:
    RandomStream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

    // Counter layout: substream fills ctr[0..1], block index ctr[2], the low
    // stream word ctr[3]; high stream bits perturb the key.  Distinct
    // (stream, substream, j) triples therefore never collide.
    uint64_t word(uint64_t substream, uint32_t j) const {
        const std::array<uint32_t, 4> ctr = {
            uint32_t(substream), uint32_t(substream >> 32), j >> 1, uint32_t(stream_)};
        const std::array<uint32_t, 2> key = {uint32_t(seed_),
                                             uint32_t(seed_ >> 32) ^ uint32_t(stream_ >> 32)};
        const auto out = Philox4x32::block(ctr, key);
        return (j & 1) ? (uint64_t(out[3]) << 32 | out[2])
                       : (uint64_t(out[1]) << 32 | out[0]);
    }

    // Unbiased draw in [0, bound) by rejection over successive words.
    uint64_t uniform_below(uint64_t substream, uint64_t bound) const {
        if (bound <= 1) return 0;
        const uint64_t limit = ~uint64_t(0) - (~uint64_t(0) % bound + 1) % bound;
        for (uint32_t j = 0;; ++j) {
            const uint64_t w = word(substream, j);
            if (w <= limit) return w % bound;
        }
    }

    // Double in [0, 1) with 53 random bits.
    double uniform01(uint64_t substream, uint32_t j = 0) const {
        return double(word(substream, j) >> 11) * 0x1.0p-53;
    }

  private:
    uint64_t seed_;
    uint64_t stream_;
};

}  // namespace cokmat
