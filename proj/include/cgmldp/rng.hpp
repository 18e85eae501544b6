#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace cgmldp {

/// Philox 4x32-10 counter-based generator. A draw is a pure function of
/// (seed, stream, index), so replicas and grid cells can be sampled in any
/// order, or concurrently, with bitwise-identical results.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    /// Uniform double in (0, 1].
    [[nodiscard]] double uniform(std::uint64_t stream, std::uint64_t index) const {
        const std::uint64_t bits = word64(stream, index);
        return (double((bits >> 11) + 1)) * 0x1.0p-53;
    }

    /// Exponential with the given rate via inversion; never returns +inf.
    [[nodiscard]] double exponential(std::uint64_t stream, std::uint64_t index,
                                     double rate) const {
        return -std::log(uniform(stream, index)) / rate;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0], std::uint32_t(p1),
                   std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1], std::uint32_t(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }

    [[nodiscard]] std::uint64_t word64(std::uint64_t stream, std::uint64_t index) const {
        const std::array<std::uint32_t, 4> ctr = {
            std::uint32_t(index), std::uint32_t(index >> 32), std::uint32_t(stream),
            std::uint32_t(stream >> 32)};
        const std::array<std::uint32_t, 2> key = {std::uint32_t(seed_),
                                                  std::uint32_t(seed_ >> 32)};
        const std::array<std::uint32_t, 4> out = block(ctr, key);
        return (std::uint64_t(out[0]) << 32) | out[1];
    }

    std::uint64_t seed_;
};

}  // namespace cgmldp
