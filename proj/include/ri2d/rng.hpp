#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ri2d {

/// Identifies a reproducible random stream. Identical (seed, stream) pairs
/// reproduce identical draws bit-for-bit, independent of thread scheduling.
struct RngSeed {
    std::uint64_t seed = 0x5EED;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Derives the stream for a numbered sub-task (replica, trajectory, ...).
/// Streams are addressed, not jumped: any index is O(1).
inline RngSeed substream(RngSeed base, std::uint64_t index) {
    return {base.seed, detail::splitmix64(base.stream + 0x9E3779B97F4A7C15ULL * (index + 1))};
}

/// Counter-based generator (Philox4x32-10). The key is the user seed, the
/// 128-bit counter carries (block index, stream id), so draws depend only on
/// (seed, stream, position) and never on shared state.
class Rng {
public:
    explicit Rng(RngSeed s)
        : key0_(std::uint32_t(s.seed)), key1_(std::uint32_t(s.seed >> 32)),
          stream_lo_(std::uint32_t(s.stream)), stream_hi_(std::uint32_t(s.stream >> 32)) {}

    std::uint32_t next_u32() {
        if (have_ == 0) refill();
        return out_[--have_];
    }

    std::uint64_t next_u64() {
        std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in {0, ..., n-1} by rejection-free scaling (n small).
    std::uint32_t next_below(std::uint32_t n) {
        return std::uint32_t((std::uint64_t(next_u32()) * n) >> 32);
    }

private:
    void refill() {
        std::uint32_t c0 = std::uint32_t(block_), c1 = std::uint32_t(block_ >> 32);
        std::uint32_t c2 = stream_lo_, c3 = stream_hi_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = std::uint64_t(0xD2511F53u) * c0;
            std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * c2;
            std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
            std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out_[0] = c0; out_[1] = c1; out_[2] = c2; out_[3] = c3;
        have_ = 4;
        ++block_;
    }

    std::uint32_t key0_, key1_, stream_lo_, stream_hi_;
    std::uint64_t block_ = 0;
    std::uint32_t out_[4] = {};
    int have_ = 0;
};

/// Exact Poisson sampling. Multiplicative inversion for small means, and the
/// additivity split Poisson(l) = Poisson(l/2) + Poisson(l/2) above it.
inline std::int64_t poisson(Rng& rng, double lambda) {
    if (lambda < 0) throw std::invalid_argument("poisson: negative mean");
    if (lambda == 0) return 0;
    if (lambda > 60.0) {
        std::int64_t total = 0;
        double rest = lambda;
        while (rest > 60.0) {
            double half = rest * 0.5;
            // sample the first half now, keep splitting the remainder
            double l = half;
            double p = 1.0, target = std::exp(-l);
            std::int64_t k = 0;
            do { ++k; p *= rng.next_double(); } while (p > target);
            total += k - 1;
            rest -= half;
        }
        lambda = rest;
        double p = 1.0, target = std::exp(-lambda);
        std::int64_t k = 0;
        do { ++k; p *= rng.next_double(); } while (p > target);
        return total + k - 1;
    }
    double p = 1.0, target = std::exp(-lambda);
    std::int64_t k = 0;
    do { ++k; p *= rng.next_double(); } while (p > target);
    return k - 1;
}

/// Walker alias table: O(1) sampling from a fixed discrete distribution.
class AliasTable {
public:
    AliasTable() = default;
    explicit AliasTable(const std::vector<double>& weights) { build(weights); }

    void build(const std::vector<double>& weights);

    int sample(Rng& rng) const {
        std::uint32_t i = rng.next_below(std::uint32_t(prob_.size()));
        return rng.next_double() < prob_[i] ? int(i) : alias_[i];
    }

    std::size_t size() const { return prob_.size(); }

private:
    std::vector<double> prob_;
    std::vector<int> alias_;
};

}  // namespace ri2d
