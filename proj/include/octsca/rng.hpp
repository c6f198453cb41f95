#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "octsca/errors.hpp"

namespace octsca {

// xoshiro256++ random word stream. 256-bit state, all output bits
// equidistributed, jump() advances by 2^128 draws for non-overlapping
// substreams. Linear congruential generators are not acceptable here: the
// synchronous updating is itself correlated and relies on the acceptance
// bits for decorrelation.
class RngStream {
  public:
    using State = std::array<uint64_t, 4>;

    RngStream() : s_{1, 0, 0, 0} {}
    explicit RngStream(const State& s) : s_(s) {}

    // Derives a full-entropy state from a 64-bit seed (splitmix64).
    static RngStream from_seed(uint64_t seed) {
        State s;
        for (auto& v : s)
            v = splitmix64(seed);
        if ((s[0] | s[1] | s[2] | s[3]) == 0)
            s[0] = 1;
        return RngStream(s);
    }

    uint64_t next() {
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Equivalent to 2^128 calls of next().
    void jump() {
        static constexpr uint64_t kJump[4] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL,
                                              0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL};
        State acc{0, 0, 0, 0};
        for (uint64_t word : kJump) {
            for (int b = 0; b < 64; ++b) {
                if (word & (uint64_t{1} << b))
                    for (int i = 0; i < 4; ++i)
                        acc[i] ^= s_[i];
                next();
            }
        }
        s_ = acc;
    }

    const State& state() const { return s_; }
    void set_state(const State& s) { s_ = s; }

    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    static constexpr uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    State s_;
};

// A deterministic family of independent streams: stream i sits 2^128 * i
// draws ahead of the seed state, so streams never overlap within any
// realizable run.
class RngStreamSet {
  public:
    RngStreamSet() = default;

    RngStreamSet(uint64_t master_seed, uint32_t n) : master_seed_(master_seed) {
        if (n < 1)
            throw ConfigError("stream count must be >= 1");
        streams_.reserve(n);
        RngStream s = RngStream::from_seed(master_seed);
        for (uint32_t i = 0; i < n; ++i) {
            streams_.push_back(s);
            if (i + 1 < n)
                s.jump();
        }
    }

    uint32_t size() const { return static_cast<uint32_t>(streams_.size()); }
    uint64_t master_seed() const { return master_seed_; }

    RngStream& stream(uint32_t i) { return streams_[i]; }
    const RngStream& stream(uint32_t i) const { return streams_[i]; }

    std::vector<RngStream::State> states() const {
        std::vector<RngStream::State> out;
        out.reserve(streams_.size());
        for (const auto& s : streams_)
            out.push_back(s.state());
        return out;
    }

    void restore(const std::vector<RngStream::State>& states) {
        streams_.clear();
        streams_.reserve(states.size());
        for (const auto& st : states)
            streams_.emplace_back(st);
    }

  private:
    uint64_t master_seed_ = 0;
    std::vector<RngStream> streams_;
};

inline RngStreamSet derive_streams(uint64_t master_seed, uint32_t n) {
    return RngStreamSet(master_seed, n);
}

// ---------------------------------------------------------------------------
// Random bit words with per-bit probability r

inline constexpr uint64_t word_mask(uint32_t w) {
    return w >= 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1;
}

// One raw generator word; every bit set with probability 1/2. For w = 32 the
// low half of the 64-bit draw is used.
inline uint64_t xi_half(RngStream& s, uint32_t w) {
    return s.next() & word_mask(w);
}

// AND/OR combination plan realizing a dyadic probability m / 2^k exactly
// from k fair words. Digits of r are consumed least-significant first
// (Horner): acc = digit ? (acc | xi) : (acc & xi).
struct DyadicPlan {
    enum class Op : uint8_t { And, Or };

    double target = 0.0;
    uint32_t k = 0;          // denominator exponent: target = m / 2^k
    uint64_t m = 0;          // odd numerator
    std::vector<Op> ops;     // applied after the first word is drawn

    uint32_t words() const { return k; }
};

// Builds the plan for r in (0,1) when r has a terminating binary expansion
// of at most max_words bits; otherwise empty, signalling arbitrary mode.
std::optional<DyadicPlan> dyadic_plan(double r, uint32_t max_words = 16);

inline uint64_t xi_dyadic(RngStream& s, const DyadicPlan& plan, uint32_t w) {
    uint64_t acc = xi_half(s, w);
    for (DyadicPlan::Op op : plan.ops) {
        uint64_t xi = xi_half(s, w);
        acc = op == DyadicPlan::Op::Or ? (acc | xi) : (acc & xi);
    }
    return acc;
}

// Maps the top 53 bits of a draw to [0,1).
inline double to_unit(uint64_t x) {
    return double(x >> 11) * 0x1.0p-53;
}

// Sequential generation for arbitrary r: w threshold tests, one draw per
// bit. Always consumes exactly w draws so the stream schedule stays a pure
// function of the mode.
inline uint64_t xi_arbitrary(RngStream& s, double r, uint32_t w) {
    uint64_t word = 0;
    for (uint32_t i = 0; i < w; ++i)
        word |= uint64_t(to_unit(s.next()) < r) << i;
    return word;
}

} // namespace octsca
