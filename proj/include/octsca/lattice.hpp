#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "octsca/errors.hpp"

namespace octsca {

// Checkerboard color of a lattice site.
inline constexpr int site_parity(int64_t x, int64_t y) {
    return static_cast<int>((x ^ y) & 1);
}

// Periodic reduction into [0, n).
inline constexpr int64_t pmod(int64_t v, int64_t n) {
    int64_t m = v % n;
    return m < 0 ? m + n : m;
}

enum Axis : int { AxisX = 0, AxisY = 1 };

// Lattice geometry and machine word size. X must be a positive multiple of
// 2*w so that every row of a slope plane is an integral number of words.
struct LatticeConfig {
    uint32_t X = 0;
    uint32_t Y = 0;
    uint32_t w = 64; // word size in bits, 32 or 64

    void validate() const {
        if (w != 32 && w != 64)
            throw ConfigError("word size must be 32 or 64, got " + std::to_string(w));
        if (X == 0 || X % (2 * w) != 0)
            throw ConfigError("X must be a positive multiple of 2*w = " +
                              std::to_string(2 * w) + ", got " + std::to_string(X));
        if (Y < 2 || Y % 2 != 0)
            throw ConfigError("Y must be even and >= 2, got " + std::to_string(Y));
    }

    uint64_t sites() const { return static_cast<uint64_t>(X) * Y; }
    // Packed positions per row of one plane (half the sites of a row).
    uint32_t packed_cols() const { return X / 2; }
    // Row length in w-bit words.
    uint32_t words_per_row() const { return X / (2 * w); }

    bool operator==(const LatticeConfig&) const = default;
};

// Integer surface heights on the full lattice. Neighboring heights differ by
// exactly +-1 in both directions (periodically); only differences are
// physical, the absolute offset is a gauge choice.
struct HeightMap {
    uint32_t X = 0;
    uint32_t Y = 0;
    std::vector<int32_t> h; // row-major, h[y*X + x]
    double mean = 0.0;

    HeightMap() = default;
    HeightMap(uint32_t X_, uint32_t Y_) : X(X_), Y(Y_), h(size_t(X_) * Y_, 0) {}

    int32_t& at(uint32_t x, uint32_t y) { return h[size_t(y) * X + x]; }
    int32_t at(uint32_t x, uint32_t y) const { return h[size_t(y) * X + x]; }

    int32_t at_periodic(int64_t x, int64_t y) const {
        return h[size_t(pmod(y, Y)) * X + size_t(pmod(x, X))];
    }

    void recompute_mean() {
        double s = 0.0;
        for (int32_t v : h)
            s += v;
        mean = h.empty() ? 0.0 : s / double(h.size());
    }

    // The checkerboard ground state h(x,y) = (x+y) mod 2.
    static HeightMap flat_checkerboard(uint32_t X, uint32_t Y) {
        HeightMap hm(X, Y);
        for (uint32_t y = 0; y < Y; ++y)
            for (uint32_t x = 0; x < X; ++x)
                hm.at(x, y) = static_cast<int32_t>((x + y) & 1);
        hm.recompute_mean();
        return hm;
    }

    // First bond with a non-unit height step, or nullopt-style flag via
    // return value. Checks both axes with periodic wrap.
    struct BadBond {
        bool found = false;
        uint32_t x = 0, y = 0;
        Axis axis = AxisX; // bond from the -axis neighbor to (x,y)
    };

    BadBond find_invalid_bond() const {
        for (uint32_t y = 0; y < Y; ++y) {
            for (uint32_t x = 0; x < X; ++x) {
                int dx = at(x, y) - at_periodic(int64_t(x) - 1, y);
                if (dx != 1 && dx != -1)
                    return {true, x, y, AxisX};
                int dy = at(x, y) - at_periodic(x, int64_t(y) - 1);
                if (dy != 1 && dy != -1)
                    return {true, x, y, AxisY};
            }
        }
        return {};
    }
};

} // namespace octsca
