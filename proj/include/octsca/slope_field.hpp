#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "octsca/lattice.hpp"

namespace octsca {

// Slope bit planes of the octahedron surface, grouped by role: axis of the
// stored -direction slope and checkerboard parity of the owning site. Bit b
// of word k in row y of plane (axis a, parity pi) holds sigma_a-(x, y) for
// the site with packed index j = k*w + b, where x is the member of
// {2j, 2j+1} whose parity matches pi. Bit 1 means slope +1. The +direction
// slopes are views into the opposite-parity planes:
//   sigma_x+(x,y) = sigma_x-(x+1,y),  sigma_y+(x,y) = sigma_y-(x,y+1).
template <typename Word>
class SlopeField {
    static_assert(std::is_same_v<Word, uint32_t> || std::is_same_v<Word, uint64_t>);

  public:
    static constexpr uint32_t kWordBits = std::numeric_limits<Word>::digits;

    SlopeField() = default;

    explicit SlopeField(const LatticeConfig& cfg) : cfg_(cfg) {
        cfg_.validate();
        if (cfg_.w != kWordBits)
            throw ConfigError("word size " + std::to_string(cfg_.w) +
                              " does not match field instantiation");
        for (auto& p : planes_)
            p.assign(size_t(cfg_.Y) * cfg_.words_per_row(), Word{0});
    }

    const LatticeConfig& config() const { return cfg_; }
    uint32_t words_per_row() const { return cfg_.words_per_row(); }

    uint64_t t_mcs = 0;
    int phase = 0; // parity of the next sublattice to update

    static constexpr int plane_index(Axis axis, int parity) { return int(axis) * 2 + parity; }

    Word* row(Axis axis, int parity, uint32_t y) {
        return planes_[plane_index(axis, parity)].data() + size_t(y) * cfg_.words_per_row();
    }
    const Word* row(Axis axis, int parity, uint32_t y) const {
        return planes_[plane_index(axis, parity)].data() + size_t(y) * cfg_.words_per_row();
    }

    std::vector<Word>& plane(int idx) { return planes_[idx]; }
    const std::vector<Word>& plane(int idx) const { return planes_[idx]; }

    // Raw bit of sigma_axis-(x, y); coordinates must be in range.
    bool minus_bit(Axis axis, uint32_t x, uint32_t y) const {
        int par = site_parity(x, y);
        uint32_t j = x >> 1;
        const Word* r = row(axis, par, y);
        return (r[j / kWordBits] >> (j % kWordBits)) & 1u;
    }

    void set_minus_bit(Axis axis, uint32_t x, uint32_t y, bool v) {
        int par = site_parity(x, y);
        uint32_t j = x >> 1;
        Word* r = row(axis, par, y);
        Word m = Word{1} << (j % kWordBits);
        if (v)
            r[j / kWordBits] |= m;
        else
            r[j / kWordBits] &= ~m;
    }

    // Scalar slope readout (+-1) through the packing convention, with
    // periodic reduction. direction +1 resolves via the neighbor identities.
    int slope_at(int64_t x, int64_t y, Axis axis, int direction) const {
        int64_t X = cfg_.X, Y = cfg_.Y;
        x = pmod(x, X);
        y = pmod(y, Y);
        if (direction > 0) {
            if (axis == AxisX)
                x = pmod(x + 1, X);
            else
                y = pmod(y + 1, Y);
        }
        return minus_bit(axis, uint32_t(x), uint32_t(y)) ? +1 : -1;
    }

    bool same_planes(const SlopeField& o) const { return planes_ == o.planes_; }

    bool operator==(const SlopeField& o) const {
        return cfg_ == o.cfg_ && t_mcs == o.t_mcs && phase == o.phase && planes_ == o.planes_;
    }

  private:
    LatticeConfig cfg_;
    // Plane order matches the snapshot layout: x/even, x/odd, y/even, y/odd.
    std::array<std::vector<Word>, 4> planes_;
};

// ---------------------------------------------------------------------------
// Construction

// Flat checkerboard start h(x,y) = (x+y) mod 2 at t = 0, even sublattice
// next. Both - slopes of a site equal +1 exactly on odd-parity sites, so the
// odd planes are all-ones and the even planes all-zeros.
template <typename Word>
SlopeField<Word> new_flat(const LatticeConfig& cfg) {
    SlopeField<Word> f(cfg);
    for (Axis a : {AxisX, AxisY}) {
        auto& odd = f.plane(SlopeField<Word>::plane_index(a, 1));
        std::fill(odd.begin(), odd.end(), ~Word{0});
    }
    return f;
}

// Packs a valid height map into slope planes: sigma_x-(x,y) = h(x,y)-h(x-1,y),
// sigma_y-(x,y) = h(x,y)-h(x,y-1), with +1 -> bit 1.
template <typename Word>
SlopeField<Word> pack_from_heights(const LatticeConfig& cfg, const HeightMap& hm) {
    cfg.validate();
    if (hm.X != cfg.X || hm.Y != cfg.Y)
        throw ConfigError("height map dimensions do not match lattice config");
    auto bad = hm.find_invalid_bond();
    if (bad.found)
        throw InvariantError("non-unit height step at (" + std::to_string(bad.x) + "," +
                             std::to_string(bad.y) + ") along " +
                             (bad.axis == AxisX ? std::string("x") : std::string("y")));
    SlopeField<Word> f(cfg);
    for (uint32_t y = 0; y < cfg.Y; ++y) {
        for (uint32_t x = 0; x < cfg.X; ++x) {
            int sx = hm.at(x, y) - hm.at_periodic(int64_t(x) - 1, y);
            int sy = hm.at(x, y) - hm.at_periodic(x, int64_t(y) - 1);
            if (sx > 0)
                f.set_minus_bit(AxisX, x, y, true);
            if (sy > 0)
                f.set_minus_bit(AxisY, x, y, true);
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Structural invariants

struct Plaquette {
    uint32_t x = 0;
    uint32_t y = 0;
    bool operator==(const Plaquette&) const = default;
};

// Exhaustive plaquette scan. A consistent surface satisfies, for every site,
//   sigma_x-(x,y) - sigma_x-(x,y-1) = sigma_y-(x,y) - sigma_y-(x-1,y)
// periodically; the returned list is empty iff the planes integrate to a
// single-valued height function.
template <typename Word>
std::vector<Plaquette> curl_check(const SlopeField<Word>& f) {
    const LatticeConfig& cfg = f.config();
    std::vector<Plaquette> bad;
    for (uint32_t y = 0; y < cfg.Y; ++y) {
        uint32_t ym = y == 0 ? cfg.Y - 1 : y - 1;
        for (uint32_t x = 0; x < cfg.X; ++x) {
            uint32_t xm = x == 0 ? cfg.X - 1 : x - 1;
            int lhs = (f.minus_bit(AxisX, x, y) ? 1 : -1) - (f.minus_bit(AxisX, x, ym) ? 1 : -1);
            int rhs = (f.minus_bit(AxisY, x, y) ? 1 : -1) - (f.minus_bit(AxisY, xm, y) ? 1 : -1);
            if (lhs != rhs)
                bad.push_back({x, y});
        }
    }
    return bad;
}

// Per-row sums of sigma_x- (must all be zero on a periodic surface).
template <typename Word>
std::vector<int64_t> row_balances(const SlopeField<Word>& f) {
    const LatticeConfig& cfg = f.config();
    std::vector<int64_t> sums(cfg.Y, 0);
    for (uint32_t y = 0; y < cfg.Y; ++y) {
        int64_t pop = 0;
        for (int par = 0; par < 2; ++par) {
            const Word* r = f.row(AxisX, par, y);
            for (uint32_t k = 0; k < cfg.words_per_row(); ++k)
                pop += std::popcount(r[k]);
        }
        sums[y] = 2 * pop - int64_t(cfg.X);
    }
    return sums;
}

// Per-column sums of sigma_y-.
template <typename Word>
std::vector<int64_t> col_balances(const SlopeField<Word>& f) {
    const LatticeConfig& cfg = f.config();
    std::vector<int64_t> sums(cfg.X, 0);
    for (uint32_t y = 0; y < cfg.Y; ++y)
        for (uint32_t x = 0; x < cfg.X; ++x)
            sums[x] += f.minus_bit(AxisY, x, y) ? 1 : -1;
    return sums;
}

// Integrates the slope planes back into heights, anchored at h(0,0) = 0.
// Rejects fields whose integration would be path-dependent.
template <typename Word>
HeightMap reconstruct_heights(const SlopeField<Word>& f) {
    const LatticeConfig& cfg = f.config();
    auto bad = curl_check(f);
    if (!bad.empty())
        throw InvariantError("curl violation at plaquette (" + std::to_string(bad[0].x) + "," +
                             std::to_string(bad[0].y) + "); " + std::to_string(bad.size()) +
                             " plaquettes inconsistent");
    HeightMap hm(cfg.X, cfg.Y);
    for (uint32_t x = 1; x < cfg.X; ++x)
        hm.at(x, 0) = hm.at(x - 1, 0) + (f.minus_bit(AxisX, x, 0) ? 1 : -1);
    // Periodic closure of row 0 (row balance).
    if (hm.at(cfg.X - 1, 0) + (f.minus_bit(AxisX, 0, 0) ? 1 : -1) != hm.at(0, 0))
        throw InvariantError("row 0 of sigma_x- does not balance to zero");
    for (uint32_t x = 0; x < cfg.X; ++x) {
        for (uint32_t y = 1; y < cfg.Y; ++y)
            hm.at(x, y) = hm.at(x, y - 1) + (f.minus_bit(AxisY, x, y) ? 1 : -1);
        if (hm.at(x, cfg.Y - 1) + (f.minus_bit(AxisY, x, 0) ? 1 : -1) != hm.at(x, 0))
            throw InvariantError("column " + std::to_string(x) +
                                 " of sigma_y- does not balance to zero");
    }
    hm.recompute_mean();
    return hm;
}

// FNV-1a digest of the slope planes, for determinism audits.
template <typename Word>
uint64_t field_checksum(const SlopeField<Word>& f) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    for (int p = 0; p < 4; ++p)
        for (Word w : f.plane(p))
            mix(uint64_t(w));
    mix(f.t_mcs);
    return h;
}

// ---------------------------------------------------------------------------
// Local 4x4 tile codec

// The compact site-local encoding: one 32-bit word per 4x4 tile of sites,
// two bits per site in row-major site order, sigma_x- in the lower bit of
// each pair.
struct LocalTileWord {
    uint32_t word = 0;
    bool operator==(const LocalTileWord&) const = default;
};

template <typename Word>
std::vector<LocalTileWord> encode_local_tiles(const SlopeField<Word>& f) {
    const LatticeConfig& cfg = f.config();
    if (cfg.X % 4 != 0 || cfg.Y % 4 != 0)
        throw ConfigError("tile codec requires X and Y to be multiples of 4");
    std::vector<LocalTileWord> tiles;
    tiles.reserve(size_t(cfg.X / 4) * (cfg.Y / 4));
    for (uint32_t ty = 0; ty < cfg.Y; ty += 4) {
        for (uint32_t tx = 0; tx < cfg.X; tx += 4) {
            uint32_t wdd = 0;
            for (uint32_t dy = 0; dy < 4; ++dy) {
                for (uint32_t dx = 0; dx < 4; ++dx) {
                    uint32_t site = dy * 4 + dx;
                    if (f.minus_bit(AxisX, tx + dx, ty + dy))
                        wdd |= 1u << (2 * site);
                    if (f.minus_bit(AxisY, tx + dx, ty + dy))
                        wdd |= 1u << (2 * site + 1);
                }
            }
            tiles.push_back({wdd});
        }
    }
    return tiles;
}

template <typename Word>
SlopeField<Word> decode_local_tiles(const LatticeConfig& cfg,
                                    const std::vector<LocalTileWord>& tiles) {
    cfg.validate();
    if (cfg.X % 4 != 0 || cfg.Y % 4 != 0)
        throw ConfigError("tile codec requires X and Y to be multiples of 4");
    if (tiles.size() != size_t(cfg.X / 4) * (cfg.Y / 4))
        throw ConfigError("tile count does not match lattice size");
    SlopeField<Word> f(cfg);
    size_t i = 0;
    for (uint32_t ty = 0; ty < cfg.Y; ty += 4) {
        for (uint32_t tx = 0; tx < cfg.X; tx += 4, ++i) {
            uint32_t wdd = tiles[i].word;
            for (uint32_t dy = 0; dy < 4; ++dy) {
                for (uint32_t dx = 0; dx < 4; ++dx) {
                    uint32_t site = dy * 4 + dx;
                    f.set_minus_bit(AxisX, tx + dx, ty + dy, (wdd >> (2 * site)) & 1u);
                    f.set_minus_bit(AxisY, tx + dx, ty + dy, (wdd >> (2 * site + 1)) & 1u);
                }
            }
        }
    }
    return f;
}

} // namespace octsca
