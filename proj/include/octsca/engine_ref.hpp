#pragma once

#include <cstdint>
#include <vector>

#include "octsca/params.hpp"
#include "octsca/slope_field.hpp"

namespace octsca {

// Site-local slope storage: one (sigma_x-, sigma_y-) pair per site as plain
// +-1 values. Interconvertible with the bit-plane representation.
struct ScalarField {
    LatticeConfig cfg;
    std::vector<int8_t> sx; // sigma_x-(x,y), row-major
    std::vector<int8_t> sy; // sigma_y-(x,y), row-major
    uint64_t t_mcs = 0;
    int phase = 0;

    explicit ScalarField(const LatticeConfig& c)
        : cfg(c), sx(c.sites(), -1), sy(c.sites(), -1) {
        cfg.validate();
    }

    size_t idx(uint32_t x, uint32_t y) const { return size_t(y) * cfg.X + x; }

    static ScalarField flat(const LatticeConfig& cfg) {
        ScalarField f(cfg);
        for (uint32_t y = 0; y < cfg.Y; ++y)
            for (uint32_t x = 0; x < cfg.X; ++x) {
                int8_t s = site_parity(x, y) ? 1 : -1;
                f.sx[f.idx(x, y)] = s;
                f.sy[f.idx(x, y)] = s;
            }
        return f;
    }
};

template <typename Word>
ScalarField to_scalar(const SlopeField<Word>& f) {
    ScalarField s(f.config());
    s.t_mcs = f.t_mcs;
    s.phase = f.phase;
    for (uint32_t y = 0; y < s.cfg.Y; ++y)
        for (uint32_t x = 0; x < s.cfg.X; ++x) {
            s.sx[s.idx(x, y)] = f.minus_bit(AxisX, x, y) ? 1 : -1;
            s.sy[s.idx(x, y)] = f.minus_bit(AxisY, x, y) ? 1 : -1;
        }
    return s;
}

template <typename Word>
SlopeField<Word> to_slope_field(const ScalarField& s) {
    SlopeField<Word> f(s.cfg);
    f.t_mcs = s.t_mcs;
    f.phase = s.phase;
    for (uint32_t y = 0; y < s.cfg.Y; ++y)
        for (uint32_t x = 0; x < s.cfg.X; ++x) {
            if (s.sx[s.idx(x, y)] > 0)
                f.set_minus_bit(AxisX, x, y, true);
            if (s.sy[s.idx(x, y)] > 0)
                f.set_minus_bit(AxisY, x, y, true);
        }
    return f;
}

enum class Flip { None, Deposit, Remove };

// Per-site Kawasaki rule: deposit on the (-1,+1,-1,+1) pattern, remove on
// the inverse, gated by the acceptance bits.
inline Flip ref_update_site(int sxm, int sym, int sxp, int syp, bool accept_p, bool accept_q) {
    if (sxm < 0 && sym < 0 && sxp > 0 && syp > 0)
        return accept_p ? Flip::Deposit : Flip::None;
    if (sxm > 0 && sym > 0 && sxp < 0 && syp < 0)
        return accept_q ? Flip::Remove : Flip::None;
    return Flip::None;
}

// Scalar interpretation of the identical xi-word schedule: sites are visited
// in (y, word index, bit index) order and the acceptance bit of the site
// with packed index k*w + b is bit b of the word the vectorized engine
// would use. Same-parity sites share no slopes, so in-place application
// equals the synchronous update.
inline void ref_sublattice_sweep(ScalarField& f, int parity, const UpdateParams& prm,
                                 RngStreamSet& streams) {
    const LatticeConfig& cfg = f.cfg;
    if (f.phase != parity)
        throw InvariantError("sweep parity does not match field phase");
    if (streams.size() < cfg.Y)
        throw InvariantError("stream set smaller than row count");
    const uint32_t w = cfg.w;
    const uint32_t n = cfg.words_per_row();
    const bool with_q = prm.q.mode != ProbMode::Zero;

    for (uint32_t y = 0; y < cfg.Y; ++y) {
        RngStream& rs = streams.stream(y);
        const uint32_t s = (uint32_t(parity) ^ y) & 1u; // x offset of this parity in row y
        const uint32_t yp = y + 1 == cfg.Y ? 0 : y + 1;
        for (uint32_t k = 0; k < n; ++k) {
            uint64_t xp = xi_word(rs, prm.p, w);
            uint64_t xq = with_q ? xi_word(rs, prm.q, w) : 0;
            for (uint32_t b = 0; b < w; ++b) {
                uint32_t x = 2 * (k * w + b) + s;
                uint32_t xr = x + 1 == cfg.X ? 0 : x + 1;
                size_t i = f.idx(x, y);
                int sxm = f.sx[i], sym = f.sy[i];
                int sxp = f.sx[f.idx(xr, y)], syp = f.sy[f.idx(x, yp)];
                Flip flip = ref_update_site(sxm, sym, sxp, syp, (xp >> b) & 1, (xq >> b) & 1);
                if (flip != Flip::None) {
                    f.sx[i] = int8_t(-sxm);
                    f.sy[i] = int8_t(-sym);
                    f.sx[f.idx(xr, y)] = int8_t(-sxp);
                    f.sy[f.idx(x, yp)] = int8_t(-syp);
                }
            }
        }
    }
    f.phase ^= 1;
}

inline void ref_mcs_step(ScalarField& f, const UpdateParams& prm, RngStreamSet& streams) {
    ref_sublattice_sweep(f, f.phase, prm, streams);
    ref_sublattice_sweep(f, f.phase, prm, streams);
    ++f.t_mcs;
}

// Single-threaded reference engine with the same facade as VecEngine.
class RefEngine {
  public:
    RefEngine(const LatticeConfig& cfg, uint64_t seed, uint32_t /*workers*/ = 1)
        : field_(ScalarField::flat(cfg)), streams_(seed, cfg.Y) {}

    RefEngine(ScalarField field, RngStreamSet streams)
        : field_(std::move(field)), streams_(std::move(streams)) {}

    static constexpr const char* name() { return "ref"; }

    void step(const UpdateParams& prm) { ref_mcs_step(field_, prm, streams_); }

    uint64_t t() const { return field_.t_mcs; }
    const ScalarField& field() const { return field_; }
    ScalarField& field() { return field_; }
    RngStreamSet& streams() { return streams_; }
    const RngStreamSet& streams() const { return streams_; }

    template <typename Word = uint64_t>
    SlopeField<Word> slope_field() const {
        return to_slope_field<Word>(field_);
    }

    HeightMap heights() const {
        // Reuse the checked reconstruction through the packed representation.
        if (field_.cfg.w == 32)
            return reconstruct_heights(to_slope_field<uint32_t>(field_));
        return reconstruct_heights(to_slope_field<uint64_t>(field_));
    }

  private:
    ScalarField field_;
    RngStreamSet streams_;
};

} // namespace octsca
