#pragma once

#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "octsca/params.hpp"
#include "octsca/slope_field.hpp"

namespace octsca {

// ---------------------------------------------------------------------------
// Word kernels

// Kawasaki update mask for one word of sites. With bit 1 meaning slope +1,
// a deposition needs the pattern (sx-, sx+, sy-, sy+) = (0,1,0,1) and a
// removal the inverse, so
//   m_p = xi_p & ~(sx- | sy-) & sx+ & sy+
//   m_q = xi_q & ~(sx+ | sy+) & sx- & sy-
//   m   = m_p ^ m_q
// m_p and m_q can never share a bit: no site matches both patterns.
template <typename Word>
constexpr Word update_mask(Word sxm, Word sym, Word sxp, Word syp, Word xi_p, Word xi_q) {
    Word mp = xi_p & ~(sxm | sym) & sxp & syp;
    Word mq = xi_q & ~(sxp | syp) & sxm & sym;
    return mp ^ mq;
}

// Rotates a row of packed slope bits down by one position with periodic
// wrap: out[i] = raw[(i+1) mod bits]. out must not alias raw.
template <typename Word>
void rotate_row_down(const Word* raw, Word* out, uint32_t n) {
    constexpr uint32_t WB = SlopeField<Word>::kWordBits;
    for (uint32_t k = 0; k < n; ++k) {
        Word next = raw[k + 1 == n ? 0 : k + 1];
        out[k] = (raw[k] >> 1) | (next << (WB - 1));
    }
}

// Inverse alignment applied as an xor: flipping aligned position i flips
// stored position (i+1) mod bits, including the cross-word carry.
template <typename Word>
void scatter_rotated_xor(Word* dst, const Word* m, uint32_t n) {
    constexpr uint32_t WB = SlopeField<Word>::kWordBits;
    Word prev_top = m[n - 1] >> (WB - 1);
    for (uint32_t k = 0; k < n; ++k) {
        Word cur = m[k];
        dst[k] ^= (cur << 1) | prev_top;
        prev_top = cur >> (WB - 1);
    }
}

// Sites of (parity, y) sit at odd x iff parity ^ (y & 1) == 1; only then do
// the sigma_x+ slopes live one packed position up in the opposite-parity
// plane.
inline constexpr bool row_needs_shift(int parity, uint32_t y) {
    return ((uint32_t(parity) ^ y) & 1u) != 0;
}

// Aligned sigma_x+ word vector for the sites of (parity, y).
template <typename Word>
std::vector<Word> gather_xplus(const SlopeField<Word>& f, uint32_t y, int parity) {
    uint32_t n = f.words_per_row();
    const Word* raw = f.row(AxisX, parity ^ 1, y);
    std::vector<Word> out(n);
    if (row_needs_shift(parity, y))
        rotate_row_down(raw, out.data(), n);
    else
        std::copy(raw, raw + n, out.begin());
    return out;
}

// Xor-applies an update mask to the stored sigma_x+ slopes of (parity, y)
// through the inverse of the gather alignment.
template <typename Word>
void scatter_xplus(SlopeField<Word>& f, uint32_t y, int parity, const Word* mask) {
    uint32_t n = f.words_per_row();
    Word* raw = f.row(AxisX, parity ^ 1, y);
    if (row_needs_shift(parity, y)) {
        scatter_rotated_xor(raw, mask, n);
    } else {
        for (uint32_t k = 0; k < n; ++k)
            raw[k] ^= mask[k];
    }
}

// ---------------------------------------------------------------------------
// Sublattice sweep

namespace detail {

// Updates the sites of one parity in rows [y0, y1). Touches only
// plane(*, parity)[y], plane(x, !parity)[y] and plane(y, !parity)[y+1] for
// owned y, so disjoint row blocks never write the same word.
template <typename Word>
void sweep_rows(SlopeField<Word>& f, int parity, const UpdateParams& prm,
                RngStreamSet& streams, uint32_t y0, uint32_t y1,
                std::vector<Word>* mask_log) {
    const LatticeConfig& cfg = f.config();
    const uint32_t n = cfg.words_per_row();
    const uint32_t w = cfg.w;
    const bool with_q = prm.q.mode != ProbMode::Zero;

    std::vector<Word> xbuf(n), mbuf(n);
    for (uint32_t y = y0; y < y1; ++y) {
        RngStream& rs = streams.stream(y);
        Word* px = f.row(AxisX, parity, y);
        Word* py = f.row(AxisY, parity, y);
        Word* qy1 = f.row(AxisY, parity ^ 1, y + 1 == cfg.Y ? 0 : y + 1);
        const bool shifted = row_needs_shift(parity, y);

        const Word* sxp;
        if (shifted) {
            rotate_row_down(f.row(AxisX, parity ^ 1, y), xbuf.data(), n);
            sxp = xbuf.data();
        } else {
            sxp = f.row(AxisX, parity ^ 1, y);
        }

        for (uint32_t k = 0; k < n; ++k) {
            Word xp = Word(xi_word(rs, prm.p, w));
            Word xq = with_q ? Word(xi_word(rs, prm.q, w)) : Word{0};
            Word m = update_mask(px[k], py[k], sxp[k], qy1[k], xp, xq);
            mbuf[k] = m;
            px[k] ^= m;
            py[k] ^= m;
            qy1[k] ^= m;
        }

        scatter_xplus(f, y, parity, mbuf.data());
        if (mask_log)
            std::copy(mbuf.begin(), mbuf.end(), mask_log->begin() + size_t(y) * n);
    }
}

} // namespace detail

// One synchronous update of all sites with the given parity. xi words are
// drawn from the per-row streams in (y, word index) order with xi_p before
// xi_q, so the trajectory is independent of the worker partition. When
// mask_log is given it receives the applied mask of every (row, word).
template <typename Word>
void sublattice_sweep(SlopeField<Word>& f, int parity, const UpdateParams& prm,
                      const SweepPlan& plan, RngStreamSet& streams,
                      std::vector<Word>* mask_log = nullptr) {
    const LatticeConfig& cfg = f.config();
    if (f.phase != parity)
        throw InvariantError("sweep parity " + std::to_string(parity) +
                             " does not match field phase " + std::to_string(f.phase));
    if (streams.size() < cfg.Y)
        throw InvariantError("stream set smaller than row count");
    if (mask_log)
        mask_log->assign(size_t(cfg.Y) * cfg.words_per_row(), Word{0});

    const int nblocks = int(plan.row_blocks.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(nblocks)
#endif
    for (int b = 0; b < nblocks; ++b) {
        auto [y0, y1] = plan.row_blocks[size_t(b)];
        detail::sweep_rows(f, parity, prm, streams, y0, y1, mask_log);
    }

    f.phase ^= 1;
}

// One MCS: both sublattice sweeps, one update attempt per lattice site.
template <typename Word>
void mcs_step(SlopeField<Word>& f, const UpdateParams& prm, const SweepPlan& plan,
              RngStreamSet& streams) {
    sublattice_sweep(f, f.phase, prm, plan, streams);
    sublattice_sweep(f, f.phase, prm, plan, streams);
    ++f.t_mcs;
}

// ---------------------------------------------------------------------------
// Engine facade

// Owns the field, per-row streams and the sweep plan. The scalar reference
// engine mirrors this interface.
template <typename Word>
class VecEngine {
  public:
    VecEngine(const LatticeConfig& cfg, uint64_t seed, uint32_t workers)
        : field_(new_flat<Word>(cfg)), streams_(seed, cfg.Y),
          plan_(SweepPlan::make(cfg.Y, workers)) {}

    VecEngine(SlopeField<Word> field, RngStreamSet streams, uint32_t workers)
        : field_(std::move(field)), streams_(std::move(streams)),
          plan_(SweepPlan::make(field_.config().Y, workers)) {}

    static constexpr const char* name() { return "vec"; }

    void step(const UpdateParams& prm) { mcs_step(field_, prm, plan_, streams_); }

    uint64_t t() const { return field_.t_mcs; }
    const SlopeField<Word>& field() const { return field_; }
    SlopeField<Word>& field() { return field_; }
    SlopeField<Word> slope_field() const { return field_; }
    RngStreamSet& streams() { return streams_; }
    const RngStreamSet& streams() const { return streams_; }
    const SweepPlan& plan() const { return plan_; }

    HeightMap heights() const { return reconstruct_heights(field_); }

  private:
    SlopeField<Word> field_;
    RngStreamSet streams_;
    SweepPlan plan_;
};

} // namespace octsca
