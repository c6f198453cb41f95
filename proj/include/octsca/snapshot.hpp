#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "octsca/rng.hpp"
#include "octsca/slope_field.hpp"

namespace octsca {

// Binary snapshot, little-endian throughout:
//   magic "OCTSCA01"
//   u32 X, u32 Y, u32 w, u64 t_mcs, u8 phase, u8 bit-convention (1 = bit 1
//   is slope +1), then the 4 planes in order x/even, x/odd, y/even, y/odd,
//   each row-major with w-bit words LSB-first.
// A resumable snapshot appends an optional trailer after the planes:
//   magic "OCTRNG01", u64 master seed, u32 stream count, then 4 u64 of
//   xoshiro256++ state per stream.
inline constexpr char kSnapshotMagic[8] = {'O', 'C', 'T', 'S', 'C', 'A', '0', '1'};
inline constexpr char kRngTrailerMagic[8] = {'O', 'C', 'T', 'R', 'N', 'G', '0', '1'};

namespace detail {

inline void put_bytes(std::string& out, const void* p, size_t n) {
    out.append(static_cast<const char*>(p), n);
}

template <typename T>
void put_le(std::string& out, T v) {
    for (size_t i = 0; i < sizeof(T); ++i)
        out.push_back(char((v >> (8 * i)) & 0xff));
}

class ByteReader {
  public:
    ByteReader(const char* data, size_t size) : p_(data), end_(data + size) {}

    size_t remaining() const { return size_t(end_ - p_); }

    void raw(void* dst, size_t n) {
        if (remaining() < n)
            throw IoError("snapshot truncated");
        std::memcpy(dst, p_, n);
        p_ += n;
    }

    template <typename T>
    T le() {
        uint8_t buf[sizeof(T)];
        raw(buf, sizeof(T));
        T v = 0;
        for (size_t i = 0; i < sizeof(T); ++i)
            v |= T(buf[i]) << (8 * i);
        return v;
    }

  private:
    const char* p_;
    const char* end_;
};

} // namespace detail

template <typename Word>
std::string serialize_snapshot(const SlopeField<Word>& f, const RngStreamSet* streams) {
    const LatticeConfig& cfg = f.config();
    std::string out;
    size_t plane_bytes = size_t(cfg.Y) * cfg.words_per_row() * (cfg.w / 8);
    out.reserve(30 + 4 * plane_bytes + (streams ? 20 + 32 * size_t(streams->size()) : 0));
    detail::put_bytes(out, kSnapshotMagic, 8);
    detail::put_le<uint32_t>(out, cfg.X);
    detail::put_le<uint32_t>(out, cfg.Y);
    detail::put_le<uint32_t>(out, cfg.w);
    detail::put_le<uint64_t>(out, f.t_mcs);
    out.push_back(char(f.phase));
    out.push_back(char(1)); // bit 1 is slope +1
    for (int p = 0; p < 4; ++p)
        for (Word wv : f.plane(p))
            detail::put_le<Word>(out, wv);
    if (streams) {
        detail::put_bytes(out, kRngTrailerMagic, 8);
        detail::put_le<uint64_t>(out, streams->master_seed());
        detail::put_le<uint32_t>(out, streams->size());
        for (uint32_t i = 0; i < streams->size(); ++i)
            for (uint64_t v : streams->stream(i).state())
                detail::put_le<uint64_t>(out, v);
    }
    return out;
}

struct LoadedSnapshot {
    std::variant<SlopeField<uint32_t>, SlopeField<uint64_t>> field;
    std::optional<RngStreamSet> streams;

    uint32_t word_size() const {
        return std::holds_alternative<SlopeField<uint32_t>>(field) ? 32 : 64;
    }
};

LoadedSnapshot parse_snapshot(const std::string& bytes);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

template <typename Word>
void save_snapshot(const std::string& path, const SlopeField<Word>& f,
                   const RngStreamSet* streams = nullptr) {
    write_file(path, serialize_snapshot(f, streams));
}

LoadedSnapshot load_snapshot(const std::string& path);

// Plain-text height export: Y lines of X integers.
void save_heights_text(const std::string& path, const HeightMap& hm);

} // namespace octsca
