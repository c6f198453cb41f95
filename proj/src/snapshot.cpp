#include "octsca/snapshot.hpp"

#include <cstdio>

namespace octsca {

namespace {

template <typename Word>
SlopeField<Word> parse_field(detail::ByteReader& rd, const LatticeConfig& cfg,
                             uint64_t t_mcs, int phase) {
    SlopeField<Word> f(cfg);
    f.t_mcs = t_mcs;
    f.phase = phase;
    for (int p = 0; p < 4; ++p)
        for (Word& wv : f.plane(p))
            wv = rd.le<Word>();
    return f;
}

} // namespace

LoadedSnapshot parse_snapshot(const std::string& bytes) {
    detail::ByteReader rd(bytes.data(), bytes.size());
    char magic[8];
    rd.raw(magic, 8);
    if (std::memcmp(magic, kSnapshotMagic, 8) != 0)
        throw IoError("not a snapshot file (bad magic)");
    LatticeConfig cfg;
    cfg.X = rd.le<uint32_t>();
    cfg.Y = rd.le<uint32_t>();
    cfg.w = rd.le<uint32_t>();
    uint64_t t_mcs = rd.le<uint64_t>();
    uint8_t phase = rd.le<uint8_t>();
    uint8_t conv = rd.le<uint8_t>();
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw IoError(std::string("snapshot header invalid: ") + e.what());
    }
    if (phase > 1)
        throw IoError("snapshot phase must be 0 or 1");
    if (conv != 1)
        throw IoError("unsupported bit convention flag " + std::to_string(conv));

    LoadedSnapshot snap{SlopeField<uint64_t>{}, std::nullopt};
    if (cfg.w == 32)
        snap.field = parse_field<uint32_t>(rd, cfg, t_mcs, phase);
    else
        snap.field = parse_field<uint64_t>(rd, cfg, t_mcs, phase);

    if (rd.remaining() > 0) {
        char tmagic[8];
        rd.raw(tmagic, 8);
        if (std::memcmp(tmagic, kRngTrailerMagic, 8) != 0)
            throw IoError("unrecognized trailing bytes after planes");
        uint64_t seed = rd.le<uint64_t>();
        uint32_t n = rd.le<uint32_t>();
        std::vector<RngStream::State> states(n);
        for (auto& st : states)
            for (auto& v : st)
                v = rd.le<uint64_t>();
        RngStreamSet set(seed, 1);
        set.restore(states);
        snap.streams = std::move(set);
        if (rd.remaining() != 0)
            throw IoError("trailing bytes after RNG state");
    }
    return snap;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out.write(bytes.data(), std::streamsize(bytes.size()));
    if (!out)
        throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failed: " + path);
    return bytes;
}

LoadedSnapshot load_snapshot(const std::string& path) {
    return parse_snapshot(read_file(path));
}

void save_heights_text(const std::string& path, const HeightMap& hm) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    for (uint32_t y = 0; y < hm.Y; ++y) {
        for (uint32_t x = 0; x < hm.X; ++x) {
            if (x)
                out << ' ';
            out << hm.at(x, y);
        }
        out << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path);
}

} // namespace octsca
