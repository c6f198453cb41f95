#include "octsca/session.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "octsca/engine_ref.hpp"
#include "octsca/engine_vec.hpp"
#include "octsca/run.hpp"
#include "octsca/snapshot.hpp"
#include "octsca/version.hpp"

namespace octsca {

namespace {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_prob(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct EngineOutcome {
    std::vector<MeasurementRecord> records;
    std::string snapshot_bytes;
};

template <typename Engine>
EngineOutcome drive(Engine& eng, const RunConfig& cfg, const UpdateParams& prm,
                    const std::vector<uint64_t>& schedule) {
    EngineOutcome out;
    out.records = run(eng, prm, schedule);
    if constexpr (std::is_same_v<Engine, RefEngine>) {
        if (cfg.w == 32) {
            auto f = eng.template slope_field<uint32_t>();
            out.snapshot_bytes = serialize_snapshot(f, &eng.streams());
        } else {
            auto f = eng.template slope_field<uint64_t>();
            out.snapshot_bytes = serialize_snapshot(f, &eng.streams());
        }
    } else {
        out.snapshot_bytes = serialize_snapshot(eng.field(), &eng.streams());
    }
    return out;
}

template <typename Word>
EngineOutcome run_vec(const RunConfig& cfg, const UpdateParams& prm,
                      const std::vector<uint64_t>& schedule) {
    if (cfg.resume.empty()) {
        VecEngine<Word> eng(cfg.lattice(), cfg.seed, cfg.workers);
        return drive(eng, cfg, prm, schedule);
    }
    LoadedSnapshot snap = load_snapshot(cfg.resume);
    if (!snap.streams)
        throw ConfigError("snapshot has no RNG trailer; cannot resume bit-exactly");
    if (!std::holds_alternative<SlopeField<Word>>(snap.field))
        throw ConfigError("snapshot word size does not match requested w");
    VecEngine<Word> eng(std::get<SlopeField<Word>>(std::move(snap.field)),
                        std::move(*snap.streams), cfg.workers);
    return drive(eng, cfg, prm, schedule);
}

EngineOutcome run_ref(const RunConfig& cfg, const UpdateParams& prm,
                      const std::vector<uint64_t>& schedule) {
    if (cfg.resume.empty()) {
        RefEngine eng(cfg.lattice(), cfg.seed);
        return drive(eng, cfg, prm, schedule);
    }
    LoadedSnapshot snap = load_snapshot(cfg.resume);
    if (!snap.streams)
        throw ConfigError("snapshot has no RNG trailer; cannot resume bit-exactly");
    ScalarField sf = std::visit([](const auto& f) { return to_scalar(f); }, snap.field);
    RefEngine eng(std::move(sf), std::move(*snap.streams));
    return drive(eng, cfg, prm, schedule);
}

} // namespace

void RunConfig::validate() const {
    lattice().validate();
    if (engine != "vec" && engine != "ref")
        throw ConfigError("engine must be 'vec' or 'ref', got '" + engine + "'");
    if (workers < 1)
        throw ConfigError("workers must be >= 1");
    if (t_max < 1)
        throw ConfigError("tmax must be >= 1");
    update_params(); // validates probabilities and forced modes
    if (fit_window && fit_window->first >= fit_window->second)
        throw ConfigError("fit window must satisfy tmin < tmax");
}

std::string measurements_csv(const RunConfig& cfg, const std::vector<MeasurementRecord>& records) {
    UpdateParams prm = cfg.update_params();
    std::ostringstream out;
    out << "# octsca measurements v" << kVersion << "\n";
    // Physics configuration only: worker count and engine choice do not
    // change the trajectory and stay out of the byte stream.
    out << "# seed=" << cfg.seed << " X=" << cfg.X << " Y=" << cfg.Y << " w=" << cfg.w
        << " p=" << fmt_prob(cfg.p) << " pmode=" << prob_mode_name(prm.p.mode)
        << " q=" << fmt_prob(cfg.q) << " qmode=" << prob_mode_name(prm.q.mode)
        << " tmax=" << cfg.t_max << " ppd=" << cfg.ppd << "\n";
    out << "t,W2,mean_h,skew,kurt\n";
    for (const auto& r : records)
        out << r.t << ',' << fmt_g17(r.W2) << ',' << fmt_g17(r.mean_h) << ','
            << fmt_g17(r.skew) << ',' << fmt_g17(r.kurt) << "\n";
    return out.str();
}

std::vector<MeasurementRecord> parse_measurements_csv(const std::string& text) {
    std::vector<MeasurementRecord> records;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0)
            continue;
        MeasurementRecord r;
        char* end = nullptr;
        const char* s = line.c_str();
        r.t = std::strtoull(s, &end, 10);
        double* fields[4] = {&r.W2, &r.mean_h, &r.skew, &r.kurt};
        for (double* f : fields) {
            if (*end != ',')
                throw IoError("malformed measurement line: " + line);
            s = end + 1;
            *f = std::strtod(s, &end);
        }
        records.push_back(r);
    }
    return records;
}

SessionResult run_session(const RunConfig& cfg) {
    cfg.validate();
    UpdateParams prm = cfg.update_params();
    std::vector<uint64_t> schedule = log_schedule(cfg.t_max, cfg.ppd);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.out_dir + ": " + ec.message());

    auto t0 = std::chrono::steady_clock::now();
    EngineOutcome out;
    if (cfg.engine == "ref")
        out = run_ref(cfg, prm, schedule);
    else if (cfg.w == 32)
        out = run_vec<uint32_t>(cfg, prm, schedule);
    else
        out = run_vec<uint64_t>(cfg, prm, schedule);
    double wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    SessionResult res;
    res.records = std::move(out.records);
    res.csv_path = (fs::path(cfg.out_dir) / "measurements.csv").string();
    res.snapshot_path = (fs::path(cfg.out_dir) / "final.snap").string();
    res.metadata_path = (fs::path(cfg.out_dir) / "metadata.json").string();

    write_file(res.csv_path, measurements_csv(cfg, res.records));
    write_file(res.snapshot_path, out.snapshot_bytes);

    if (cfg.fit_window)
        res.fit = growth_exponent_fit(res.records, cfg.fit_window->first, cfg.fit_window->second);

    nlohmann::ordered_json meta;
    meta["tool"] = "octsca";
    meta["version"] = kVersion;
    meta["seed"] = cfg.seed;
    meta["engine"] = cfg.engine;
    meta["workers"] = cfg.workers;
    meta["lattice"] = {{"X", cfg.X}, {"Y", cfg.Y}, {"w", cfg.w}};
    meta["params"] = {{"p", cfg.p},
                      {"pmode", prob_mode_name(prm.p.mode)},
                      {"p_words", prm.p.draws_per_word(cfg.w)},
                      {"q", cfg.q},
                      {"qmode", prob_mode_name(prm.q.mode)},
                      {"q_words", prm.q.draws_per_word(cfg.w)}};
    meta["schedule"] = {{"t_max", cfg.t_max}, {"points_per_decade", cfg.ppd},
                        {"times", schedule}};
    meta["rng"] = {{"generator", "xoshiro256++"},
                   {"streams", cfg.Y},
                   {"assignment", "one stream per lattice row"}};
    meta["resume"] = cfg.resume;
    meta["outputs"] = {{"measurements", res.csv_path}, {"snapshot", res.snapshot_path}};
    if (res.fit)
        meta["fit"] = {{"beta", res.fit->beta},     {"stderr", res.fit->stderr_beta},
                       {"r2", res.fit->r2},         {"t_min", res.fit->t_min},
                       {"t_max", res.fit->t_max},   {"points", res.fit->points}};
    meta["wall_s"] = wall_s;
    write_file(res.metadata_path, meta.dump(2) + "\n");

    return res;
}

} // namespace octsca
