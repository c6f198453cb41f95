#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "octsca/measure.hpp"
#include "octsca/params.hpp"

namespace octsca {

// Fully resolved configuration of one simulation run.
struct RunConfig {
    uint32_t X = 0;
    uint32_t Y = 0;
    uint32_t w = 64;
    double p = 0.5;
    double q = 0.0;
    std::optional<ProbMode> pmode; // forced generation modes; auto otherwise
    std::optional<ProbMode> qmode;
    uint64_t seed = 1;
    uint32_t workers = 1;
    uint64_t t_max = 1000;
    uint32_t ppd = 8; // schedule points per decade
    std::string engine = "vec"; // "vec" or "ref"
    std::string out_dir = ".";
    std::string resume; // snapshot path; empty starts from the flat surface
    std::optional<std::pair<uint64_t, uint64_t>> fit_window;

    UpdateParams update_params() const {
        return {pmode ? ProbSpec::resolve(p, *pmode) : ProbSpec::resolve(p),
                qmode ? ProbSpec::resolve(q, *qmode) : ProbSpec::resolve(q)};
    }

    LatticeConfig lattice() const { return {X, Y, w}; }

    void validate() const;
};

struct SessionResult {
    std::vector<MeasurementRecord> records;
    std::string csv_path;
    std::string snapshot_path;
    std::string metadata_path;
    std::optional<FitResult> fit;
};

// Executes a run end to end: simulate, write measurements CSV, final
// resumable snapshot and metadata. The CSV bytes depend only on the physics
// configuration and seed, never on worker count or engine choice.
SessionResult run_session(const RunConfig& cfg);

// Deterministic CSV encoding of a measurement series.
std::string measurements_csv(const RunConfig& cfg, const std::vector<MeasurementRecord>& records);

// Parses a measurements CSV (comment lines ignored).
std::vector<MeasurementRecord> parse_measurements_csv(const std::string& text);

} // namespace octsca
