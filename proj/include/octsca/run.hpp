#pragma once

#include <functional>
#include <vector>

#include "octsca/measure.hpp"
#include "octsca/params.hpp"

namespace octsca {

using MeasurementSink = std::function<void(const MeasurementRecord&)>;

// Advances an engine through the schedule, measuring at every scheduled
// time. Scheduled times already in the past (resumed runs) are skipped;
// a time equal to the current MCS samples the present state. Measurements
// never touch the random streams, so the trajectory is a function of
// (seed, params, geometry) alone.
template <typename Engine>
std::vector<MeasurementRecord> run(Engine& eng, const UpdateParams& prm,
                                   const std::vector<uint64_t>& schedule,
                                   const MeasurementSink& sink = {}) {
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw ConfigError("schedule must be strictly increasing");
    std::vector<MeasurementRecord> records;
    records.reserve(schedule.size());
    for (uint64_t target : schedule) {
        if (target < eng.t())
            continue;
        while (eng.t() < target)
            eng.step(prm);
        MeasurementRecord rec = measure_heights(eng.t(), eng.heights());
        records.push_back(rec);
        if (sink)
            sink(rec);
    }
    return records;
}

} // namespace octsca
