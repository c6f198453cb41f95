#pragma once

#include <cstdint>
#include <vector>

#include "octsca/errors.hpp"
#include "octsca/lattice.hpp"

namespace octsca {

// One physics sample of the interface at a barrier.
struct MeasurementRecord {
    uint64_t t = 0;    // MCS
    double W2 = 0.0;   // squared interface width
    double mean_h = 0.0;
    double skew = 0.0; // NaN when the variance vanishes
    double kurt = 0.0; // excess kurtosis, NaN when the variance vanishes
};

// Mean-subtracted second moment of the heights over all sites.
double roughness_sq(const HeightMap& hm);

struct Moments {
    double mean = 0.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    double skew = 0.0;
    double kurt = 0.0;     // excess: m4/m2^2 - 3
    bool defined = false;  // false when m2 == 0
};

Moments height_moments(const HeightMap& hm);

MeasurementRecord measure_heights(uint64_t t, const HeightMap& hm);

// Ordinary least squares y = slope*x + intercept.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double r2 = 0.0;
    size_t n = 0;
};

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

// Growth exponent estimate from W^2(t) ~ t^(2*beta): least-squares slope of
// log W against log t over the fit window.
struct FitResult {
    double beta = 0.0;
    double stderr_beta = 0.0;
    double r2 = 0.0;
    uint64_t t_min = 0;
    uint64_t t_max = 0;
    size_t points = 0;
};

FitResult growth_exponent_fit(const std::vector<MeasurementRecord>& records,
                              uint64_t t_min, uint64_t t_max);

// Edwards-Wilkinson diagnostic: linear fit of W^2 against ln t over the
// window (logarithmic roughening).
LinearFit ew_log_fit(const std::vector<MeasurementRecord>& records,
                     uint64_t t_min, uint64_t t_max);

// Approximately geometric, strictly increasing integer measurement times
// covering [1, t_max], always including both endpoints. Where the geometric
// grid is denser than the integers the schedule falls back to consecutive
// values.
std::vector<uint64_t> log_schedule(uint64_t t_max, uint32_t points_per_decade);

} // namespace octsca
