#include "octsca/measure.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace octsca {

double roughness_sq(const HeightMap& hm) {
    if (hm.h.empty())
        return 0.0;
    double mean = 0.0;
    for (int32_t v : hm.h)
        mean += v;
    mean /= double(hm.h.size());
    double acc = 0.0;
    for (int32_t v : hm.h) {
        double d = v - mean;
        acc += d * d;
    }
    return acc / double(hm.h.size());
}

Moments height_moments(const HeightMap& hm) {
    Moments mo;
    if (hm.h.empty())
        return mo;
    double n = double(hm.h.size());
    for (int32_t v : hm.h)
        mo.mean += v;
    mo.mean /= n;
    for (int32_t v : hm.h) {
        double d = v - mo.mean;
        double d2 = d * d;
        mo.m2 += d2;
        mo.m3 += d2 * d;
        mo.m4 += d2 * d2;
    }
    mo.m2 /= n;
    mo.m3 /= n;
    mo.m4 /= n;
    if (mo.m2 > 0.0) {
        mo.defined = true;
        mo.skew = mo.m3 / std::pow(mo.m2, 1.5);
        mo.kurt = mo.m4 / (mo.m2 * mo.m2) - 3.0;
    } else {
        mo.skew = std::numeric_limits<double>::quiet_NaN();
        mo.kurt = std::numeric_limits<double>::quiet_NaN();
    }
    return mo;
}

MeasurementRecord measure_heights(uint64_t t, const HeightMap& hm) {
    Moments mo = height_moments(hm);
    return {t, mo.m2, mo.mean, mo.skew, mo.kurt};
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw ConfigError("linear fit needs at least 2 points");
    size_t n = xs.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0)
        throw ConfigError("linear fit is degenerate: all x equal");
    LinearFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double resid = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ssr += resid * resid;
    }
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - ssr / syy;
    fit.stderr_slope = n > 2 ? std::sqrt(ssr / (double(n) - 2.0) / sxx) : 0.0;
    return fit;
}

namespace {

std::vector<MeasurementRecord> select_window(const std::vector<MeasurementRecord>& records,
                                             uint64_t t_min, uint64_t t_max,
                                             bool positive_w2) {
    std::vector<MeasurementRecord> out;
    for (const auto& r : records)
        if (r.t >= t_min && r.t <= t_max && r.t > 0 && (!positive_w2 || r.W2 > 0))
            out.push_back(r);
    return out;
}

} // namespace

FitResult growth_exponent_fit(const std::vector<MeasurementRecord>& records,
                              uint64_t t_min, uint64_t t_max) {
    auto sel = select_window(records, t_min, t_max, true);
    if (sel.size() < 5)
        throw ConfigError("growth fit needs >= 5 records in window, have " +
                          std::to_string(sel.size()));
    std::vector<double> xs, ys;
    xs.reserve(sel.size());
    ys.reserve(sel.size());
    for (const auto& r : sel) {
        xs.push_back(std::log(double(r.t)));
        ys.push_back(0.5 * std::log(r.W2)); // log W
    }
    LinearFit lf = linear_fit(xs, ys);
    FitResult fr;
    fr.beta = lf.slope;
    fr.stderr_beta = lf.stderr_slope;
    fr.r2 = lf.r2;
    fr.t_min = t_min;
    fr.t_max = t_max;
    fr.points = lf.n;
    return fr;
}

LinearFit ew_log_fit(const std::vector<MeasurementRecord>& records,
                     uint64_t t_min, uint64_t t_max) {
    auto sel = select_window(records, t_min, t_max, false);
    if (sel.size() < 5)
        throw ConfigError("EW fit needs >= 5 records in window, have " +
                          std::to_string(sel.size()));
    std::vector<double> xs, ys;
    for (const auto& r : sel) {
        xs.push_back(std::log(double(r.t)));
        ys.push_back(r.W2);
    }
    return linear_fit(xs, ys);
}

std::vector<uint64_t> log_schedule(uint64_t t_max, uint32_t points_per_decade) {
    if (t_max < 1)
        throw ConfigError("t_max must be >= 1");
    if (points_per_decade < 1)
        throw ConfigError("points_per_decade must be >= 1");
    std::vector<uint64_t> times;
    uint64_t prev = 0;
    for (uint32_t k = 0;; ++k) {
        double exact = std::pow(10.0, double(k) / double(points_per_decade));
        if (exact > double(t_max) * (1.0 + 1e-12))
            break;
        uint64_t t = uint64_t(std::llround(exact));
        if (t <= prev)
            t = prev + 1; // geometric grid denser than the integers
        if (t > t_max)
            break;
        times.push_back(t);
        prev = t;
    }
    if (times.empty() || times.back() != t_max)
        times.push_back(t_max);
    return times;
}

} // namespace octsca
