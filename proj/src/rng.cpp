#include "octsca/rng.hpp"

#include <cmath>

namespace octsca {

std::optional<DyadicPlan> dyadic_plan(double r, uint32_t max_words) {
    if (!(r > 0.0 && r < 1.0))
        return std::nullopt;
    // r is dyadic within max_words iff r * 2^max_words is an integer.
    double scaled = std::ldexp(r, int(max_words));
    if (scaled != std::floor(scaled))
        return std::nullopt;
    uint64_t m = uint64_t(scaled);
    uint32_t k = max_words;
    while (k > 0 && (m & 1) == 0) {
        m >>= 1;
        --k;
    }
    DyadicPlan plan;
    plan.target = r;
    plan.k = k;
    plan.m = m;
    // Digits above the least significant kept bit, scanned upward. The
    // lowest digit of m is always 1 and maps to the initial word.
    plan.ops.reserve(k - 1);
    for (uint32_t i = 1; i < k; ++i)
        plan.ops.push_back((m >> i) & 1 ? DyadicPlan::Op::Or : DyadicPlan::Op::And);
    return plan;
}

} // namespace octsca
