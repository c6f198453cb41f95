#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "octsca/errors.hpp"
#include "octsca/rng.hpp"

namespace octsca {

enum class ProbMode : uint8_t { Zero, Half, Dyadic, Arbitrary };

inline const char* prob_mode_name(ProbMode m) {
    switch (m) {
    case ProbMode::Zero: return "zero";
    case ProbMode::Half: return "half";
    case ProbMode::Dyadic: return "dyadic";
    case ProbMode::Arbitrary: return "arbitrary";
    }
    return "?";
}

// An acceptance probability together with its generation mode. Modes must be
// consistent with the value: half requires exactly 0.5, zero requires 0,
// dyadic requires a terminating binary expansion; arbitrary works for any r.
struct ProbSpec {
    double value = 0.0;
    ProbMode mode = ProbMode::Zero;
    DyadicPlan plan; // valid when mode == Dyadic

    // Cheapest consistent mode for the value.
    static ProbSpec resolve(double r) {
        if (r < 0.0 || r > 1.0)
            throw ConfigError("probability must be in [0,1], got " + std::to_string(r));
        if (r == 0.0)
            return {r, ProbMode::Zero, {}};
        if (r == 0.5)
            return {r, ProbMode::Half, {}};
        if (auto plan = dyadic_plan(r))
            return {r, ProbMode::Dyadic, *plan};
        return {r, ProbMode::Arbitrary, {}};
    }

    static ProbSpec resolve(double r, ProbMode forced) {
        ProbSpec auto_spec = resolve(r);
        if (forced == auto_spec.mode)
            return auto_spec;
        switch (forced) {
        case ProbMode::Zero:
            if (r != 0.0)
                throw ConfigError("mode zero requires probability 0");
            break;
        case ProbMode::Half:
            if (r != 0.5)
                throw ConfigError("mode half requires probability 0.5");
            break;
        case ProbMode::Dyadic:
            if (auto plan = dyadic_plan(r))
                return {r, ProbMode::Dyadic, *plan};
            throw ConfigError("probability has no dyadic plan within 16 words");
        case ProbMode::Arbitrary:
            if (r == 0.0)
                throw ConfigError("mode arbitrary is pointless for probability 0; use zero");
            return {r, ProbMode::Arbitrary, {}};
        }
        return auto_spec;
    }

    // Generator draws consumed per xi word; a pure function of the mode.
    uint32_t draws_per_word(uint32_t w) const {
        switch (mode) {
        case ProbMode::Zero: return 0;
        case ProbMode::Half: return 1;
        case ProbMode::Dyadic: return plan.words();
        case ProbMode::Arbitrary: return w;
        }
        return 0;
    }
};

// One xi word for this probability; low w bits valid.
inline uint64_t xi_word(RngStream& s, const ProbSpec& ps, uint32_t w) {
    switch (ps.mode) {
    case ProbMode::Zero: return 0;
    case ProbMode::Half: return xi_half(s, w);
    case ProbMode::Dyadic: return xi_dyadic(s, ps.plan, w);
    case ProbMode::Arbitrary: return xi_arbitrary(s, ps.value, w);
    }
    return 0;
}

// Deposition and removal acceptance probabilities for the Kawasaki updates.
struct UpdateParams {
    ProbSpec p;
    ProbSpec q;

    static UpdateParams make(double p, double q) {
        return {ProbSpec::resolve(p), ProbSpec::resolve(q)};
    }
};

// Contiguous row blocks assigning every lattice row to exactly one worker.
// Blocks are balanced to within one row; the remainder goes to the last
// workers.
struct SweepPlan {
    uint32_t worker_count = 1;
    std::vector<std::pair<uint32_t, uint32_t>> row_blocks; // [first, last)

    static SweepPlan make(uint32_t Y, uint32_t workers) {
        if (workers < 1)
            throw ConfigError("worker count must be >= 1");
        uint32_t n = workers > Y ? Y : workers;
        SweepPlan plan;
        plan.worker_count = workers;
        plan.row_blocks.reserve(n);
        uint32_t base = Y / n, rem = Y % n;
        uint32_t y = 0;
        for (uint32_t i = 0; i < n; ++i) {
            uint32_t len = base + (i >= n - rem ? 1 : 0);
            plan.row_blocks.emplace_back(y, y + len);
            y += len;
        }
        return plan;
    }
};

} // namespace octsca
