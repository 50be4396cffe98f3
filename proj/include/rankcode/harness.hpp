/**************************************************************************
 * harness.hpp
 *
 * Copyright 2026 The rankcode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "gabidulin.hpp"
#include "gf.hpp"
#include "linpoly.hpp"
#include "rng.hpp"
#include "twisted.hpp"

namespace rankcode {

/// Default cap on the number of codewords an exhaustive search may visit.
inline constexpr u128 kOracleLimit = u128(1) << 16;

inline const CodeParams& gabidulin_of(const CodeParams& p) { return p; }
inline const CodeParams& gabidulin_of(const TwistedParams& p) { return p.base(); }

inline Word add_words(const FieldCtx& ctx, std::span<const Fe> a, std::span<const Fe> b) {
    Word out;
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(ctx.add(a[i], b[i]));
    return out;
}

inline Word sub_words(const FieldCtx& ctx, std::span<const Fe> a, std::span<const Fe> b) {
    Word out;
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(ctx.sub(a[i], b[i]));
    return out;
}

/// Rank-t error e_i = g(alpha_i) with g = random_error_poly(t, seed).
template<typename Params>
Word inject_error(const Params& params, std::span<const Fe> codeword, std::size_t t, std::uint64_t seed) {
    const auto& code = gabidulin_of(params);
    const LinPoly g = random_error_poly(code.ctx(), t, seed);
    return add_words(code.ctx(), codeword, evaluate_on(code.ctx(), g, code.basis()));
}

/// Number of codewords, q^(nk), or TooLarge if above limit.
template<typename Params>
u128 code_size(const Params& params, u128 limit) {
    u128 size = 1;
    for (std::size_t i = 0; i < params.k(); ++i) {
        if (size > limit / params.ctx().order())
            throw TooLarge("code has more than the enumeration limit of codewords");
        size *= params.ctx().order();
    }
    return size;
}

/// Message number idx, digits in base q^n.
template<typename Params>
std::vector<Fe> message_at(const Params& params, u128 idx) {
    std::vector<Fe> msg;
    for (std::size_t i = 0; i < params.k(); ++i) {
        msg.push_back(params.ctx().element(idx % params.ctx().order()));
        idx /= params.ctx().order();
    }
    return msg;
}

struct OracleResult {
    Word nearest;
    std::vector<Fe> message;
    std::size_t distance = 0;
    bool unique = true;
};

/// Nearest codeword in the rank metric by enumerating the whole code.
template<typename Params>
OracleResult oracle_decode(const Params& params, std::span<const Fe> received, u128 limit = kOracleLimit) {
    const auto& ctx = params.ctx();
    const u128 size = code_size(params, limit);
    OracleResult best;
    best.distance = params.n() + 1;
    for (u128 idx = 0; idx < size; ++idx) {
        auto msg = message_at(params, idx);
        Word c = encode(params, msg);
        const std::size_t d = fe_vector_rank(ctx, sub_words(ctx, received, c));
        if (d < best.distance) {
            best.distance = d;
            best.nearest = std::move(c);
            best.message = std::move(msg);
            best.unique = true;
        } else if (d == best.distance) {
            best.unique = false;
        }
    }
    return best;
}

/// Minimum rank weight over nonzero codewords (the code is GF(q)-linear).
template<typename Params>
std::size_t min_distance(const Params& params, u128 limit = kOracleLimit) {
    const u128 size = code_size(params, limit);
    std::size_t best = params.n();
    for (u128 idx = 1; idx < size; ++idx)
        best = std::min(best, fe_vector_rank(params.ctx(), encode(params, message_at(params, idx))));
    return best;
}

struct TrialRecord {
    std::uint32_t q = 0;
    std::size_t n = 0, k = 0, t = 0;
    std::size_t trials = 0, successes = 0, failures = 0;
    double avg_decode_micros = 0;
    std::uint64_t seed = 0;
};

/**
 * Monte-Carlo round trips for t in [t_lo, t_hi]. Trial i of every t uses
 * SplitMix64(seed + i) for the message and then the error, so runs are
 * reproducible and independent of evaluation order. A trial succeeds when
 * both the message and the error polynomial are recovered exactly; decoder
 * exceptions count as failures.
 */
template<typename Params>
std::vector<TrialRecord> simulate(const Params& params, std::size_t t_lo, std::size_t t_hi, std::size_t trials,
                                  std::uint64_t seed) {
    if (trials < 1)
        throw InvalidParameter("simulate needs at least one trial");
    if (t_hi > params.n() || t_lo > t_hi)
        throw InvalidRank("bad error rank range");
    const auto& ctx = params.ctx();
    const auto& code = gabidulin_of(params);
    std::vector<TrialRecord> out;
    for (std::size_t t = t_lo; t <= t_hi; ++t) {
        TrialRecord rec{ctx.q(), params.n(), params.k(), t, trials, 0, 0, 0.0, seed};
        double total_micros = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            SplitMix64 rng(seed + i);
            std::vector<Fe> msg;
            for (std::size_t j = 0; j < params.k(); ++j)
                msg.push_back(ctx.random(rng));
            const LinPoly g = random_error_poly(ctx, t, rng);
            const Word rx = add_words(ctx, encode(params, msg), evaluate_on(ctx, g, code.basis()));

            bool success = false;
            const auto start = std::chrono::steady_clock::now();
            try {
                const DecodeOutcome res = decode(params, rx);
                success = res.ok && res.error == g;
                for (std::size_t j = 0; success && j < params.k(); ++j)
                    success = res.message[j] == msg[j];
            } catch (const Error&) {
                success = false;
            }
            const auto stop = std::chrono::steady_clock::now();
            total_micros += std::chrono::duration<double, std::micro>(stop - start).count();
            ++(success ? rec.successes : rec.failures);
        }
        rec.avg_decode_micros = total_micros / static_cast<double>(trials);
        out.push_back(rec);
    }
    return out;
}

inline constexpr const char* kCsvHeader = "q,n,k,t,trials,successes,failures,avg_decode_micros,seed";

/// Without timing the avg_decode_micros column holds "NA" so the file is byte-stable.
inline void write_csv(std::ostream& os, std::span<const TrialRecord> records, bool with_timing) {
    os << kCsvHeader << '\n';
    for (const auto& r : records) {
        os << r.q << ',' << r.n << ',' << r.k << ',' << r.t << ',' << r.trials << ',' << r.successes << ','
           << r.failures << ',';
        if (with_timing) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", r.avg_decode_micros);
            os << buf;
        } else {
            os << "NA";
        }
        os << ',' << r.seed << '\n';
    }
}

} // namespace rankcode
