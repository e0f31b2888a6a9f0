#pragma once

// Monte Carlo layer: single-path runner with stopping rules, deterministic
// parallel ensembles, free-play moment estimators, and a binned martingale
// check. Every estimator aggregates results in path-id order after the
// parallel section, so output is a pure function of (params, seed), not of
// the thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "model.hpp"
#include "philox.hpp"

namespace cpdo {

enum class Termination { cash_out, cash_in, alive };

inline std::string to_string(Termination t) {
    switch (t) {
        case Termination::cash_out: return "cash_out";
        case Termination::cash_in: return "cash_in";
        default: return "alive";
    }
}

// |x - level| at or below this marks the comparison as numerically fragile;
// flagged paths are counted so exact ties never pass silently
inline constexpr double near_tie_tolerance = 1e-12;

struct PathPoint {
    int outcome;  // +1 heads, -1 tails
    double x;     // net capital after the toss
};

struct PathRecord {
    std::uint64_t path_id = 0;
    Termination termination = Termination::alive;
    long tosses_used = 0;  // tosses actually consumed
    double final_x = 0.0;
    long n_heads = 0;
    bool near_tie = false;
    std::vector<PathPoint> trajectory;  // filled only on request
};

// Net capital is recomputed from the (toss, heads) counts each step rather
// than updated multiplicatively, so a 50,000-toss path carries no
// accumulated rounding and X is an exact function of the counts.
inline PathRecord run_path(const ModelParams& params, std::uint64_t seed,
                           std::uint64_t path_id, long max_tosses,
                           bool record_trajectory = false) {
    params.validate();
    if (max_tosses < 0) throw validation_error("max_tosses must be >= 0");
    CoinStream stream(seed, path_id, params.p_heads);
    const double lb = std::log1p(params.delta);
    const double dl = std::log1p(-params.delta) - lb;

    PathRecord rec;
    rec.path_id = path_id;
    if (record_trajectory) rec.trajectory.reserve(static_cast<std::size_t>(max_tosses));

    for (long t = 1; t <= max_tosses; ++t) {
        const CoinOutcome c = stream.toss(static_cast<std::uint64_t>(t - 1));
        if (c.value > 0) ++rec.n_heads;
        const double x = -std::expm1(static_cast<double>(t) * lb +
                                     static_cast<double>(rec.n_heads) * dl);
        if (record_trajectory) rec.trajectory.push_back({c.value, x});
        rec.tosses_used = t;
        rec.final_x = x;
        if (std::abs(x + params.gamma) <= near_tie_tolerance ||
            std::abs(x - params.cash_in_level) <= near_tie_tolerance)
            rec.near_tie = true;
        if (x <= -params.gamma) {
            rec.termination = Termination::cash_out;
            return rec;
        }
        if (x >= params.cash_in_level) {
            rec.termination = Termination::cash_in;
            return rec;
        }
    }
    rec.termination = Termination::alive;
    return rec;
}

namespace detail {

// Runs fn(path_id) for path_id in [0, n) across `parallelism` threads.
// Work is handed out in chunks through an atomic cursor; after each path the
// shared done-counter feeds the progress hook. Ordering of fn calls is
// unspecified -- callers must write into per-path slots.
inline void parallel_paths(
    std::size_t n, int parallelism, const std::function<void(std::size_t)>& fn,
    const std::function<void(std::size_t, std::size_t)>& progress = nullptr) {
    if (parallelism < 1) throw validation_error("parallelism must be >= 1");
    const std::size_t chunk = 64;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t lo = next.fetch_add(chunk);
            if (lo >= n) return;
            const std::size_t hi = std::min(n, lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) fn(i);
            const std::size_t d = done.fetch_add(hi - lo) + (hi - lo);
            if (progress) progress(d, n);
        }
    };
    if (parallelism == 1 || n <= chunk) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(parallelism));
    for (int i = 0; i < parallelism; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace detail

struct SimOptions {
    std::size_t n_paths = 1000;
    long max_tosses = 50000;
    std::uint64_t seed = 1;
    int parallelism = 1;
    bool record_trajectories = false;
    std::function<void(std::size_t, std::size_t)> progress;  // (done, total)
};

inline constexpr std::size_t ruin_histogram_buckets = 50;

struct EnsembleReport {
    // inputs echoed so a report is self-describing
    double gamma = 0.0, delta = 0.0, p_heads = 0.0, cash_in_level = 0.0;
    std::size_t n_paths = 0;
    long max_tosses = 0;
    std::uint64_t seed = 0;

    std::size_t n_cash_out = 0, n_cash_in = 0, n_alive = 0;
    double prop_cash_out = 0.0, prop_cash_in = 0.0, prop_alive = 0.0;
    double se_cash_out = 0.0, se_cash_in = 0.0, se_alive = 0.0;
    double mean_final_x = 0.0;
    double var_final_x = 0.0;  // sample variance, n - 1 denominator
    std::size_t near_tie_paths = 0;
    // cash-out times binned into equal-width buckets over [1, max_tosses]
    std::vector<std::uint64_t> ruin_histogram;
    double ruin_bucket_width = 0.0;
};

struct EnsembleResult {
    EnsembleReport report;
    std::vector<PathRecord> records;  // indexed by path_id
};

inline EnsembleResult run_ensemble(const ModelParams& params,
                                   const SimOptions& opts) {
    params.validate();
    if (opts.n_paths == 0) throw validation_error("n_paths must be >= 1");
    if (opts.max_tosses < 1) throw validation_error("max_tosses must be >= 1");

    EnsembleResult out;
    out.records.resize(opts.n_paths);
    detail::parallel_paths(
        opts.n_paths, opts.parallelism,
        [&](std::size_t id) {
            out.records[id] = run_path(params, opts.seed, id, opts.max_tosses,
                                       opts.record_trajectories);
        },
        opts.progress);

    EnsembleReport& rep = out.report;
    rep.gamma = params.gamma;
    rep.delta = params.delta;
    rep.p_heads = params.p_heads;
    rep.cash_in_level = params.cash_in_level;
    rep.n_paths = opts.n_paths;
    rep.max_tosses = opts.max_tosses;
    rep.seed = opts.seed;
    rep.ruin_histogram.assign(ruin_histogram_buckets, 0);
    rep.ruin_bucket_width = static_cast<double>(opts.max_tosses) /
                            static_cast<double>(ruin_histogram_buckets);

    // single ordered pass: counts, Welford moments, histogram
    double mean = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (const PathRecord& r : out.records) {
        switch (r.termination) {
            case Termination::cash_out: {
                ++rep.n_cash_out;
                const std::size_t b = std::min(
                    ruin_histogram_buckets - 1,
                    static_cast<std::size_t>(
                        static_cast<std::uint64_t>(r.tosses_used - 1) *
                        ruin_histogram_buckets /
                        static_cast<std::uint64_t>(opts.max_tosses)));
                ++rep.ruin_histogram[b];
                break;
            }
            case Termination::cash_in: ++rep.n_cash_in; break;
            default: ++rep.n_alive; break;
        }
        if (r.near_tie) ++rep.near_tie_paths;
        ++n;
        const double d = r.final_x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (r.final_x - mean);
    }
    rep.mean_final_x = mean;
    rep.var_final_x = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;

    const double nd = static_cast<double>(opts.n_paths);
    auto finish = [&](std::size_t c, double& prop, double& se) {
        prop = static_cast<double>(c) / nd;
        se = std::sqrt(prop * (1.0 - prop) / nd);
    };
    finish(rep.n_cash_out, rep.prop_cash_out, rep.se_cash_out);
    finish(rep.n_cash_in, rep.prop_cash_in, rep.se_cash_in);
    finish(rep.n_alive, rep.prop_alive, rep.se_alive);
    return out;
}

// Fraction of ensemble paths still in play after toss k
inline double empirical_survival(const std::vector<PathRecord>& records,
                                 long k) {
    if (records.empty()) throw validation_error("empty ensemble");
    std::size_t alive = 0;
    for (const PathRecord& r : records) {
        if (r.termination == Termination::alive
                ? r.tosses_used >= k   // ran to max_tosses without stopping
                : r.tosses_used > k)   // stopped, but strictly after k
            ++alive;
    }
    return static_cast<double>(alive) / static_cast<double>(records.size());
}

// Free play: no stopping rules, X_k read off the heads count. Returned in
// path-id order.
inline std::vector<double> free_play_capitals(const ModelParams& params,
                                              long k, std::size_t n_paths,
                                              std::uint64_t seed,
                                              int parallelism = 1) {
    params.validate();
    if (k < 0) throw validation_error("k must be >= 0");
    std::vector<double> xs(n_paths);
    detail::parallel_paths(n_paths, parallelism, [&](std::size_t id) {
        CoinStream stream(seed, id, params.p_heads);
        long h = 0;
        for (long t = 0; t < k; ++t)
            if (stream.toss(static_cast<std::uint64_t>(t)).value > 0) ++h;
        xs[id] = capital_from_heads(k, h, params.delta);
    });
    return xs;
}

struct SampleMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // n - 1 denominator
    double se_mean = 0.0;
};

inline SampleMoments sample_moments(std::span<const double> xs) {
    if (xs.size() < 2) throw validation_error("need at least 2 samples");
    SampleMoments m;
    m.n = xs.size();
    double mean = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (double v : xs) {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }
    m.mean = mean;
    m.variance = m2 / static_cast<double>(m.n - 1);
    m.se_mean = std::sqrt(m.variance / static_cast<double>(m.n));
    return m;
}

inline SampleMoments empirical_moments(const ModelParams& params, long k,
                                       std::size_t n_paths, std::uint64_t seed,
                                       int parallelism = 1) {
    const std::vector<double> xs =
        free_play_capitals(params, k, n_paths, seed, parallelism);
    return sample_moments(xs);
}

struct MartingaleBucket {
    double x_lo = 0.0, x_hi = 0.0;  // range of prior states in the bucket
    std::size_t n = 0;
    double mean_dx = 0.0;
    double stddev = 0.0;
    double z = 0.0;  // mean_dx / (stddev / sqrt(n))
};

struct MartingaleReport {
    long k = 0;
    std::size_t n_samples = 0;
    std::vector<MartingaleBucket> buckets;
    double max_abs_z = 0.0;
    bool pass(double z_crit = 3.89) const { return max_abs_z <= z_crit; }
};

// Fair-coin martingale check at toss k: E[X_k - X_{k-1} | X_{k-1}] = 0.
// Samples (X_{k-1}, increment) across paths, ranks by prior state with
// path-id tiebreak, splits into equal-count deciles, and z-scores each
// bucket's mean increment. A biased coin shifts every bucket by about
// (2p - 1) * delta * (1 - x), many standard errors at these sample sizes.
inline MartingaleReport martingale_test(const ModelParams& params, long k,
                                        std::size_t n_paths,
                                        std::uint64_t seed,
                                        int parallelism = 1,
                                        std::size_t n_buckets = 10) {
    params.validate();
    if (k < 1) throw validation_error("k must be >= 1");
    if (n_buckets < 1 || n_paths < 2 * n_buckets)
        throw validation_error("need at least 2 samples per bucket");

    std::vector<double> x_prev(n_paths), dx(n_paths);
    const double lb = std::log1p(params.delta);
    const double dl = std::log1p(-params.delta) - lb;
    detail::parallel_paths(n_paths, parallelism, [&](std::size_t id) {
        CoinStream stream(seed, id, params.p_heads);
        long h = 0;
        for (long t = 0; t < k - 1; ++t)
            if (stream.toss(static_cast<std::uint64_t>(t)).value > 0) ++h;
        const double xp = -std::expm1(static_cast<double>(k - 1) * lb +
                                      static_cast<double>(h) * dl);
        const CoinOutcome c = stream.toss(static_cast<std::uint64_t>(k - 1));
        if (c.value > 0) ++h;
        const double xk = -std::expm1(static_cast<double>(k) * lb +
                                      static_cast<double>(h) * dl);
        x_prev[id] = xp;
        dx[id] = xk - xp;
    });

    std::vector<std::size_t> order(n_paths);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x_prev[a] != x_prev[b]) return x_prev[a] < x_prev[b];
        return a < b;
    });

    MartingaleReport rep;
    rep.k = k;
    rep.n_samples = n_paths;
    std::size_t start = 0;
    for (std::size_t b = 0; b < n_buckets; ++b) {
        // spread the remainder over the leading buckets
        const std::size_t size =
            n_paths / n_buckets + (b < n_paths % n_buckets ? 1 : 0);
        MartingaleBucket bucket;
        bucket.n = size;
        bucket.x_lo = x_prev[order[start]];
        bucket.x_hi = x_prev[order[start + size - 1]];
        double mean = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            const double v = dx[order[start + i]];
            const double d = v - mean;
            mean += d / static_cast<double>(i + 1);
            m2 += d * (v - mean);
        }
        bucket.mean_dx = mean;
        bucket.stddev = std::sqrt(m2 / static_cast<double>(size - 1));
        bucket.z = bucket.stddev > 0.0
                       ? mean / (bucket.stddev /
                                 std::sqrt(static_cast<double>(size)))
                       : (mean == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(bucket.z));
        rep.buckets.push_back(bucket);
        start += size;
    }
    return rep;
}

}  // namespace cpdo
