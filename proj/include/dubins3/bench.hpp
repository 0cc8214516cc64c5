#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dubins3/three_point.hpp"

namespace dubins3::bench {

/// One benchmark row; the CSV columns follow this field order exactly.
struct BenchRecord {
    std::uint64_t instance_id = 0;
    double min_pairwise_dist = 0.0;
    double len_approx = 0.0;
    double len_iter = 0.0;
    double len_disc = 0.0;
    double dev_approx_pct = 0.0;
    double dev_iter_pct = 0.0;
    std::int64_t t_iter_ns = 0;
    std::int64_t t_disc_ns = 0;
    std::string winning_class;
    int iterations = 0;
};

struct BenchSummary {
    int n = 0;
    double mean_dev_approx_pct = 0.0;
    double median_dev_approx_pct = 0.0;
    double p95_dev_approx_pct = 0.0;
    double mean_dev_iter_pct = 0.0;
    double median_dev_iter_pct = 0.0;
    double p95_dev_iter_pct = 0.0;
    /// Median per-instance runtime factors against the discretized baseline.
    double factor_iter = 0.0;
    double factor_approx = 0.0;
};

struct BenchOptions {
    int n = 1000;
    double env_size = 10.0;
    double min_dist = 4.0;
    double rmin = 1.0;
    int disc_k = 360;
    std::uint64_t seed = 1;
    /// Repeats per timed solve; the median is recorded. 0 skips timing and
    /// writes 0 ns, which keeps repeated runs byte-identical.
    int time_reps = 5;
};

struct BenchResult {
    std::vector<BenchRecord> records;
    BenchSummary summary;
};

namespace detail {

inline double percentile(std::vector<double> v, double p) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double idx = p * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

/// Median wall-clock nanoseconds of `reps` calls to fn. The lengths the
/// solves return are accumulated into a sink so the calls cannot be elided.
template <typename Fn>
std::int64_t time_median_ns(int reps, Fn&& fn) {
    if (reps <= 0) return 0;
    static volatile double sink = 0.0;
    std::vector<std::int64_t> ns(static_cast<std::size_t>(reps));
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        acc += fn();
        const auto t1 = std::chrono::steady_clock::now();
        ns[static_cast<std::size_t>(r)] =
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
    }
    sink = sink + acc;
    std::sort(ns.begin(), ns.end());
    return ns[ns.size() / 2];
}

inline std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace detail

inline int worker_count() {
    if (const char* env = std::getenv("DUBINS3_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Deterministic instance stream: positions and headings uniform in the
/// square, whole draws rejected until every pairwise distance clears
/// min_dist. Draw order (six coordinates, then two headings on acceptance)
/// is part of the seed contract.
inline std::vector<ThreePointInstance> generate_instances(const BenchOptions& opts) {
    if (opts.n < 1) throw std::invalid_argument("bench: n must be >= 1");
    if (!(opts.env_size > 0.0) || !(opts.rmin > 0.0) || opts.min_dist < 0.0)
        throw std::invalid_argument("bench: env_size and rmin must be positive");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(0.0, opts.env_size);
    std::uniform_real_distribution<double> a(0.0, two_pi);
    std::vector<ThreePointInstance> out;
    out.reserve(static_cast<std::size_t>(opts.n));
    for (int i = 0; i < opts.n; ++i) {
        bool placed = false;
        for (long attempt = 0; attempt < 1000000 && !placed; ++attempt) {
            const double x1 = u(rng), y1 = u(rng);
            const double x2 = u(rng), y2 = u(rng);
            const double x3 = u(rng), y3 = u(rng);
            const Point p1{x1, y1}, p2{x2, y2}, p3{x3, y3};
            if (std::min({distance(p1, p2), distance(p2, p3), distance(p1, p3)}) < opts.min_dist)
                continue;
            const double h1 = a(rng), h2 = a(rng);
            out.push_back({{p1, h1}, p2, {p3, h2}, opts.rmin});
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("bench: min-dist " + std::to_string(opts.min_dist) +
                                     " looks infeasible for env size " +
                                     std::to_string(opts.env_size));
    }
    return out;
}

/// Solve and time every instance across a worker pool (DUBINS3_THREADS caps
/// it); rows come back ordered by instance_id no matter which worker ran
/// them. All value columns are deterministic for a fixed seed; only the two
/// timing columns vary run to run (unless time_reps is 0).
inline BenchResult run(const BenchOptions& opts) {
    const auto instances = generate_instances(opts);
    const std::size_t n = instances.size();
    std::vector<BenchRecord> records(n);
    std::vector<std::int64_t> t_approx(n, 0);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        ThreePointOptions approx_only;
        approx_only.approx_only = true;
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            const ThreePointInstance& inst = instances[i];
            const auto sol_a = solve_three_point(inst, approx_only);
            const auto sol_i = solve_three_point(inst);
            const auto disc = discretize_heading(inst, opts.disc_k);
            BenchRecord& rec = records[i];
            rec.instance_id = i;
            rec.min_pairwise_dist = min_pairwise_distance(inst);
            rec.len_approx = sol_a.total_length;
            rec.len_iter = sol_i.total_length;
            rec.len_disc = disc.total_length;
            rec.dev_approx_pct = 100.0 * (rec.len_approx - rec.len_disc) / rec.len_disc;
            rec.dev_iter_pct = 100.0 * (rec.len_iter - rec.len_disc) / rec.len_disc;
            rec.winning_class = sol_i.path_class ? sol_i.path_class->word() : "FALLBACK";
            rec.iterations = sol_i.iterations;
            rec.t_iter_ns = detail::time_median_ns(
                opts.time_reps, [&] { return solve_three_point(inst).total_length; });
            rec.t_disc_ns = detail::time_median_ns(
                opts.time_reps, [&] { return discretize_heading(inst, opts.disc_k).total_length; });
            t_approx[i] = detail::time_median_ns(
                opts.time_reps, [&] { return solve_three_point(inst, approx_only).total_length; });
        }
    };
    const int workers = std::max(1, std::min<int>(worker_count(), static_cast<int>(n)));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    BenchSummary sum;
    sum.n = static_cast<int>(n);
    std::vector<double> dev_a, dev_i, ratio_i, ratio_a;
    for (std::size_t i = 0; i < n; ++i) {
        dev_a.push_back(records[i].dev_approx_pct);
        dev_i.push_back(records[i].dev_iter_pct);
        if (records[i].t_iter_ns > 0)
            ratio_i.push_back(static_cast<double>(records[i].t_disc_ns) /
                              static_cast<double>(records[i].t_iter_ns));
        if (t_approx[i] > 0)
            ratio_a.push_back(static_cast<double>(records[i].t_disc_ns) /
                              static_cast<double>(t_approx[i]));
    }
    sum.mean_dev_approx_pct = detail::mean(dev_a);
    sum.median_dev_approx_pct = detail::percentile(dev_a, 0.5);
    sum.p95_dev_approx_pct = detail::percentile(dev_a, 0.95);
    sum.mean_dev_iter_pct = detail::mean(dev_i);
    sum.median_dev_iter_pct = detail::percentile(dev_i, 0.5);
    sum.p95_dev_iter_pct = detail::percentile(dev_i, 0.95);
    sum.factor_iter = detail::percentile(ratio_i, 0.5);
    sum.factor_approx = detail::percentile(ratio_a, 0.5);
    return {std::move(records), sum};
}

inline std::string to_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "instance_id,min_pairwise_dist,len_approx,len_iter,len_disc,"
           "dev_approx_pct,dev_iter_pct,t_iter_ns,t_disc_ns,winning_class,iterations\n";
    for (const BenchRecord& r : records) {
        out << r.instance_id << ',' << detail::fmt(r.min_pairwise_dist) << ','
            << detail::fmt(r.len_approx) << ',' << detail::fmt(r.len_iter) << ','
            << detail::fmt(r.len_disc) << ',' << detail::fmt(r.dev_approx_pct) << ','
            << detail::fmt(r.dev_iter_pct) << ',' << r.t_iter_ns << ',' << r.t_disc_ns << ','
            << r.winning_class << ',' << r.iterations << '\n';
    }
    return out.str();
}

inline std::string format_summary(const BenchSummary& s) {
    std::ostringstream out;
    out << "instances: " << s.n << '\n'
        << "dev_approx_pct  mean " << detail::fmt(s.mean_dev_approx_pct) << "  median "
        << detail::fmt(s.median_dev_approx_pct) << "  p95 " << detail::fmt(s.p95_dev_approx_pct)
        << '\n'
        << "dev_iter_pct    mean " << detail::fmt(s.mean_dev_iter_pct) << "  median "
        << detail::fmt(s.median_dev_iter_pct) << "  p95 " << detail::fmt(s.p95_dev_iter_pct)
        << '\n'
        << "runtime factor vs discretization (median): iterative " << detail::fmt(s.factor_iter)
        << "x, closed-form " << detail::fmt(s.factor_approx) << "x\n";
    return out.str();
}

}  // namespace dubins3::bench
