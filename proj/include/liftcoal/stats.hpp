#ifndef LIFTCOAL_STATS_HPP
#define LIFTCOAL_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "liftcoal/rng.hpp"

namespace liftcoal {

using CountTable = std::map<std::string, std::uint64_t>;
using Pmf = std::map<std::string, double>;

inline Pmf empirical_pmf(const std::vector<std::string>& samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_pmf: empty input");
    Pmf p;
    for (const auto& s : samples) p[s] += 1.0;
    for (auto& [k, v] : p) v /= static_cast<double>(samples.size());
    return p;
}

inline Pmf normalize_counts(const CountTable& counts) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : counts) total += c;
    if (total == 0) throw std::invalid_argument("normalize_counts: empty input");
    Pmf p;
    for (const auto& [k, c] : counts)
        p[k] = static_cast<double>(c) / static_cast<double>(total);
    return p;
}

/// Total variation distance; missing keys count as probability 0.
inline double tv_distance(const Pmf& p, const Pmf& q) {
    double s = 0.0;
    for (const auto& [k, v] : p) {
        auto it = q.find(k);
        s += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : q)
        if (!p.count(k)) s += v;
    return 0.5 * s;
}

/// 3-sigma style multinomial TV bound for d cells at N samples.
inline double tv_threshold(std::size_t cells, std::uint64_t samples) {
    return 1.5 * std::sqrt(static_cast<double>(cells) / static_cast<double>(samples));
}

/// Run `reps` replicates of fn across `threads` workers, each replicate
/// on its own substream, and merge the resulting count tables. The
/// result is independent of the thread count.
template <class Fn>
CountTable run_replicated_counts(const RngSpec& rng, std::uint64_t reps, int threads, Fn fn) {
    if (reps == 0) throw std::invalid_argument("run_replicated_counts: reps must be >= 1");
    if (threads < 1) threads = 1;
    std::uint64_t nthreads = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), reps);
    std::vector<CountTable> partial(nthreads);
    std::vector<std::thread> workers;
    for (std::uint64_t w = 0; w < nthreads; ++w) {
        workers.emplace_back([&, w] {
            for (std::uint64_t r = w; r < reps; r += nthreads) {
                std::mt19937_64 g = rng.stream(r);
                partial[w][fn(r, g)] += 1;
            }
        });
    }
    for (auto& t : workers) t.join();
    CountTable merged;
    for (const auto& p : partial)
        for (const auto& [k, c] : p) merged[k] += c;
    return merged;
}

/// Same fan-out for scalar-valued replicates; returns values in
/// replicate order, so the output is thread-count independent.
template <class Fn>
std::vector<double> run_replicated_values(const RngSpec& rng, std::uint64_t reps, int threads,
                                          Fn fn) {
    if (reps == 0) throw std::invalid_argument("run_replicated_values: reps must be >= 1");
    if (threads < 1) threads = 1;
    std::uint64_t nthreads = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), reps);
    std::vector<double> out(reps);
    std::vector<std::thread> workers;
    for (std::uint64_t w = 0; w < nthreads; ++w) {
        workers.emplace_back([&, w] {
            for (std::uint64_t r = w; r < reps; r += nthreads) {
                std::mt19937_64 g = rng.stream(r);
                out[r] = fn(r, g);
            }
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

inline double mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double stddev(const std::vector<double>& xs) {
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

/// One-sample Kolmogorov-Smirnov statistic against the exponential(1) CDF.
inline double ks_statistic_exp1(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("ks_statistic_exp1: empty sample");
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double cdf = 1.0 - std::exp(-xs[i]);
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return d;
}

/// Asymptotic KS critical value at the given significance level.
inline double ks_critical(double significance, std::size_t n) {
    double c = std::sqrt(-0.5 * std::log(significance / 2.0));
    return c / std::sqrt(static_cast<double>(n));
}

}  // namespace liftcoal

#endif
