#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

// Shared numeric plumbing: a reproducible RNG, order-fixed summation,
// least-squares fitting, adaptive quadrature, and a deterministic
// block-parallel loop. Results never depend on the worker count.

namespace hvp {

// splitmix64: tiny, stable across platforms; used wherever tests or
// commands need reproducible pseudo-random draws.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // Uniform in [0,1), 53-bit resolution.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }
    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  private:
    std::uint64_t state_;
};

// Pairwise reduction over a fixed index order; the usual accuracy win over
// naive accumulation and, more importantly here, a result that is a pure
// function of the input sequence.
double pairwise_sum(std::span<const double> xs);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};
LineFit least_squares(std::span<const double> xs, std::span<const double> ys);

// Adaptive Simpson on [a,b] with absolute tolerance. Deterministic.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 40);

// Runs fn(block) for block = 0..n_blocks-1 on `threads` workers. Blocks are
// handed out by atomic counter; fn must write only block-indexed state so
// the outcome is independent of scheduling.
void parallel_for_blocks(std::size_t n_blocks, int threads,
                         const std::function<void(std::size_t)>& fn);

// Shortest-width formatting helpers used by every writer: %.17g keeps
// doubles bit-exact through a parse round-trip.
std::string format_g17(double v);

}  // namespace hvp
