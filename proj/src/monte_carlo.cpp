#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "erm2/engine.hpp"
#include "erm2/error.hpp"

namespace erm2 {

namespace {

constexpr std::uint64_t kShardTrials = 1u << 14;

// Running mean and sum of squared deviations; merged with Chan's formula.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.count == 0.0) return b;
  if (b.count == 0.0) return a;
  Moments out;
  out.count = a.count + b.count;
  const double d = b.mean - a.mean;
  out.mean = a.mean + d * (b.count / out.count);
  out.m2 = a.m2 + b.m2 + d * d * (a.count * b.count / out.count);
  return out;
}

// Fixed-shape pairwise reduction over [first, last).
Moments reduce(const std::vector<Moments>& parts, std::size_t first, std::size_t last) {
  if (last - first == 1) return parts[first];
  const std::size_t mid = first + (last - first) / 2;
  return merge(reduce(parts, first, mid), reduce(parts, mid, last));
}

Moments run_shard(const RevenueCurve& curve, std::size_t n, std::uint64_t trials,
                  std::uint64_t seed, std::uint64_t shard) {
  Rng rng(seed, shard);
  std::vector<double> qs(n);
  Moments m;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& q : qs) q = rng.uniform();
    std::sort(qs.begin(), qs.end());
    m.add(curve.value_at(detail::chosen_quantile_sorted(curve, qs)));
  }
  return m;
}

unsigned resolve_threads(unsigned requested, std::size_t shards) {
  unsigned t = requested;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, shards));
}

}  // namespace

ErmEstimate erm_mc(const RevenueCurve& curve, std::size_t n, std::uint64_t trials,
                   std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "need at least one trial");

  const std::size_t shards = static_cast<std::size_t>((trials + kShardTrials - 1) / kShardTrials);
  std::vector<Moments> parts(shards);
  auto shard_trials = [&](std::size_t s) {
    const std::uint64_t begin = s * kShardTrials;
    return std::min(kShardTrials, trials - begin);
  };

  const unsigned workers = resolve_threads(threads, shards);
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards; ++s) {
      parts[s] = run_shard(curve, n, shard_trials(s), seed, s);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < shards; s = next++) {
          parts[s] = run_shard(curve, n, shard_trials(s), seed, s);
        }
      });
    }
  }

  const Moments total = reduce(parts, 0, shards);
  const double var = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
  return {total.mean, Method::MonteCarlo, std::sqrt(var / total.count), trials,
          static_cast<std::uint32_t>(n)};
}

}  // namespace erm2
