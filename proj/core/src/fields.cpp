#include <algorithm>
#include <cmath>
#include <numeric>

#include "tsimg/errors.hpp"
#include "tsimg/transforms.hpp"

namespace tsimg::transforms {

namespace {
constexpr double kZeroVariance = 1e-12;
constexpr std::size_t kMaxEpsilonPairs = 100000;
}  // namespace

Field correlation_matrix(const Field& data) {
  const auto n = data.rows();
  const auto len = data.cols();
  if (n < 2) throw TransformError("correlation_matrix: need at least 2 channels");
  if (len < 2) throw TransformError("correlation_matrix: need at least 2 samples");

  Field centered(n, len);
  std::vector<double> norm(n);
  for (std::size_t c = 0; c < n; ++c) {
    const auto row = data.row(c);
    const double mean = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(len);
    double ss = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      const double v = row[t] - mean;
      centered(c, t) = v;
      ss += v * v;
    }
    norm[c] = std::sqrt(ss);
  }

  Field out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double r = 0.0;
      // Population deviation below the threshold counts as constant.
      const double scale = std::sqrt(static_cast<double>(len));
      if (norm[i] / scale >= kZeroVariance && norm[j] / scale >= kZeroVariance) {
        const auto a = centered.row(i);
        const auto b = centered.row(j);
        r = std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / (norm[i] * norm[j]);
        r = std::clamp(r, -1.0, 1.0);
      }
      out(i, j) = r;
      out(j, i) = r;
    }
  }
  return out;
}

Field recurrence_plot(std::span<const double> channel, double epsilon) {
  const auto n = channel.size();
  Field out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::abs(channel[i] - channel[j]) > epsilon ? 1.0 : 0.0;
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

double choose_epsilon(std::span<const double> channel, double target_rate) {
  if (!(target_rate > 0.0 && target_rate <= 1.0)) {
    throw TransformError("choose_epsilon: target_rate must lie in (0, 1]");
  }
  const auto n = channel.size();
  if (n < 2) return 0.0;
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t keep = std::min(pairs, kMaxEpsilonPairs);

  std::vector<double> dist;
  dist.reserve(keep);
  // Pair number p (in row-major i < j order) is kept when it equals
  // floor(m * pairs / keep) for the next m.
  std::size_t p = 0;
  std::size_t m = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < n && m < keep; ++i) {
    for (std::size_t j = i + 1; j < n && m < keep; ++j, ++p) {
      if (p == next) {
        dist.push_back(std::abs(channel[i] - channel[j]));
        ++m;
        next = static_cast<std::size_t>((static_cast<unsigned __int128>(m) * pairs) / keep);
      }
    }
  }
  std::ranges::sort(dist);
  auto rank = static_cast<std::size_t>(std::ceil(target_rate * static_cast<double>(dist.size()) - 1e-12));
  rank = std::clamp<std::size_t>(rank, 1, dist.size());
  return dist[rank - 1];
}

std::vector<double> rescale_unit(std::span<const double> channel) {
  std::vector<double> out(channel.size(), 0.0);
  if (channel.empty()) return out;
  const auto [lo, hi] = std::ranges::minmax(channel);
  if (!(hi > lo)) return out;
  for (std::size_t i = 0; i < channel.size(); ++i) out[i] = 2.0 * (channel[i] - lo) / (hi - lo) - 1.0;
  return out;
}

std::vector<double> angular_encoding(std::span<const double> channel) {
  auto theta = rescale_unit(channel);
  for (double& v : theta) v = std::acos(std::clamp(v, -1.0, 1.0));
  return theta;
}

Field gasf(std::span<const double> channel) {
  if (channel.empty()) throw TransformError("gasf: empty channel");
  const auto theta = angular_encoding(channel);
  const auto n = theta.size();
  Field out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = std::cos(2.0 * theta[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::cos(theta[i] + theta[j]);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

std::vector<int> mtf_bins(std::span<const double> channel, int n_bins) {
  if (n_bins < 2) throw TransformError("mtf: n_bins must be >= 2");
  if (channel.empty()) throw TransformError("mtf: empty channel");
  std::vector<double> sorted(channel.begin(), channel.end());
  std::ranges::sort(sorted);

  const auto n = sorted.size();
  std::vector<double> edges(static_cast<std::size_t>(n_bins - 1));
  for (int k = 1; k < n_bins; ++k) {
    const double h = static_cast<double>(n - 1) * k / n_bins;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, n - 1);
    edges[static_cast<std::size_t>(k - 1)] = sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
  }

  std::vector<int> bins(channel.size());
  for (std::size_t t = 0; t < channel.size(); ++t) {
    // Number of edges strictly below the value: right-closed bins, and values
    // tied with an edge share the lower bin.
    bins[t] = static_cast<int>(std::ranges::lower_bound(edges, channel[t]) - edges.begin());
  }
  return bins;
}

Field mtf_transition_matrix(std::span<const int> bins, int n_bins) {
  const auto q = static_cast<std::size_t>(n_bins);
  Field w(q, q);
  for (std::size_t t = 0; t + 1 < bins.size(); ++t) {
    w(static_cast<std::size_t>(bins[t]), static_cast<std::size_t>(bins[t + 1])) += 1.0;
  }
  for (std::size_t a = 0; a < q; ++a) {
    auto row = w.row(a);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    if (total == 0.0) {
      row[a] = 1.0;
    } else {
      for (double& v : row) v /= total;
    }
  }
  return w;
}

Field mtf(std::span<const double> channel, int n_bins) {
  if (channel.size() < 2) throw TransformError("mtf: need at least 2 samples");
  const auto bins = mtf_bins(channel, n_bins);
  const auto w = mtf_transition_matrix(bins, n_bins);
  const auto n = channel.size();
  Field out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto wrow = w.row(static_cast<std::size_t>(bins[i]));
    auto orow = out.row(i);
    for (std::size_t j = 0; j < n; ++j) orow[j] = wrow[static_cast<std::size_t>(bins[j])];
  }
  return out;
}

}  // namespace tsimg::transforms
