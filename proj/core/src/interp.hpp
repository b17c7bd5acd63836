#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

// 1-D length changes shared by PAA and image resizing.
namespace tsimg::detail {

// Mean of the input over [i*n/len, (i+1)*n/len), partial samples weighted by
// the covered fraction. Requires len <= n.
inline void area_average(std::span<const double> in, std::span<double> out) {
  const auto n = static_cast<double>(in.size());
  const auto len = static_cast<double>(out.size());
  const double width = n / len;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double lo = static_cast<double>(i) * n / len;
    const double hi = static_cast<double>(i + 1) * n / len;
    const auto first = static_cast<std::size_t>(std::floor(lo));
    const auto last = std::min(in.size(), static_cast<std::size_t>(std::ceil(hi)));
    double acc = 0.0;
    for (std::size_t j = first; j < last; ++j) {
      const double cover = std::min(hi, static_cast<double>(j + 1)) - std::max(lo, static_cast<double>(j));
      if (cover > 0.0) acc += cover * in[j];
    }
    out[i] = acc / width;
  }
}

// Linear interpolation on pixel centres: output i samples input position
// (i + 0.5) * n / len - 0.5, clamped to the ends.
inline void linear_stretch(std::span<const double> in, std::span<double> out) {
  const auto n = in.size();
  const double scale = static_cast<double>(n) / static_cast<double>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double pos = std::clamp((static_cast<double>(i) + 0.5) * scale - 0.5, 0.0, static_cast<double>(n - 1));
    const auto j = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(j);
    out[i] = j + 1 < n ? in[j] + frac * (in[j + 1] - in[j]) : in[j];
  }
}

// Identity, area average or linear stretch depending on the length change.
inline void rescale_1d(std::span<const double> in, std::span<double> out) {
  if (in.size() == out.size()) {
    std::copy(in.begin(), in.end(), out.begin());
  } else if (out.size() < in.size()) {
    area_average(in, out);
  } else {
    linear_stretch(in, out);
  }
}

}  // namespace tsimg::detail
