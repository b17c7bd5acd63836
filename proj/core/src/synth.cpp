#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "tsimg/errors.hpp"
#include "tsimg/ingest.hpp"
#include "tsimg/random.hpp"

namespace tsimg::ingest {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Standard 10-20 montage order; the first four are frontal.
constexpr std::array<const char*, 19> kMontage = {"Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8",
                                                  "T3",  "C3",  "Cz", "C4", "T4", "T5", "P3",
                                                  "Pz",  "P4",  "T6", "O1", "O2"};
constexpr int kFrontalChannels = 4;
// Corner of the one-pole low-pass shaping the background noise.
constexpr double kNoiseCornerHz = 5.0;
constexpr int kLooseElectrodes = 2;

class Injector {
public:
  Injector(MultiChannelRecording& rec, Xoshiro256& rng) : rec_(rec), rng_(rng) {}

  std::size_t n_samples() const { return rec_.num_samples(); }
  int n_channels() const { return static_cast<int>(rec_.channels.size()); }
  double fs() const { return rec_.sample_rate_hz; }
  Xoshiro256& rng() { return rng_; }

  // Adds f(t - t0) on `channel` for samples with t in [t0, t1).
  template <typename F>
  void add(int channel, double t0, double t1, double gain, F&& f) {
    auto& x = rec_.channels[static_cast<std::size_t>(channel)].samples;
    const auto first = static_cast<std::size_t>(std::ceil(t0 * fs()));
    const auto last = std::min(n_samples(), static_cast<std::size_t>(std::ceil(t1 * fs())));
    for (std::size_t i = first; i < last; ++i) {
      x[i] += gain * f(static_cast<double>(i) / fs() - t0);
    }
  }

  void annotate(ArtifactCategory category, double t0, double t1, const std::vector<int>& channels) {
    Annotation a{category, t0, t1, {}};
    if (static_cast<int>(channels.size()) < n_channels()) {
      for (int c : channels) a.channel_names.push_back(rec_.channels[static_cast<std::size_t>(c)].name);
    }
    rec_.annotations.push_back(std::move(a));
  }

private:
  MultiChannelRecording& rec_;
  Xoshiro256& rng_;
};

// Envelope rising and falling over `taper` seconds at both ends of [0, d].
double tukey(double t, double d, double taper) {
  if (t < 0.0 || t > d) return 0.0;
  const double edge = std::min(taper, d / 2.0);
  if (t < edge) return 0.5 * (1.0 - std::cos(std::numbers::pi * t / edge));
  if (t > d - edge) return 0.5 * (1.0 - std::cos(std::numbers::pi * (d - t) / edge));
  return 1.0;
}

// Sum of random sinusoids in [lo, hi] Hz with unit RMS.
struct BandNoise {
  std::vector<double> freq;
  std::vector<double> phase;

  BandNoise(Xoshiro256& rng, double lo, double hi, int components) {
    for (int k = 0; k < components; ++k) {
      freq.push_back(rng.uniform(lo, hi));
      phase.push_back(rng.uniform(0.0, kTwoPi));
    }
  }
  double operator()(double t) const {
    double s = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) s += std::sin(kTwoPi * freq[k] * t + phase[k]);
    return s * std::sqrt(2.0 / static_cast<double>(freq.size()));
  }
};

double random_sign(Xoshiro256& rng) { return rng.uniform() < 0.5 ? -1.0 : 1.0; }

void eye_movement(Injector& inj, double t0) {
  auto& rng = inj.rng();
  const double d = rng.uniform(0.3, 0.6);
  const double amp = random_sign(rng) * rng.uniform(4.0, 6.0);
  std::vector<int> channels;
  for (int c = 0; c < std::min(kFrontalChannels, inj.n_channels()); ++c) {
    channels.push_back(c);
    const double gain = 1.0 - 0.1 * c;
    inj.add(c, t0, t0 + d, gain * amp, [d](double t) { return std::sin(std::numbers::pi * t / d); });
  }
  inj.annotate(ArtifactCategory::eye_movement, t0, t0 + d, channels);
}

void muscle(Injector& inj, double t0) {
  auto& rng = inj.rng();
  const double d = rng.uniform(0.2, 1.0);
  const int width = std::min(inj.n_channels(), 6 + static_cast<int>(rng.below(9)));
  const int first = static_cast<int>(rng.below(static_cast<std::uint64_t>(inj.n_channels() - width + 1)));
  const double amp = rng.uniform(6.0, 12.0);
  const double hi = std::min(60.0, 0.45 * inj.fs());
  std::vector<int> channels;
  for (int c = first; c < first + width; ++c) {
    channels.push_back(c);
    const BandNoise noise(rng, std::min(20.0, hi / 2.0), hi, 12);
    inj.add(c, t0, t0 + d, amp, [&](double t) { return tukey(t, d, 0.03) * noise(t); });
  }
  inj.annotate(ArtifactCategory::muscle, t0, t0 + d, channels);
}

void electrode(Injector& inj, double t0, std::span<const int> loose) {
  auto& rng = inj.rng();
  const int channel = loose[rng.below(loose.size())];
  const double amp = random_sign(rng) * rng.uniform(8.0, 12.0);
  const double tau = rng.uniform(0.3, 0.8);
  // Beyond tau*ln(10) the decay is below 10% of the step; ten time constants
  // leave less than 5e-5 of it.
  inj.add(channel, t0, t0 + 10.0 * tau, amp, [tau](double t) { return std::exp(-t / tau); });
  // Measured from the first sample, which carries the sampled peak.
  const double first = std::ceil(t0 * inj.fs()) / inj.fs();
  inj.annotate(ArtifactCategory::electrode, t0, first + tau * std::numbers::ln10, {channel});
}

void chewing(Injector& inj, double t0) {
  auto& rng = inj.rng();
  const double d = rng.uniform(2.0, 5.0);
  const double rate = rng.uniform(1.2, 1.8);
  const double burst = 0.25;
  const double amp = rng.uniform(4.0, 6.0);
  const double jaw = random_sign(rng) * rng.uniform(2.0, 4.0);
  const double hi = std::min(60.0, 0.45 * inj.fs());
  std::vector<int> channels;
  for (int c = 0; c < inj.n_channels(); ++c) {
    channels.push_back(c);
    const double gain = rng.uniform(0.5, 1.0);
    const BandNoise noise(rng, std::min(20.0, hi / 2.0), hi, 12);
    // Each bite: a muscle burst riding on a slow jaw-movement deflection.
    for (double start = 0.0; start + burst <= d; start += 1.0 / rate) {
      inj.add(c, t0 + start, t0 + start + burst, gain, [&](double t) {
        return amp * tukey(t, burst, 0.03) * noise(t + start) + jaw * std::sin(std::numbers::pi * t / burst);
      });
    }
  }
  inj.annotate(ArtifactCategory::chewing, t0, t0 + d, channels);
}

void shivering(Injector& inj, double t0) {
  auto& rng = inj.rng();
  const double d = rng.uniform(1.0, 3.0);
  const double freq = rng.uniform(8.0, 12.0);
  const double phase = rng.uniform(0.0, kTwoPi);
  const double amp = rng.uniform(2.5, 3.5);
  std::vector<int> channels;
  for (int c = 0; c < inj.n_channels(); ++c) {
    if (rng.uniform() < 0.75) channels.push_back(c);
  }
  if (channels.empty()) channels.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(inj.n_channels()))));
  for (int c : channels) {
    inj.add(c, t0, t0 + d, amp,
            [=](double t) { return tukey(t, d, 0.1) * std::sin(kTwoPi * freq * t + phase); });
  }
  inj.annotate(ArtifactCategory::shivering, t0, t0 + d, channels);
}

// Longest possible extent of each event type, used to keep events inside the recording.
double max_extent(ArtifactCategory category) {
  switch (category) {
    case ArtifactCategory::chewing: return 5.0;
    case ArtifactCategory::electrode: return 0.8 * std::numbers::ln10;
    case ArtifactCategory::eye_movement: return 0.6;
    case ArtifactCategory::muscle: return 1.0;
    case ArtifactCategory::shivering: return 3.0;
  }
  return 0.0;
}

void validate(const SynthConfig& cfg) {
  if (!(cfg.duration_s > 0.0)) throw ConfigError("synth: duration must be positive");
  if (!(cfg.sample_rate_hz > 0.0)) throw ConfigError("synth: sample_rate_hz must be positive");
  if (cfg.n_channels < 1) throw ConfigError("synth: n_channels must be at least 1");
  for (std::size_t k = 0; k < kNumCategories; ++k) {
    if (!(cfg.event_rates[k] >= 0.0)) {
      throw ConfigError("synth: event rate for " + std::string(to_string(kAllCategories[k])) + " must be >= 0");
    }
  }
  if (!(cfg.background.noise_sigma >= 0.0)) throw ConfigError("synth: noise_sigma must be >= 0");
}

}  // namespace

std::array<double, kNumCategories> SynthConfig::default_event_rates() {
  std::array<double, kNumCategories> rates{};
  rates[index_of(ArtifactCategory::chewing)] = 1.2;
  rates[index_of(ArtifactCategory::electrode)] = 3.0;
  rates[index_of(ArtifactCategory::eye_movement)] = 12.0;
  rates[index_of(ArtifactCategory::muscle)] = 8.0;
  rates[index_of(ArtifactCategory::shivering)] = 1.5;
  return rates;
}

MultiChannelRecording synthesize(const SynthConfig& cfg) {
  validate(cfg);
  Xoshiro256 rng(cfg.seed);

  MultiChannelRecording rec;
  rec.recording_id = cfg.recording_id.empty() ? "synth-" + std::to_string(cfg.seed) : cfg.recording_id;
  rec.sample_rate_hz = cfg.sample_rate_hz;
  const auto n = static_cast<std::size_t>(std::llround(cfg.duration_s * cfg.sample_rate_hz));
  const double fs = cfg.sample_rate_hz;

  const double rho = std::exp(-kTwoPi * kNoiseCornerHz / fs);
  const double innovation = cfg.background.noise_sigma * std::sqrt(1.0 - rho * rho);
  for (int c = 0; c < cfg.n_channels; ++c) {
    Channel ch;
    ch.name = cfg.n_channels == static_cast<int>(kMontage.size())
                  ? kMontage[static_cast<std::size_t>(c)]
                  : "ch" + std::string(c < 9 ? "0" : "") + std::to_string(c + 1);
    ch.samples.resize(n);
    const double phase = rng.uniform(0.0, kTwoPi);
    double noise = cfg.background.noise_sigma * rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / fs;
      ch.samples[i] = cfg.background.amplitude * std::sin(kTwoPi * cfg.background.alpha_hz * t + phase) + noise;
      noise = rho * noise + innovation * rng.normal();
    }
    rec.channels.push_back(std::move(ch));
  }

  // Electrode pops recur on a few loose electrodes of each recording.
  std::vector<int> loose;
  for (int k = 0; k < std::min(kLooseElectrodes, cfg.n_channels); ++k) {
    int c = 0;
    do {
      c = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.n_channels)));
    } while (std::ranges::find(loose, c) != loose.end());
    loose.push_back(c);
  }

  Injector inj(rec, rng);
  const double duration = static_cast<double>(n) / fs;
  for (auto category : kAllCategories) {
    const double per_second = cfg.event_rates[index_of(category)] / 60.0;
    if (per_second <= 0.0) continue;
    // Onsets form a Poisson process over the part of the recording where a
    // maximal event still fits.
    const double usable = duration - max_extent(category) - 1.0 / fs;
    for (double t = rng.exponential(per_second); t < usable; t += rng.exponential(per_second)) {
      switch (category) {
        case ArtifactCategory::chewing: chewing(inj, t); break;
        case ArtifactCategory::electrode: electrode(inj, t, loose); break;
        case ArtifactCategory::eye_movement: eye_movement(inj, t); break;
        case ArtifactCategory::muscle: muscle(inj, t); break;
        case ArtifactCategory::shivering: shivering(inj, t); break;
      }
    }
  }
  std::stable_sort(rec.annotations.begin(), rec.annotations.end(),
                   [](const Annotation& a, const Annotation& b) { return a.start_s < b.start_s; });
  check_recording(rec);
  return rec;
}

}  // namespace tsimg::ingest
