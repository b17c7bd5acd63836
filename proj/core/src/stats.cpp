#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tsimg/ingest.hpp"

namespace tsimg::ingest {

StatsReport dataset_stats(const Manifest& manifest, const std::vector<double>& recording_durations_s) {
  StatsReport report;
  report.recording_count = manifest.entries.size();
  double total_seconds = 0.0;
  for (const auto& d : recording_durations_s) total_seconds += d;
  report.total_hours = total_seconds / 3600.0;

  double annotated = 0.0;
  for (const auto& entry : manifest.entries) {
    for (const auto& a : entry.annotations) {
      auto& cat = report.categories[index_of(a.category)];
      ++cat.count;
      cat.seconds += a.duration_s();
      annotated += a.duration_s();
    }
  }
  if (annotated > 0.0) {
    for (auto& cat : report.categories) cat.share = cat.seconds / annotated;
  }
  return report;
}

StatsReport dataset_stats_with_durations(const Manifest& manifest) {
  std::vector<double> durations;
  for (const auto& entry : manifest.entries) durations.push_back(load_entry(manifest, entry).duration_s());
  return dataset_stats(manifest, durations);
}

std::string stats_table(const StatsReport& report) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "recordings: %zu   total hours: %.3f\n", report.recording_count,
                report.total_hours);
  out << line;
  std::snprintf(line, sizeof line, "%-14s %8s %12s %8s\n", "category", "events", "seconds", "share");
  out << line;
  for (auto category : kAllCategories) {
    const auto& c = report.categories[index_of(category)];
    std::snprintf(line, sizeof line, "%-14s %8zu %12.2f %7.1f%%\n", std::string(to_string(category)).c_str(),
                  c.count, c.seconds, 100.0 * c.share);
    out << line;
  }
  return out.str();
}

std::string stats_json(const StatsReport& report) {
  nlohmann::ordered_json j;
  j["recording_count"] = report.recording_count;
  j["total_hours"] = report.total_hours;
  nlohmann::ordered_json cats = nlohmann::ordered_json::object();
  for (auto category : kAllCategories) {
    const auto& c = report.categories[index_of(category)];
    cats[std::string(to_string(category))] = {{"count", c.count}, {"seconds", c.seconds}, {"share", c.share}};
  }
  j["categories"] = std::move(cats);
  return j.dump(2) + "\n";
}

}  // namespace tsimg::ingest
