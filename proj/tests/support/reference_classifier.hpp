#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "tsimg/model.hpp"
#include "tsimg/transforms.hpp"

namespace tsimg::testing {

/// Flattened, area-downsampled images of one representation kind plus their labels,
/// in dataset index order.
struct LabeledImages {
  std::vector<std::vector<double>> features;
  std::vector<LabelVector> labels;
};

LabeledImages load_kind(const std::filesystem::path& dataset_dir, transforms::RepresentationKind kind,
                        std::size_t downsample_to = 32);

struct CategoryScore {
  std::size_t positives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct CvReport {
  std::array<CategoryScore, kNumCategories> categories{};
  double macro_f1 = 0.0;
  double accuracy = 0.0;  // mean per-category accuracy
};

struct LogisticOptions {
  std::size_t folds = 5;
  double l2 = 1e-1;
  int iterations = 400;
  // Reweight each category so positives and negatives carry equal total loss.
  bool balanced = true;
};

/// One-vs-rest L2 logistic regression, k-fold cross-validated over contiguous
/// blocks of the (time-ordered) samples. Out-of-fold predictions are pooled
/// before computing per-category F1; macro-F1 averages the categories.
CvReport cross_validate_logistic(const LabeledImages& data, const LogisticOptions& options = {});

}  // namespace tsimg::testing
