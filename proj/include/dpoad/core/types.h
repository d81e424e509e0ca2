// Copyright 2026 The DPOAD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPOAD_CORE_TYPES_H_
#define DPOAD_CORE_TYPES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpoad {

// One individual's record; arity is fixed per dataset.
struct Record {
  std::vector<double> attributes;
};

enum class Phase { kLearning, kPrediction };

absl::string_view PhaseName(Phase phase);
absl::StatusOr<Phase> ParsePhase(absl::string_view name);

// Row-major matrix with rows = histogram bins and columns = time windows.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int64_t rows, int64_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }
  int64_t size() const { return rows_ * cols_; }

  T& at(int64_t row, int64_t col) { return data_[row * cols_ + col]; }
  const T& at(int64_t row, int64_t col) const {
    return data_[row * cols_ + col];
  }

  std::span<T> row(int64_t r) {
    return std::span<T>(data_).subspan(r * cols_, cols_);
  }
  std::span<const T> row(int64_t r) const {
    return std::span<const T>(data_).subspan(r * cols_, cols_);
  }

  std::span<const T> data() const { return data_; }
  std::span<T> data() { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<T> data_;
};

// Real-valued observations (noisy counts or pseudo-counts) per bin and
// window. This is what crosses the owner/analyst boundary.
using ObservationMatrix = DenseMatrix<double>;

// Raw per-bin, per-window counts. Entries are non-negative. Owner side only.
class CountMatrix {
 public:
  CountMatrix() = default;

  static absl::StatusOr<CountMatrix> Create(int64_t bins, int64_t windows,
                                            std::vector<int64_t> counts);
  static CountMatrix Zeros(int64_t bins, int64_t windows);

  int64_t bins() const { return counts_.rows(); }
  int64_t windows() const { return counts_.cols(); }
  int64_t at(int64_t bin, int64_t window) const {
    return counts_.at(bin, window);
  }
  std::span<const int64_t> bin(int64_t b) const { return counts_.row(b); }
  std::span<const int64_t> data() const { return counts_.data(); }

  absl::Status Set(int64_t bin, int64_t window, int64_t count);

  ObservationMatrix ToObservations() const;

  bool operator==(const CountMatrix&) const = default;

 private:
  DenseMatrix<int64_t> counts_;
};

// Probability mass over the count domain {0, ..., domain_max}.
class DiscretePdf {
 public:
  static constexpr double kSumTolerance = 1e-9;

  // Validates non-negativity and unit total within kSumTolerance.
  static absl::StatusOr<DiscretePdf> Create(std::vector<double> mass);
  // Normalizes non-negative weights; all-zero weights give the uniform pmf.
  static absl::StatusOr<DiscretePdf> FromWeights(std::vector<double> weights);
  static DiscretePdf Uniform(int64_t domain_max);
  static DiscretePdf PointMass(int64_t domain_max, int64_t at);

  int64_t domain_max() const { return static_cast<int64_t>(mass_.size()) - 1; }
  int64_t domain_size() const { return static_cast<int64_t>(mass_.size()); }
  double operator[](int64_t c) const { return mass_[c]; }
  std::span<const double> mass() const { return mass_; }

  double Mean() const;
  double Variance() const;

  bool operator==(const DiscretePdf&) const = default;

 private:
  explicit DiscretePdf(std::vector<double> mass) : mass_(std::move(mass)) {}
  std::vector<double> mass_;
};

// Privacy parameters for one calibration round. Requires epsilon > 0 and
// 0 < rho < gamma < 1; rho must also stay below 1/2.
struct PrivacyParams {
  double epsilon = 1.0;
  double gamma = 0.2;
  double rho = 0.1;
  Phase phase = Phase::kLearning;

  static absl::StatusOr<PrivacyParams> Create(double epsilon, double gamma,
                                              double rho, Phase phase);
};

}  // namespace dpoad

#endif  // DPOAD_CORE_TYPES_H_
