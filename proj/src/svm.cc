// Copyright 2026 The HybridSybil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hybridsybil/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "json.hpp"

#include "hybridsybil/error.h"
#include "hybridsybil/io.h"

namespace hybridsybil {
namespace {

using Json = nlohmann::json;

constexpr double kTau = 1e-12;
constexpr double kMinKktTolerance = 1e-12;

double Dot(const FeatureArray& a, const FeatureArray& b) {
  double sum = 0.0;
  for (std::size_t f = 0; f < kNumFeatures; ++f) sum += a[f] * b[f];
  return sum;
}

double SquaredDistance(const FeatureArray& a, const FeatureArray& b) {
  double sum = 0.0;
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    const double d = a[f] - b[f];
    sum += d * d;
  }
  return sum;
}

// Side of the hyperplane a class belongs to: +1 where z >= 0.
double SideOf(Label label, const LabelConvention& convention) {
  const double sign = static_cast<double>(convention.sybil_decision_sign);
  return label == Label::kSybil ? sign : -sign;
}

void CheckTrainingInput(std::span<const FeatureVector> vectors,
                        std::span<const Label> labels) {
  if (vectors.size() != labels.size()) {
    throw Error(ErrorCode::kMalformedData,
                "feature vectors and labels differ in length");
  }
  if (vectors.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no training samples");
  }
  bool has_sybil = false;
  bool has_benign = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::kSybil) has_sybil = true;
    else if (labels[i] == Label::kBenign) has_benign = true;
    else {
      throw Error(ErrorCode::kDegenerateLabels,
                  "training sample '" + vectors[i].account_id +
                      "' has no benign/sybil label");
    }
    for (double value : vectors[i].values) {
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::kMalformedData,
                    "non-finite feature in sample '" +
                        vectors[i].account_id + "'");
      }
    }
  }
  if (!has_sybil || !has_benign) {
    throw Error(ErrorCode::kDegenerateLabels,
                "training needs both benign and sybil samples");
  }
}

// Dual of the soft-margin problem with an unregularized bias,
//   min 1/2 a^T Q a - 1^T a,  0 <= a_i <= C_i,  sum_i y_i a_i = 0,
// solved two coordinates at a time. The primal weights are kept explicitly,
// which makes every Q entry a dot product of two 18-vectors.
class DualSolver {
 public:
  DualSolver(std::vector<FeatureArray> x, std::vector<double> y,
             std::vector<double> upper)
      : x_(std::move(x)),
        y_(std::move(y)),
        upper_(std::move(upper)),
        alpha_(x_.size(), 0.0),
        gradient_(x_.size(), -1.0) {
    w_.fill(0.0);
  }

  // Stops once the maximal KKT violation is below the working threshold and
  // the duality gap is below `tolerance` times the primal objective. The
  // threshold starts at `tolerance` and shrinks tenfold until the gap holds.
  void Solve(double tolerance, std::size_t max_updates) {
    double kkt_tolerance = tolerance;
    std::size_t step = 0;
    while (step < max_updates) {
      RefreshGradient();
      std::size_t i = 0;
      std::size_t j = 0;
      if (!SelectWorkingSet(kkt_tolerance, i, j)) {
        const double primal = PrimalObjective();
        if (primal - DualObjective() <= tolerance * primal ||
            kkt_tolerance <= kMinKktTolerance) {
          return;
        }
        kkt_tolerance *= 0.1;
        continue;
      }
      UpdatePair(i, j);
      ++step;
    }
    RefreshGradient();
  }

  const FeatureArray& weights() const { return w_; }

  // Offset rho of the decision function w^T x - rho.
  double Offset() const {
    double upper_bound = std::numeric_limits<double>::infinity();
    double lower_bound = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < x_.size(); ++t) {
      const double yg = y_[t] * gradient_[t];
      if (AtUpper(t)) {
        if (y_[t] < 0) upper_bound = std::min(upper_bound, yg);
        else lower_bound = std::max(lower_bound, yg);
      } else if (AtLower(t)) {
        if (y_[t] > 0) upper_bound = std::min(upper_bound, yg);
        else lower_bound = std::max(lower_bound, yg);
      } else {
        ++free_count;
        free_sum += yg;
      }
    }
    if (free_count > 0) return free_sum / static_cast<double>(free_count);
    return (upper_bound + lower_bound) / 2.0;
  }

 private:
  bool AtUpper(std::size_t t) const { return alpha_[t] >= upper_[t]; }
  bool AtLower(std::size_t t) const { return alpha_[t] <= 0.0; }

  double DualObjective() const {
    double sum = 0.0;
    for (double a : alpha_) sum += a;
    return sum - 0.5 * Dot(w_, w_);
  }

  double PrimalObjective() const {
    const double rho = Offset();
    double hinge = 0.0;
    for (std::size_t t = 0; t < x_.size(); ++t) {
      hinge += upper_[t] * std::max(0.0, 1.0 - y_[t] * (Dot(w_, x_[t]) - rho));
    }
    return 0.5 * Dot(w_, w_) + hinge;
  }

  void RefreshGradient() {
    for (std::size_t t = 0; t < x_.size(); ++t) {
      gradient_[t] = y_[t] * Dot(w_, x_[t]) - 1.0;
    }
  }

  // Maximal violating pair with second-order choice of the second index.
  bool SelectWorkingSet(double tolerance, std::size_t& out_i,
                        std::size_t& out_j) const {
    const std::size_t n = x_.size();
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t gmax_index = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y_[t] > 0) {
        if (!AtUpper(t) && -gradient_[t] >= gmax) {
          gmax = -gradient_[t];
          gmax_index = t;
        }
      } else if (!AtLower(t) && gradient_[t] >= gmax) {
        gmax = gradient_[t];
        gmax_index = t;
      }
    }
    if (gmax_index == n) return false;
    const std::size_t i = gmax_index;

    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_objective = std::numeric_limits<double>::infinity();
    std::size_t gmin_index = n;
    for (std::size_t t = 0; t < n; ++t) {
      double grad_diff = 0.0;
      if (y_[t] > 0) {
        if (AtLower(t)) continue;
        gmax2 = std::max(gmax2, gradient_[t]);
        grad_diff = gmax + gradient_[t];
      } else {
        if (AtUpper(t)) continue;
        gmax2 = std::max(gmax2, -gradient_[t]);
        grad_diff = gmax - gradient_[t];
      }
      if (grad_diff <= 0.0) continue;
      double quad = SquaredDistance(x_[i], x_[t]);
      if (quad <= 0.0) quad = kTau;
      const double objective = -(grad_diff * grad_diff) / quad;
      if (objective <= best_objective) {
        best_objective = objective;
        gmin_index = t;
      }
    }
    if (gmax + gmax2 < tolerance || gmin_index == n) return false;
    out_i = i;
    out_j = gmin_index;
    return true;
  }

  void UpdatePair(std::size_t i, std::size_t j) {
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    const double ci = upper_[i];
    const double cj = upper_[j];
    double quad = SquaredDistance(x_[i], x_[j]);
    if (quad <= 0.0) quad = kTau;
    double& ai = alpha_[i];
    double& aj = alpha_[j];

    if (y_[i] != y_[j]) {
      const double delta = (-gradient_[i] - gradient_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0) {
        if (aj < 0) { aj = 0; ai = diff; }
      } else if (ai < 0) {
        ai = 0;
        aj = -diff;
      }
      if (diff > ci - cj) {
        if (ai > ci) { ai = ci; aj = ci - diff; }
      } else if (aj > cj) {
        aj = cj;
        ai = cj + diff;
      }
    } else {
      const double delta = (gradient_[i] - gradient_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > ci) {
        if (ai > ci) { ai = ci; aj = sum - ci; }
      } else if (aj < 0) {
        aj = 0;
        ai = sum;
      }
      if (sum > cj) {
        if (aj > cj) { aj = cj; ai = sum - cj; }
      } else if (ai < 0) {
        ai = 0;
        aj = sum;
      }
    }

    const double di = (ai - old_i) * y_[i];
    const double dj = (aj - old_j) * y_[j];
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
      w_[f] += di * x_[i][f] + dj * x_[j][f];
    }
  }

  std::vector<FeatureArray> x_;
  std::vector<double> y_;
  std::vector<double> upper_;
  std::vector<double> alpha_;
  std::vector<double> gradient_;
  FeatureArray w_{};
};

void RequireFinite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kModelFormat,
                std::string("model field '") + what + "' is not finite");
  }
}

FeatureArray ReadArray(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorCode::kModelFormat,
                std::string("model field '") + key + "' missing or not an array");
  }
  const Json& array = doc[key];
  if (array.size() != kNumFeatures) {
    throw Error(ErrorCode::kModelFormat,
                std::string("model field '") + key + "' has " +
                    std::to_string(array.size()) + " entries, expected " +
                    std::to_string(kNumFeatures));
  }
  FeatureArray out{};
  for (std::size_t f = 0; f < kNumFeatures; ++f) {
    if (!array[f].is_number()) {
      throw Error(ErrorCode::kModelFormat,
                  std::string("model field '") + key + "' has a non-number");
    }
    out[f] = array[f].get<double>();
    RequireFinite(out[f], key);
  }
  return out;
}

int ReadSignedUnit(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw Error(ErrorCode::kModelFormat,
                std::string("label_convention.") + key + " missing");
  }
  const int value = doc[key].get<int>();
  if (value != 1 && value != -1) {
    throw Error(ErrorCode::kModelFormat,
                std::string("label_convention.") + key + " must be +1 or -1");
  }
  return value;
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(regularization > 0.0) || !std::isfinite(regularization)) {
    throw Error(ErrorCode::kConfig, "svm C must be positive");
  }
  if (max_epochs < 1) {
    throw Error(ErrorCode::kConfig, "svm max_epochs must be at least 1");
  }
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kConfig, "svm tolerance must be positive");
  }
  if (!(sybil_cost > 0.0) || !(benign_cost > 0.0)) {
    throw Error(ErrorCode::kConfig, "svm class costs must be positive");
  }
}

LinearModel Train(std::span<const FeatureVector> vectors,
                  std::span<const Label> labels, const TrainConfig& config) {
  config.Validate();
  CheckTrainingInput(vectors, labels);

  LinearModel model;
  const std::size_t n = vectors.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.rng_seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<FeatureArray> x(n);
  std::vector<double> y(n);
  std::vector<double> upper(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    x[k] = vectors[i].values;
    y[k] = SideOf(labels[i], model.label_convention);
    upper[k] = config.regularization * (labels[i] == Label::kSybil
                                            ? config.sybil_cost
                                            : config.benign_cost);
  }

  DualSolver solver(std::move(x), std::move(y), std::move(upper));
  solver.Solve(config.tolerance,
               static_cast<std::size_t>(config.max_epochs) * n);
  model.weights = solver.weights();
  model.bias = solver.Offset();
  return model;
}

LinearModel TrainOnRaw(std::span<const FeatureVector> vectors,
                       std::span<const Label> labels,
                       const TrainConfig& config) {
  const NormalizationStats stats = FitNormalization(vectors);
  std::vector<FeatureVector> normalized;
  normalized.reserve(vectors.size());
  for (const FeatureVector& v : vectors) normalized.push_back(Normalize(v, stats));
  LinearModel model = Train(normalized, labels, config);
  model.normalization = stats;
  return model;
}

double DecisionValue(const LinearModel& model, const FeatureVector& vector) {
  return Dot(model.weights, vector.values) - model.bias;
}

double OrientedDecisionValue(const LinearModel& model,
                             const FeatureVector& vector) {
  return model.label_convention.sybil_decision_sign *
         DecisionValue(model, vector);
}

double Sigmoid(double z) {
  if (std::isnan(z)) return z;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double SybilProbability(const LinearModel& model, const FeatureVector& vector) {
  return Sigmoid(OrientedDecisionValue(model, vector));
}

double ScoreRaw(const LinearModel& model, const FeatureVector& raw) {
  return SybilProbability(model, Normalize(raw, model.normalization));
}

double HingeObjective(const LinearModel& model,
                      std::span<const FeatureVector> vectors,
                      std::span<const Label> labels,
                      const TrainConfig& config) {
  double objective = 0.5 * Dot(model.weights, model.weights);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const double side = SideOf(labels[i], model.label_convention);
    const double cost = config.regularization *
                        (labels[i] == Label::kSybil ? config.sybil_cost
                                                    : config.benign_cost);
    objective += cost * std::max(0.0, 1.0 - side * DecisionValue(model, vectors[i]));
  }
  return objective;
}

std::string SerializeModel(const LinearModel& model) {
  Json doc;
  doc["version"] = kModelFormatVersion;
  doc["weights"] = model.weights;
  doc["bias"] = model.bias;
  doc["means"] = model.normalization.means;
  doc["stds"] = model.normalization.stds;
  doc["label_convention"] = {
      {"sybil", model.label_convention.sybil_label},
      {"benign", model.label_convention.benign_label},
      {"sybil_decision_sign", model.label_convention.sybil_decision_sign},
  };
  return doc.dump(2) + "\n";
}

LinearModel ParseModel(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kModelFormat,
                std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kModelFormat, "model file is not a JSON object");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer() ||
      doc["version"].get<int>() != kModelFormatVersion) {
    throw Error(ErrorCode::kModelFormat,
                "unsupported model version, expected " +
                    std::to_string(kModelFormatVersion));
  }
  LinearModel model;
  model.weights = ReadArray(doc, "weights");
  model.normalization.means = ReadArray(doc, "means");
  model.normalization.stds = ReadArray(doc, "stds");
  for (double sd : model.normalization.stds) {
    if (!(sd > 0.0)) {
      throw Error(ErrorCode::kModelFormat, "model stds must be positive");
    }
  }
  if (!doc.contains("bias") || !doc["bias"].is_number()) {
    throw Error(ErrorCode::kModelFormat, "model field 'bias' missing");
  }
  model.bias = doc["bias"].get<double>();
  RequireFinite(model.bias, "bias");

  if (!doc.contains("label_convention") ||
      !doc["label_convention"].is_object()) {
    throw Error(ErrorCode::kModelFormat, "model has no label_convention");
  }
  const Json& convention = doc["label_convention"];
  model.label_convention.sybil_label = ReadSignedUnit(convention, "sybil");
  model.label_convention.benign_label = ReadSignedUnit(convention, "benign");
  model.label_convention.sybil_decision_sign =
      ReadSignedUnit(convention, "sybil_decision_sign");
  if (model.label_convention.sybil_label ==
      model.label_convention.benign_label) {
    throw Error(ErrorCode::kModelFormat,
                "label_convention maps both classes to the same label");
  }
  return model;
}

void SaveModel(const LinearModel& model, const std::filesystem::path& path) {
  WriteFile(path, SerializeModel(model));
}

LinearModel LoadModel(const std::filesystem::path& path) {
  return ParseModel(ReadFile(path));
}

}  // namespace hybridsybil
