#include "guiharvest/vision/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "guiharvest/errors.hpp"

namespace guiharvest::vision {

GmmBackgroundModel::GmmBackgroundModel(int width, int height, GmmParams params)
    : width_(width), height_(height), params_(params) {
  if (width <= 0 || height <= 0)
    throw DimensionMismatch("non-positive model dimensions");
  if (params_.max_components < 1 || params_.max_components > 64 ||
      params_.learning_rate <= 0 || params_.learning_rate > 1)
    throw DimensionMismatch("bad mixture parameters");
  std::size_t slots =
      static_cast<std::size_t>(width) * height * params_.max_components;
  weight_.assign(slots, 0.0);
  mean_.assign(slots, 0.0);
  var_.assign(slots, 0.0);
  count_.assign(static_cast<std::size_t>(width) * height, 0);
}

void GmmBackgroundModel::reset() {
  std::fill(count_.begin(), count_.end(), 0);
}

int GmmBackgroundModel::component_count(std::size_t pixel) const {
  return count_[pixel];
}

GmmBackgroundModel::Component GmmBackgroundModel::component(std::size_t pixel,
                                                            int slot) const {
  std::size_t base = pixel * params_.max_components;
  return {weight_[base + slot], mean_[base + slot], var_[base + slot]};
}

double GmmBackgroundModel::weight_sum(std::size_t pixel) const {
  std::size_t base = pixel * params_.max_components;
  double sum = 0.0;
  for (int i = 0; i < count_[pixel]; ++i) sum += weight_[base + i];
  return sum;
}

// Returns true when the pixel is foreground.
bool GmmBackgroundModel::update_pixel(std::size_t pixel, double x) {
  const int max_k = params_.max_components;
  const double alpha = params_.learning_rate;
  std::size_t base = pixel * max_k;
  double* w = weight_.data() + base;
  double* mu = mean_.data() + base;
  double* var = var_.data() + base;
  int m = count_[pixel];

  int matched = -1;
  double matched_d = 0.0;
  double best_rel = 0.0;
  for (int i = 0; i < m; ++i) {
    double d = x - mu[i];
    double d2 = d * d;
    if (d2 <= params_.match_threshold * var[i]) {
      double rel = d2 / var[i];
      if (matched < 0 || rel < best_rel) {
        matched = i;
        matched_d = d;
        best_rel = rel;
      }
    }
  }

  if (matched >= 0) {
    for (int i = 0; i < m; ++i) {
      if (i == matched) {
        w[i] = w[i] + alpha * (1.0 - w[i]);
      } else {
        w[i] = w[i] - alpha * w[i];
      }
    }
    double k = alpha / w[matched];
    double d2 = matched_d * matched_d;
    mu[matched] = mu[matched] + k * matched_d;
    var[matched] = var[matched] + k * (d2 - var[matched]);
    var[matched] = std::clamp(var[matched], params_.min_variance,
                              params_.max_variance);
  } else {
    for (int i = 0; i < m; ++i) w[i] = w[i] - alpha * w[i];
  }

  const double penalty = alpha * params_.complexity_prior;
  for (int i = 0; i < m; ++i) w[i] = w[i] - penalty;

  // Drop dead components, keeping slot order. The matched component always
  // survives: its weight is at least alpha*(1 - complexity_prior).
  int kept = 0;
  for (int i = 0; i < m; ++i) {
    if (w[i] > 0.0) {
      if (kept != i) {
        w[kept] = w[i];
        mu[kept] = mu[i];
        var[kept] = var[i];
      }
      if (i == matched) matched = kept;
      ++kept;
    }
  }
  m = kept;

  if (matched < 0) {
    int slot;
    if (m < max_k) {
      slot = m;
      ++m;
    } else {
      slot = 0;
      for (int i = 1; i < m; ++i) {
        if (w[i] < w[slot]) slot = i;
      }
    }
    w[slot] = alpha;
    mu[slot] = x;
    var[slot] = params_.initial_variance;
  }

  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += w[i];
  for (int i = 0; i < m; ++i) w[i] = w[i] / sum;

  count_[pixel] = static_cast<std::uint8_t>(m);
  if (matched < 0) return true;

  // Rank by w/sqrt(var) descending; slot order breaks ties.
  int order[256];
  std::iota(order, order + m, 0);
  std::stable_sort(order, order + m, [&](int a, int b) {
    return w[a] / std::sqrt(var[a]) > w[b] / std::sqrt(var[b]);
  });
  double before = 0.0;
  for (int i = 0; i < m; ++i) {
    if (order[i] == matched) break;
    before += w[order[i]];
  }
  return before > 1.0 - params_.background_ratio;
}

std::vector<std::uint8_t> GmmBackgroundModel::update(
    std::span<const std::uint8_t> gray) {
  std::size_t n = static_cast<std::size_t>(width_) * height_;
  if (gray.size() != n)
    throw DimensionMismatch("frame size does not match model size");
  std::vector<std::uint8_t> mask(n);
  for (std::size_t p = 0; p < n; ++p) {
    mask[p] = update_pixel(p, static_cast<double>(gray[p])) ? 1 : 0;
  }
  return mask;
}

double foreground_ratio(const std::vector<std::uint8_t>& mask) {
  if (mask.empty()) return 0.0;
  std::uint64_t fg = 0;
  for (std::uint8_t v : mask) fg += v != 0;
  return static_cast<double>(fg) / static_cast<double>(mask.size());
}

}  // namespace guiharvest::vision
