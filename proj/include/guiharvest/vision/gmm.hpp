#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace guiharvest::vision {

// Adaptive per-pixel Gaussian mixture background model with a bounded
// component count and a constant complexity penalty on component weights.
struct GmmParams {
  int max_components = 5;
  double learning_rate = 1.0 / 500.0;   // alpha
  double match_threshold = 16.0;        // squared Mahalanobis distance cutoff
  double background_ratio = 0.1;        // foreground weight share c_f
  double complexity_prior = 0.05;       // c_T; per-frame decrement is alpha*c_T
  double initial_variance = 225.0;
  double min_variance = 4.0;
  double max_variance = 5.0 * 225.0;
};

// Update order per pixel, all arithmetic in double:
//   1. match: candidates with d^2 <= match_threshold * var, winner has the
//      smallest d^2/var, ties to the lowest slot.
//   2. matched: w_b += alpha*(1-w_b), others w -= alpha*w; then with
//      k = alpha/w_b the mean moves by k*d and the variance by k*(d^2 - var),
//      clamped to [min_variance, max_variance].
//      unmatched frame: all w -= alpha*w.
//   3. every component pays the complexity penalty w -= alpha*complexity_prior.
//   4. components with w <= 0 are dropped, order preserved.
//   5. unmatched frame: insert (alpha, x, initial_variance), evicting the
//      lowest-weight slot (lowest index on ties) when the pixel is full.
//   6. weights renormalize to sum 1 (sequential sum in slot order).
//   7. the pixel is background iff it matched and the total weight of
//      components ranked strictly above the match by w/sqrt(var) descending
//      (stable in slot order) is at most 1 - background_ratio.
class GmmBackgroundModel {
 public:
  GmmBackgroundModel(int width, int height, GmmParams params = {});

  // Consumes one grayscale frame; returns the foreground mask, 1 = foreground.
  // Throws DimensionMismatch when the buffer size disagrees.
  std::vector<std::uint8_t> update(std::span<const std::uint8_t> gray);

  // Drops all per-pixel state, as if freshly constructed.
  void reset();

  int width() const { return width_; }
  int height() const { return height_; }
  const GmmParams& params() const { return params_; }

  struct Component {
    double weight = 0;
    double mean = 0;
    double variance = 0;
  };
  int component_count(std::size_t pixel) const;
  Component component(std::size_t pixel, int slot) const;
  double weight_sum(std::size_t pixel) const;

 private:
  bool update_pixel(std::size_t pixel, double x);

  int width_;
  int height_;
  GmmParams params_;
  std::vector<double> weight_;
  std::vector<double> mean_;
  std::vector<double> var_;
  std::vector<std::uint8_t> count_;
};

// Fraction of foreground pixels in a mask, in [0, 1].
double foreground_ratio(const std::vector<std::uint8_t>& mask);

}  // namespace guiharvest::vision
