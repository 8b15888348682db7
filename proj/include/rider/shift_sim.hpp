#pragma once

#include "rider/arma.hpp"
#include "rider/data.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace rider {

struct ParentSample {
    Eigen::VectorXd x;
    double y = 0.0;
};

/// Parent distribution P0 represented through its quantile transform
/// D = h(U).  The binned uniform `u` carries the distribution shift; any
/// additional coordinates the sample needs are drawn from the auxiliary
/// engine, which leaves the likelihood ratio a function of u alone.
struct ParentDistribution {
    int sample_dim = 1;
    std::string description;
    std::function<ParentSample(double u, std::mt19937_64& aux)> quantile_transform;
};

/// Uniform[0,1]^dim, first coordinate tilted.  Outcomes are zero.
ParentDistribution uniform_parent(int dim = 1);

/// Standard Gaussian features via the inverse normal CDF on the first
/// coordinate; remaining coordinates auxiliary.  Outcomes are zero.
ParentDistribution gaussian_parent(int dim = 1);

/// Regression parent for weighted-ERM experiments: Gaussian features with
/// the first coordinate tilted, and
///   Y = X' theta0 + shift_strength * sin(2 pi shift_frequency u) + noise.
/// The sine term is a nonlinear function of the tilted uniform, so bin
/// tilts move the best linear predictor over time; with shift_strength = 0
/// this is a plain well-specified linear model.
ParentDistribution linear_model_parent(const Eigen::VectorXd& theta0,
                                       double noise_sigma,
                                       double shift_strength = 0.0,
                                       double shift_frequency = 3.0);

/// Latent bin-weight realizations: values(t, j) = W_j^t.
struct WeightField {
    int T = 0;
    int m = 0;
    Eigen::MatrixXd values;    // T x m
    long clamp_count = 0;      // negative values clamped to 0 (roundoff guard)

    void validate() const;
};

/// Simulate the weight field: each bin evolves as an independent ARMA path
/// (1,000 burn-in steps, initialized at the stationary mean), derived from
/// per-bin substreams of `seed`.
WeightField simulate_weight_field(const ArmaShiftProcess& proc, int T, int m,
                                  std::uint64_t seed);

/// Draw n i.i.d. samples from the tilted distribution: bin J with
/// probability W_J / sum_j W_j, then U uniform on I_J, then D = h(U).
TimedDataset sample_perturbed_dataset(const ParentDistribution& parent,
                                      const Eigen::VectorXd& weights_row, int n,
                                      long long t, std::uint64_t seed);

/// Simulate a whole panel plus its latent field (the field is returned for
/// oracle-based tests).  sample_sizes has one entry per time step.
std::pair<Panel, WeightField> simulate_panel(const ParentDistribution& parent,
                                             const ArmaShiftProcess& proc, int T,
                                             int m,
                                             const std::vector<int>& sample_sizes,
                                             std::uint64_t seed);

/// Per-bin means of phi(h(u)) computed by fixed-grid quadrature (midpoint
/// rule, `points_per_bin` nodes per bin).  Exact expectations under the
/// tilted law follow as sum_j W_j bin_mean_j / sum_j W_j.
Eigen::VectorXd bin_means(const ParentDistribution& parent, int m,
                          const std::function<double(const ParentSample&)>& phi,
                          int points_per_bin = 256);

/// E^t[phi] under the tilt given by one weight-field row; exact up to the
/// bin_means quadrature.
double tilted_mean(const Eigen::VectorXd& weights_row,
                   const Eigen::VectorXd& bin_mean_values);

} // namespace rider
