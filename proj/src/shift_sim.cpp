#include "rider/shift_sim.hpp"

#include "rider/random.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rider {

namespace {

constexpr int kBurnIn = 1000;

double inverse_normal_cdf(double u) {
    static const boost::math::normal_distribution<double> standard_normal;
    const double clamped = std::clamp(u, 1e-16, 1.0 - 1e-16);
    return boost::math::quantile(standard_normal, clamped);
}

} // namespace

ParentDistribution uniform_parent(int dim) {
    if (dim < 1) throw std::invalid_argument("parent dimension must be positive");
    ParentDistribution parent;
    parent.sample_dim = dim;
    parent.description = "uniform[0,1]^" + std::to_string(dim);
    parent.quantile_transform = [dim](double u, std::mt19937_64& aux) {
        ParentSample s;
        s.x.resize(dim);
        s.x(0) = u;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int i = 1; i < dim; ++i) s.x(i) = unif(aux);
        s.y = 0.0;
        return s;
    };
    return parent;
}

ParentDistribution gaussian_parent(int dim) {
    if (dim < 1) throw std::invalid_argument("parent dimension must be positive");
    ParentDistribution parent;
    parent.sample_dim = dim;
    parent.description = "gaussian^" + std::to_string(dim);
    parent.quantile_transform = [dim](double u, std::mt19937_64& aux) {
        ParentSample s;
        s.x.resize(dim);
        s.x(0) = inverse_normal_cdf(u);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int i = 1; i < dim; ++i) s.x(i) = normal(aux);
        s.y = 0.0;
        return s;
    };
    return parent;
}

ParentDistribution linear_model_parent(const Eigen::VectorXd& theta0,
                                       double noise_sigma, double shift_strength,
                                       double shift_frequency) {
    const int dim = static_cast<int>(theta0.size());
    if (dim < 1) throw std::invalid_argument("linear model needs at least one feature");
    if (noise_sigma < 0.0) throw std::invalid_argument("noise sigma must be nonnegative");
    ParentDistribution parent;
    parent.sample_dim = dim;
    parent.description = "linear_model d=" + std::to_string(dim);
    parent.quantile_transform = [theta0, noise_sigma, shift_strength, shift_frequency,
                                 dim](double u, std::mt19937_64& aux) {
        ParentSample s;
        s.x.resize(dim);
        s.x(0) = inverse_normal_cdf(u);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int i = 1; i < dim; ++i) s.x(i) = normal(aux);
        s.y = theta0.dot(s.x);
        if (shift_strength != 0.0) {
            s.y += shift_strength * std::sin(2.0 * M_PI * shift_frequency * u);
        }
        if (noise_sigma > 0.0) s.y += noise_sigma * normal(aux);
        return s;
    };
    return parent;
}

void WeightField::validate() const {
    if (values.rows() != T || values.cols() != m) {
        throw std::invalid_argument("weight field dimensions disagree with T, m");
    }
    if ((values.array() < 0.0).any()) {
        throw std::invalid_argument("weight field contains negative entries");
    }
}

WeightField simulate_weight_field(const ArmaShiftProcess& proc, int T, int m,
                                  std::uint64_t seed) {
    if (T < 1 || m < 1) throw std::invalid_argument("T and m must be positive");
    proc.validate();
    if (!check_stationarity(proc)) {
        throw std::invalid_argument("refusing to simulate a nonstationary weight process");
    }

    WeightField field;
    field.T = T;
    field.m = m;
    field.values.resize(T, m);

    if (proc.innovation.variance() == 0.0) {
        // Degenerate innovations: the process sits at its stationary mean.
        field.values.setConstant(proc.target_mean);
        return field;
    }

    const int p = proc.p();
    const int q = proc.q();
    const double eps_mean = proc.innovation.mean();

    for (int j = 0; j < m; ++j) {
        auto rng = make_engine(seed, StreamDomain::weight_bin, static_cast<std::uint64_t>(j));
        std::vector<double> w_hist(std::max(p, 1), proc.target_mean);
        std::vector<double> e_hist(std::max(q, 1), eps_mean);
        for (int step = 0; step < kBurnIn + T; ++step) {
            const double eps = proc.innovation.sample(rng);
            double w = proc.c + eps;
            for (int i = 0; i < p; ++i) w += proc.phi[i] * w_hist[i];
            for (int i = 0; i < q; ++i) w += proc.alpha[i] * e_hist[i];
            if (w < 0.0) {
                w = 0.0;
                ++field.clamp_count;
            }
            if (p > 0) {
                std::rotate(w_hist.rbegin(), w_hist.rbegin() + 1, w_hist.rend());
                w_hist[0] = w;
            }
            if (q > 0) {
                std::rotate(e_hist.rbegin(), e_hist.rbegin() + 1, e_hist.rend());
                e_hist[0] = eps;
            }
            if (step >= kBurnIn) field.values(step - kBurnIn, j) = w;
        }
    }
    return field;
}

TimedDataset sample_perturbed_dataset(const ParentDistribution& parent,
                                      const Eigen::VectorXd& weights_row, int n,
                                      long long t, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    const int m = static_cast<int>(weights_row.size());
    if (m < 1) throw std::invalid_argument("weights row is empty");

    std::vector<double> cumulative(m);
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
        const double w = weights_row(j);
        if (w < 0.0) throw std::invalid_argument("weights must be nonnegative");
        total += w;
        cumulative[j] = total;
    }
    if (total <= 0.0) {
        throw std::invalid_argument("all-zero weights row defines no distribution");
    }

    auto rng = make_engine(seed, StreamDomain::dataset, static_cast<std::uint64_t>(t));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    TimedDataset out;
    out.t = t;
    out.features.resize(n, parent.sample_dim);
    out.outcomes.resize(n);
    for (int i = 0; i < n; ++i) {
        const double g = unif(rng) * total;
        const int bin = static_cast<int>(
            std::lower_bound(cumulative.begin(), cumulative.end(), g) - cumulative.begin());
        const int j = std::min(bin, m - 1);
        const double u = (static_cast<double>(j) + unif(rng)) / static_cast<double>(m);
        const ParentSample s = parent.quantile_transform(u, rng);
        out.features.row(i) = s.x.transpose();
        out.outcomes(i) = s.y;
    }
    out.validate();
    return out;
}

std::pair<Panel, WeightField> simulate_panel(const ParentDistribution& parent,
                                             const ArmaShiftProcess& proc, int T, int m,
                                             const std::vector<int>& sample_sizes,
                                             std::uint64_t seed) {
    if (static_cast<int>(sample_sizes.size()) != T) {
        throw std::invalid_argument("need one sample size per time step");
    }
    WeightField field = simulate_weight_field(proc, T, m, seed);
    Panel panel;
    panel.datasets.reserve(T);
    for (int t = 0; t < T; ++t) {
        panel.datasets.push_back(sample_perturbed_dataset(
            parent, field.values.row(t).transpose(), sample_sizes[t], t + 1, seed));
    }
    panel.validate();
    return {std::move(panel), std::move(field)};
}

Eigen::VectorXd bin_means(const ParentDistribution& parent, int m,
                          const std::function<double(const ParentSample&)>& phi,
                          int points_per_bin) {
    if (m < 1 || points_per_bin < 1) {
        throw std::invalid_argument("bin_means requires positive m and grid size");
    }
    // Fixed auxiliary stream: quadrature must be deterministic.
    std::mt19937_64 aux(0x9e3779b97f4a7c15ULL);
    Eigen::VectorXd means(m);
    for (int j = 0; j < m; ++j) {
        double acc = 0.0;
        for (int g = 0; g < points_per_bin; ++g) {
            const double u = (static_cast<double>(j) + (g + 0.5) / points_per_bin) / m;
            acc += phi(parent.quantile_transform(u, aux));
        }
        means(j) = acc / points_per_bin;
    }
    return means;
}

double tilted_mean(const Eigen::VectorXd& weights_row,
                   const Eigen::VectorXd& bin_mean_values) {
    if (weights_row.size() != bin_mean_values.size()) {
        throw std::invalid_argument("weights row and bin means disagree on m");
    }
    const double total = weights_row.sum();
    if (total <= 0.0) throw std::invalid_argument("all-zero weights row");
    return weights_row.dot(bin_mean_values) / total;
}

} // namespace rider
