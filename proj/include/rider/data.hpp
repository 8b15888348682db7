#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rider {

/// One time step of data: n samples of (features, outcome).
struct TimedDataset {
    long long t = 0;
    Eigen::MatrixXd features; // n x d
    Eigen::VectorXd outcomes; // n

    int n() const { return static_cast<int>(features.rows()); }
    int dim() const { return static_cast<int>(features.cols()); }

    void validate() const;
};

/// Ordered collection of datasets with strictly increasing, consecutive
/// time indices and a shared feature dimension.
struct Panel {
    std::vector<TimedDataset> datasets;

    int size() const { return static_cast<int>(datasets.size()); }
    int dim() const { return datasets.empty() ? 0 : datasets.front().dim(); }

    const TimedDataset& at_time(long long t) const;
    bool has_time(long long t) const;

    /// Datasets at times t-1, ..., t-K (most recent first, so entry k-1
    /// carries lag weight beta_k).
    std::vector<TimedDataset> window_before(long long t, int K) const;

    void validate() const;
};

} // namespace rider
