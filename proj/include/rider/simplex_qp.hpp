#pragma once

#include <Eigen/Dense>

#include <optional>

namespace rider {

/// Feasible set for the weight QP.  The probability simplex is always on;
/// a cap on the first coordinate and a monotone-decreasing order can be
/// added (the regularized estimator of the volatility pipeline).
struct ConstraintSet {
    std::optional<double> cap; // beta_1 <= cap
    bool monotone = false;     // beta_1 >= beta_2 >= ... >= beta_K

    /// Throws std::invalid_argument naming the conflict when the set is
    /// empty for dimension K.
    void check_feasible(int K) const;
};

/// Euclidean projection onto the probability simplex (O(K log K)).
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

/// Euclidean projection onto the monotone-decreasing cone via
/// pool-adjacent-violators.
Eigen::VectorXd project_monotone_decreasing(const Eigen::VectorXd& v);

/// Projection onto simplex ∩ {beta_1 <= cap} ∩ {monotone cone} by Dykstra's
/// alternating method; reduces to the plain simplex projection when no
/// extra constraint is active.
Eigen::VectorXd project_constraints(const Eigen::VectorXd& v, const ConstraintSet& cs);

struct QpResult {
    Eigen::VectorXd beta;
    double objective = 0.0;
    int iterations = 0;
    double kkt_residual = 0.0; // fixed-point residual |x - P(x - grad/L)|
};

/// Minimize beta' Q beta + linear' beta over the constraint set, by
/// accelerated projected gradient with step 1/L, L = 2 lambda_max(Q).
/// Stops when the projected-gradient displacement falls below 1e-10 or
/// after 100,000 iterations.  Q is symmetrized on entry; Q = 0 with no
/// linear term returns the uniform vector (every feasible point is
/// optimal).
QpResult solve_simplex_qp(const Eigen::MatrixXd& Q,
                          const Eigen::VectorXd& linear = Eigen::VectorXd(),
                          const ConstraintSet& cs = {});

/// Fixed-point stationarity residual of `beta` for the same problem; used
/// as the optimality certificate in tests.
double qp_kkt_residual(const Eigen::MatrixXd& Q, const Eigen::VectorXd& linear,
                       const ConstraintSet& cs, const Eigen::VectorXd& beta);

} // namespace rider
