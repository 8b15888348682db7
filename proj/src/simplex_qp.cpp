#include "rider/simplex_qp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rider {

void ConstraintSet::check_feasible(int K) const {
    if (K < 1) throw std::invalid_argument("constraint set needs K >= 1");
    if (cap) {
        if (*cap < 0.0) {
            throw std::invalid_argument("cap on beta_1 is negative: no simplex point fits");
        }
        if (monotone && *cap < 1.0 / K - 1e-12) {
            throw std::invalid_argument(
                "infeasible constraints: monotone weights force beta_1 >= 1/K, "
                "which exceeds the cap");
        }
        if (K == 1 && *cap < 1.0 - 1e-12) {
            throw std::invalid_argument(
                "infeasible constraints: K = 1 forces beta_1 = 1 above the cap");
        }
    }
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
    const int n = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0;
    double tau = 0.0;
    int rho = 0;
    for (int i = 0; i < n; ++i) {
        css += u[i];
        const double candidate = (css - 1.0) / (i + 1);
        if (u[i] - candidate > 0.0) {
            rho = i + 1;
            tau = candidate;
        }
    }
    (void)rho;
    return (v.array() - tau).cwiseMax(0.0);
}

Eigen::VectorXd project_monotone_decreasing(const Eigen::VectorXd& v) {
    // PAV on the reversed sequence gives the nonincreasing fit directly.
    const int n = static_cast<int>(v.size());
    std::vector<double> level(n);
    std::vector<double> weight(n);
    std::vector<int> size(n);
    int blocks = 0;
    for (int i = 0; i < n; ++i) {
        level[blocks] = v(i);
        weight[blocks] = 1.0;
        size[blocks] = 1;
        ++blocks;
        while (blocks > 1 && level[blocks - 2] < level[blocks - 1]) {
            const double w = weight[blocks - 2] + weight[blocks - 1];
            level[blocks - 2] =
                (level[blocks - 2] * weight[blocks - 2] + level[blocks - 1] * weight[blocks - 1]) / w;
            weight[blocks - 2] = w;
            size[blocks - 2] += size[blocks - 1];
            --blocks;
        }
    }
    Eigen::VectorXd out(n);
    int pos = 0;
    for (int b = 0; b < blocks; ++b) {
        for (int i = 0; i < size[b]; ++i) out(pos++) = level[b];
    }
    return out;
}

namespace {

Eigen::VectorXd project_cap(const Eigen::VectorXd& v, double cap) {
    Eigen::VectorXd out = v;
    out(0) = std::min(out(0), cap);
    return out;
}

} // namespace

Eigen::VectorXd project_constraints(const Eigen::VectorXd& v, const ConstraintSet& cs) {
    cs.check_feasible(static_cast<int>(v.size()));
    if (!cs.cap && !cs.monotone) return project_simplex(v);

    // Dykstra's alternating projections onto the intersection.
    const int n = static_cast<int>(v.size());
    Eigen::VectorXd x = v;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n); // simplex correction
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n); // cap correction
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n); // cone correction
    for (int sweep = 0; sweep < 2000; ++sweep) {
        const Eigen::VectorXd prev = x;
        Eigen::VectorXd y = project_simplex(x + p);
        p = x + p - y;
        x = y;
        if (cs.cap) {
            y = project_cap(x + q, *cs.cap);
            q = x + q - y;
            x = y;
        }
        if (cs.monotone) {
            y = project_monotone_decreasing(x + r);
            r = x + r - y;
            x = y;
        }
        if ((x - prev).lpNorm<Eigen::Infinity>() < 1e-14) break;
    }
    return x;
}

namespace {

double objective_value(const Eigen::MatrixXd& Q, const Eigen::VectorXd& linear,
                       const Eigen::VectorXd& x) {
    double val = x.dot(Q * x);
    if (linear.size() > 0) val += linear.dot(x);
    return val;
}

} // namespace

QpResult solve_simplex_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& linear,
                          const ConstraintSet& cs) {
    const int K = static_cast<int>(Q.rows());
    if (Q.cols() != K) throw std::invalid_argument("Q must be square");
    if (linear.size() > 0 && linear.size() != K) {
        throw std::invalid_argument("linear term dimension mismatch");
    }
    cs.check_feasible(K);

    const Eigen::MatrixXd Qs = 0.5 * (Q + Q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Qs, Eigen::EigenvaluesOnly);
    const double lambda_max = eig.eigenvalues().maxCoeff();

    QpResult result;
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(K, 1.0 / K);
    if (lambda_max <= 0.0 && linear.size() == 0) {
        // Degenerate objective: every feasible point is optimal; return the
        // symmetric tie-break.
        result.beta = project_constraints(uniform, cs);
        result.objective = objective_value(Qs, linear, result.beta);
        return result;
    }

    const double lipschitz =
        2.0 * std::max(lambda_max, 1e-300) +
        (linear.size() > 0 ? 1e-12 * linear.lpNorm<Eigen::Infinity>() : 0.0);
    const double step = 1.0 / lipschitz;

    auto gradient = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
        Eigen::VectorXd g = 2.0 * (Qs * x);
        if (linear.size() > 0) g += linear;
        return g;
    };

    Eigen::VectorXd x = project_constraints(uniform, cs);
    Eigen::VectorXd y = x;
    double t_momentum = 1.0;
    double f_prev = objective_value(Qs, linear, x);

    constexpr int kMaxIter = 100000;
    constexpr double kTol = 1e-10;
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
        const Eigen::VectorXd x_next = project_constraints(y - step * gradient(y), cs);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
        const double f_next = objective_value(Qs, linear, x_next);
        if (f_next > f_prev) {
            // objective went up: restart momentum from the last iterate
            y = x;
            t_momentum = 1.0;
            f_prev = objective_value(Qs, linear, x);
            continue;
        }
        y = x_next + ((t_momentum - 1.0) / t_next) * (x_next - x);
        const double move = (x_next - x).lpNorm<Eigen::Infinity>();
        x = x_next;
        t_momentum = t_next;
        f_prev = f_next;

        if (move < kTol) {
            const Eigen::VectorXd fixed = project_constraints(x - step * gradient(x), cs);
            if ((x - fixed).lpNorm<Eigen::Infinity>() < kTol) break;
        }
    }

    result.beta = x;
    result.iterations = iter;
    result.objective = objective_value(Qs, linear, x);
    const Eigen::VectorXd fixed = project_constraints(x - step * gradient(x), cs);
    result.kkt_residual = (x - fixed).lpNorm<Eigen::Infinity>();
    return result;
}

double qp_kkt_residual(const Eigen::MatrixXd& Q, const Eigen::VectorXd& linear,
                       const ConstraintSet& cs, const Eigen::VectorXd& beta) {
    const Eigen::MatrixXd Qs = 0.5 * (Q + Q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Qs, Eigen::EigenvaluesOnly);
    const double lambda_max = eig.eigenvalues().maxCoeff();
    if (lambda_max <= 0.0 && linear.size() == 0) return 0.0;
    const double step = 1.0 / (2.0 * std::max(lambda_max, 1e-300));
    Eigen::VectorXd g = 2.0 * (Qs * beta);
    if (linear.size() > 0) g += linear;
    const Eigen::VectorXd fixed = project_constraints(beta - step * g, cs);
    return (beta - fixed).lpNorm<Eigen::Infinity>();
}

} // namespace rider
