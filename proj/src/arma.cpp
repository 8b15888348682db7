#include "rider/arma.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rider {

namespace {

double sum(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

// E[X^p | X <= u] for X ~ Gamma(shape k, scale s), p in {1, 2}.
double truncated_gamma_moment(double k, double s, double u, int p) {
    const double x = u / s;
    const double denom = boost::math::gamma_p(k, x);
    if (denom <= 0.0) {
        throw std::runtime_error("truncated gamma: cap leaves no mass");
    }
    double ratio = (p == 1) ? k : k * (k + 1.0);
    return std::pow(s, p) * ratio * boost::math::gamma_p(k + p, x) / denom;
}

} // namespace

double InnovationSpec::mean() const {
    if (scale == 0.0) return shift;
    if (!cap) return shift + shape * scale;
    return shift + truncated_gamma_moment(shape, scale, *cap - shift, 1);
}

double InnovationSpec::variance() const {
    if (scale == 0.0) return 0.0;
    if (!cap) return shape * scale * scale;
    const double m1 = truncated_gamma_moment(shape, scale, *cap - shift, 1);
    const double m2 = truncated_gamma_moment(shape, scale, *cap - shift, 2);
    return m2 - m1 * m1;
}

double InnovationSpec::sample(std::mt19937_64& rng) const {
    if (scale == 0.0) return shift;
    std::gamma_distribution<double> dist(shape, scale);
    if (!cap) return shift + dist(rng);
    for (int tries = 0; tries < 1000000; ++tries) {
        const double v = shift + dist(rng);
        if (v <= *cap) return v;
    }
    throw std::runtime_error("innovation rejection sampling failed: cap too tight");
}

InnovationSpec InnovationSpec::gamma_with_moments(double mean, double sigma) {
    if (mean < 0.0 || sigma < 0.0) {
        throw std::invalid_argument("innovation mean and sigma must be nonnegative");
    }
    InnovationSpec spec;
    if (sigma == 0.0) {
        spec.shape = 1.0;
        spec.scale = 0.0;
        spec.shift = mean;
        return spec;
    }
    if (mean == 0.0) {
        throw std::invalid_argument("positive innovation sigma requires positive mean");
    }
    spec.shape = (mean * mean) / (sigma * sigma);
    spec.scale = (sigma * sigma) / mean;
    spec.shift = 0.0;
    return spec;
}

void InnovationSpec::validate() const {
    if (shape <= 0.0 || scale < 0.0) {
        throw std::invalid_argument("innovation requires shape > 0 and scale >= 0");
    }
    if (shift < 0.0) {
        throw std::invalid_argument(
            "innovation support must be bounded below by 0 to keep weights nonnegative");
    }
    if (cap && *cap <= shift) {
        throw std::invalid_argument("innovation cap must exceed the support lower bound");
    }
}

double ArmaShiftProcess::stationary_mean() const {
    const double phi_sum = sum(phi);
    if (phi_sum >= 1.0) {
        throw std::invalid_argument("sum of AR coefficients must be < 1");
    }
    return (c + innovation.mean() * (1.0 + sum(alpha))) / (1.0 - phi_sum);
}

void ArmaShiftProcess::validate() const {
    for (double v : phi) {
        if (!(v >= 0.0)) throw std::invalid_argument("AR coefficients must be nonnegative");
    }
    if (c < 0.0) throw std::invalid_argument("constant term must be nonnegative");
    innovation.validate();

    int negative_ma = 0;
    for (double v : alpha) {
        if (!std::isfinite(v)) throw std::invalid_argument("MA coefficient not finite");
        if (v < 0.0) ++negative_ma;
    }
    if (negative_ma > 0) {
        // Only the exponential-down-weighting form is supported: one negative
        // MA coefficient with innovations capped at c/|alpha|.
        if (alpha.size() != 1 || negative_ma != 1) {
            throw std::invalid_argument(
                "negative MA coefficients are only supported for ARMA(p,1)");
        }
        const double theta = -alpha[0];
        if (!innovation.cap || *innovation.cap > c / theta + 1e-12) {
            throw std::invalid_argument(
                "negative MA coefficient requires innovations capped at c/theta");
        }
    }
    if (std::abs(stationary_mean() - target_mean) > 1e-9) {
        throw std::invalid_argument("process stationary mean must equal 1");
    }
}

ArmaShiftProcess ArmaShiftProcess::white(double sigma) {
    return arma({}, {}, sigma);
}

ArmaShiftProcess ArmaShiftProcess::ar(std::vector<double> phi, double sigma) {
    return arma(std::move(phi), {}, sigma);
}

ArmaShiftProcess ArmaShiftProcess::ma(std::vector<double> alpha, double sigma) {
    return arma({}, std::move(alpha), sigma);
}

ArmaShiftProcess ArmaShiftProcess::arma(std::vector<double> phi,
                                        std::vector<double> alpha, double sigma) {
    ArmaShiftProcess proc;
    proc.phi = std::move(phi);
    proc.alpha = std::move(alpha);
    proc.c = 0.0;
    const double phi_sum = sum(proc.phi);
    const double alpha_sum = sum(proc.alpha);
    if (phi_sum >= 1.0) {
        throw std::invalid_argument("sum of AR coefficients must be < 1");
    }
    for (double a : proc.alpha) {
        if (a < 0.0) {
            throw std::invalid_argument(
                "use exponential_decay() for the negative-MA form");
        }
    }
    // Mean chosen so the stationary mean is exactly 1 with c = 0.
    const double eps_mean = (1.0 - phi_sum) / (1.0 + alpha_sum);
    proc.innovation = InnovationSpec::gamma_with_moments(eps_mean, sigma);
    proc.validate();
    if (!check_stationarity(proc)) {
        throw std::invalid_argument("AR coefficients give a nonstationary process");
    }
    return proc;
}

ArmaShiftProcess ArmaShiftProcess::exponential_decay(double phi, double theta,
                                                     double sigma) {
    if (!(0.0 < theta && theta < phi && phi < 1.0)) {
        throw std::invalid_argument("exponential_decay requires 0 < theta < phi < 1");
    }
    if (sigma <= 0.0) {
        throw std::invalid_argument("exponential_decay requires sigma > 0");
    }
    ArmaShiftProcess proc;
    proc.phi = {phi};
    proc.alpha = {-theta};

    // Pre-truncation innovations are Gamma with mean == sigma (shape 1,
    // exponential) scaled to the requested sigma.  The constant c solves
    //   c + (1 - theta) * E[eps | eps <= c/theta] = 1 - phi
    // by bisection, which pins the stationary mean at 1.
    auto trunc_mean = [&](double cval) {
        InnovationSpec s;
        s.shape = 1.0;
        s.scale = sigma;
        s.shift = 0.0;
        s.cap = cval / theta;
        return s.mean();
    };
    double lo = 1e-12, hi = 1.0 - phi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = mid + (1.0 - theta) * trunc_mean(mid) - (1.0 - phi);
        (f < 0.0 ? lo : hi) = mid;
    }
    proc.c = 0.5 * (lo + hi);
    proc.innovation.shape = 1.0;
    proc.innovation.scale = sigma;
    proc.innovation.shift = 0.0;
    proc.innovation.cap = proc.c / theta;
    proc.validate();
    return proc;
}

bool check_stationarity(const ArmaShiftProcess& proc) {
    for (double v : proc.phi) {
        if (!std::isfinite(v)) throw std::invalid_argument("AR coefficient not finite");
    }
    // Drop trailing zeros; a pure MA process is always stationary.
    std::vector<double> coeffs = proc.phi;
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.empty()) return true;

    // Companion matrix of Phi(z) = 1 - sum phi_i z^i.  Roots are the
    // eigenvalue reciprocals of the AR recursion matrix, so the condition
    // "all roots outside the unit circle" is "all eigenvalues inside".
    const int p = static_cast<int>(coeffs.size());
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < p; ++i) companion(0, i) = coeffs[i];
    for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
    const Eigen::VectorXcd eigs = companion.eigenvalues();
    double max_mod = 0.0;
    for (int i = 0; i < p; ++i) max_mod = std::max(max_mod, std::abs(eigs(i)));
    // eigenvalue modulus < 1/(1 + tol)  <=>  root modulus > 1 + tol
    return max_mod < 1.0 / (1.0 + 1e-9);
}

double theoretical_autocov(const ArmaShiftProcess& proc, int lag) {
    if (lag < 0) lag = -lag;
    if (!check_stationarity(proc)) {
        throw std::invalid_argument("autocovariance undefined: process not stationary");
    }
    const double sigma_sq = proc.innovation.variance();
    if (sigma_sq == 0.0) return 0.0;

    // psi-weights of the MA(infinity) representation:
    //   psi_0 = 1, psi_j = alpha_j + sum_{i<=min(j,p)} phi_i psi_{j-i}.
    const int p = proc.p();
    const int q = proc.q();
    std::vector<double> psi;
    psi.push_back(1.0);
    double acc = 0.0;
    const int max_terms = 1000000;
    for (int j = 1; j < max_terms; ++j) {
        double v = (j <= q) ? proc.alpha[j - 1] : 0.0;
        for (int i = 1; i <= std::min(j, p); ++i) v += proc.phi[i - 1] * psi[j - i];
        psi.push_back(v);
        acc += v * v;
        if (j > p + q + 8 && v * v < 1e-32 * (1.0 + acc)) break;
    }
    const int n = static_cast<int>(psi.size());
    if (lag >= n) return 0.0;
    double gamma = 0.0;
    for (int j = 0; j + lag < n; ++j) gamma += psi[j] * psi[j + lag];
    return sigma_sq * gamma;
}

} // namespace rider
