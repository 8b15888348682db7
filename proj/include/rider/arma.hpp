#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rider {

/// Innovation distribution for the weight process: a shifted Gamma(shape,
/// scale), optionally truncated above at `cap` (enforced by rejection
/// resampling).  `scale == 0` degenerates to a point mass at `shift`.
/// The lower support bound is `shift`, which must be >= 0 so that the
/// simulated weights stay nonnegative.
struct InnovationSpec {
    double shape = 1.0;
    double scale = 1.0;
    double shift = 0.0;
    std::optional<double> cap; // upper bound on the innovation value

    /// Analytic mean, accounting for truncation when `cap` is set.
    double mean() const;
    /// Analytic variance, accounting for truncation.
    double variance() const;
    double sample(std::mt19937_64& rng) const;

    /// Pure Gamma with the requested mean and standard deviation
    /// (shift = 0, no cap).  sigma == 0 yields the point mass at `mean`.
    static InnovationSpec gamma_with_moments(double mean, double sigma);

    void validate() const;
};

/// ARMA(p, q) law of the random bin weights:
///   W^t = c + sum_i phi_i W^{t-i} + sum_i alpha_i eps^{t-i} + eps^t
/// with nonnegative AR coefficients and positive innovations.  The constant
/// c and the innovation mean are chosen jointly so that the stationary mean
/// equals `target_mean` (always 1).
///
/// A single negative MA coefficient is allowed to express the
/// exponential-down-weighting form W^t = c + phi W^{t-1} + eps^t - theta
/// eps^{t-1}; in that case the innovations must be capped at c/theta, which
/// keeps the weights nonnegative.
struct ArmaShiftProcess {
    std::vector<double> phi;   // AR coefficients, all >= 0
    std::vector<double> alpha; // MA coefficients
    double c = 0.0;            // constant term, >= 0
    InnovationSpec innovation;
    double target_mean = 1.0;

    int p() const { return static_cast<int>(phi.size()); }
    int q() const { return static_cast<int>(alpha.size()); }

    /// (c + mean_eps * (1 + sum alpha)) / (1 - sum phi); requires sum phi < 1.
    double stationary_mean() const;

    /// Throws std::invalid_argument on malformed coefficients, a stationary
    /// mean away from target_mean by more than 1e-9, or a negative MA
    /// coefficient without the matching innovation cap.
    void validate() const;

    // Factories.  All produce processes with stationary mean exactly 1;
    // `sigma` is the innovation standard deviation (sigma == 0 is the
    // degenerate constant-weight process).
    static ArmaShiftProcess white(double sigma);
    static ArmaShiftProcess ar(std::vector<double> phi, double sigma);
    static ArmaShiftProcess ma(std::vector<double> alpha, double sigma);
    static ArmaShiftProcess arma(std::vector<double> phi, std::vector<double> alpha,
                                 double sigma);
    /// ARMA(1,1) with negative MA sign: W^t = c + phi W^{t-1} + eps^t -
    /// theta eps^{t-1}, 0 < theta < phi < 1.  Innovations are Gamma with
    /// standard deviation `sigma` before truncation, capped at c/theta; the
    /// constant c is solved so the stationary mean is 1.
    static ArmaShiftProcess exponential_decay(double phi, double theta, double sigma);
};

/// True iff all roots of Phi(z) = 1 - sum_i phi_i z^i lie strictly outside
/// the unit circle (minimum root modulus > 1 + 1e-9).  Pure MA processes
/// are always stationary.
bool check_stationarity(const ArmaShiftProcess& proc);

/// Autocovariance rho(h) = Cov(W^t, W^{t+h}) of the stationary process,
/// computed from the MA(infinity) representation.  Throws on a
/// nonstationary process.
double theoretical_autocov(const ArmaShiftProcess& proc, int lag);

} // namespace rider
