#pragma once

#include <cstdint>
#include <vector>

namespace heispam {

/// A Monte Carlo estimate with enough metadata to reproduce it.
struct MomentEstimate {
    double value = 0.0;
    double std_err = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
    bool flagged = false;      // zero hits, unreliable SE, truncation bias, ...
    double aux = 0.0;          // operation-specific companion value
};

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov statistic with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// mean / standard error of the mean
MomentEstimate mean_se(const std::vector<double>& v, std::uint64_t seed = 0);

/// E[exp(S)] from exponents S via log-sum-exp; SE by the shifted sample std.
MomentEstimate exp_mean_lse(const std::vector<double>& exponents, std::uint64_t seed = 0);

}  // namespace heispam
