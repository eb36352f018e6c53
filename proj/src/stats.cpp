#include "ladderwalk/stats.hpp"

#include <algorithm>
#include <cmath>

namespace ladderwalk::stats {

MeanSE mean_se(std::span<const double> xs) {
    MeanSE out;
    out.n = xs.size();
    if (out.n == 0) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(out.n);
    if (out.n < 2) return out;
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - out.mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(out.n - 1);
    out.se = std::sqrt(var / static_cast<double>(out.n));
    return out;
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(xs.size() - 1);
}

double variance_se(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(n);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    const double var_of_var = (m4 - m2 * m2) / static_cast<double>(n);
    return var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_statistic_normal(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = normal_cdf(samples[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

double ks_p_value(double d, std::size_t n) {
    if (n == 0) return 1.0;
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    // Q_KS(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2)
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Regularized incomplete gamma, series and continued-fraction halves.
double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi2_sf(double x, double df) {
    return gamma_q(0.5 * df, 0.5 * x);
}

double chi2_statistic(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size()) {
        throw std::invalid_argument("chi2_statistic: length mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi2_statistic: expected <= 0");
        const double d = observed[i] - expected[i];
        s += d * d / expected[i];
    }
    return s;
}

HillEstimate hill_tail_index(std::vector<double> samples, double top_fraction,
                             std::size_t min_tail, double min_threshold) {
    if (samples.empty() || top_fraction <= 0.0 || top_fraction >= 1.0) {
        throw std::invalid_argument("hill_tail_index: bad inputs");
    }
    std::sort(samples.begin(), samples.end(), std::greater<>());
    const std::size_t m = std::max<std::size_t>(
        1, static_cast<std::size_t>(top_fraction * static_cast<double>(samples.size())));
    if (m + 1 > samples.size()) {
        throw insufficient_data_error("hill: sample too small for the requested fraction");
    }
    const double threshold = samples[m];
    if (!(threshold > 0.0) || threshold < min_threshold) {
        throw insufficient_data_error("hill: tail threshold inside the bulk");
    }
    std::size_t strict = 0;
    double log_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (samples[i] > threshold) ++strict;
        log_sum += std::log(samples[i] / threshold);
    }
    if (strict < min_tail || log_sum <= 0.0) {
        throw insufficient_data_error("hill: too few points above the threshold");
    }
    HillEstimate out;
    out.tail_index = static_cast<double>(m) / log_sum;
    out.threshold = threshold;
    out.tail_count = m;
    return out;
}

double hill_bootstrap_se(const std::vector<double>& samples, double top_fraction,
                         int resamples, rng::Stream& stream,
                         std::size_t min_tail, double min_threshold) {
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(resamples));
    std::vector<double> boot(samples.size());
    for (int r = 0; r < resamples; ++r) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            boot[i] = samples[stream.next_below(samples.size())];
        }
        try {
            points.push_back(
                hill_tail_index(boot, top_fraction, min_tail, min_threshold).tail_index);
        } catch (const insufficient_data_error&) {
            // degenerate resample, skip
        }
    }
    if (points.size() < 2) return 0.0;
    return std::sqrt(sample_variance(points));
}

}  // namespace ladderwalk::stats
