#include "georep/hypotest.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "georep/errors.hpp"

namespace georep {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 500;

// Continued fraction for the incomplete beta, modified Lentz.
double beta_cf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw DomainError("incomplete beta continued fraction did not converge");
}

// Series for P(a, x), x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw DomainError("incomplete gamma series did not converge");
}

// Continued fraction for Q(a, x), x >= a + 1.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw DomainError("incomplete gamma continued fraction did not converge");
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

double reg_inc_gamma_lower(double a, double x) {
    if (!(a > 0.0)) throw DomainError("incomplete gamma requires a > 0");
    if (x < 0.0) throw DomainError("incomplete gamma requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw DomainError("incomplete beta requires a, b > 0");
    if (x < 0.0 || x > 1.0) throw DomainError("incomplete beta requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double normal_cdf(double z) {
    if (z == 0.0) return 0.5;
    const double p_half = reg_inc_gamma_lower(0.5, 0.5 * z * z);
    return z > 0.0 ? 0.5 * (1.0 + p_half) : 0.5 * (1.0 - p_half);
}

double t_cdf(double t, double df) {
    if (!(df >= 1.0)) throw DomainError("t distribution requires df >= 1");
    if (t == 0.0) return 0.5;
    const double x = df / (df + t * t);
    const double tail = 0.5 * reg_inc_beta(0.5 * df, 0.5, x);
    return t > 0.0 ? 1.0 - tail : tail;
}

double f_cdf(double f, double df1, double df2) {
    if (!(df1 >= 1.0) || !(df2 >= 1.0))
        throw DomainError("F distribution requires df1, df2 >= 1");
    if (f < 0.0) throw DomainError("F distribution requires f >= 0");
    if (f == 0.0) return 0.0;
    const double x = df1 * f / (df1 * f + df2);
    return reg_inc_beta(0.5 * df1, 0.5 * df2, x);
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw LengthMismatchError("paired series differ in length (" +
                                  std::to_string(a.size()) + " vs " +
                                  std::to_string(b.size()) + ")");
    const std::size_t n = a.size();
    if (n < 2) throw InsufficientDataError("paired t-test needs n >= 2");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = b[i] - a[i];
    const double mean = mean_of(d);
    double ss = 0.0;
    bool all_equal = true;
    for (double x : d) {
        ss += (x - mean) * (x - mean);
        if (x != d[0]) all_equal = false;
    }
    if (all_equal || ss <= 0.0)
        throw ZeroVarianceError("all replicates identical");

    TTestResult res;
    res.n = static_cast<int>(n);
    res.df = static_cast<int>(n) - 1;
    res.mean_diff = mean;
    res.sd_diff = std::sqrt(ss / static_cast<double>(n - 1));
    res.t = mean / (res.sd_diff / std::sqrt(static_cast<double>(n)));
    res.p_two_sided = 2.0 * (1.0 - t_cdf(std::fabs(res.t), res.df));
    return res;
}

LeveneResult levene_test(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw InsufficientDataError("Levene's test needs >= 2 groups");
    std::size_t n_total = 0;
    for (const auto& g : groups) {
        if (g.size() < 2)
            throw InsufficientDataError("Levene's test needs >= 2 values per group");
        n_total += g.size();
    }

    // Absolute deviations from the group means (Levene 1960 form).
    std::vector<std::vector<double>> z(k);
    double z_grand = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double gm = mean_of(groups[i]);
        z[i].reserve(groups[i].size());
        for (double x : groups[i]) {
            z[i].push_back(std::fabs(x - gm));
            z_grand += z[i].back();
        }
    }
    z_grand /= static_cast<double>(n_total);

    double between = 0.0;
    double within = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double zm = mean_of(z[i]);
        between += static_cast<double>(z[i].size()) * (zm - z_grand) * (zm - z_grand);
        for (double v : z[i]) within += (v - zm) * (v - zm);
    }
    if (within <= 0.0)
        throw ZeroDeviationError("all deviations from group centers are identical");

    LeveneResult res;
    res.df1 = static_cast<int>(k) - 1;
    res.df2 = static_cast<int>(n_total - k);
    res.w = (static_cast<double>(res.df2) / static_cast<double>(res.df1)) *
            (between / within);
    res.p = 1.0 - f_cdf(res.w, res.df1, res.df2);
    return res;
}

PearsonResult pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw LengthMismatchError("series differ in length (" +
                                  std::to_string(x.size()) + " vs " +
                                  std::to_string(y.size()) + ")");
    const std::size_t n = x.size();
    if (n < 3) throw InsufficientDataError("Pearson correlation needs n >= 3");

    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zx = x[i] - mx;
        const double zy = y[i] - my;
        sxy += zx * zy;
        sxx += zx * zx;
        syy += zy * zy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw ZeroVarianceError("an input series is constant");

    PearsonResult res;
    res.df = static_cast<int>(n) - 2;
    res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    if (std::fabs(res.r) >= 1.0) {
        res.t = res.r > 0 ? INFINITY : -INFINITY;
        res.p_two_sided = 0.0;
        return res;
    }
    res.t = res.r * std::sqrt(static_cast<double>(res.df) / (1.0 - res.r * res.r));
    res.p_two_sided = 2.0 * (1.0 - t_cdf(std::fabs(res.t), res.df));
    return res;
}

}  // namespace georep
