#include "tbound/activations.hpp"

#include "tbound/combinatorics.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace tbound {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double phi(double x)
{
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double Phi(double x)
{
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Probabilists' Hermite polynomial He_n(x).
double hermite(int n, double x)
{
    if (n == 0)
        return 1.0;
    double a = 1.0, b = x;
    for (int j = 1; j < n; ++j) {
        double c = x * b - j * a;
        a = b;
        b = c;
    }
    return b;
}

// phi^{(n)} = (-1)^n He_n phi
double phi_deriv(int n, double x)
{
    double s = (n % 2 == 0) ? 1.0 : -1.0;
    return s * hermite(n, x) * phi(x);
}

double to_double(const BigInt& v)
{
    return v.convert_to<double>();
}

constexpr int kCoefRows = 72;

// ks[n][k] = k! S(n,k) as doubles, built once.
const std::vector<std::vector<double>>& fact_stirling()
{
    static const std::vector<std::vector<double>> t = [] {
        std::vector<std::vector<double>> r(kCoefRows);
        for (int n = 0; n < kCoefRows; ++n)
            for (int k = 0; k <= n; ++k)
                r[n].push_back(to_double(factorial(k) * stirling2(n, k)));
        return r;
    }();
    return t;
}

double ks(int n, int k)
{
    if (n < kCoefRows)
        return fact_stirling()[n][k];
    return to_double(factorial(k) * stirling2(n, k));
}

// Coefficients of tanh^{(n)} as a polynomial in z = tanh(x): p_{n+1} = (1 - z^2) p_n'.
const std::vector<double>& tanh_true_poly(int n)
{
    static std::mutex mu;
    static std::vector<std::vector<double>> polys{{0.0, 1.0}};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(polys.size()) <= n) {
        const auto& p = polys.back();
        std::vector<double> d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
        for (size_t j = 1; j < p.size(); ++j)
            d[j - 1] = j * p[j];
        std::vector<double> q(d.size() + 2, 0.0);
        for (size_t j = 0; j < d.size(); ++j) {
            q[j] += d[j];
            q[j + 2] -= d[j];
        }
        polys.push_back(std::move(q));
    }
    return polys[n];
}

double tanh_true_deriv_z(int n, double z)
{
    const auto& p = tanh_true_poly(n);
    double r = 0.0;
    for (size_t j = p.size(); j-- > 0;)
        r = r * z + p[j];
    return r;
}

} // namespace

std::string to_string(ActivationKind kind)
{
    switch (kind) {
    case ActivationKind::softplus: return "softplus";
    case ActivationKind::gelu: return "gelu";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::swish: return "swish";
    case ActivationKind::sigmoid: return "sigmoid";
    }
    return "?";
}

ActivationKind activation_from_string(const std::string& s)
{
    if (s == "softplus") return ActivationKind::softplus;
    if (s == "gelu") return ActivationKind::gelu;
    if (s == "tanh") return ActivationKind::tanh;
    if (s == "swish") return ActivationKind::swish;
    if (s == "sigmoid") return ActivationKind::sigmoid;
    throw std::invalid_argument("unknown activation: " + s);
}

double sigmoid(double x)
{
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x)
{
    if (x > 0.0)
        return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

double gelu(double x)
{
    return x * Phi(x);
}

double swish(double x)
{
    return x * sigmoid(x);
}

double sigmoid_deriv(int n, double x)
{
    if (n < 0)
        throw std::invalid_argument("sigmoid_deriv: negative order");
    double s = sigmoid(x);
    if (n == 0)
        return s;
    // 1 - sigmoid(x) computed directly to avoid cancellation for large x
    double one_minus = sigmoid(-x);
    double r = 0.0;
    double pw = 1.0;
    for (int k = 1; k <= n; ++k) {
        pw *= one_minus;
        double term = ks(n, k) * pw;
        r += ((n + k) % 2 == 0) ? term : -term;
    }
    return s * r;
}

double gelu_deriv(int n, double x)
{
    if (n < 1)
        throw std::invalid_argument("gelu_deriv: order must be positive");
    if (n == 1)
        return Phi(x) + x * phi(x);
    return n * phi_deriv(n - 2, x) + x * phi_deriv(n - 1, x);
}

double tanh_bound_poly(int n, double z)
{
    if (n < 1)
        throw std::invalid_argument("tanh_bound_poly: order must be positive");
    double sum = 0.0;
    double zp = 1.0;
    double half = 1.0;
    double falling = 1.0; // k! C(n,k) = n!/(n-k)!
    for (int k = 0; k <= n; ++k) {
        if (k > 0)
            falling *= n - k + 1;
        sum += falling * half * zp;
        zp *= (z - 1.0);
        half *= 0.5;
    }
    return std::pow(-2.0, n) * (z + 1.0) * sum;
}

namespace {

// sigma^{(j)} = sum_{k=1}^{j+1} (-1)^{k-1} (k-1)! S(j+1,k) sigma^k
double sigmoid_deriv_powers(int j, double x)
{
    double s = sigmoid(x);
    double r = 0.0, pw = 1.0;
    for (int k = 1; k <= j + 1; ++k) {
        pw *= s;
        double term = ks(j + 1, k) / k * pw;
        r += (k % 2 == 1) ? term : -term;
    }
    return r;
}

} // namespace

double swish_deriv(int n, double x)
{
    if (n < 1)
        throw std::invalid_argument("swish_deriv: order must be positive");
    if (x < -20.0) {
        // the power form cancels badly where sigmoid is tiny; use the (1 - sigma) form
        return n * sigmoid_deriv(n - 1, x) + x * sigmoid_deriv(n, x);
    }
    return n * sigmoid_deriv_powers(n - 1, x) + x * sigmoid_deriv_powers(n, x);
}

double activation_value(ActivationKind kind, double x)
{
    switch (kind) {
    case ActivationKind::softplus: return softplus(x);
    case ActivationKind::gelu: return gelu(x);
    case ActivationKind::tanh: return std::tanh(x);
    case ActivationKind::swish: return swish(x);
    case ActivationKind::sigmoid: return sigmoid(x);
    }
    return 0.0;
}

double activation_deriv(ActivationKind kind, int n, double x)
{
    if (n < 0)
        throw std::invalid_argument("activation_deriv: negative order");
    if (n == 0)
        return activation_value(kind, x);
    switch (kind) {
    case ActivationKind::softplus: return sigmoid_deriv(n - 1, x);
    case ActivationKind::gelu: return gelu_deriv(n, x);
    case ActivationKind::tanh: return tanh_true_deriv_z(n, std::tanh(x));
    case ActivationKind::swish: return swish_deriv(n, x);
    case ActivationKind::sigmoid: return sigmoid_deriv(n, x);
    }
    return 0.0;
}

double maximize_abs(const std::function<double(double)>& f, Interval domain, int grid_points)
{
    if (domain.lo > domain.hi)
        throw std::invalid_argument("maximize_abs: empty interval");
    if (domain.lo == domain.hi)
        return std::fabs(f(domain.lo));
    grid_points = std::max(grid_points, 3);
    const double step = (domain.hi - domain.lo) / (grid_points - 1);
    double best = -1.0;
    int arg = 0;
    for (int j = 0; j < grid_points; ++j) {
        double x = domain.lo + j * step;
        double v = std::fabs(f(x));
        if (v > best) {
            best = v;
            arg = j;
        }
    }
    double a = domain.lo + std::max(arg - 1, 0) * step;
    double b = domain.lo + std::min(arg + 1, grid_points - 1) * step;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = std::fabs(f(c)), fd = std::fabs(f(d));
    while (b - a > 1e-10) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = std::fabs(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = std::fabs(f(d));
        }
    }
    return std::max({best, fc, fd});
}

namespace {

using BoundKey = std::tuple<int, int, int, double, double>;

double memo_bound(int tag, ActivationKind kind, int n, Interval domain,
                  const std::function<double()>& compute)
{
    static std::mutex mu;
    static std::map<BoundKey, double> cache;
    BoundKey key{tag, static_cast<int>(kind), n, domain.lo, domain.hi};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }
    double v = compute();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

double tanh_poly_max(int n)
{
    return maximize_abs([n](double z) { return tanh_bound_poly(n, z); }, {-1.0, 1.0});
}

} // namespace

double activation_bound(ActivationKind kind, int n, Interval domain)
{
    if (n < 1)
        throw std::invalid_argument("activation_bound: order must be positive");
    return memo_bound(0, kind, n, domain, [&]() {
        switch (kind) {
        case ActivationKind::softplus:
        case ActivationKind::sigmoid:
            return maximize_abs([n](double x) { return sigmoid_deriv(n, x); }, domain);
        case ActivationKind::tanh:
            return tanh_poly_max(n);
        default:
            return maximize_abs([kind, n](double x) { return activation_deriv(kind, n, x); },
                                domain);
        }
    });
}

double derivative_sup(ActivationKind kind, int n, Interval domain)
{
    if (n < 0)
        throw std::invalid_argument("derivative_sup: negative order");
    return memo_bound(1, kind, n, domain, [&]() {
        if (kind == ActivationKind::tanh) {
            if (n == 0)
                return std::max(std::fabs(std::tanh(domain.lo)), std::fabs(std::tanh(domain.hi)));
            double lo = std::tanh(domain.lo), hi = std::tanh(domain.hi);
            double t = maximize_abs([n](double z) { return tanh_true_deriv_z(n, z); }, {lo, hi});
            return std::max(t, tanh_poly_max(n));
        }
        return maximize_abs([kind, n](double x) { return activation_deriv(kind, n, x); }, domain);
    });
}

double gelu_closed_form_bound(int n)
{
    if (n < 2)
        throw std::invalid_argument("gelu_closed_form_bound: order must be at least 2");
    const double g12 = std::tgamma(0.5);
    auto a = [](int m) {
        double s = 0.0;
        for (int k = 0; 2 * k <= m; ++k)
            s += to_double(binomial(m, 2 * k)) * std::pow(2.0, k) * std::tgamma(k + 0.5);
        return s;
    };
    auto poly = [](int m, double x) {
        double s = 0.0;
        for (int k = 0; 2 * k <= m; ++k)
            s += std::pow(x, m - k);
        return s;
    };
    auto b = [&](int m) {
        return maximize_abs([&](double x) { return std::exp(-0.5 * x * x) * poly(m, x); },
                            {-30.0, 30.0});
    };
    auto c = [&](int m) {
        return maximize_abs([&](double x) { return std::exp(-0.5 * x * x) * x * poly(m, x); },
                            {-30.0, 30.0});
    };
    return (n * a(n - 2) * b(n - 2) + a(n - 1) * c(n - 1)) /
           (std::sqrt(2.0 * boost::math::constants::pi<double>()) * g12);
}

ActivationBoundTable activation_table(ActivationKind kind, int s_max, Interval domain)
{
    ActivationBoundTable t{kind, domain, {}};
    for (int s = 1; s <= s_max; ++s)
        t.bounds[s] = activation_bound(kind, s, domain);
    return t;
}

} // namespace tbound
