#include "tbound/primitives.hpp"

#include "tbound/compose.hpp"

#include <algorithm>
#include <cmath>

namespace tbound {

namespace {

LogMag val(double x) { return LogMag::from_value(x); }

LogMag fact(int n) { return to_logmag(factorial(n)); }

// key with part p lowered by one, zeros dropped
MultiIndex lower(const MultiIndex& key, std::size_t p)
{
    MultiIndex r = key;
    --r[p];
    return type_key(r);
}

// C(empty) is the sup of the function itself
LogMag at_or(const TypeTable& t, const MultiIndex& key, LogMag empty)
{
    return key.empty() ? empty : t.at(key);
}

LogMag upto_or_one(const BoundTable& t, int n)
{
    return n < 1 ? LogMag::one() : max(LogMag::one(), t.upto(n));
}

BoundTable level_table(int n_max, FactorMode mode, auto f)
{
    BoundTable t;
    t.mode = mode;
    t.variant = Variant::level;
    for (int n = 1; n <= n_max; ++n)
        t.entries[n] = f(n);
    return t;
}

TypeTable keyed_table(int dim, int n_max, auto f)
{
    TypeTable t;
    t.dim = dim;
    for (const auto& key : type_keys(dim, n_max))
        t.entries[key] = f(key);
    return t;
}

} // namespace

LogMag dotp_bound(const ArchSpec& spec, int order)
{
    if (order < 1)
        throw std::invalid_argument("dotp_bound: order must be positive");
    if (order == 1)
        return val(2.0 * spec.i * spec.k * spec.radius * spec.C_Q * spec.C_K);
    if (order == 2)
        return val(2.0 * spec.k * spec.C_Q * spec.C_K);
    return LogMag::zero();
}

LogMag softmax_bound(int order)
{
    if (order < 0)
        throw std::invalid_argument("softmax_bound: order must be nonnegative");
    return fact(order);
}

BoundTable dotp_level_table(const ArchSpec& spec, int n_max)
{
    return level_table(n_max, FactorMode::exact_touchard,
                       [&](int n) { return dotp_bound(spec, n); });
}

BoundTable softmax_level_table(int n_max)
{
    return level_table(n_max, FactorMode::exact_touchard, [](int n) { return softmax_bound(n); });
}

TypeTable dotp_type_table(const ArchSpec& spec, int n_max)
{
    return order_type_table(spec.M * spec.i, n_max, [&](int n) { return dotp_bound(spec, n); });
}

TypeTable softmax_type_table(int M, int n_max)
{
    return order_type_table(M, n_max, [](int n) { return softmax_bound(n); });
}

BoundTable softmax_dotp_level_table(const ArchSpec& spec, int n_max, FactorMode mode)
{
    return compose_level_table(softmax_level_table(n_max), dotp_level_table(spec, n_max), spec.M,
                               n_max, mode);
}

TypeTable softmax_dotp_type_table(const ArchSpec& spec, int n_max)
{
    return compose_type_table(softmax_type_table(spec.M, n_max), dotp_type_table(spec, n_max),
                              n_max);
}

// Each output entry is sum_j sum_r smax_j(x) x_{jr} V_{rc}; Leibniz on smax_j * x_{jr}
// leaves the sup of x and one first-order factor per differentiated variable.
BoundTable attention_level_table(const ArchSpec& spec, int n_max, FactorMode mode)
{
    BoundTable sd = softmax_dotp_level_table(spec, n_max, mode);
    LogMag pre = val(static_cast<double>(spec.i) * spec.M * spec.C_V);
    return level_table(n_max, mode, [&](int n) {
        return pre * (val(spec.radius) * sd.upto(n) +
                      val(n) * upto_or_one(sd, n - 1));
    });
}

TypeTable attention_type_table(const ArchSpec& spec, int n_max)
{
    TypeTable sd = softmax_dotp_type_table(spec, n_max);
    LogMag pre = val(static_cast<double>(spec.i) * spec.M * spec.C_V);
    return keyed_table(spec.M * spec.i, n_max, [&](const MultiIndex& key) {
        LogMag s = val(spec.radius) * sd.at(key);
        for (std::size_t p = 0; p < key.size(); ++p)
            s += val(key[p]) * at_or(sd, lower(key, p), LogMag::one());
        return pre * s;
    });
}

LogMag attention_bound_level(const ArchSpec& spec, int n, FactorMode mode)
{
    return attention_level_table(spec, n, mode).at(n);
}

LogMag attention_bound_type(const ArchSpec& spec, const MultiIndex& alpha)
{
    MultiIndex key = type_key(alpha);
    return attention_type_table(spec, total(key)).at(key);
}

BoundTable multihead_level_table(const ArchSpec& spec, int n_max, FactorMode mode)
{
    BoundTable att = attention_level_table(spec, n_max, mode);
    LogMag pre = val(static_cast<double>(spec.v) * spec.C_W);
    return level_table(n_max, mode, [&](int n) { return fact(n) * pre * att.at(n); });
}

TypeTable multihead_type_table(const ArchSpec& spec, int n_max)
{
    TypeTable att = attention_type_table(spec, n_max);
    LogMag pre = val(static_cast<double>(spec.v) * spec.C_W);
    return keyed_table(spec.M * spec.i, n_max, [&](const MultiIndex& key) {
        return to_logmag(factorial(key)) * pre * att.at(key);
    });
}

LogMag multihead_bound_level(const ArchSpec& spec, int n, FactorMode mode)
{
    return multihead_level_table(spec, n, mode).at(n);
}

LogMag multihead_bound_type(const ArchSpec& spec, const MultiIndex& alpha)
{
    MultiIndex key = type_key(alpha);
    return multihead_type_table(spec, total(key)).at(key);
}

// g(u) = (1+u)^{-1/2}: |g^{(n)}(u)| = (2n-1)!!/2^n (1+u)^{-n-1/2} <= (2n-1)!!/2^n.
// The larger (2n+1)!!/4^n is kept so the bound never drops below the classical form.
LogMag inv_sqrt_bound(int order)
{
    if (order < 0)
        throw std::invalid_argument("inv_sqrt_bound: order must be nonnegative");
    if (order == 0)
        return LogMag::one();
    LogMag a = to_logmag(Rational(double_factorial(2 * order + 1), BigInt(1) << (2 * order)));
    LogMag b = to_logmag(Rational(double_factorial(2 * order - 1), BigInt(1) << order));
    return max(a, b);
}

// Sigma(x) = w/k sum_r (x_r - mu)^2 with the plain mean mu: the gradient entry is
// 2w/k (x_l - mu), the Hessian 2w/k (delta - 1/k), the rest vanish.
LogMag variance_bound(const LayerNormParams& p, int order)
{
    if (order == 1)
        return val(2.0 * p.w * p.radius);
    if (order == 2)
        return val(2.0 * p.w);
    return LogMag::zero();
}

double centered_radius(const LayerNormParams& p)
{
    const double k = p.width;
    return p.radius * (std::abs(1.0 - p.w / k) + p.w * (k - 1.0) / k);
}

BoundTable layernorm_level_table(const LayerNormParams& p, int n_max, FactorMode mode)
{
    BoundTable g = level_table(n_max, mode, [](int n) { return inv_sqrt_bound(n); });
    BoundTable sig = level_table(n_max, mode, [&](int n) { return variance_bound(p, n); });
    BoundTable G = compose_level_table(g, sig, 1, n_max, mode);
    LogMag r0 = val(centered_radius(p));
    return level_table(n_max, mode, [&](int n) {
        // G itself is at most 1
        LogMag lead = r0 * G.upto(n);
        return val(p.gamma) * (lead + val(n) * upto_or_one(G, n - 1));
    });
}

TypeTable layernorm_type_table(const LayerNormParams& p, int n_max)
{
    TypeTable g = order_type_table(1, n_max, [](int n) { return inv_sqrt_bound(n); });
    TypeTable sig = order_type_table(p.width, n_max, [&](int n) { return variance_bound(p, n); });
    TypeTable G = compose_type_table(g, sig, n_max);
    LogMag r0 = val(centered_radius(p));
    return keyed_table(p.width, n_max, [&](const MultiIndex& key) {
        LogMag s = r0 * G.at(key);
        for (std::size_t q = 0; q < key.size(); ++q)
            s += val(key[q]) * at_or(G, lower(key, q), LogMag::one());
        return val(p.gamma) * s;
    });
}

namespace {
LayerNormParams ln_params(const ArchSpec& spec)
{
    return {spec.i, spec.radius, spec.gamma, spec.w};
}
} // namespace

LogMag layernorm_bound_level(const ArchSpec& spec, int n, FactorMode mode)
{
    return layernorm_level_table(ln_params(spec), n, mode).at(n);
}

LogMag layernorm_bound_type(const ArchSpec& spec, const MultiIndex& alpha)
{
    MultiIndex key = type_key(alpha);
    return layernorm_type_table(ln_params(spec), total(key)).at(key);
}

Interval perceptron_domain(const ArchSpec& spec, double radius)
{
    double r = spec.C_a + spec.i * spec.C_A * radius;
    return {-r, r};
}

// The inner map x -> A x + a is affine, so only |zeta| = 1 blocks survive and the
// composition collapses to the n-th activation derivative times C_A^n.
BoundTable feedforward_level_table(const ArchSpec& spec, double radius, int n_max,
                                   FactorMode mode)
{
    Interval dom = perceptron_domain(spec, radius);
    LogMag sig_cum;
    std::vector<LogMag> sig_upto(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        sig_cum = max(sig_cum, val(derivative_sup(spec.activation, n, dom)));
        sig_upto[n] = sig_cum;
    }
    return level_table(n_max, mode, [&](int n) {
        LogMag body = val(spec.l) * fact(n) * val(spec.C_B2) * sig_upto[n] *
                      val(spec.C_A).pow(n) * fdb_coeff(n, 1, mode);
        return n == 1 ? val(spec.C_B1) + body : body;
    });
}

TypeTable feedforward_type_table(const ArchSpec& spec, double radius, int n_max)
{
    Interval dom = perceptron_domain(spec, radius);
    std::vector<LogMag> sig(n_max + 1);
    for (int n = 1; n <= n_max; ++n)
        sig[n] = val(derivative_sup(spec.activation, n, dom));
    return keyed_table(spec.i, n_max, [&](const MultiIndex& key) {
        int n = total(key);
        LogMag body = val(spec.l) * to_logmag(factorial(key)) * val(spec.C_B2) * sig[n] *
                      val(spec.C_A).pow(n);
        return n == 1 ? val(spec.C_B1) + body : body;
    });
}

LogMag feedforward_bound_level(const ArchSpec& spec, int n, FactorMode mode)
{
    return feedforward_level_table(spec, spec.radius, n, mode).at(n);
}

LogMag feedforward_bound_type(const ArchSpec& spec, const MultiIndex& alpha)
{
    MultiIndex key = type_key(alpha);
    return feedforward_type_table(spec, spec.radius, total(key)).at(key);
}

} // namespace tbound
