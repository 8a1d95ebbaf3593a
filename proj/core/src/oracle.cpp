#include "tbound/oracle.hpp"

#include "tbound/composer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tbound {

std::string to_string(Component c)
{
    switch (c) {
    case Component::dotp:
        return "dotp";
    case Component::attention:
        return "attention";
    case Component::multihead:
        return "multihead";
    case Component::layernorm:
        return "layernorm";
    case Component::feedforward:
        return "feedforward";
    case Component::block:
        break;
    }
    return "block";
}

Component component_from_string(const std::string& s)
{
    for (Component c : {Component::dotp, Component::attention, Component::multihead,
                        Component::layernorm, Component::feedforward, Component::block})
        if (to_string(c) == s)
            return c;
    throw std::invalid_argument("unknown component: " + s);
}

Matrix Sampler::matrix(int rows, int cols, double cap)
{
    Matrix m{rows, cols, Vec(static_cast<std::size_t>(rows) * cols)};
    for (double& e : m.a)
        e = uniform(cap);
    return m;
}

Vec Sampler::vector(int n, double cap)
{
    Vec v(n);
    for (double& e : v)
        e = uniform(cap);
    return v;
}

namespace {

int head_width(const ArchSpec& s) { return std::max(1, s.v / s.H); }

} // namespace

ConcreteNetwork::ConcreteNetwork(Component component, const ArchSpec& spec, std::uint64_t seed)
    : component_(component), spec_(spec)
{
    spec_.validate();
    Sampler smp(seed);
    const int nheads = component == Component::multihead || component == Component::block ? spec.H : 1;
    const int vw = nheads == 1 ? spec.v : head_width(spec);
    for (int h = 0; h < nheads; ++h)
        heads_.push_back({smp.matrix(spec.i, spec.k, spec.C_Q), smp.matrix(spec.i, spec.k, spec.C_K),
                          smp.matrix(spec.i, vw, spec.C_V)});
    W_ = smp.matrix(nheads * vw, spec.i, spec.C_W);
    A_ = smp.matrix(spec.l, spec.i, spec.C_A);
    a_ = smp.vector(spec.l, spec.C_a);
    B1_ = smp.matrix(spec.o, spec.i, spec.C_B1);
    B2_ = smp.matrix(spec.o, spec.l, spec.C_B2);
    ln1_ = {smp.uniform(spec.gamma), smp.vector(spec.i, spec.beta)};
    ln2_ = {smp.uniform(spec.gamma), smp.vector(spec.o, spec.beta)};
}

int ConcreteNetwork::input_dim() const
{
    if (component_ == Component::layernorm || component_ == Component::feedforward)
        return spec_.i;
    return spec_.M * spec_.i;
}

// <x_m Q, x_j K> / sqrt(k) for j = 1..M
Vec ConcreteNetwork::scores(const Head& h, const Vec& x, int m) const
{
    const int M = spec_.M, I = spec_.i, K = spec_.k;
    Vec q(K, 0.0);
    for (int a = 0; a < K; ++a)
        for (int r = 0; r < I; ++r)
            q[a] += x[m * I + r] * h.Q(r, a);
    Vec s(M, 0.0);
    for (int j = 0; j < M; ++j) {
        for (int a = 0; a < K; ++a) {
            double kv = 0.0;
            for (int r = 0; r < I; ++r)
                kv += x[j * I + r] * h.K(r, a);
            s[j] += q[a] * kv;
        }
        s[j] /= std::sqrt(static_cast<double>(K));
    }
    return s;
}

Vec ConcreteNetwork::attention(const Head& h, const Vec& x) const
{
    const int M = spec_.M, I = spec_.i, V = h.V.cols;
    Vec xv(static_cast<std::size_t>(M) * V, 0.0);
    for (int j = 0; j < M; ++j)
        for (int c = 0; c < V; ++c)
            for (int r = 0; r < I; ++r)
                xv[j * V + c] += x[j * I + r] * h.V(r, c);
    Vec out(static_cast<std::size_t>(M) * V, 0.0);
    for (int m = 0; m < M; ++m) {
        Vec s = scores(h, x, m);
        double top = *std::max_element(s.begin(), s.end());
        double z = 0.0;
        for (double& e : s) {
            e = std::exp(e - top);
            z += e;
        }
        for (int j = 0; j < M; ++j)
            for (int c = 0; c < V; ++c)
                out[m * V + c] += s[j] / z * xv[j * V + c];
    }
    return out;
}

Vec ConcreteNetwork::multihead(const Vec& x) const
{
    const int M = spec_.M, I = spec_.i;
    Vec out(static_cast<std::size_t>(M) * I, 0.0);
    int off = 0;
    for (const auto& h : heads_) {
        const int V = h.V.cols;
        Vec att = attention(h, x);
        for (int m = 0; m < M; ++m)
            for (int c = 0; c < V; ++c)
                for (int r = 0; r < I; ++r)
                    out[m * I + r] += att[m * V + c] * W_(off + c, r);
        off += V;
    }
    return out;
}

// gamma (u - w mean) / sqrt(1 + w/F sum (u - mean)^2) + beta
Vec ConcreteNetwork::layernorm(const Norm& n, const Vec& u) const
{
    const double F = static_cast<double>(u.size());
    double mean = 0.0;
    for (double e : u)
        mean += e;
    mean /= F;
    double var = 0.0;
    for (double e : u)
        var += (e - mean) * (e - mean);
    var *= spec_.w / F;
    const double scale = n.gamma / std::sqrt(1.0 + var);
    Vec out(u.size());
    for (std::size_t r = 0; r < u.size(); ++r)
        out[r] = scale * (u[r] - spec_.w * mean) + n.beta[r];
    return out;
}

Vec ConcreteNetwork::perceptron(const Vec& u) const
{
    Vec hid(spec_.l);
    for (int j = 0; j < spec_.l; ++j) {
        double z = a_[j];
        for (int r = 0; r < spec_.i; ++r)
            z += A_(j, r) * u[r];
        hid[j] = activation_value(spec_.activation, z);
    }
    Vec out(spec_.o, 0.0);
    for (int c = 0; c < spec_.o; ++c) {
        for (int r = 0; r < spec_.i; ++r)
            out[c] += B1_(c, r) * u[r];
        for (int j = 0; j < spec_.l; ++j)
            out[c] += B2_(c, j) * hid[j];
    }
    return out;
}

Vec ConcreteNetwork::evaluate(const Vec& x) const
{
    if (static_cast<int>(x.size()) != input_dim())
        throw std::invalid_argument("evaluate: input has " + std::to_string(x.size()) +
                                    " entries, expected " + std::to_string(input_dim()));
    switch (component_) {
    case Component::dotp:
        return scores(heads_[0], x, 0);
    case Component::attention:
        return attention(heads_[0], x);
    case Component::multihead:
        return multihead(x);
    case Component::layernorm:
        return layernorm(ln1_, x);
    case Component::feedforward:
        return perceptron(x);
    case Component::block:
        break;
    }
    const int M = spec_.M, I = spec_.i, O = spec_.o;
    Vec x1 = multihead(x);
    for (std::size_t e = 0; e < x1.size(); ++e)
        x1[e] += x[e];
    Vec out;
    out.reserve(static_cast<std::size_t>(M) * O);
    for (int m = 0; m < M; ++m) {
        Vec row(x1.begin() + m * I, x1.begin() + (m + 1) * I);
        Vec y = layernorm(ln2_, perceptron(layernorm(ln1_, row)));
        out.insert(out.end(), y.begin(), y.end());
    }
    return out;
}

namespace {

Vec nested(const std::function<Vec(const Vec&)>& f, Vec& x, MultiIndex& alpha, double h)
{
    auto it = std::find_if(alpha.begin(), alpha.end(), [](int a) { return a > 0; });
    if (it == alpha.end()) {
        Vec y = f(x);
        for (double e : y)
            if (!std::isfinite(e))
                throw std::domain_error("numeric_partial: non-finite function value");
        return y;
    }
    const auto j = static_cast<std::size_t>(it - alpha.begin());
    --alpha[j];
    const double x0 = x[j];
    x[j] = x0 + h;
    Vec up = nested(f, x, alpha, h);
    x[j] = x0 - h;
    Vec dn = nested(f, x, alpha, h);
    x[j] = x0;
    ++alpha[j];
    for (std::size_t c = 0; c < up.size(); ++c)
        up[c] = (up[c] - dn[c]) / (2.0 * h);
    return up;
}

} // namespace

Vec numeric_partial(const std::function<Vec(const Vec&)>& f, const Vec& x, const MultiIndex& alpha,
                    double h)
{
    if (alpha.size() != x.size())
        throw std::invalid_argument("numeric_partial: alpha and x differ in dimension");
    if (total(alpha) > 3)
        throw std::invalid_argument("numeric_partial: order above 3");
    if (!(h >= 1e-5 && h <= 1e-1))
        throw std::invalid_argument("numeric_partial: step must lie in [1e-5, 1e-1]");
    Vec xx = x;
    MultiIndex a = alpha;
    Vec coarse = nested(f, xx, a, h);
    Vec fine = nested(f, xx, a, h / 2.0);
    for (std::size_t c = 0; c < fine.size(); ++c)
        fine[c] = (4.0 * fine[c] - coarse[c]) / 3.0;
    return fine;
}

double default_step(int order)
{
    return order <= 1 ? 1e-3 : 1e-2;
}

std::vector<Vec> sample_points(int dim, double r, int count, std::uint64_t seed)
{
    std::vector<int> primes;
    for (int p = 2; static_cast<int>(primes.size()) < dim; ++p)
        if (std::none_of(primes.begin(), primes.end(), [p](int q) { return p % q == 0; }))
            primes.push_back(p);
    Sampler smp(seed);
    Vec shift(dim);
    for (double& s : shift)
        s = smp.unit();
    std::vector<Vec> pts(count, Vec(dim));
    for (int n = 0; n < count; ++n)
        for (int d = 0; d < dim; ++d) {
            double u = 0.0, f = 1.0;
            for (int q = n + 1; q > 0; q /= primes[d]) {
                f /= primes[d];
                u += f * (q % primes[d]);
            }
            u += shift[d];
            u -= std::floor(u);
            pts[n][d] = r * (2.0 * u - 1.0);
        }
    return pts;
}

std::vector<EmpiricalEstimate> empirical_cs(const ConcreteNetwork& net, double radius, int n,
                                            int grid, std::uint64_t seed, double fd_step)
{
    if (n < 1 || n > 3)
        throw std::invalid_argument("empirical_cs: order must lie in 1..3");
    if (!(radius > 0.0))
        throw std::invalid_argument("empirical_cs: radius must be positive");
    const int dim = net.input_dim();
    double hmax = 0.0;
    for (int q = 1; q <= n; ++q)
        hmax = std::max(hmax, fd_step > 0.0 ? fd_step : default_step(q));
    // keep every stencil point inside the ball
    const double inner = std::max(0.0, radius - n * hmax);
    const auto pts = sample_points(dim, inner, grid, seed);
    auto f = [&net](const Vec& x) { return net.evaluate(x); };

    std::vector<EmpiricalEstimate> out;
    for (int q = 1; q <= n; ++q) {
        const double h = fd_step > 0.0 ? fd_step : default_step(q);
        for (const auto& key : partitions(q, dim)) {
            EmpiricalEstimate est{key, 0.0, h, grid};
            MultiIndex g = pad(key, dim);
            std::sort(g.begin(), g.end());
            do {
                for (const auto& x : pts)
                    for (double d : numeric_partial(f, x, g, h))
                        est.value = std::max(est.value, std::abs(d));
            } while (std::next_permutation(g.begin(), g.end()));
            out.push_back(est);
        }
    }
    return out;
}

bool exceeds(double empirical, LogMag bound)
{
    const double b = bound.is_finite() ? bound.value() : INFINITY;
    return empirical > b * (1.0 + 1e-6) + 1e-7;
}

TypeTable component_type_table(Component c, const ArchSpec& spec, int n_max)
{
    switch (c) {
    case Component::dotp:
        return dotp_type_table(spec, n_max);
    case Component::attention:
        return attention_type_table(spec, n_max);
    case Component::multihead:
        return multihead_type_table(spec, n_max);
    case Component::layernorm:
        return layernorm_type_table({spec.i, spec.radius, spec.gamma, spec.w}, n_max);
    case Component::feedforward:
        return feedforward_type_table(spec, spec.radius, n_max);
    case Component::block:
        break;
    }
    return tblock_type_table(spec, n_max);
}

BoundTable component_level_table(Component c, const ArchSpec& spec, int n_max, FactorMode mode)
{
    switch (c) {
    case Component::dotp:
        return dotp_level_table(spec, n_max);
    case Component::attention:
        return attention_level_table(spec, n_max, mode);
    case Component::multihead:
        return multihead_level_table(spec, n_max, mode);
    case Component::layernorm:
        return layernorm_level_table({spec.i, spec.radius, spec.gamma, spec.w}, n_max, mode);
    case Component::feedforward:
        return feedforward_level_table(spec, spec.radius, n_max, mode);
    case Component::block:
        break;
    }
    return tblock_level_table(spec, n_max, mode);
}

SoundnessReport soundness_check(Component c, const ArchSpec& spec, int n_max, int trials,
                                std::uint64_t seed, int grid, double fd_step)
{
    if (n_max < 1 || n_max > 3)
        throw std::invalid_argument("soundness_check: order must lie in 1..3");
    SoundnessReport rep{c, trials, n_max, {}, 0};
    const TypeTable types = component_type_table(c, spec, n_max);
    const BoundTable levels = component_level_table(c, spec, n_max, FactorMode::exact_touchard);
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
    {
        std::mt19937_64 master(seed);
        for (auto& s : seeds)
            s = master();
    }
    for (int t = 0; t < trials; ++t) {
        ConcreteNetwork net(c, spec, seeds[t]);
        for (const auto& est : empirical_cs(net, spec.radius, n_max, grid, seeds[t] ^ 0x9e3779b97f4a7c15ULL,
                                            fd_step)) {
            SoundnessEntry e{t, est.alpha, est.value, types.at(est.alpha),
                             levels.at(total(est.alpha)), false};
            e.violated = exceeds(e.empirical, e.type_bound) || exceeds(e.empirical, e.level_bound);
            rep.violations += e.violated;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

} // namespace tbound
