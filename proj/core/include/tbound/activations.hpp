#pragma once

#include <functional>
#include <map>
#include <string>

namespace tbound {

enum class ActivationKind { softplus, gelu, tanh, swish, sigmoid };

std::string to_string(ActivationKind kind);
ActivationKind activation_from_string(const std::string& s);

struct Interval {
    double lo = -30.0;
    double hi = 30.0;
};

double sigmoid(double x);
double softplus(double x);
double gelu(double x);
double swish(double x);

// sum_k (-1)^{n+k} k! S(n,k) s (1-s)^k with s = sigmoid(x); n = 0 gives sigmoid(x).
double sigmoid_deriv(int n, double x);
// n >= 1; uses the Hermite form of the Gaussian density derivatives.
double gelu_deriv(int n, double x);
// (-2)^n (z+1) sum_k k!/2^k C(n,k) (z-1)^k
double tanh_bound_poly(int n, double z);
// n >= 1; n sigma^{(n-1)} + x sigma^{(n)} with sigma^{(j)} in powers of sigma.
double swish_deriv(int n, double x);
// Exact n-th derivative (n >= 0) of the activation itself.
double activation_deriv(ActivationKind kind, int n, double x);
double activation_value(ActivationKind kind, double x);

// sup |f| on [lo, hi]: uniform grid followed by golden-section refinement of the best cell.
double maximize_abs(const std::function<double(double)>& f, Interval domain,
                    int grid_points = 100001);

// Table convention: softplus order s reports sup|sigmoid^{(s)}|, tanh reports max|C_n| on [-1,1].
double activation_bound(ActivationKind kind, int n, Interval domain = {});

// Sup of the true n-th derivative (n >= 0) on the domain, used inside compositions.
// For tanh this is the larger of the C_n polynomial maximum and the true supremum.
double derivative_sup(ActivationKind kind, int n, Interval domain);

// The closed-form a_n b_n c_n bound for GeLU, n >= 2.
double gelu_closed_form_bound(int n);

struct ActivationBoundTable {
    ActivationKind kind;
    Interval domain;
    std::map<int, double> bounds;
};

ActivationBoundTable activation_table(ActivationKind kind, int s_max, Interval domain = {});

} // namespace tbound
