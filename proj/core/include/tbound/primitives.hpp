#pragma once

#include "tbound/arch.hpp"

namespace tbound {

// Scores <q_m, k_j> for one query row; inputs are the M*i entries of the sequence.
// Order 1: 2 i k ||K|| C_Q C_K, order 2: 2 k C_Q C_K, higher orders vanish.
LogMag dotp_bound(const ArchSpec& spec, int order);
// Softmax over M scores: |alpha|! (and 1 at order 0).
LogMag softmax_bound(int order);

BoundTable dotp_level_table(const ArchSpec& spec, int n_max);
BoundTable softmax_level_table(int n_max);
TypeTable dotp_type_table(const ArchSpec& spec, int n_max);
TypeTable softmax_type_table(int M, int n_max);

// softmax composed with the score map; level and type forms.
BoundTable softmax_dotp_level_table(const ArchSpec& spec, int n_max, FactorMode mode);
TypeTable softmax_dotp_type_table(const ArchSpec& spec, int n_max);

// Single-head self-attention output entry.
BoundTable attention_level_table(const ArchSpec& spec, int n_max, FactorMode mode);
TypeTable attention_type_table(const ArchSpec& spec, int n_max);
LogMag attention_bound_level(const ArchSpec& spec, int n, FactorMode mode);
LogMag attention_bound_type(const ArchSpec& spec, const MultiIndex& alpha);

// H heads concatenated and mixed by W.
BoundTable multihead_level_table(const ArchSpec& spec, int n_max, FactorMode mode);
TypeTable multihead_type_table(const ArchSpec& spec, int n_max);
LogMag multihead_bound_level(const ArchSpec& spec, int n, FactorMode mode);
LogMag multihead_bound_type(const ArchSpec& spec, const MultiIndex& alpha);

// Layer norm gamma (x - w mu) / sqrt(1 + w sigma^2) + beta on `width` inputs of sup-norm radius r.
struct LayerNormParams {
    int width = 1;
    double radius = 1.0;
    double gamma = 1.0;
    double w = 1.0;
};
// Derivative bounds of g(u) = (1+u)^{-1/2} on u >= 0, and of the variance map.
LogMag inv_sqrt_bound(int order);
LogMag variance_bound(const LayerNormParams& p, int order);
// sup |x_r - w mu| on the ball
double centered_radius(const LayerNormParams& p);

BoundTable layernorm_level_table(const LayerNormParams& p, int n_max, FactorMode mode);
TypeTable layernorm_type_table(const LayerNormParams& p, int n_max);
LogMag layernorm_bound_level(const ArchSpec& spec, int n, FactorMode mode);
LogMag layernorm_bound_type(const ArchSpec& spec, const MultiIndex& alpha);

// Two-layer perceptron B2 sigma(A x + a) + B1 x on i inputs of radius r.
// The activation is evaluated on [-(C_a + i C_A r), C_a + i C_A r].
Interval perceptron_domain(const ArchSpec& spec, double radius);
BoundTable feedforward_level_table(const ArchSpec& spec, double radius, int n_max,
                                   FactorMode mode);
TypeTable feedforward_type_table(const ArchSpec& spec, double radius, int n_max);
LogMag feedforward_bound_level(const ArchSpec& spec, int n, FactorMode mode);
LogMag feedforward_bound_type(const ArchSpec& spec, const MultiIndex& alpha);

} // namespace tbound
