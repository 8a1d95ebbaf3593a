#pragma once

#include "tbound/arch.hpp"
#include "tbound/genbound.hpp"

namespace tbound::presets {

// Base rows of the reference tables. Parameters the tables leave open are fixed here:
// v = 64, H = 1, w = 1, sigmoid activation, C_a = 0, beta = 0.
ArchSpec multihead_base();  // i=5, M=1, k=3, C_{K,Q,V,W}=0.1, ||K||=1
ArchSpec layernorm_base();  // width 5, ||K||=10, gamma=0.1
ArchSpec perceptron_base(); // l=64, C_{A,B1,B2}=1, one input
ArchSpec block_base();      // i=o=5, M=1, k=3, l=64, C_{K,Q,V,W}=0.01, C_{A,B}=0.001, gamma=0.01

TransformerSpec transformer_base(int depth);

// Constants C_s = growth^s for s = 0..s_max with kappa = 0.5, delta = 0.05.
GenBoundInput genbound_base(int Md, int s_max, double growth = 2.0);

} // namespace tbound::presets
