#include "tbound/presets.hpp"

namespace tbound::presets {

ArchSpec multihead_base()
{
    ArchSpec s;
    s.i = 5;
    s.M = 1;
    s.k = 3;
    s.v = 64;
    s.C_K = s.C_Q = s.C_V = s.C_W = 0.1;
    s.radius = 1.0;
    return s;
}

ArchSpec layernorm_base()
{
    ArchSpec s;
    s.i = 5;
    s.radius = 10.0;
    s.gamma = 0.1;
    return s;
}

ArchSpec perceptron_base()
{
    ArchSpec s;
    s.l = 64;
    s.C_A = s.C_B1 = s.C_B2 = 1.0;
    s.activation = ActivationKind::sigmoid;
    return s;
}

ArchSpec block_base()
{
    ArchSpec s;
    s.i = 5;
    s.o = 5;
    s.M = 1;
    s.k = 3;
    s.v = 64;
    s.l = 64;
    s.C_K = s.C_Q = s.C_V = s.C_W = 0.01;
    s.C_A = s.C_B1 = s.C_B2 = 0.001;
    s.gamma = 0.01;
    return s;
}

TransformerSpec transformer_base(int depth)
{
    TransformerSpec t;
    t.blocks.assign(static_cast<std::size_t>(depth), block_base());
    t.out_dim = 1;
    return t;
}

GenBoundInput genbound_base(int Md, int s_max, double growth)
{
    GenBoundInput in;
    in.kappa = 0.5;
    in.delta = 0.05;
    in.N = 100;
    in.Md = Md;
    for (int s = 0; s <= s_max; ++s)
        in.constants[s] = LogMag::from_value(growth).pow(s);
    return in;
}

} // namespace tbound::presets
