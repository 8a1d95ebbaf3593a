#include "commands.hpp"
#include "config.hpp"

#include "tbound/multiindex.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace tbound::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Explicit C^s-norm bounds for transformer components and networks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(TBOUND_VERSION));

    const std::vector<std::string> modes{"exact", "asymptotic"};
    const std::vector<std::string> variants{"type", "level"};
    int code = exit_ok;

    ActivationOpts act;
    auto* a = app.add_subcommand("activation", "Derivative bounds of activation functions");
    a->add_option("--kind", act.kinds, "softplus, gelu, tanh, swish, sigmoid")->capture_default_str();
    a->add_option("--s-max", act.s_max, "Highest derivative order")->capture_default_str();
    a->add_option("--lo", act.lo, "Domain lower end")->capture_default_str();
    a->add_option("--hi", act.hi, "Domain upper end")->capture_default_str();
    a->add_flag("--raw", act.raw, "Print full precision instead of table style");
    a->add_option("--out", act.out, "Output CSV, - for stdout")->capture_default_str();
    a->callback([&] { code = run_activation(act); });

    BlockOpts blk;
    auto* b = app.add_subcommand("block-bounds", "Bounds for one transformer component");
    b->add_option("--config", blk.config, "Architecture JSON")->required();
    b->add_option("--block", blk.block, "Component")
        ->check(CLI::IsMember({"dotp", "softmax", "attention", "multihead", "layernorm",
                               "feedforward", "block"}))
        ->capture_default_str();
    b->add_option("--variant", blk.variant)->check(CLI::IsMember(variants))->capture_default_str();
    b->add_option("--mode", blk.mode)->check(CLI::IsMember(modes))->capture_default_str();
    b->add_option("--max-order", blk.max_order)->capture_default_str();
    b->add_option("--out", blk.out)->capture_default_str();
    b->callback([&] { code = run_block_bounds(blk); });

    TransformerOpts tr;
    auto* t = app.add_subcommand("transformer-bounds", "Bounds for a stack of blocks");
    t->add_option("--config", tr.config, "Transformer JSON")->required();
    t->add_option("--variant", tr.variant)->check(CLI::IsMember(variants))->capture_default_str();
    t->add_option("--mode", tr.mode)->check(CLI::IsMember(modes))->capture_default_str();
    t->add_option("--max-order", tr.max_order)->capture_default_str();
    t->add_option("--out", tr.out)->capture_default_str();
    t->callback([&] { code = run_transformer_bounds(tr); });

    GenboundOpts gb;
    std::int64_t horizon = 0;
    auto* g = app.add_subcommand("genbound", "Generalization bound envelope over N");
    g->add_option("--config", gb.config, "JSON with kappa, delta, Md, constants");
    g->add_option("--kappa", gb.kappa)->capture_default_str();
    g->add_option("--delta", gb.delta)->capture_default_str();
    g->add_option("--md", gb.md, "Lifted dimension M*d")->capture_default_str();
    g->add_option("--constants", gb.constants, "CSV file of s,C rows or inline C_s0,C_s0+1,...");
    g->add_option("--s0", gb.s0, "Order of the first inline constant")->capture_default_str();
    g->add_option("--s-max", gb.s_max, "Highest order considered (default: all)");
    auto* topt = g->add_option("--t", horizon, "Time horizon (default: infinity)");
    g->add_option("--n-min", gb.n_min)->capture_default_str();
    g->add_option("--n-max", gb.n_max)->capture_default_str();
    g->add_option("--per-decade", gb.per_decade, "Grid points per decade of N")->capture_default_str();
    g->add_option("--out", gb.out)->capture_default_str();
    g->callback([&] {
        if (topt->count())
            gb.t = horizon;
        code = run_genbound(gb);
    });

    TransitionsOpts ts;
    auto* s = app.add_subcommand("transitions", "Transition times tau_s");
    s->add_option("--config", ts.config, "JSON with kappa, delta, Md, constants");
    s->add_option("--kappa", ts.kappa)->capture_default_str();
    s->add_option("--delta", ts.delta)->capture_default_str();
    s->add_option("--md", ts.md)->capture_default_str();
    s->add_option("--constants", ts.constants);
    s->add_option("--s0", ts.s0)->capture_default_str();
    s->add_option("--s-max", ts.s_max)->capture_default_str();
    s->add_option("--n-cap", ts.n_cap, "Search limit for N")->capture_default_str();
    s->add_option("--out", ts.out)->capture_default_str();
    s->callback([&] { code = run_transitions(ts); });

    VerifyOpts vf;
    auto* v = app.add_subcommand("verify", "Finite-difference soundness check");
    v->add_option("--config", vf.config, "Architecture JSON")->required();
    v->add_option("--component", vf.component)
        ->check(CLI::IsMember({"dotp", "attention", "multihead", "layernorm", "feedforward", "block"}))
        ->capture_default_str();
    v->add_option("--order", vf.order)->capture_default_str();
    v->add_option("--trials", vf.trials)->capture_default_str();
    v->add_option("--seed", vf.seed)->capture_default_str();
    v->add_option("--fd-step", vf.fd_step, "0 selects 1e-3 (order 1) and 1e-2 (higher)")
        ->capture_default_str();
    v->add_option("--grid", vf.grid, "Sample points per trial")->capture_default_str();
    v->add_option("--out", vf.out, "Report JSON")->capture_default_str();
    v->callback([&] { code = run_verify(vf); });

    FigureOpts fg;
    auto* f = app.add_subcommand("figure", "Long-format figure data");
    f->add_option("--which", fg.which)
        ->check(CLI::IsMember({"activation_curves", "block_comparison", "type_vs_level",
                               "transition_vs_dim", "architecture_sweep"}))
        ->capture_default_str();
    f->add_option("--out", fg.out)->capture_default_str();
    f->callback([&] { code = run_figure(fg); });

    try {
        apply_env_cap();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const tbound::EnumerationCapExceeded& e) {
        std::cerr << "enumeration cap exceeded: " << e.what() << '\n';
        return exit_cap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return code;
}
