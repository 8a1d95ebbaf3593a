#include "commands.hpp"
#include "config.hpp"
#include "emit.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace tbound;
using namespace tbound::cli;
using nlohmann::json;

namespace {

std::string error_of(const json& j)
{
    try {
        transformer_from_json(j);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

json block()
{
    return {{"M", 1}, {"i", 2}, {"k", 2}, {"v", 2}, {"l", 2}, {"o", 2}};
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("tbound_test_" + name);
}

} // namespace

TEST_CASE("fnv1a64 reference values")
{
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("arch specs parse with defaults")
{
    ArchSpec s = arch_from_json({{"M", 2}, {"i", 3}, {"activation", "tanh"}, {"C_K", 0.5}});
    CHECK(s.M == 2);
    CHECK(s.i == 3);
    CHECK(s.activation == ActivationKind::tanh);
    CHECK(s.C_K == 0.5);
    CHECK(s.H == 1);
    ArchSpec back = arch_from_json(to_json(s));
    CHECK(to_json(back) == to_json(s));
}

TEST_CASE("config errors name the field path")
{
    json t{{"blocks", {block(), block()}}};
    CHECK(error_of(t).empty());

    json bad = t;
    bad["blocks"][1]["M"] = 0;
    CHECK(error_of(bad).rfind("blocks[1].M", 0) == 0);

    bad = t;
    bad["blocks"][0]["colour"] = 1;
    CHECK(error_of(bad) == "blocks[0].colour: unknown field");

    bad = t;
    bad["blocks"][1]["k"] = 1.5;
    CHECK(error_of(bad) == "blocks[1].k: expected an integer");

    bad = t;
    bad["blocks"][0]["activation"] = "relu";
    CHECK(error_of(bad).rfind("blocks[0].activation", 0) == 0);

    bad = t;
    bad["blocks"][0]["C_V"] = -1.0;
    CHECK(error_of(bad).rfind("blocks[0].C_V", 0) == 0);

    bad = t;
    bad["blocks"][0]["w"] = 2.0;
    CHECK(error_of(bad).rfind("blocks[0].w", 0) == 0);

    CHECK(error_of(json{{"depth", 2}}).rfind("depth", 0) == 0);
    CHECK(error_of(json::object()).rfind("blocks", 0) == 0);
}

TEST_CASE("genbound configs")
{
    GenBoundInput a = genbound_from_json({{"Md", 3}, {"constants", {1, 2, 4}}});
    CHECK(a.Md == 3);
    CHECK(a.constants.size() == 3);
    CHECK(a.constants.at(2).value() == doctest::Approx(4.0));
    CHECK_FALSE(a.t.has_value());

    GenBoundInput b = genbound_from_json({{"t", 500}, {"N", 100}, {"constants", {{"1", 3.0}, {"2", 5.0}}}});
    CHECK(*b.t == 500);
    CHECK(b.constants.begin()->first == 1);

    CHECK_THROWS_AS(genbound_from_json({{"Md", 2}}), ConfigError);
    CHECK_THROWS_AS(genbound_from_json({{"constants", {1, -2}}}), ConfigError);
    CHECK_THROWS_AS(genbound_from_json({{"constants", {{"x", 1}}}}), ConfigError);
}

TEST_CASE("config files hash their canonical form")
{
    auto p1 = temp_file("a.json"), p2 = temp_file("b.json"), p3 = temp_file("c.json");
    std::ofstream(p1) << R"({"M": 1, "i": 2})";
    std::ofstream(p2) << "{\n  \"i\": 2,\n  \"M\": 1\n}\n";
    std::ofstream(p3) << R"({"M": 1, "i": )";
    CHECK(read_config(p1.string()).hash == read_config(p2.string()).hash);
    CHECK_THROWS_AS(read_config(p3.string()), ConfigError);
    CHECK_THROWS_AS(read_config(temp_file("missing.json").string()), ConfigError);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
    std::filesystem::remove(p3);
}

TEST_CASE("tables carry one metadata line then csv")
{
    Table t{{"order", "bound"}, {{"1", "2.5"}, {"2", "7"}}};
    Metadata m;
    m.config_hash = "abc";
    m.mode = "exact";
    m.variant = "level";
    m.extra = {{"block", "multihead"}};
    std::ostringstream os;
    emit_table(t, m, os);
    std::string want = "# tbound version=" TBOUND_VERSION
                       " config_hash=abc mode=exact variant=level block=multihead\n"
                       "order,bound\n1,2.5\n2,7\n";
    CHECK(os.str() == want);

    CHECK_THROWS_AS(emit_table(Table{{"order"}, {}}, m, os), std::invalid_argument);
    CHECK_THROWS_AS(write_table(t, m, "/nonexistent_dir/x.csv"), std::runtime_error);
}

TEST_CASE("numeric formatting")
{
    CHECK(fmt_real(0.5) == "0.5");
    CHECK(fmt_real(1.0 / 3.0, 3) == "0.333");
    CHECK(fmt_real(INFINITY) == "inf");
    CHECK(fmt_log10(LogMag::zero()) == "-inf");
    CHECK(fmt_log10(LogMag::from_value(100.0)) == "2.000000");
}

TEST_CASE("commands write deterministic files")
{
    auto out1 = temp_file("g1.csv"), out2 = temp_file("g2.csv");
    GenboundOpts g;
    g.constants = "1,2,4,8";
    g.n_max = 10000;
    g.out = out1.string();
    CHECK(run_genbound(g) == exit_ok);
    g.out = out2.string();
    CHECK(run_genbound(g) == exit_ok);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1).rfind("# tbound version=", 0) == 0);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("bad block selector is a config error")
{
    BlockOpts b;
    b.config = std::string(TBOUND_CONFIG_DIR) + "/multihead_base.json";
    b.block = "convolution";
    CHECK_THROWS_AS(run_block_bounds(b), ConfigError);
    b.block = "multihead";
    b.out = temp_file("mh.csv").string();
    CHECK(run_block_bounds(b) == exit_ok);
    std::filesystem::remove(b.out);
}
