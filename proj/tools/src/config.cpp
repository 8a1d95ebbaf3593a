#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace tbound::cli {

using nlohmann::json;

std::string fnv1a64_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LoadedConfig read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    LoadedConfig c;
    try {
        c.doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    c.hash = fnv1a64_hex(c.doc.dump());
    return c;
}

namespace {

std::string field(const std::string& where, const std::string& key)
{
    return where.empty() ? key : where + "." + key;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where)
{
    if (!j.is_object())
        throw ConfigError((where.empty() ? "config" : where) + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!known.count(key))
            throw ConfigError(field(where, key) + ": unknown field");
}

template <class T>
void read(const json& j, const std::string& key, T& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    const json& v = j.at(key);
    if constexpr (std::is_same_v<T, int>) {
        if (!v.is_number_integer())
            throw ConfigError(field(where, key) + ": expected an integer");
        out = v.get<int>();
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
        if (!v.is_number_integer())
            throw ConfigError(field(where, key) + ": expected an integer");
        out = v.get<std::int64_t>();
    } else {
        if (!v.is_number())
            throw ConfigError(field(where, key) + ": expected a number");
        out = v.get<double>();
    }
}

template <class F>
auto validated(F f, const std::string& where)
{
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where.empty() ? std::string(e.what()) : where + "." + e.what());
    }
}

} // namespace

ArchSpec arch_from_json(const json& j, const std::string& where)
{
    static const std::set<std::string> known{
        "M",  "i",  "k",    "v",    "l",     "o",          "H",   "C_K",  "C_Q",  "C_V",
        "C_W", "C_A", "C_B1", "C_B2", "gamma", "w", "activation", "radius", "C_a", "beta"};
    reject_unknown(j, known, where);
    ArchSpec s;
    read(j, "M", s.M, where);
    read(j, "i", s.i, where);
    read(j, "k", s.k, where);
    read(j, "v", s.v, where);
    read(j, "l", s.l, where);
    read(j, "o", s.o, where);
    read(j, "H", s.H, where);
    read(j, "C_K", s.C_K, where);
    read(j, "C_Q", s.C_Q, where);
    read(j, "C_V", s.C_V, where);
    read(j, "C_W", s.C_W, where);
    read(j, "C_A", s.C_A, where);
    read(j, "C_B1", s.C_B1, where);
    read(j, "C_B2", s.C_B2, where);
    read(j, "gamma", s.gamma, where);
    read(j, "w", s.w, where);
    read(j, "radius", s.radius, where);
    read(j, "C_a", s.C_a, where);
    read(j, "beta", s.beta, where);
    if (j.contains("activation")) {
        if (!j.at("activation").is_string())
            throw ConfigError(field(where, "activation") + ": expected a string");
        try {
            s.activation = activation_from_string(j.at("activation").get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(field(where, "activation") + ": " + e.what());
        }
    }
    validated([&] { s.validate(); return 0; }, where);
    return s;
}

TransformerSpec transformer_from_json(const json& j)
{
    reject_unknown(j, {"blocks", "final_A_bound", "final_b_bound", "out_dim"}, "");
    if (!j.contains("blocks") || !j.at("blocks").is_array())
        throw ConfigError("blocks: expected an array of block specs");
    TransformerSpec t;
    const json& blocks = j.at("blocks");
    for (std::size_t b = 0; b < blocks.size(); ++b)
        t.blocks.push_back(arch_from_json(blocks[b], "blocks[" + std::to_string(b) + "]"));
    read(j, "final_A_bound", t.final_A_bound, "");
    read(j, "final_b_bound", t.final_b_bound, "");
    read(j, "out_dim", t.out_dim, "");
    validated([&] { t.validate(); return 0; }, "");
    return t;
}

GenBoundInput genbound_from_json(const json& j)
{
    reject_unknown(j, {"kappa", "delta", "N", "t", "Md", "constants"}, "");
    GenBoundInput in;
    read(j, "kappa", in.kappa, "");
    read(j, "delta", in.delta, "");
    read(j, "N", in.N, "");
    read(j, "Md", in.Md, "");
    if (j.contains("t") && !j.at("t").is_null()) {
        std::int64_t t = 0;
        read(j, "t", t, "");
        in.t = t;
    }
    if (!j.contains("constants"))
        throw ConfigError("constants: required");
    const json& c = j.at("constants");
    auto put = [&](int s, const json& v, const std::string& path) {
        if (!v.is_number() || v.get<double>() < 0.0 || !std::isfinite(v.get<double>()))
            throw ConfigError(path + ": expected a finite nonnegative number");
        in.constants[s] = LogMag::from_value(v.get<double>());
    };
    if (c.is_array()) {
        for (std::size_t s = 0; s < c.size(); ++s)
            put(static_cast<int>(s), c[s], "constants[" + std::to_string(s) + "]");
    } else if (c.is_object()) {
        for (const auto& [key, v] : c.items()) {
            int s = 0;
            try {
                std::size_t used = 0;
                s = std::stoi(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw ConfigError("constants." + key + ": order must be an integer");
            }
            put(s, v, "constants." + key);
        }
    } else {
        throw ConfigError("constants: expected an array or an object");
    }
    validated([&] { in.validate(); return 0; }, "");
    return in;
}

json to_json(const ArchSpec& s)
{
    return json{{"M", s.M},         {"i", s.i},       {"k", s.k},
                {"v", s.v},         {"l", s.l},       {"o", s.o},
                {"H", s.H},         {"C_K", s.C_K},   {"C_Q", s.C_Q},
                {"C_V", s.C_V},     {"C_W", s.C_W},   {"C_A", s.C_A},
                {"C_B1", s.C_B1},   {"C_B2", s.C_B2}, {"gamma", s.gamma},
                {"w", s.w},         {"activation", to_string(s.activation)},
                {"radius", s.radius}, {"C_a", s.C_a}, {"beta", s.beta}};
}

json to_json(const TransformerSpec& t)
{
    json blocks = json::array();
    for (const auto& b : t.blocks)
        blocks.push_back(to_json(b));
    return json{{"blocks", blocks},
                {"final_A_bound", t.final_A_bound},
                {"final_b_bound", t.final_b_bound},
                {"out_dim", t.out_dim}};
}

} // namespace tbound::cli
