#pragma once

#include "tbound/arch.hpp"
#include "tbound/genbound.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace tbound::cli {

// Schema or invariant violation; the message starts with the field path.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LoadedConfig {
    nlohmann::json doc;
    std::string hash; // fnv1a64 of the canonical dump
};

std::string fnv1a64_hex(const std::string& bytes);

LoadedConfig read_config(const std::string& path);

ArchSpec arch_from_json(const nlohmann::json& j, const std::string& where = "");
TransformerSpec transformer_from_json(const nlohmann::json& j);
// kappa, delta, N, t (null for infinity), Md, constants ({"s": C} or [C_0, C_1, ...])
GenBoundInput genbound_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ArchSpec& s);
nlohmann::json to_json(const TransformerSpec& t);

} // namespace tbound::cli
