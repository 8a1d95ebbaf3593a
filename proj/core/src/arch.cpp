#include "tbound/arch.hpp"

#include <cmath>
#include <stdexcept>

namespace tbound {

namespace {

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument(field + ": " + what);
}

void nonneg(double x, const std::string& field)
{
    require(std::isfinite(x) && x >= 0.0, field, "must be a finite nonnegative number");
}

} // namespace

void ArchSpec::validate() const
{
    require(M >= 1, "M", "must be at least 1");
    require(i >= 1, "i", "must be at least 1");
    require(k >= 1, "k", "must be at least 1");
    require(v >= 1, "v", "must be at least 1");
    require(l >= 1, "l", "must be at least 1");
    require(o >= 1, "o", "must be at least 1");
    require(H >= 1, "H", "must be at least 1");
    nonneg(C_K, "C_K");
    nonneg(C_Q, "C_Q");
    nonneg(C_V, "C_V");
    nonneg(C_W, "C_W");
    nonneg(C_A, "C_A");
    nonneg(C_B1, "C_B1");
    nonneg(C_B2, "C_B2");
    nonneg(gamma, "gamma");
    require(std::isfinite(w) && w >= 0.0 && w <= 1.0, "w", "must lie in [0, 1]");
    nonneg(radius, "radius");
    nonneg(C_a, "C_a");
    nonneg(beta, "beta");
}

void TransformerSpec::validate() const
{
    require(!blocks.empty(), "blocks", "must not be empty");
    for (size_t j = 0; j < blocks.size(); ++j) {
        blocks[j].validate();
        if (j + 1 < blocks.size()) {
            require(blocks[j].o == blocks[j + 1].i, "blocks[" + std::to_string(j + 1) + "].i",
                    "must equal the previous block's o");
            require(blocks[j].M == blocks[j + 1].M, "blocks[" + std::to_string(j + 1) + "].M",
                    "sequence length must be shared by all blocks");
        }
    }
    nonneg(final_A_bound, "final_A_bound");
    nonneg(final_b_bound, "final_b_bound");
    require(out_dim >= 1, "out_dim", "must be at least 1");
}

std::string to_string(Variant v)
{
    return v == Variant::type ? "type" : "level";
}

Variant variant_from_string(const std::string& s)
{
    if (s == "type")
        return Variant::type;
    if (s == "level")
        return Variant::level;
    throw std::invalid_argument("unknown variant: " + s);
}

LogMag BoundTable::at(int s) const
{
    auto it = entries.find(s);
    if (it == entries.end())
        throw std::out_of_range("bound table has no entry for order " + std::to_string(s));
    return it->second;
}

LogMag BoundTable::upto(int n) const
{
    LogMag r;
    for (int s = 1; s <= n; ++s)
        r = max(r, at(s));
    return r;
}

int BoundTable::max_order() const
{
    return entries.empty() ? 0 : entries.rbegin()->first;
}

BoundTable BoundTable::to_cumulative() const
{
    BoundTable t = *this;
    LogMag run;
    for (auto& [s, val] : t.entries) {
        if (s >= 1) {
            run = max(run, val);
            val = run;
        }
    }
    t.cumulative = true;
    return t;
}

LogMag TypeTable::at(const MultiIndex& key) const
{
    auto it = entries.find(key);
    if (it == entries.end()) {
        std::string s = "(";
        for (size_t j = 0; j < key.size(); ++j)
            s += (j ? "," : "") + std::to_string(key[j]);
        throw std::out_of_range("type table has no entry for " + s + ")");
    }
    return it->second;
}

LogMag TypeTable::level(int n) const
{
    LogMag r;
    bool any = false;
    for (const auto& [key, val] : entries)
        if (total(key) == n) {
            r = max(r, val);
            any = true;
        }
    if (!any)
        throw std::out_of_range("type table has no entries of order " + std::to_string(n));
    return r;
}

int TypeTable::max_order() const
{
    int r = 0;
    for (const auto& [key, val] : entries)
        r = std::max(r, total(key));
    return r;
}

} // namespace tbound
