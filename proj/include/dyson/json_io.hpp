#pragma once

#include <json.hpp>

#include "dyson/partition.hpp"
#include "dyson/semigroup.hpp"
#include "dyson/sde.hpp"
#include "dyson/sympoly.hpp"

namespace dyson {

// Partition <-> JSON array of integers, e.g. [2,1]; the empty partition is [].
inline void to_json(nlohmann::json& j, const Partition& p) { j = p.parts(); }

inline void from_json(const nlohmann::json& j, Partition& p) {
    p = Partition(j.get<std::vector<int>>());
}

// SymPoly <-> {"k": int, "terms": [{"mu": [...], "c": float}, ...]}.
inline void to_json(nlohmann::json& j, const SymPoly& p) {
    j = nlohmann::json{{"k", p.num_vars()}, {"terms", nlohmann::json::array()}};
    for (const auto& [mu, c] : p.terms()) j["terms"].push_back({{"mu", mu}, {"c", c}});
}

inline SymPoly sympoly_from_json(const nlohmann::json& j) {
    SymPoly p(j.at("k").get<int>());
    for (const auto& term : j.at("terms"))
        p.set_coeff(term.at("mu").get<Partition>(),
                    p.coeff(term.at("mu").get<Partition>()) + term.at("c").get<double>());
    return p;
}

inline void to_json(nlohmann::json& j, const MomentEstimate& e) {
    j = nlohmann::json{{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}};
}

inline void to_json(nlohmann::json& j, const StatComparison& c) {
    j = nlohmann::json{{"statistic", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"z", c.z}};
}

inline void to_json(nlohmann::json& j, const IntertwiningReport& r) {
    j = nlohmann::json{{"max_abs_error", r.max_abs_error},
                       {"scale", r.scale},
                       {"scaled_error", r.scaled_error},
                       {"per_coefficient", nlohmann::json::array()}};
    for (const auto& c : r.per_coefficient)
        j["per_coefficient"].push_back({{"mu", c.mu}, {"lhs", c.lhs}, {"rhs", c.rhs}});
}

inline void to_json(nlohmann::json& j, const PipelineReport& r) {
    j = nlohmann::json{{"max_abs_z", r.max_abs_z}, {"stats", r.stats}};
}

}  // namespace dyson
