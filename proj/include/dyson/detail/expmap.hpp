#pragma once

#include <cstdint>
#include <unordered_map>

#include "dyson/sympoly.hpp"

namespace dyson::detail {

// Dense (non-symmetric) expansion of a symmetric polynomial: one entry per
// monomial z^e, exponents packed 4 bits per variable. Supports up to 16
// variables and exponent 15, enough for every verification workload here.
using ExpKey = std::uint64_t;

constexpr int kMaxVars = 16;
constexpr int kMaxExp = 15;

inline int exp_at(ExpKey key, int var) { return static_cast<int>((key >> (4 * var)) & 0xF); }

inline ExpKey with_exp(ExpKey key, int var, int e) {
    return (key & ~(ExpKey{0xF} << (4 * var))) | (ExpKey(e) << (4 * var));
}

inline int total_degree(ExpKey key) {
    int d = 0;
    while (key) {
        d += static_cast<int>(key & 0xF);
        key >>= 4;
    }
    return d;
}

inline ExpKey swap_vars(ExpKey key, int i, int j) {
    const int ei = exp_at(key, i), ej = exp_at(key, j);
    return with_exp(with_exp(key, i, ej), j, ei);
}

struct ExpMap {
    int num_vars = 0;
    std::unordered_map<ExpKey, double> terms;

    void add(ExpKey key, double c) {
        if (c == 0.0) return;
        auto [it, inserted] = terms.try_emplace(key, c);
        if (!inserted && (it->second += c) == 0.0) terms.erase(it);
    }
};

// Expands every m_mu into its full permutation orbit.
ExpMap expand(const SymPoly& p);

// Collapses a full expansion back onto the monomial symmetric basis. Verifies
// that coefficients are constant on each permutation orbit; throws
// std::logic_error when the input is not symmetric (relative check against the
// largest coefficient).
SymPoly fold_symmetric(const ExpMap& m, double rel_tol = 1e-9);

}  // namespace dyson::detail
