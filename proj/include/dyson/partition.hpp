#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace dyson {

// Weakly decreasing sequence of positive integers indexing Jack polynomials.
// Stored canonically: no trailing zeros, so the convention "kappa_i = 0 for i
// beyond the length" is a read convention (see part()).
class Partition {
  public:
    Partition() = default;

    // Throws std::invalid_argument unless parts are weakly decreasing and > 0.
    explicit Partition(std::vector<int> parts);

    // Returns nothing instead of throwing; trailing zeros are stripped first.
    static std::optional<Partition> try_make(std::vector<int> parts);

    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const { return weight_; }
    bool empty() const { return parts_.empty(); }

    // 1-based part access; returns 0 for i > length.
    int part(int i) const {
        return (i >= 1 && i <= length()) ? parts_[i - 1] : 0;
    }

    const std::vector<int>& parts() const { return parts_; }

    // kappa_(i): part i decremented, dropped if it reaches zero at the tail.
    // Returns nothing when the decrement breaks weak monotonicity; callers
    // treat that as a vanishing binomial coefficient.
    // Throws std::out_of_range unless 1 <= i <= length.
    std::optional<Partition> lower(int i) const;

    std::string to_string() const;  // "(2,1)", "()" for the empty partition

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

  private:
    std::vector<int> parts_;
    int weight_ = 0;
};

// mu <= kappa componentwise (mu_i <= kappa_i for all i, zero-padded).
bool contained_in(const Partition& mu, const Partition& kappa);

// Dominance order within a fixed weight: all partial sums of mu bounded by
// those of kappa. Requires |mu| == |kappa|.
bool dominated_by(const Partition& mu, const Partition& kappa);

// Canonical basis ordering: weight descending, lexicographically descending
// within a weight.
bool weight_major_less(const Partition& a, const Partition& b);

// All mu with mu_i <= kappa_i componentwise and length(mu) <= max_length,
// ordered weight-major (includes kappa and the empty partition).
// Requires max_length >= length(kappa).
std::vector<Partition> sub_partitions(const Partition& kappa, int max_length);

// All partitions of exactly `weight` with length <= max_length, lexicographically
// descending.
std::vector<Partition> partitions_of_weight(int weight, int max_length);

// All partitions of weight <= max_weight with length <= max_length, in
// weight-major order.
std::vector<Partition> partitions_up_to_weight(int max_weight, int max_length);

}  // namespace dyson
