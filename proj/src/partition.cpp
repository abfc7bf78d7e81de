#include "dyson/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dyson {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0 || (i > 0 && parts_[i] > parts_[i - 1]))
            throw std::invalid_argument("Partition: parts must be weakly decreasing and positive");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::optional<Partition> Partition::try_make(std::vector<int> parts) {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0 || (i > 0 && parts[i] > parts[i - 1])) return std::nullopt;
    }
    return Partition(std::move(parts));
}

std::optional<Partition> Partition::lower(int i) const {
    if (i < 1 || i > length()) throw std::out_of_range("Partition::lower: index out of range");
    std::vector<int> p = parts_;
    p[i - 1] -= 1;
    return try_make(std::move(p));
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    os << ')';
    return os.str();
}

bool contained_in(const Partition& mu, const Partition& kappa) {
    if (mu.length() > kappa.length()) return false;
    for (int i = 1; i <= mu.length(); ++i)
        if (mu.part(i) > kappa.part(i)) return false;
    return true;
}

bool dominated_by(const Partition& mu, const Partition& kappa) {
    if (mu.weight() != kappa.weight())
        throw std::invalid_argument("dominated_by: partitions must have equal weight");
    int sum_mu = 0, sum_kappa = 0;
    const int n = std::max(mu.length(), kappa.length());
    for (int i = 1; i <= n; ++i) {
        sum_mu += mu.part(i);
        sum_kappa += kappa.part(i);
        if (sum_mu > sum_kappa) return false;
    }
    return true;
}

bool weight_major_less(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() > b.weight();
    return a.parts() > b.parts();  // lexicographic descending within a weight
}

std::vector<Partition> sub_partitions(const Partition& kappa, int max_length) {
    if (max_length < kappa.length())
        throw std::invalid_argument("sub_partitions: max_length below partition length");
    std::vector<Partition> out;
    std::vector<int> current;
    // Componentwise-bounded weakly decreasing sequences, built left to right.
    std::function<void(int)> rec = [&](int idx) {
        out.push_back(Partition(current));
        if (static_cast<int>(current.size()) >= max_length) return;
        const int cap = std::min(kappa.part(idx + 1),
                                 current.empty() ? kappa.part(1) : current.back());
        for (int v = cap; v >= 1; --v) {
            current.push_back(v);
            rec(idx + 1);
            current.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), weight_major_less);
    return out;
}

std::vector<Partition> partitions_of_weight(int weight, int max_length) {
    std::vector<Partition> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (remaining == 0) {
            out.push_back(Partition(current));
            return;
        }
        if (static_cast<int>(current.size()) >= max_length) return;
        for (int v = std::min(cap, remaining); v >= 1; --v) {
            current.push_back(v);
            rec(remaining - v, v);
            current.pop_back();
        }
    };
    rec(weight, weight);
    std::sort(out.begin(), out.end(), weight_major_less);
    return out;
}

std::vector<Partition> partitions_up_to_weight(int max_weight, int max_length) {
    std::vector<Partition> out;
    for (int w = max_weight; w >= 0; --w) {
        auto layer = partitions_of_weight(w, max_length);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

}  // namespace dyson
