#pragma once

// Integer partitions and the beta parameterization shared by every module.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace bmanova {

// beta > 0 with the derived alpha = 2/beta.
struct BetaParam {
    double beta;
    double alpha;

    explicit BetaParam(double b) : beta(b), alpha(2.0 / b) {
        if (!(b > 0.0)) throw std::invalid_argument("BetaParam: beta must be > 0");
    }
};

// Weakly decreasing nonnegative parts, trailing zeros trimmed.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0 || (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]))
                throw std::invalid_argument("Partition: parts must be weakly decreasing and nonnegative");
        }
        for (int p : parts_) weight_ += p;
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    // part(i) is 0-based and 0 beyond the length.
    int part(int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }
    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }

    // Column lengths of the Young diagram: conj[j] = #{i : parts[i] > j}, j = 0..parts[0]-1.
    std::vector<int> conjugate() const {
        std::vector<int> conj(parts_.empty() ? 0 : static_cast<std::size_t>(parts_[0]), 0);
        for (int p : parts_)
            for (int j = 0; j < p; ++j) conj[static_cast<std::size_t>(j)]++;
        return conj;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

struct PartitionHash {
    std::size_t operator()(const Partition& k) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (int p : k.parts()) h = h * 0x100000001b3ull ^ static_cast<std::size_t>(p);
        return h;
    }
};

constexpr int kUnbounded = 1 << 28;

// All partitions of weight k with length <= max_len and largest part <= max_part,
// in decreasing lexicographic order. k = 0 yields the single empty partition.
inline std::vector<Partition> partitions_of(int k, int max_len, int max_part = kUnbounded) {
    if (k < 0) throw std::invalid_argument("partitions_of: k must be >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    // Decreasing lex order falls out of choosing each part largest-first.
    std::function<void(int, int, int)> rec = [&](int rem, int len_left, int cap) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        if (len_left == 0) return;
        int hi = std::min(rem, cap);
        // smallest admissible first part: the remaining slots must absorb rem
        for (int p = hi; p >= 1; --p) {
            if (static_cast<long long>(p) * len_left < rem) break;
            cur.push_back(p);
            rec(rem - p, len_left - 1, p);
            cur.pop_back();
        }
    };
    rec(k, max_len, max_part);
    return out;
}

}  // namespace bmanova
