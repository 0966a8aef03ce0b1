#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace srlab {

// Dynamic fixed-width bitset used for adjacency rows and vertex sets.
class Bitset {
  public:
    Bitset() : nbits_(0) {}
    explicit Bitset(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { std::fill(w_.begin(), w_.end(), std::uint64_t(0)); }

    void set_all() {
        std::fill(w_.begin(), w_.end(), ~std::uint64_t(0));
        trim();
    }

    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    // this \ o
    Bitset& operator-=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

    friend bool operator==(const Bitset& a, const Bitset& b) { return a.nbits_ == b.nbits_ && a.w_ == b.w_; }

    bool intersects(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    int count_and(const Bitset& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    // |this \ o|
    int count_andnot(const Bitset& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & ~o.w_[i]);
        return c;
    }

    // |(this | b) \ mask|
    int count_or_andnot(const Bitset& b, const Bitset& mask) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount((w_[i] | b.w_[i]) & ~mask.w_[i]);
        return c;
    }

    // first set bit at or after `from`, or -1
    int next(int from = 0) const {
        if (from >= nbits_) return -1;
        int word = from >> 6;
        std::uint64_t cur = w_[word] & (~std::uint64_t(0) << (from & 63));
        while (true) {
            if (cur) return (word << 6) + std::countr_zero(cur);
            if (++word >= static_cast<int>(w_.size())) return -1;
            cur = w_[word];
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t word = 0; word < w_.size(); ++word) {
            std::uint64_t cur = w_[word];
            while (cur) {
                int b = std::countr_zero(cur);
                f(static_cast<int>((word << 6) + b));
                cur &= cur - 1;
            }
        }
    }

    std::vector<int> to_indices() const {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

    static Bitset from_indices(int nbits, const std::vector<int>& idx) {
        Bitset b(nbits);
        for (int i : idx) b.set(i);
        return b;
    }

  private:
    void trim() {
        int rem = nbits_ & 63;
        if (rem && !w_.empty()) w_.back() &= (std::uint64_t(1) << rem) - 1;
    }

    int nbits_;
    std::vector<std::uint64_t> w_;
};

}  // namespace srlab
