#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "ufa/errors.hpp"

namespace ufa {

/// Characteristic vector of a subset of the state set {0,..,n-1}.
class StateSet {
public:
    StateSet() : n_(0) {}
    explicit StateSet(int n) : n_(n), bits_(words(n), 0) {}

    static StateSet single(int n, int q) {
        StateSet s(n);
        s.set(q);
        return s;
    }

    static StateSet full(int n) {
        StateSet s(n);
        for (int q = 0; q < n; ++q) s.set(q);
        return s;
    }

    int universe() const { return n_; }

    bool test(int q) const { return (bits_[q >> 6] >> (q & 63)) & 1u; }

    void set(int q, bool v = true) {
        if (v)
            bits_[q >> 6] |= uint64_t{1} << (q & 63);
        else
            bits_[q >> 6] &= ~(uint64_t{1} << (q & 63));
    }

    int count() const {
        int c = 0;
        for (uint64_t w : bits_) c += std::popcount(w);
        return c;
    }

    bool none() const {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    bool is_subset_of(const StateSet& other) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~other.bits_[i]) return false;
        return true;
    }

    bool intersects(const StateSet& other) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & other.bits_[i]) return true;
        return false;
    }

    StateSet& operator|=(const StateSet& other) {
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
        return *this;
    }

    /// Least element, or -1 when empty.
    int first() const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i]) return int(i) * 64 + std::countr_zero(bits_[i]);
        return -1;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (int q = 0; q < n_; ++q)
            if (test(q)) out.push_back(q);
        return out;
    }

    bool operator==(const StateSet& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }
    bool operator!=(const StateSet& other) const { return !(*this == other); }

    size_t hash() const {
        size_t h = size_t(n_);
        for (uint64_t w : bits_) h = h * 1000003u ^ size_t(w);
        return h;
    }

    const std::vector<uint64_t>& packed() const { return bits_; }

private:
    static int words(int n) { return (n + 63) / 64; }

    int n_;
    std::vector<uint64_t> bits_;
};

/// Zero-one matrix with bit-packed rows. Two product paths: multiply() is a
/// plain boolean product; multiply_checked() runs over nonnegative integers
/// and throws AmbiguityError as soon as an entry reaches 2.
class BoolMatrix {
public:
    BoolMatrix() : n_(0), words_(0) {}
    explicit BoolMatrix(int n) : n_(n), words_((n + 63) / 64), rows_(size_t(n) * words_, 0) {}

    static BoolMatrix identity(int n) {
        BoolMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    int dim() const { return n_; }

    bool get(int i, int j) const {
        return (rows_[size_t(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    void set(int i, int j, bool v = true) {
        uint64_t& w = rows_[size_t(i) * words_ + (j >> 6)];
        if (v)
            w |= uint64_t{1} << (j & 63);
        else
            w &= ~(uint64_t{1} << (j & 63));
    }

    StateSet row(int i) const {
        StateSet s(n_);
        for (int j = 0; j < n_; ++j)
            if (get(i, j)) s.set(j);
        return s;
    }

    StateSet column(int j) const {
        StateSet s(n_);
        for (int i = 0; i < n_; ++i)
            if (get(i, j)) s.set(i);
        return s;
    }

    bool row_zero(int i) const {
        for (int w = 0; w < words_; ++w)
            if (rows_[size_t(i) * words_ + w]) return false;
        return true;
    }

    bool column_zero(int j) const {
        for (int i = 0; i < n_; ++i)
            if (get(i, j)) return false;
        return true;
    }

    bool is_zero() const {
        for (uint64_t w : rows_)
            if (w) return false;
        return true;
    }

    BoolMatrix multiply(const BoolMatrix& other) const {
        BoolMatrix out(n_);
        for (int i = 0; i < n_; ++i) {
            uint64_t* dst = &out.rows_[size_t(i) * words_];
            for (int k = 0; k < n_; ++k) {
                if (!get(i, k)) continue;
                const uint64_t* src = &other.rows_[size_t(k) * words_];
                for (int w = 0; w < words_; ++w) dst[w] |= src[w];
            }
        }
        return out;
    }

    BoolMatrix multiply_checked(const BoolMatrix& other) const {
        BoolMatrix out(n_);
        std::vector<uint8_t> cnt(n_);
        for (int i = 0; i < n_; ++i) {
            std::fill(cnt.begin(), cnt.end(), 0);
            for (int k = 0; k < n_; ++k) {
                if (!get(i, k)) continue;
                for (int j = 0; j < n_; ++j) {
                    if (!other.get(k, j)) continue;
                    if (++cnt[j] > 1)
                        throw AmbiguityError("matrix product entry (" + std::to_string(i + 1) +
                                             "," + std::to_string(j + 1) +
                                             ") exceeds 1: morphism is not unambiguous");
                }
            }
            for (int j = 0; j < n_; ++j)
                if (cnt[j]) out.set(i, j);
        }
        return out;
    }

    BoolMatrix transposed() const {
        BoolMatrix out(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (get(i, j)) out.set(j, i);
        return out;
    }

    int count_ones() const {
        int c = 0;
        for (uint64_t w : rows_) c += std::popcount(w);
        return c;
    }

    bool operator==(const BoolMatrix& other) const {
        return n_ == other.n_ && rows_ == other.rows_;
    }
    bool operator!=(const BoolMatrix& other) const { return !(*this == other); }

    size_t hash() const {
        size_t h = size_t(n_);
        for (uint64_t w : rows_) h = h * 1000003u ^ size_t(w);
        return h;
    }

private:
    int n_;
    int words_;
    std::vector<uint64_t> rows_;
};

struct BoolMatrixHash {
    size_t operator()(const BoolMatrix& m) const { return m.hash(); }
};

struct StateSetHash {
    size_t operator()(const StateSet& s) const { return s.hash(); }
};

}  // namespace ufa
