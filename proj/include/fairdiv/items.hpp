#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

// Maximum ground-set size. Item subsets are 64-bit masks; every bound used by
// the solver and the audit suite sits far below this.
inline constexpr int kMaxItems = 64;

// A subset of the ground set {0, ..., m-1}. Value type, bit i = item i.
class ItemSet {
public:
    constexpr ItemSet() = default;
    constexpr explicit ItemSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr ItemSet full(int m) {
        return ItemSet(m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1));
    }
    static constexpr ItemSet single(int e) { return ItemSet(std::uint64_t{1} << e); }
    static ItemSet of(std::initializer_list<int> items) {
        std::uint64_t b = 0;
        for (int e : items) {
            require(e >= 0 && e < kMaxItems, "item index out of range");
            b |= std::uint64_t{1} << e;
        }
        return ItemSet(b);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int count() const { return std::popcount(bits_); }
    constexpr bool contains(int e) const { return (bits_ >> e) & 1; }
    constexpr bool subset_of(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }

    constexpr ItemSet with(int e) const { return ItemSet(bits_ | (std::uint64_t{1} << e)); }
    constexpr ItemSet without(int e) const { return ItemSet(bits_ & ~(std::uint64_t{1} << e)); }

    constexpr ItemSet operator|(ItemSet o) const { return ItemSet(bits_ | o.bits_); }
    constexpr ItemSet operator&(ItemSet o) const { return ItemSet(bits_ & o.bits_); }
    constexpr ItemSet minus(ItemSet o) const { return ItemSet(bits_ & ~o.bits_); }

    constexpr bool operator==(const ItemSet&) const = default;
    constexpr bool operator<(const ItemSet& o) const { return bits_ < o.bits_; }

    // Iterates the indices of set bits in ascending order.
    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr int operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

    private:
        std::uint64_t rest_;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    // "{}" or "{0,2,5}"; indices, not names (name mapping is an I/O concern).
    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int e : *this) {
            if (!first) s += ",";
            s += std::to_string(e);
            first = false;
        }
        return s + "}";
    }

private:
    std::uint64_t bits_ = 0;
};

} // namespace fairdiv
