#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdb/scalar.hpp"

namespace fdb {

// A partition of {0,...,n-1} into disjoint nonempty blocks.
// Canonical form: indices inside a block strictly increase and blocks are
// ordered by their smallest element.
struct Partition {
    std::vector<std::vector<int>> blocks;
    int ground_size = 0;

    bool valid() const;
    std::string to_string() const;  // e.g. {{0,2},{1}}
};

// A set of distinct nonempty subsets of {0,...,n-1} whose union is the
// ground set. Blocks are kept in ascending bitmask order.
struct Cover {
    std::vector<std::vector<int>> blocks;
    int ground_size = 0;

    bool valid() const;
    std::string to_string() const;
};

// Streams each partition of {0,...,n-1} exactly once, in descending
// restricted-growth-string order: all singletons first, the single block
// last. n = 0 yields the one empty partition. Single consumer, O(n) state.
class PartitionStream {
public:
    explicit PartitionStream(int n);
    std::optional<Partition> next();

private:
    int n_;
    bool done_ = false;
    std::vector<int> rgs_;  // rgs_[i] = block index of element i
};

// Streams all 2^n subsets of {0,...,n-1} as sorted index lists, in
// ascending bitmask order (empty set first).
class SubsetStream {
public:
    explicit SubsetStream(int n);
    std::optional<std::vector<int>> next();

private:
    int n_;
    std::uint64_t mask_ = 0;
    bool done_ = false;
};

// Streams every cover of {0,...,n-1} exactly once, in ascending order of
// the cover's bitmask over the 2^n - 1 candidate blocks (blocks themselves
// indexed by their element bitmask). Supported for 1 <= n <= 5; the count
// for n = 5 is already ~2.1e9, so callers are expected to consume lazily.
class CoverStream {
public:
    explicit CoverStream(int n);  // throws capacity_error outside [1,5]
    std::optional<Cover> next();

private:
    int n_;
    std::uint64_t mask_;
    std::uint64_t end_;
    std::uint64_t full_;
};

// |H({0,...,n-1})| via the Bell triangle. Exact for any n (memory permitting;
// practical limit is around n = 20 if you intend to enumerate alongside).
Int bell(int n);

// Convenience eager forms for small n.
std::vector<Partition> all_partitions(int n);
std::vector<Cover> all_covers(int n);

}  // namespace fdb
