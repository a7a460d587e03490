#include "fdb/partitions.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace fdb {

namespace {

std::string blocks_to_string(const std::vector<std::vector<int>>& blocks) {
    std::ostringstream os;
    os << '{';
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) os << ',';
        os << '{';
        for (std::size_t i = 0; i < blocks[b].size(); ++i) {
            if (i) os << ',';
            os << blocks[b][i];
        }
        os << '}';
    }
    os << '}';
    return os.str();
}

}  // namespace

bool Partition::valid() const {
    std::vector<char> seen(ground_size, 0);
    int last_min = -1;
    for (const auto& block : blocks) {
        if (block.empty()) return false;
        if (block.front() <= last_min) return false;  // blocks sorted by min element
        last_min = block.front();
        int prev = -1;
        for (int e : block) {
            if (e < 0 || e >= ground_size || e <= prev || seen[e]) return false;
            seen[e] = 1;
            prev = e;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; });
}

std::string Partition::to_string() const { return blocks_to_string(blocks); }

bool Cover::valid() const {
    std::vector<char> covered(ground_size, 0);
    std::uint64_t prev_mask = 0;
    bool first = true;
    for (const auto& block : blocks) {
        if (block.empty()) return false;
        std::uint64_t mask = 0;
        int prev = -1;
        for (int e : block) {
            if (e < 0 || e >= ground_size || e <= prev) return false;
            prev = e;
            covered[e] = 1;
            mask |= std::uint64_t{1} << e;
        }
        if (!first && mask <= prev_mask) return false;  // distinct, ascending bitmask
        prev_mask = mask;
        first = false;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c == 1; });
}

std::string Cover::to_string() const { return blocks_to_string(blocks); }

PartitionStream::PartitionStream(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("PartitionStream: n must be >= 0");
    rgs_.resize(n);
    for (int i = 0; i < n; ++i) rgs_[i] = i;  // all singletons = largest RGS
}

std::optional<Partition> PartitionStream::next() {
    if (done_) return std::nullopt;

    Partition p;
    p.ground_size = n_;
    int num_blocks = n_ ? 1 + *std::max_element(rgs_.begin(), rgs_.end()) : 0;
    p.blocks.assign(num_blocks, {});
    for (int i = 0; i < n_; ++i) p.blocks[rgs_[i]].push_back(i);

    // Descending-lex successor: decrement the rightmost nonzero digit, then
    // fill the suffix with the largest values the growth condition allows.
    int i = n_ - 1;
    while (i >= 1 && rgs_[i] == 0) --i;
    if (i < 1) {
        done_ = true;
    } else {
        --rgs_[i];
        int max_prefix = 0;
        for (int j = 1; j <= i; ++j) max_prefix = std::max(max_prefix, rgs_[j]);
        for (int j = i + 1; j < n_; ++j) {
            rgs_[j] = max_prefix + 1;
            max_prefix = rgs_[j];
        }
    }
    return p;
}

SubsetStream::SubsetStream(int n) : n_(n) {
    if (n < 0 || n > 62) throw std::invalid_argument("SubsetStream: n out of range");
}

std::optional<std::vector<int>> SubsetStream::next() {
    if (done_) return std::nullopt;
    std::vector<int> subset;
    for (int i = 0; i < n_; ++i)
        if (mask_ >> i & 1) subset.push_back(i);
    if (++mask_ == (std::uint64_t{1} << n_)) done_ = true;
    return subset;
}

CoverStream::CoverStream(int n) : n_(n) {
    if (n < 1 || n > 5)
        throw capacity_error("covers_of: supported range is 1 <= n <= 5");
    full_ = (std::uint64_t{1} << n) - 1;           // ground-set bitmask
    end_ = std::uint64_t{1} << (full_);            // 2^(2^n - 1) candidate covers
    mask_ = 1;
}

std::optional<Cover> CoverStream::next() {
    for (; mask_ < end_; ++mask_) {
        std::uint64_t covered = 0;
        for (int s = 1; s <= static_cast<int>(full_); ++s)
            if (mask_ >> (s - 1) & 1) covered |= static_cast<std::uint64_t>(s);
        if (covered != full_) continue;

        Cover c;
        c.ground_size = n_;
        for (int s = 1; s <= static_cast<int>(full_); ++s) {
            if (!(mask_ >> (s - 1) & 1)) continue;
            std::vector<int> block;
            for (int i = 0; i < n_; ++i)
                if (s >> i & 1) block.push_back(i);
            c.blocks.push_back(std::move(block));
        }
        ++mask_;
        return c;
    }
    return std::nullopt;
}

Int bell(int n) {
    if (n < 0) throw std::invalid_argument("bell: n must be >= 0");
    std::vector<Int> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<Int> next_row;
        next_row.reserve(i + 1);
        next_row.push_back(row.back());
        for (std::size_t j = 0; j < row.size(); ++j)
            next_row.push_back(next_row.back() + row[j]);
        row = std::move(next_row);
    }
    return row.front();
}

std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    PartitionStream stream(n);
    while (auto p = stream.next()) out.push_back(std::move(*p));
    return out;
}

std::vector<Cover> all_covers(int n) {
    std::vector<Cover> out;
    CoverStream stream(n);
    while (auto c = stream.next()) out.push_back(std::move(*c));
    return out;
}

}  // namespace fdb
