#include "fdb/free_algebra.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fdb/partitions.hpp"

namespace fdb {

namespace {

void check_alphabet(int a, int b, const char* who) {
    if (a != b) throw std::invalid_argument(std::string(who) + ": alphabet mismatch");
}

}  // namespace

FreePoint FreePoint::plus(const FreePoint& o) const {
    if (mult.size() != o.mult.size())
        throw std::invalid_argument("FreePoint: alphabet mismatch");
    FreePoint r = *this;
    for (std::size_t i = 0; i < mult.size(); ++i) r.mult[i] += o.mult[i];
    return r;
}

Level1Sum Level1Sum::unit(int alphabet) {
    Level1Sum s(alphabet);
    s.add_term(FreePoint{std::vector<std::int32_t>(alphabet, 0)}, 1);
    return s;
}

Level1Sum Level1Sum::basis(const FreePoint& p) {
    Level1Sum s(p.alphabet());
    s.add_term(p, 1);
    return s;
}

void Level1Sum::add_term(const FreePoint& p, const Int& c) {
    if (p.alphabet() != alphabet_)
        throw std::invalid_argument("Level1Sum: alphabet mismatch");
    if (c == 0) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Level1Sum::less_than(const Level1Sum& o) const {
    if (alphabet_ != o.alphabet_) return alphabet_ < o.alphabet_;
    auto ita = terms_.begin(), itb = o.terms_.begin();
    for (; ita != terms_.end() && itb != o.terms_.end(); ++ita, ++itb) {
        if (ita->first != itb->first) return ita->first < itb->first;
        if (ita->second != itb->second) return ita->second < itb->second;
    }
    return itb != o.terms_.end();
}

std::string Level1Sum::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*E(";
        for (int i = 0; i < alphabet_; ++i) {
            if (i) os << ",";
            os << p.mult[i];
        }
        os << ")";
    }
    return os.str();
}

Level1Sum l1_add(const Level1Sum& a, const Level1Sum& b) {
    check_alphabet(a.alphabet(), b.alphabet(), "l1_add");
    Level1Sum out = a;
    for (const auto& [p, c] : b.terms()) out.add_term(p, c);
    return out;
}

Level1Sum l1_neg(const Level1Sum& a) {
    Level1Sum out(a.alphabet());
    for (const auto& [p, c] : a.terms()) out.add_term(p, -c);
    return out;
}

Level1Sum l1_mul(const Level1Sum& a, const Level1Sum& b) {
    check_alphabet(a.alphabet(), b.alphabet(), "l1_mul");
    Level1Sum out(a.alphabet());
    for (const auto& [p, cp] : a.terms())
        for (const auto& [q, cq] : b.terms()) out.add_term(p.plus(q), cp * cq);
    return out;
}

Level2Sum Level2Sum::unit(int alphabet) {
    Level2Sum s(alphabet);
    s.add_term(Level1Sum(alphabet), 1);  // E[zero element of EX]
    return s;
}

Level2Sum Level2Sum::basis(const Level1Sum& p) {
    Level2Sum s(p.alphabet());
    s.add_term(p, 1);
    return s;
}

void Level2Sum::add_term(const Level1Sum& p, const Int& c) {
    if (p.alphabet() != alphabet_)
        throw std::invalid_argument("Level2Sum: alphabet mismatch");
    if (c == 0) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(p, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Level2Sum::operator==(const Level2Sum& o) const {
    if (alphabet_ != o.alphabet_ || terms_.size() != o.terms_.size()) return false;
    auto ita = terms_.begin(), itb = o.terms_.begin();
    for (; ita != terms_.end(); ++ita, ++itb)
        if (!(ita->first == itb->first) || ita->second != itb->second) return false;
    return true;
}

std::string Level2Sum::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        if (!first) os << "\n+ ";
        first = false;
        os << c.str() << "*E[ " << p.to_string() << " ]";
    }
    return os.str();
}

Level2Sum l2_add(const Level2Sum& a, const Level2Sum& b) {
    check_alphabet(a.alphabet(), b.alphabet(), "l2_add");
    Level2Sum out = a;
    for (const auto& [p, c] : b.terms()) out.add_term(p, c);
    return out;
}

Level2Sum l2_neg(const Level2Sum& a) {
    Level2Sum out(a.alphabet());
    for (const auto& [p, c] : a.terms()) out.add_term(p, -c);
    return out;
}

Level2Sum l2_mul(const Level2Sum& a, const Level2Sum& b) {
    check_alphabet(a.alphabet(), b.alphabet(), "l2_mul");
    Level2Sum out(a.alphabet());
    for (const auto& [p, cp] : a.terms())
        for (const auto& [q, cq] : b.terms()) out.add_term(l1_add(p, q), cp * cq);
    return out;
}

namespace {

// alphabet layout for the lemma: index 0 = vbar, index i+1 = v_{i+1}
FreePoint lemma_point(int n, std::uint64_t subset_mask) {
    FreePoint p{std::vector<std::int32_t>(n + 1, 0)};
    p.mult[0] = 1;
    for (int i = 0; i < n; ++i)
        if (subset_mask >> i & 1) p.mult[i + 1] = 1;
    return p;
}

// E vbar * prod_{i in block} (E v_i - 1), built by the level-1 product
Level1Sum block_factor(int n, const std::vector<int>& block) {
    Level1Sum out = Level1Sum::basis(lemma_point(n, 0));  // E vbar
    for (int i : block) {
        Level1Sum gen(n + 1);  // E v_i - 1
        std::vector<std::int32_t> m(n + 1, 0);
        m[i + 1] = 1;
        gen.add_term(FreePoint{std::move(m)}, 1);
        gen.add_term(FreePoint{std::vector<std::int32_t>(n + 1, 0)}, -1);
        out = l1_mul(out, gen);
    }
    return out;
}

}  // namespace

Level2Sum lemma2_lhs(int n) {
    if (n < 0 || n > 4) throw capacity_error("lemma2: supported range is 0 <= n <= 4");
    Level2Sum out(n + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int bits = 0;
        for (int i = 0; i < n; ++i) bits += mask >> i & 1;
        Level1Sum inner = Level1Sum::basis(lemma_point(n, mask));
        out.add_term(inner, ((n - bits) & 1) ? -1 : 1);
    }
    return out;
}

namespace {

// Every level-1 object in the right-hand side lives in the span of the 2^n
// basis elements E(vbar + v_S), so the cover expansion runs on dense integer
// coordinate vectors over that basis and is decoded into the public nested
// representation only once, at the end.
struct DenseKeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& key) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (std::int32_t v : key) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 0xBF58476D1CE4E5B9ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

Level2Sum lemma2_rhs(int n) {
    if (n < 0 || n > 4) throw capacity_error("lemma2: supported range is 0 <= n <= 4");
    const Level2Sum ee_vbar = Level2Sum::basis(Level1Sum::basis(lemma_point(n, 0)));
    if (n == 0) return ee_vbar;  // only the empty cover; empty product is the unit

    using Key = std::vector<std::int32_t>;  // coordinates over E(vbar + v_S), S a mask
    const int slots = 1 << n;

    // u[s] = E vbar * prod_{i in block s} (E v_i - 1), built bottom-up by the
    // level-1 engine and then encoded in basis coordinates
    const int blocks_total = slots - 1;
    std::vector<Key> u(blocks_total + 1);
    for (int s = 1; s <= blocks_total; ++s) {
        std::vector<int> block;
        for (int i = 0; i < n; ++i)
            if (s >> i & 1) block.push_back(i);
        Level1Sum f = block_factor(n, block);
        u[s].assign(slots, 0);
        for (const auto& [p, c] : f.terms()) {
            int mask = 0;
            for (int i = 0; i < n; ++i)
                if (p.mult[i + 1]) mask |= 1 << i;
            u[s][mask] = static_cast<std::int32_t>(c.convert_to<long long>());
        }
    }

    std::unordered_map<Key, long long, DenseKeyHash> acc;
    Key key(slots, 0);
    key[0] = 1;  // the E E vbar prefactor: coordinate 1 on E(vbar)
    std::vector<int> cover_blocks;

    // expand prod_{A in cover} (E[u_A] - 1) over include/skip choices in place
    auto expand = [&](auto&& self, std::size_t idx, int sign) -> void {
        if (idx == cover_blocks.size()) {
            acc[key] += sign;
            return;
        }
        self(self, idx + 1, -sign);  // the "-1" branch
        const Key& add = u[cover_blocks[idx]];
        for (int j = 0; j < slots; ++j) key[j] += add[j];
        self(self, idx + 1, sign);
        for (int j = 0; j < slots; ++j) key[j] -= add[j];
    };

    CoverStream covers(n);
    while (auto cover = covers.next()) {
        cover_blocks.clear();
        for (const auto& block : cover->blocks) {
            int s = 0;
            for (int i : block) s |= 1 << i;
            cover_blocks.push_back(s);
        }
        expand(expand, 0, 1);
    }

    Level2Sum out(n + 1);
    for (const auto& [coords, coeff] : acc) {
        if (coeff == 0) continue;
        Level1Sum level1(n + 1);
        for (int s = 0; s < slots; ++s)
            if (coords[s]) level1.add_term(lemma_point(n, static_cast<std::uint64_t>(s)), coords[s]);
        out.add_term(level1, coeff);
    }
    return out;
}

bool lemma2_verify(int n) { return lemma2_lhs(n) == lemma2_rhs(n); }

}  // namespace fdb
