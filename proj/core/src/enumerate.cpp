#include "fmw/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "fmw/error.hpp"

namespace fmw {

namespace {

// Labeled configurations at size n are (constant assignment, relation bit
// mask) pairs; the mask concatenates one bit per tuple of each relation in
// lexicographic order. A configuration is emitted iff no relabeling yields a
// smaller (constants, mask) encoding.
struct SizeEnumerator {
    const Vocabulary& vocab;
    int n;
    std::vector<std::string> names;
    std::vector<std::string> relation_names;
    std::vector<int> arities;
    std::vector<int> bit_offset; // per relation
    int total_bits = 0;

    // per permutation, bit remap tables and element remap
    std::vector<std::vector<int>> perm_elements;
    std::vector<std::vector<int>> perm_bits;
    bool use_byte_tables = false;
    std::vector<std::array<uint32_t, 256>> byte_tables; // 4 per permutation

    SizeEnumerator(const Vocabulary& v, int size) : vocab(v), n(size) {
        for (int i = 0; i < n; ++i) {
            std::string label = std::to_string(i);
            if (label.size() < 2) label = "0" + label;
            names.push_back("e" + label);
        }
        for (const auto& [name, arity] : vocab.relations) {
            relation_names.push_back(name);
            arities.push_back(arity);
            bit_offset.push_back(total_bits);
            long long space = 1;
            for (int k = 0; k < arity; ++k) space *= n;
            if (space + total_bits > 64)
                throw BudgetError("relation tuple space too large to enumerate");
            total_bits += static_cast<int>(space);
        }
        build_permutations();
    }

    long long tuple_count(int rel) const {
        long long space = 1;
        for (int k = 0; k < arities[rel]; ++k) space *= n;
        return space;
    }

    std::vector<int> tuple_of_bit(int rel, int local) const {
        std::vector<int> t(arities[rel]);
        for (int k = arities[rel] - 1; k >= 0; --k) {
            t[k] = local % n;
            local /= n;
        }
        return t;
    }

    int bit_of_tuple(int rel, const std::vector<int>& t) const {
        int local = 0;
        for (int v : t) local = local * n + v;
        return bit_offset[rel] + local;
    }

    void build_permutations() {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool identity = std::is_sorted(perm.begin(), perm.end());
            if (identity) continue;
            perm_elements.push_back(perm);
            std::vector<int> bits(total_bits);
            for (size_t rel = 0; rel < relation_names.size(); ++rel) {
                const long long count = tuple_count(static_cast<int>(rel));
                for (long long local = 0; local < count; ++local) {
                    auto t = tuple_of_bit(static_cast<int>(rel), static_cast<int>(local));
                    for (auto& v : t) v = perm[v];
                    bits[bit_offset[rel] + local] = bit_of_tuple(static_cast<int>(rel), t);
                }
            }
            perm_bits.push_back(std::move(bits));
        } while (std::next_permutation(perm.begin(), perm.end()));

        use_byte_tables = total_bits <= 32;
        if (use_byte_tables) {
            byte_tables.assign(perm_bits.size() * 4, {});
            for (size_t p = 0; p < perm_bits.size(); ++p)
                for (int byte = 0; byte < 4; ++byte) {
                    auto& table = byte_tables[p * 4 + byte];
                    for (int value = 0; value < 256; ++value) {
                        uint32_t out = 0;
                        for (int bit = 0; bit < 8; ++bit) {
                            int src = byte * 8 + bit;
                            if (src < total_bits && (value >> bit & 1))
                                out |= uint32_t(1) << perm_bits[p][src];
                        }
                        table[value] = out;
                    }
                }
        }
    }

    uint64_t permute_mask(size_t p, uint64_t mask) const {
        if (use_byte_tables) {
            const auto* t = &byte_tables[p * 4];
            return t[0][mask & 255] | t[1][(mask >> 8) & 255] | t[2][(mask >> 16) & 255] |
                   t[3][(mask >> 24) & 255];
        }
        uint64_t out = 0;
        uint64_t rest = mask;
        while (rest) {
            int bit = std::countr_zero(rest);
            rest &= rest - 1;
            out |= uint64_t(1) << perm_bits[p][bit];
        }
        return out;
    }

    bool canonical(const std::vector<int>& consts, uint64_t mask) const {
        std::vector<int> mapped(consts.size());
        for (size_t p = 0; p < perm_elements.size(); ++p) {
            const auto& perm = perm_elements[p];
            bool decided = false;
            bool smaller = false;
            for (size_t c = 0; c < consts.size(); ++c) mapped[c] = perm[consts[c]];
            for (size_t c = 0; c < consts.size(); ++c) {
                if (mapped[c] != consts[c]) {
                    decided = true;
                    smaller = mapped[c] < consts[c];
                    break;
                }
            }
            if (!decided) smaller = permute_mask(p, mask) < mask;
            if (smaller) return false;
        }
        return true;
    }

    Structure materialize(const std::vector<int>& consts, uint64_t mask) const {
        Structure s;
        s.vocab = vocab;
        s.universe = names;
        for (size_t rel = 0; rel < relation_names.size(); ++rel) {
            auto& out = s.relations[relation_names[rel]];
            const long long count = tuple_count(static_cast<int>(rel));
            for (long long local = 0; local < count; ++local)
                if (mask >> (bit_offset[rel] + local) & 1)
                    out.push_back(tuple_of_bit(static_cast<int>(rel), static_cast<int>(local)));
            std::sort(out.begin(), out.end());
        }
        for (size_t c = 0; c < vocab.constants.size(); ++c)
            s.constants[vocab.constants[c]] = consts[c];
        validate(s);
        return s;
    }

    void run(const std::function<void(const Structure&)>& fn, long long combo_cap) const {
        const int m = static_cast<int>(vocab.constants.size());
        double combos = 1;
        for (int c = 0; c < m; ++c) combos *= n;
        combos *= std::pow(2.0, total_bits);
        if (combos > static_cast<double>(combo_cap))
            throw BudgetError("enumeration space too large at size " + std::to_string(n) +
                              " (raise the cap to proceed)");

        std::vector<int> consts(m, 0);
        const uint64_t mask_end = total_bits == 64 ? 0 : uint64_t(1) << total_bits;
        while (true) {
            for (uint64_t mask = 0;; ++mask) {
                if (total_bits < 64 && mask == mask_end) break;
                if (canonical(consts, mask)) fn(materialize(consts, mask));
                if (total_bits == 64 && mask == ~uint64_t(0)) break;
            }
            int pos = m - 1;
            while (pos >= 0 && consts[pos] == n - 1) consts[pos--] = 0;
            if (pos < 0) break;
            ++consts[pos];
        }
    }
};

} // namespace

void for_each_structure(const Vocabulary& v, int max_size,
                        const std::function<void(const Structure&)>& fn, long long combo_cap) {
    validate(v);
    if (max_size < 0)
        throw InputError("negative size bound");
    if (max_size > 8)
        throw BudgetError("enumeration beyond 8 elements is rejected, not sampled");
    for (int n = 0; n <= max_size; ++n) {
        if (n == 0) {
            if (v.constants.empty()) {
                Structure empty;
                empty.vocab = v;
                for (const auto& [name, arity] : v.relations) {
                    (void)arity;
                    empty.relations[name] = {};
                }
                fn(empty);
            }
            continue;
        }
        SizeEnumerator enumerator(v, n);
        enumerator.run(fn, combo_cap);
    }
}

std::vector<Structure> enumerate_structures(const Vocabulary& v, int max_size,
                                            long long combo_cap) {
    std::vector<Structure> out;
    for_each_structure(v, max_size, [&](const Structure& s) { out.push_back(s); }, combo_cap);
    return out;
}

long long count_structures(const Vocabulary& v, int max_size, long long combo_cap) {
    long long count = 0;
    for_each_structure(v, max_size, [&](const Structure&) { ++count; }, combo_cap);
    return count;
}

} // namespace fmw
