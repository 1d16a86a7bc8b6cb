#include "fmw/sweeps.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "fmw/canonical.hpp"
#include "fmw/category.hpp"
#include "fmw/cores.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"
#include "fmw/games.hpp"
#include "fmw/logic.hpp"
#include "fmw/serialize.hpp"

namespace fmw {

nlohmann::json to_json(const SweepOutcome& s) {
    return nlohmann::json{{"check", s.check},
                          {"cases", s.cases},
                          {"counterexamples", s.counterexamples},
                          {"details", s.details},
                          {"bounds", s.bounds},
                          {"passed", s.passed()}};
}

namespace {

constexpr size_t kMaxDetails = 10;

void record(SweepOutcome& out, const std::string& detail) {
    ++out.counterexamples;
    if (out.details.size() < kMaxDetails) out.details.push_back(detail);
}

// hom(test, target) for every pool member and target; complete searches only.
std::vector<std::vector<bool>> pool_profiles(const std::vector<Structure>& pool,
                                             const std::vector<Structure>& targets,
                                             const SearchBudget& budget) {
    std::vector<std::vector<bool>> profile(targets.size(), std::vector<bool>(pool.size(), false));
    for (size_t t = 0; t < pool.size(); ++t)
        for (size_t s = 0; s < targets.size(); ++s) {
            auto r = find_homomorphism(pool[t], targets[s], {}, budget);
            if (r.budget_exhausted())
                throw BudgetError("sweep requires complete searches");
            profile[s][t] = r.found();
        }
    return profile;
}

bool subset(const std::vector<bool>& small, const std::vector<bool>& large) {
    for (size_t i = 0; i < small.size(); ++i)
        if (small[i] && !large[i]) return false;
    return true;
}

// All homomorphisms between each ordered pair, as raw maps.
using HomMatrix = std::vector<std::vector<std::vector<std::vector<int>>>>;

HomMatrix all_homs(const std::vector<Structure>& structures) {
    const size_t n = structures.size();
    HomMatrix homs(n, std::vector<std::vector<std::vector<int>>>(n));
    SearchOptions options;
    options.lexicographic_order = true;
    options.budget.node_limit = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto& cell = homs[i][j];
            for_each_homomorphism(structures[i], structures[j], options,
                                  [&](const std::vector<int>& map) {
                                      cell.push_back(map);
                                      return true;
                                  });
        }
    return homs;
}

uint64_t encode_map(const std::vector<int>& map, int base) {
    uint64_t out = 0;
    for (auto it = map.rbegin(); it != map.rend(); ++it)
        out = out * static_cast<uint64_t>(base) + static_cast<uint64_t>(*it);
    return out;
}

} // namespace

SweepOutcome sweep_lemma28(const Vocabulary& v, int max_size, int k_max, int size_cap,
                           const SearchBudget& budget) {
    SweepOutcome out;
    out.check = "lemma28";
    auto structures = enumerate_structures(v, max_size);
    const size_t n = structures.size();
    out.bounds = {{"vocab", vocabulary_spec(v)},
                  {"max_size", max_size},
                  {"k_max", k_max},
                  {"size_cap", size_cap},
                  {"structures", n}};

    for (int k = 1; k <= k_max; ++k) {
        auto pool = enumerate_pp_tests(v, k, size_cap);
        auto profile = pool_profiles(pool, structures, budget);
        out.bounds["pool_size_k" + std::to_string(k)] = pool.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                bool game = k_hom(structures[i], structures[j], k, {}, budget);
                bool pp = subset(profile[i], profile[j]);
                ++out.cases;
                if (game != pp)
                    record(out, "k=" + std::to_string(k) + " pair (" + std::to_string(i) + "," +
                                    std::to_string(j) + "): game=" + (game ? "true" : "false") +
                                    " pp=" + (pp ? "true" : "false"));
            }
    }
    return out;
}

SweepOutcome sweep_theorem3(const Vocabulary& v, int max_size, int k_max, int size_cap,
                            const SearchBudget& budget) {
    SweepOutcome out;
    out.check = "theorem3";
    auto structures = enumerate_structures(v, max_size);
    const size_t n = structures.size();
    out.bounds = {{"vocab", vocabulary_spec(v)},
                  {"max_size", max_size},
                  {"k_max", k_max},
                  {"size_cap", size_cap},
                  {"structures", n}};

    for (int k = 1; k <= k_max; ++k) {
        auto pool = enumerate_pp_tests(v, k, size_cap);
        auto profile = pool_profiles(pool, structures, budget);
        out.bounds["pool_size_k" + std::to_string(k)] = pool.size();
        // the k-hom matrix, then equivalence on both sides
        std::vector<std::vector<bool>> khom(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                khom[i][j] = k_hom(structures[i], structures[j], k, {}, budget);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                bool lhs = khom[i][j] && khom[j][i];
                bool rhs = subset(profile[i], profile[j]) && subset(profile[j], profile[i]);
                ++out.cases;
                if (lhs != rhs)
                    record(out, "k=" + std::to_string(k) + " pair (" + std::to_string(i) + "," +
                                    std::to_string(j) + "): homotopic=" +
                                    (lhs ? "true" : "false") + " pp=" + (rhs ? "true" : "false"));
            }
    }
    return out;
}

SweepOutcome sweep_theorem2(const Vocabulary& v, int max_size, const SearchBudget& budget) {
    (void)budget;
    SweepOutcome out;
    out.check = "theorem2";
    auto structures = enumerate_structures(v, max_size);
    const size_t n = structures.size();
    auto homs = all_homs(structures);
    out.bounds = {{"vocab", vocabulary_spec(v)}, {"max_size", max_size}, {"structures", n}};

    for (size_t ai = 0; ai < n; ++ai)
        for (size_t bi = 0; bi < n; ++bi) {
            const Structure& a = structures[ai];
            const Structure& b = structures[bi];
            bool weak_eq = !homs[ai][bi].empty() && !homs[bi][ai].empty();
            for (const auto& f : homs[ai][bi]) {
                // section-based: some s: B -> A with f(s(e)) = e
                bool section = false;
                for (const auto& s : homs[bi][ai]) {
                    bool works = true;
                    for (int e = 0; e < b.size() && works; ++e)
                        if (f[s[e]] != e) works = false;
                    if (works) {
                        section = true;
                        break;
                    }
                }
                // lifting-based: for every D and g: D -> B some h: D -> A
                // with f(h(.)) = g
                bool rlp = true;
                for (size_t di = 0; di < n && rlp; ++di) {
                    if (homs[di][bi].empty()) continue;
                    std::vector<uint64_t> reachable;
                    reachable.reserve(homs[di][ai].size());
                    for (const auto& h : homs[di][ai]) {
                        std::vector<int> composed(h.size());
                        for (size_t e = 0; e < h.size(); ++e) composed[e] = f[h[e]];
                        reachable.push_back(encode_map(composed, b.size()));
                    }
                    std::sort(reachable.begin(), reachable.end());
                    for (const auto& g : homs[di][bi]) {
                        if (!std::binary_search(reachable.begin(), reachable.end(),
                                                encode_map(g, b.size()))) {
                            rlp = false;
                            break;
                        }
                    }
                }
                ++out.cases;
                if (section != rlp)
                    record(out, "morphism (" + std::to_string(ai) + "->" + std::to_string(bi) +
                                    "): section=" + (section ? "true" : "false") + " rlp=" +
                                    (rlp ? "true" : "false"));
                if (section && !weak_eq)
                    record(out, "acyclic fibration (" + std::to_string(ai) + "->" +
                                    std::to_string(bi) + ") is not a weak equivalence");
            }
        }
    return out;
}

SweepOutcome sweep_lemma29(const Vocabulary& v, int max_size, int k_max, int pool_cap,
                           const SearchBudget& budget) {
    SweepOutcome out;
    out.check = "lemma29";
    auto structures = enumerate_structures(v, max_size);
    auto pool = enumerate_structures(v, pool_cap);
    const size_t n = structures.size();
    out.bounds = {{"vocab", vocabulary_spec(v)},
                  {"max_size", max_size},
                  {"k_max", k_max},
                  {"pool_cap", pool_cap},
                  {"structures", n},
                  {"pool_size", pool.size()}};

    for (int k = 1; k <= k_max; ++k) {
        std::vector<bool> extendable(n);
        for (size_t i = 0; i < n; ++i)
            extendable[i] = k_extendable(structures[i], k, pool, false, budget);
        std::vector<std::vector<bool>> khom(n, std::vector<bool>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                khom[i][j] = k_hom(structures[i], structures[j], k, {}, budget);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                ++out.cases;
                if (!extendable[i] || !extendable[j] || !khom[i][j] || !khom[j][i]) continue;
                if (!ef_equivalent(structures[i], {}, structures[j], {}, k, budget))
                    record(out, "k=" + std::to_string(k) + " pair (" + std::to_string(i) + "," +
                                    std::to_string(j) +
                                    "): extendable and k-hom-equivalent but not EF-equivalent");
            }
    }
    return out;
}

SweepOutcome sweep_universal_properties(const Vocabulary& v, int max_size,
                                        const SearchBudget& budget) {
    (void)budget;
    SweepOutcome out;
    out.check = "universal-properties";
    auto structures = enumerate_structures(v, max_size);
    const size_t n = structures.size();
    auto homs = all_homs(structures);
    out.bounds = {{"vocab", vocabulary_spec(v)}, {"max_size", max_size}, {"structures", n}};

    SearchOptions enumerate_options;
    enumerate_options.lexicographic_order = true;
    enumerate_options.budget.node_limit = 0;

    for (size_t ai = 0; ai < n; ++ai) {
        for (size_t bi = 0; bi < n; ++bi) {
            const Structure& a = structures[ai];
            const Structure& b = structures[bi];

            // ---- products: every (f, g): D -> A, D -> B has exactly one
            // mediating morphism into A x B. Verified by enumerating every
            // morphism into the product and checking that projection-pairing
            // is a bijection onto the enumerated hom pairs.
            auto pr = product(a, b);
            for (size_t di = 0; di < n; ++di) {
                const Structure& d = structures[di];
                uint64_t stride = 1;
                for (int e = 0; e < d.size(); ++e) stride *= std::max(1, b.size());
                std::vector<uint64_t> enc_a, enc_b;
                enc_a.reserve(homs[di][ai].size());
                for (const auto& f : homs[di][ai])
                    enc_a.push_back(encode_map(f, std::max(1, a.size())));
                for (const auto& g : homs[di][bi])
                    enc_b.push_back(encode_map(g, std::max(1, b.size())));
                std::sort(enc_a.begin(), enc_a.end());
                std::sort(enc_b.begin(), enc_b.end());

                std::vector<uint64_t> keys;
                bool members_ok = true;
                std::vector<int> via_a(d.size()), via_b(d.size());
                for_each_homomorphism(
                    d, pr.object, enumerate_options, [&](const std::vector<int>& m) {
                        for (int e = 0; e < d.size(); ++e) {
                            via_a[e] = pr.to_left.map[m[e]];
                            via_b[e] = pr.to_right.map[m[e]];
                        }
                        uint64_t ea = encode_map(via_a, std::max(1, a.size()));
                        uint64_t eb = encode_map(via_b, std::max(1, b.size()));
                        if (!std::binary_search(enc_a.begin(), enc_a.end(), ea) ||
                            !std::binary_search(enc_b.begin(), enc_b.end(), eb))
                            members_ok = false;
                        keys.push_back(ea * stride + eb);
                        return true;
                    });
                std::sort(keys.begin(), keys.end());
                bool distinct = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
                out.cases += static_cast<long long>(enc_a.size()) *
                             static_cast<long long>(enc_b.size());
                if (!members_ok || !distinct || keys.size() != enc_a.size() * enc_b.size())
                    record(out, "product (" + std::to_string(ai) + "," + std::to_string(bi) +
                                    ") test " + std::to_string(di) +
                                    ": mediating morphisms do not biject with hom pairs");
            }

            // ---- coproducts: every (f, g): A -> D, B -> D factors uniquely
            // through A + B; restriction along the injections must biject.
            auto cp = coproduct(a, b);
            for (size_t di = 0; di < n; ++di) {
                const Structure& d = structures[di];
                uint64_t stride = 1;
                for (int e = 0; e < b.size(); ++e) stride *= std::max(1, d.size());
                std::vector<uint64_t> enc_a, enc_b;
                enc_a.reserve(homs[ai][di].size());
                for (const auto& f : homs[ai][di])
                    enc_a.push_back(encode_map(f, std::max(1, d.size())));
                for (const auto& g : homs[bi][di])
                    enc_b.push_back(encode_map(g, std::max(1, d.size())));
                std::sort(enc_a.begin(), enc_a.end());
                std::sort(enc_b.begin(), enc_b.end());

                std::vector<uint64_t> keys;
                bool members_ok = true;
                std::vector<int> from_a(a.size()), from_b(b.size());
                for_each_homomorphism(
                    cp.object, d, enumerate_options, [&](const std::vector<int>& m) {
                        for (int e = 0; e < a.size(); ++e) from_a[e] = m[cp.from_left.map[e]];
                        for (int e = 0; e < b.size(); ++e) from_b[e] = m[cp.from_right.map[e]];
                        uint64_t ea = encode_map(from_a, std::max(1, d.size()));
                        uint64_t eb = encode_map(from_b, std::max(1, d.size()));
                        if (!std::binary_search(enc_a.begin(), enc_a.end(), ea) ||
                            !std::binary_search(enc_b.begin(), enc_b.end(), eb))
                            members_ok = false;
                        keys.push_back(ea * stride + eb);
                        return true;
                    });
                std::sort(keys.begin(), keys.end());
                bool distinct = std::adjacent_find(keys.begin(), keys.end()) == keys.end();
                out.cases += static_cast<long long>(enc_a.size()) *
                             static_cast<long long>(enc_b.size());
                if (!members_ok || !distinct || keys.size() != enc_a.size() * enc_b.size())
                    record(out, "coproduct (" + std::to_string(ai) + "," + std::to_string(bi) +
                                    ") test " + std::to_string(di) +
                                    ": factorizations do not biject with hom pairs");
            }

            // ---- equalizers and coequalizers over every parallel pair.
            for (const auto& fmap : homs[ai][bi])
                for (const auto& gmap : homs[ai][bi]) {
                    Morphism f{a, b, fmap};
                    Morphism g{a, b, gmap};
                    auto eq = equalizer(f, g);
                    // independent recomputation of the agreement substructure
                    std::vector<bool> in_eq(a.size(), false);
                    std::vector<std::string> agreement_ids;
                    for (int e = 0; e < a.size(); ++e)
                        if (fmap[e] == gmap[e]) {
                            in_eq[e] = true;
                            agreement_ids.push_back(a.universe[e]);
                        }
                    bool object_ok = eq.object.universe == agreement_ids &&
                                     check_homomorphism(eq.inclusion);
                    for (const auto& [name, tuples] : a.relations) {
                        size_t inside = 0;
                        for (const auto& t : tuples) {
                            bool in = true;
                            for (int e : t)
                                if (!in_eq[e]) in = false;
                            if (in) ++inside;
                        }
                        if (inside != eq.object.relations.at(name).size()) object_ok = false;
                    }
                    if (!object_ok)
                        record(out, "equalizer (" + std::to_string(ai) + "->" +
                                        std::to_string(bi) +
                                        "): object differs from the agreement substructure");
                    std::vector<bool> in_object(a.size(), false);
                    for (int e = 0; e < a.size(); ++e)
                        in_object[e] = eq.object.index_of(a.universe[e]) >= 0;
                    for (size_t di = 0; di < n; ++di) {
                        for (const auto& h : homs[di][ai]) {
                            bool equalized = true;
                            for (size_t e = 0; e < h.size(); ++e)
                                if (fmap[h[e]] != gmap[h[e]]) {
                                    equalized = false;
                                    break;
                                }
                            if (!equalized) continue;
                            ++out.cases;
                            // h must corestrict to the returned object (the
                            // unique lift; the inclusion is injective)
                            bool lands = true;
                            for (size_t e = 0; e < h.size(); ++e)
                                if (!in_object[h[e]]) lands = false;
                            if (!lands)
                                record(out, "equalizer (" + std::to_string(ai) + "->" +
                                                std::to_string(bi) + "): equalized test map does "
                                                "not factor");
                        }
                    }

                    auto cq = coequalizer(f, g);
                    for (size_t di = 0; di < n; ++di) {
                        const Structure& d = structures[di];
                        for (const auto& h : homs[bi][di]) {
                            bool coequalized = true;
                            for (int e = 0; e < a.size(); ++e)
                                if (h[fmap[e]] != h[gmap[e]]) {
                                    coequalized = false;
                                    break;
                                }
                            if (!coequalized) continue;
                            ++out.cases;
                            // the factoring map is forced class-wise
                            std::vector<int> m(cq.object.size(), -1);
                            bool well_defined = true;
                            for (int e = 0; e < b.size(); ++e) {
                                int cls = cq.quotient.map[e];
                                if (m[cls] == -1)
                                    m[cls] = h[e];
                                else if (m[cls] != h[e])
                                    well_defined = false;
                            }
                            if (!well_defined || !check_homomorphism(m, cq.object, d))
                                record(out, "coequalizer (" + std::to_string(ai) + "->" +
                                                std::to_string(bi) +
                                                "): no factoring homomorphism");
                        }
                    }
                }
        }
    }
    return out;
}

SweepOutcome sweep_core_correctness(const Vocabulary& v, int max_size, const SearchBudget& budget) {
    SweepOutcome out;
    out.check = "cores";
    out.bounds = {{"vocab", vocabulary_spec(v)}, {"max_size", max_size}};
    long long structures = 0;

    for_each_structure(v, max_size, [&](const Structure& s) {
        ++structures;
        ++out.cases;
        auto result = core_with_retraction(s, {}, budget);
        if (!is_core(result.core, {}, budget)) {
            record(out, "core of structure #" + std::to_string(structures - 1) + " is not a core");
            return;
        }
        // the retraction fixes the core pointwise and lands inside it
        for (int e = 0; e < result.core.size(); ++e) {
            int original = s.index_of(result.core.universe[e]);
            if (result.retraction.map[original] != original) {
                record(out, "retraction does not fix the core pointwise");
                return;
            }
        }
        for (int e = 0; e < s.size(); ++e)
            if (result.core.index_of(s.universe[result.retraction.map[e]]) < 0) {
                record(out, "retraction image leaves the core");
                return;
            }
        // invariance under element-order reversal
        const int size = s.size();
        std::vector<std::string> reversed_names(size);
        for (int e = 0; e < size; ++e) {
            std::string label = std::to_string(size - 1 - e);
            if (label.size() < 2) label = "0" + label;
            reversed_names[e] = "r" + label;
        }
        std::map<std::string, std::vector<std::vector<std::string>>> rels;
        for (const auto& [name, tuples] : s.relations) {
            auto& target = rels[name];
            for (const auto& t : tuples) {
                std::vector<std::string> renamed;
                for (int e : t) renamed.push_back(reversed_names[e]);
                target.push_back(std::move(renamed));
            }
        }
        std::map<std::string, std::string> consts;
        for (const auto& [name, index] : s.constants) consts[name] = reversed_names[index];
        Structure reversed = make_structure(s.vocab, reversed_names, std::move(rels),
                                            std::move(consts));
        Structure reversed_core = core(reversed, {}, budget);
        if (!isomorphic(result.core, reversed_core))
            record(out, "core changed under element-order reversal");
    });
    out.bounds["structures"] = structures;
    return out;
}

SweepOutcome sweep_ef_sanity(const Vocabulary& v, int max_size, int k_max,
                             const SearchBudget& budget) {
    SweepOutcome out;
    out.check = "ef-sanity";
    auto structures = enumerate_structures(v, max_size);
    const size_t n = structures.size();
    out.bounds = {{"vocab", vocabulary_spec(v)},
                  {"max_size", max_size},
                  {"k_max", k_max},
                  {"structures", n}};

    std::vector<std::vector<std::vector<bool>>> ef(
        k_max + 1, std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
    for (int k = 0; k <= k_max; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                ef[k][i][j] = ef_equivalent(structures[i], {}, structures[j], {}, k, budget);

    for (int k = 0; k <= k_max; ++k) {
        for (size_t i = 0; i < n; ++i) {
            ++out.cases;
            if (!ef[k][i][i]) record(out, "EF not reflexive at k=" + std::to_string(k));
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                ++out.cases;
                if (ef[k][i][j] != ef[k][j][i])
                    record(out, "EF not symmetric at k=" + std::to_string(k));
                if (k > 0 && ef[k][i][j] && !ef[k - 1][i][j])
                    record(out, "EF at k=" + std::to_string(k) + " does not refine k-1");
            }
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (!ef[k][i][j]) continue;
                for (size_t l = 0; l < n; ++l) {
                    ++out.cases;
                    if (ef[k][j][l] && !ef[k][i][l])
                        record(out, "EF not transitive at k=" + std::to_string(k));
                }
            }
    }

    // isomorphic (relabeled) copies are equivalent at every tested k
    for (size_t i = 0; i < n; ++i) {
        const Structure& s = structures[i];
        std::vector<std::string> renamed(s.universe.size());
        for (int e = 0; e < s.size(); ++e) renamed[e] = "w" + s.universe[e];
        std::map<std::string, std::vector<std::vector<std::string>>> rels;
        for (const auto& [name, tuples] : s.relations) {
            auto& target = rels[name];
            for (const auto& t : tuples) {
                std::vector<std::string> row;
                for (int e : t) row.push_back(renamed[e]);
                target.push_back(std::move(row));
            }
        }
        std::map<std::string, std::string> consts;
        for (const auto& [name, index] : s.constants) consts[name] = renamed[index];
        Structure copy = make_structure(s.vocab, renamed, std::move(rels), std::move(consts));
        for (int k = 0; k <= k_max; ++k) {
            ++out.cases;
            if (!ef_equivalent(s, {}, copy, {}, k, budget))
                record(out, "relabeled copy not EF-equivalent at k=" + std::to_string(k));
        }
    }
    return out;
}

} // namespace fmw
