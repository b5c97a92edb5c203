#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "inertial/errors.hpp"

namespace inertial {

using ElementSet = std::vector<std::uint32_t>;  // sorted, duplicate-free

// Finite group given by its multiplication table; table[a][b] = a * b.
class FiniteGroup {
public:
    FiniteGroup(std::vector<std::vector<std::uint32_t>> table, std::uint32_t identity, std::string name = {})
        : table_(std::move(table)), identity_(identity), name_(std::move(name)) {
        const std::size_t n = table_.size();
        if (n == 0) fail(Errc::invalid_input, "group table is empty");
        if (identity_ >= n) fail(Errc::invalid_input, "identity index out of range");
        for (const auto& row : table_) {
            if (row.size() != n) fail(Errc::invalid_input, "group table is not square");
            for (auto v : row)
                if (v >= n) fail(Errc::invalid_input, "group table entry out of range");
        }
        for (std::uint32_t a = 0; a < n; ++a)
            if (table_[identity_][a] != a || table_[a][identity_] != a)
                fail(Errc::invalid_input, "identity element fails on " + std::to_string(a));
        inverse_.assign(n, n);
        for (std::uint32_t a = 0; a < n; ++a) {
            std::vector<bool> seen(n, false);
            for (std::uint32_t b = 0; b < n; ++b) {
                if (seen[table_[a][b]]) fail(Errc::invalid_input, "row " + std::to_string(a) + " is not a permutation");
                seen[table_[a][b]] = true;
                if (table_[a][b] == identity_) inverse_[a] = b;
            }
        }
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                for (std::uint32_t c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        fail(Errc::invalid_input, "table is not associative");
    }

    std::uint32_t order() const noexcept { return static_cast<std::uint32_t>(table_.size()); }
    std::uint32_t identity() const noexcept { return identity_; }
    const std::string& name() const noexcept { return name_; }
    const std::vector<std::vector<std::uint32_t>>& table() const noexcept { return table_; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
    std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }

    std::uint32_t element_order(std::uint32_t a) const {
        std::uint32_t k = 1, x = a;
        while (x != identity_) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (std::uint32_t a = 0; a < order(); ++a)
            for (std::uint32_t b = a + 1; b < order(); ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    bool is_endomorphism(const std::vector<std::uint32_t>& phi) const {
        if (phi.size() != order()) return false;
        for (auto v : phi)
            if (v >= order()) return false;
        for (std::uint32_t a = 0; a < order(); ++a)
            for (std::uint32_t b = 0; b < order(); ++b)
                if (phi[mul(a, b)] != mul(phi[a], phi[b])) return false;
        return true;
    }

    ElementSet closure(const ElementSet& gens) const {
        std::vector<bool> in(order(), false);
        std::vector<std::uint32_t> queue{identity_};
        in[identity_] = true;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (auto g : gens) {
                std::uint32_t y = mul(queue[i], g);
                if (!in[y]) {
                    in[y] = true;
                    queue.push_back(y);
                }
            }
        std::sort(queue.begin(), queue.end());
        return queue;
    }

    ElementSet product(const ElementSet& a, const ElementSet& b) const {
        std::vector<bool> in(order(), false);
        for (auto x : a)
            for (auto y : b) in[mul(x, y)] = true;
        return from_mask(in);
    }

    ElementSet image(const std::vector<std::uint32_t>& phi, const ElementSet& s) const {
        std::vector<bool> in(order(), false);
        for (auto x : s) in[phi[x]] = true;
        return from_mask(in);
    }

    bool is_subgroup(const ElementSet& s) const {
        if (!std::binary_search(s.begin(), s.end(), identity_)) return false;
        for (auto a : s)
            for (auto b : s)
                if (!std::binary_search(s.begin(), s.end(), mul(a, inv(b)))) return false;
        return true;
    }

    // Every subgroup, found by closing cyclic subgroups under joins.
    std::vector<ElementSet> subgroups() const {
        std::set<ElementSet> all;
        std::vector<ElementSet> frontier;
        for (std::uint32_t a = 0; a < order(); ++a) {
            ElementSet c = closure({a});
            if (all.insert(c).second) frontier.push_back(c);
        }
        std::vector<ElementSet> cyclic(all.begin(), all.end());
        while (!frontier.empty()) {
            std::vector<ElementSet> next;
            for (const auto& h : frontier)
                for (const auto& c : cyclic) {
                    ElementSet gens = h;
                    gens.insert(gens.end(), c.begin(), c.end());
                    ElementSet j = closure(gens);
                    if (all.insert(j).second) next.push_back(std::move(j));
                }
            frontier = std::move(next);
        }
        return {all.begin(), all.end()};
    }

    // Small generating set chosen greedily by element index.
    std::vector<std::uint32_t> generators() const {
        std::vector<std::uint32_t> gens;
        ElementSet current{identity_};
        while (current.size() < order()) {
            std::uint32_t best = 0;
            std::size_t best_size = 0;
            for (std::uint32_t a = 0; a < order(); ++a) {
                if (std::binary_search(current.begin(), current.end(), a)) continue;
                ElementSet g = gens;
                g.push_back(a);
                std::size_t s = closure(g).size();
                if (s > best_size) {
                    best_size = s;
                    best = a;
                }
            }
            gens.push_back(best);
            current = closure(gens);
        }
        return gens;
    }

    // Homomorphism determined by generator images, if it exists.
    std::optional<std::vector<std::uint32_t>> extend(const std::vector<std::uint32_t>& gens,
                                                     const std::vector<std::uint32_t>& images,
                                                     const FiniteGroup& target) const {
        const std::uint32_t unset = order();
        std::vector<std::uint32_t> map(order(), unset);
        map[identity_] = target.identity();
        std::vector<std::uint32_t> queue{identity_};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            std::uint32_t x = queue[i];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                std::uint32_t y = mul(x, gens[k]);
                std::uint32_t fy = target.mul(map[x], images[k]);
                if (map[y] == unset) {
                    map[y] = fy;
                    queue.push_back(y);
                } else if (map[y] != fy) {
                    return std::nullopt;
                }
            }
        }
        for (std::uint32_t a = 0; a < order(); ++a)
            for (std::uint32_t b = 0; b < order(); ++b)
                if (map[mul(a, b)] != target.mul(map[a], map[b])) return std::nullopt;
        return map;
    }

    // All endomorphisms, enumerated through generator images.
    std::vector<std::vector<std::uint32_t>> endomorphisms() const {
        auto gens = generators();
        std::vector<std::vector<std::uint32_t>> out;
        std::vector<std::uint32_t> images(gens.size(), 0);
        std::vector<std::uint32_t> gen_order(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) gen_order[k] = element_order(gens[k]);
        while (true) {
            bool ok = true;
            for (std::size_t k = 0; k < gens.size() && ok; ++k) ok = gen_order[k] % element_order(images[k]) == 0;
            if (ok)
                if (auto m = extend(gens, images, *this)) out.push_back(std::move(*m));
            std::size_t i = 0;
            while (i < images.size() && images[i] + 1 == order()) images[i++] = 0;
            if (i == images.size()) break;
            ++images[i];
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::vector<std::uint32_t>> automorphisms() const {
        std::vector<std::vector<std::uint32_t>> out;
        for (auto& m : endomorphisms()) {
            std::vector<std::uint32_t> s = m;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) == s.end()) out.push_back(std::move(m));
        }
        return out;
    }

private:
    ElementSet from_mask(const std::vector<bool>& in) const {
        ElementSet s;
        for (std::uint32_t i = 0; i < in.size(); ++i)
            if (in[i]) s.push_back(i);
        return s;
    }

    std::vector<std::vector<std::uint32_t>> table_;
    std::uint32_t identity_;
    std::vector<std::uint32_t> inverse_;
    std::string name_;
};

// T_n = H * H^phi * ... * H^(phi^n)
inline ElementSet finite_group_trajectory(const FiniteGroup& g, const std::vector<std::uint32_t>& phi,
                                          const ElementSet& h, int n) {
    if (!g.is_endomorphism(phi)) fail(Errc::not_homomorphism, "map is not an endomorphism of the group");
    if (n < 0) fail(Errc::invalid_input, "step count must be non-negative");
    ElementSet t = h, power = h;
    for (int k = 1; k <= n; ++k) {
        power = g.image(phi, power);
        t = g.product(t, power);
    }
    return t;
}

// Smallest |Y| with T inside H Y: the number of right cosets H g meeting T.
inline std::size_t minimal_transversal_count(const FiniteGroup& g, const ElementSet& h, const ElementSet& t) {
    std::vector<bool> covered(g.order(), false);
    std::size_t count = 0;
    for (auto x : t) {
        if (covered[x]) continue;
        ++count;
        for (auto y : h) covered[g.mul(y, x)] = true;
    }
    return count;
}

// [H^phi : H^phi ∩ H] by direct counting.
inline std::size_t finite_group_inert_index(const FiniteGroup& g, const std::vector<std::uint32_t>& phi,
                                            const ElementSet& h) {
    if (!g.is_endomorphism(phi)) fail(Errc::not_homomorphism, "map is not an endomorphism of the group");
    ElementSet img = g.image(phi, h);
    ElementSet meet;
    std::set_intersection(img.begin(), img.end(), h.begin(), h.end(), std::back_inserter(meet));
    return img.size() / meet.size();
}

namespace groups {

inline FiniteGroup cyclic(std::uint32_t n) {
    std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t), 0, "C" + std::to_string(n));
}

// Pair (a, b) is encoded as a * |H| + b.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::uint32_t m = g.order(), k = h.order();
    std::vector<std::vector<std::uint32_t>> t(m * k, std::vector<std::uint32_t>(m * k));
    for (std::uint32_t x = 0; x < m * k; ++x)
        for (std::uint32_t y = 0; y < m * k; ++y) t[x][y] = g.mul(x / k, y / k) * k + h.mul(x % k, y % k);
    return FiniteGroup(std::move(t), g.identity() * k + h.identity(), g.name() + "x" + h.name());
}

// N ⋊ C_k where the generator of C_k acts by alpha (alpha^k = id);
// (n1, i)(n2, j) = (n1 alpha^i(n2), i + j); encoded as n * k + i.
inline FiniteGroup semidirect_cyclic(const FiniteGroup& n, std::uint32_t k, const std::vector<std::uint32_t>& alpha,
                                     const std::string& name) {
    const std::uint32_t m = n.order();
    std::vector<std::vector<std::uint32_t>> powers{std::vector<std::uint32_t>(m)};
    std::iota(powers[0].begin(), powers[0].end(), 0u);
    for (std::uint32_t i = 1; i < k; ++i) {
        std::vector<std::uint32_t> p(m);
        for (std::uint32_t x = 0; x < m; ++x) p[x] = alpha[powers[i - 1][x]];
        powers.push_back(std::move(p));
    }
    for (std::uint32_t x = 0; x < m; ++x)
        if (alpha[powers[k - 1][x]] != x) fail(Errc::invalid_input, "automorphism order does not divide k");
    std::vector<std::vector<std::uint32_t>> t(m * k, std::vector<std::uint32_t>(m * k));
    for (std::uint32_t x = 0; x < m * k; ++x)
        for (std::uint32_t y = 0; y < m * k; ++y) {
            std::uint32_t i = x % k, j = y % k;
            t[x][y] = n.mul(x / k, powers[i][y / k]) * k + (i + j) % k;
        }
    return FiniteGroup(std::move(t), n.identity() * k, name);
}

// <a, x | a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1>, order 4n; a^i x^e encoded as e * 2n + i.
inline FiniteGroup dicyclic(std::uint32_t n) {
    const std::uint32_t m = 2 * n;
    std::vector<std::vector<std::uint32_t>> t(2 * m, std::vector<std::uint32_t>(2 * m));
    for (std::uint32_t u = 0; u < 2 * m; ++u)
        for (std::uint32_t v = 0; v < 2 * m; ++v) {
            std::uint32_t i = u % m, e = u / m, j = v % m, f = v / m;
            // a^i x^e a^j x^f = a^(i + (-1)^e j) x^e x^f
            std::uint32_t exp = (e ? i + m - j : i + j) % m;
            std::uint32_t xe = e + f;
            if (xe == 2) {
                exp = (exp + n) % m;
                xe = 0;
            }
            t[u][v] = xe * m + exp;
        }
    return FiniteGroup(std::move(t), 0, "Dic" + std::to_string(n));
}

inline std::vector<std::uint32_t> order_profile(const FiniteGroup& g) {
    std::vector<std::uint32_t> p;
    for (std::uint32_t a = 0; a < g.order(); ++a) p.push_back(g.element_order(a));
    std::sort(p.begin(), p.end());
    return p;
}

inline bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.order() != h.order() || order_profile(g) != order_profile(h) || g.is_abelian() != h.is_abelian())
        return false;
    auto gens = g.generators();
    std::vector<std::vector<std::uint32_t>> candidates(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::uint32_t b = 0; b < h.order(); ++b)
            if (h.element_order(b) == g.element_order(gens[k])) candidates[k].push_back(b);
    std::vector<std::size_t> idx(gens.size(), 0);
    for (const auto& c : candidates)
        if (c.empty()) return false;
    while (true) {
        std::vector<std::uint32_t> images(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) images[k] = candidates[k][idx[k]];
        if (auto m = g.extend(gens, images, h)) {
            std::vector<std::uint32_t> s = *m;
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) == s.end()) return true;
        }
        std::size_t i = 0;
        while (i < idx.size() && idx[i] + 1 == candidates[i].size()) idx[i++] = 0;
        if (i == idx.size()) return false;
        ++idx[i];
    }
}

// One representative of every isomorphism class of groups of order <= max_order (max_order <= 24),
// generated from cyclic and dicyclic groups by direct products and cyclic semidirect products.
inline const std::vector<FiniteGroup>& small_groups(std::uint32_t max_order = 24) {
    static std::mutex mutex;
    static std::map<std::uint32_t, std::vector<FiniteGroup>> cache;
    if (max_order > 24) fail(Errc::invalid_input, "catalog covers orders up to 24");
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(max_order);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<FiniteGroup>> by_order(max_order + 1);
    auto add = [&](FiniteGroup g) {
        auto& bucket = by_order[g.order()];
        for (const auto& h : bucket)
            if (isomorphic(g, h)) return;
        bucket.push_back(std::move(g));
    };
    for (std::uint32_t n = 1; n <= max_order; ++n) {
        add(cyclic(n));
        if (n % 4 == 0 && n >= 8) add(dicyclic(n / 4));
        for (std::uint32_t a = 2; a * a <= n; ++a) {
            if (n % a) continue;
            for (const auto& g : by_order[a])
                for (const auto& h : by_order[n / a]) add(direct_product(g, h));
        }
        for (std::uint32_t k = 2; k < n; ++k) {
            if (n % k) continue;
            std::vector<FiniteGroup> bases = by_order[n / k];
            for (const auto& base : bases) {
                for (const auto& alpha : base.automorphisms()) {
                    std::vector<std::uint32_t> p = alpha;
                    std::uint32_t ord = 1;
                    while (!std::equal(p.begin(), p.end(), base.table()[base.identity()].begin())) {
                        std::vector<std::uint32_t> q(p.size());
                        for (std::size_t x = 0; x < p.size(); ++x) q[x] = alpha[p[x]];
                        p = std::move(q);
                        ++ord;
                    }
                    if (ord == 1 || k % ord) continue;
                    add(semidirect_cyclic(base, k, alpha, base.name() + ":C" + std::to_string(k)));
                }
            }
        }
    }
    std::vector<FiniteGroup> all;
    for (auto& bucket : by_order)
        for (auto& g : bucket) all.push_back(std::move(g));
    return cache.emplace(max_order, std::move(all)).first->second;
}

}  // namespace groups

}  // namespace inertial
