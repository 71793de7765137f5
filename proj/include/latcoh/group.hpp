#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "latcoh/error.hpp"
#include "latcoh/ints.hpp"

namespace latcoh {

inline constexpr int kDefaultSubgroupBound = 64;

// Finite group as an explicit multiplication table over indices 0..order-1.
// Immutable after construction; shared freely across threads.
class FiniteGroup {
  public:
    FiniteGroup(int order, std::vector<int> mul, std::vector<int> generators, std::string label)
        : order_(order), mul_(std::move(mul)), generators_(std::move(generators)), label_(std::move(label)) {
        if (order <= 0 || mul_.size() != static_cast<std::size_t>(order) * order)
            fail(errc::invalid_input, "multiplication table has wrong size");
        for (int v : mul_)
            if (v < 0 || v >= order) fail(errc::invalid_input, "multiplication table entry out of range");
        identity_ = find_identity();
        inverse_ = find_inverses();
        validate();
    }

    int order() const { return order_; }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int identity() const { return identity_; }
    const std::vector<int>& generators() const { return generators_; }
    const std::vector<int>& table() const { return mul_; }
    const std::string& label() const { return label_; }

    int element_order(int g) const {
        int n = 1, x = g;
        while (x != identity_) {
            x = mul(x, g);
            ++n;
        }
        return n;
    }

    bool same_structure(const FiniteGroup& o) const {
        return order_ == o.order_ && identity_ == o.identity_ && mul_ == o.mul_;
    }

  private:
    int find_identity() const {
        for (int e = 0; e < order_; ++e) {
            bool ok = true;
            for (int g = 0; g < order_ && ok; ++g)
                if (mul(e, g) != g || mul(g, e) != g) ok = false;
            if (ok) return e;
        }
        fail(errc::invalid_input, "table has no two-sided identity");
    }

    std::vector<int> find_inverses() const {
        std::vector<int> inv(order_, -1);
        for (int g = 0; g < order_; ++g) {
            for (int h = 0; h < order_; ++h)
                if (mul(g, h) == identity_ && mul(h, g) == identity_) {
                    inv[g] = h;
                    break;
                }
            if (inv[g] < 0) fail(errc::invalid_input, "element " + std::to_string(g) + " has no inverse");
        }
        return inv;
    }

    void validate() const {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        fail(errc::invalid_input, "associativity fails at (" + std::to_string(a) + "," +
                                                      std::to_string(b) + "," + std::to_string(c) + ")");
        for (int g : generators_)
            if (g < 0 || g >= order_) fail(errc::invalid_input, "generator index out of range");
        // Generators must generate the whole group.
        std::vector<char> seen(order_, 0);
        std::vector<int> frontier{identity_};
        seen[identity_] = 1;
        int count = 1;
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int x : frontier)
                for (int g : generators_) {
                    int y = mul(x, g);
                    if (!seen[y]) {
                        seen[y] = 1;
                        ++count;
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
        if (count != order_) fail(errc::invalid_input, "generator_indices do not generate the group");
    }

    int order_;
    std::vector<int> mul_;
    int identity_;
    std::vector<int> inverse_;
    std::vector<int> generators_;
    std::string label_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline std::vector<int> closure(const FiniteGroup& G, std::vector<int> seed) {
    std::vector<char> in(G.order(), 0);
    std::vector<int> out;
    auto push = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            out.push_back(x);
        }
    };
    push(G.identity());
    for (int s : seed) {
        if (s < 0 || s >= G.order()) fail(errc::invalid_input, "element index out of range");
        push(s);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out.size(); ++j) {
            push(G.mul(out[i], out[j]));
            push(G.inv(out[i]));
        }
    std::sort(out.begin(), out.end());
    return out;
}

// Greedy deterministic generating sequence: scan indices ascending, keep the
// elements that enlarge the running closure.
inline std::vector<int> greedy_generators(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<int> cl = closure(G, {});
    for (int g = 0; g < G.order() && static_cast<int>(cl.size()) < G.order(); ++g) {
        if (std::binary_search(cl.begin(), cl.end(), g)) continue;
        gens.push_back(g);
        cl = closure(G, gens);
    }
    return gens;
}

// Direct product of cyclic groups; element i is encoded in mixed radix with
// the first order as least significant digit. Generators are the unit vectors.
inline GroupPtr abelian_group(const std::vector<int>& orders, std::string label = "") {
    if (orders.empty()) fail(errc::invalid_input, "abelian_group needs at least one order");
    i64 n = 1;
    for (int d : orders) {
        if (d < 2) fail(errc::invalid_input, "cyclic order must be at least 2");
        n = num_mul(n, d);
    }
    if (n > (1 << 20)) fail(errc::resource_limit, "abelian group order too large");
    const int order = static_cast<int>(n);
    const int k = static_cast<int>(orders.size());
    std::vector<int> digits(k);
    auto decode = [&](int x, std::vector<int>& d) {
        for (int i = 0; i < k; ++i) {
            d[i] = x % orders[i];
            x /= orders[i];
        }
    };
    auto encode = [&](const std::vector<int>& d) {
        int x = 0;
        for (int i = k - 1; i >= 0; --i) x = x * orders[i] + d[i];
        return x;
    };
    std::vector<int> mul(static_cast<std::size_t>(order) * order);
    std::vector<int> da(k), db(k), dc(k);
    for (int a = 0; a < order; ++a) {
        decode(a, da);
        for (int b = 0; b < order; ++b) {
            decode(b, db);
            for (int i = 0; i < k; ++i) dc[i] = (da[i] + db[i]) % orders[i];
            mul[static_cast<std::size_t>(a) * order + b] = encode(dc);
        }
    }
    std::vector<int> gens(k);
    int stride = 1;
    for (int i = 0; i < k; ++i) {
        gens[i] = stride;
        stride *= orders[i];
    }
    if (label.empty()) {
        label = "C";
        for (int i = 0; i < k; ++i) label += (i ? "x" : "") + std::to_string(orders[i]);
    }
    return std::make_shared<FiniteGroup>(order, std::move(mul), std::move(gens), std::move(label));
}

inline GroupPtr group_from_table(const std::vector<std::vector<int>>& rows,
                                 std::vector<int> generators = {}, std::string label = "table") {
    const int order = static_cast<int>(rows.size());
    if (order == 0) fail(errc::invalid_input, "empty multiplication table");
    std::vector<int> mul;
    mul.reserve(static_cast<std::size_t>(order) * order);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != order) fail(errc::invalid_input, "multiplication table is not square");
        mul.insert(mul.end(), r.begin(), r.end());
    }
    std::vector<int> gens = std::move(generators);
    if (gens.empty() && order > 1) {
        // Greedy generators straight off the raw table: add ascending indices
        // that enlarge the running closure.
        int e = -1;
        for (int cand = 0; cand < order && e < 0; ++cand) {
            bool ok = true;
            for (int g = 0; g < order && ok; ++g)
                if (mul[static_cast<std::size_t>(cand) * order + g] != g ||
                    mul[static_cast<std::size_t>(g) * order + cand] != g)
                    ok = false;
            if (ok) e = cand;
        }
        if (e < 0) fail(errc::invalid_input, "table has no two-sided identity");
        std::vector<char> in(order, 0);
        std::vector<int> elems{e};
        in[e] = 1;
        for (int g = 0; g < order && static_cast<int>(elems.size()) < order; ++g) {
            if (in[g]) continue;
            gens.push_back(g);
            elems.push_back(g);
            in[g] = 1;
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (std::size_t j = 0; j < elems.size(); ++j) {
                    int y = mul[static_cast<std::size_t>(elems[i]) * order + elems[j]];
                    if (!in[y]) {
                        in[y] = 1;
                        elems.push_back(y);
                    }
                }
        }
    }
    return std::make_shared<FiniteGroup>(order, std::move(mul), std::move(gens), std::move(label));
}

// Subgroup in canonical form: strictly increasing element list, closed.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> elements;

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }
    bool operator==(const Subgroup& o) const { return elements == o.elements && parent->same_structure(*o.parent); }
    bool operator<(const Subgroup& o) const {
        if (elements.size() != o.elements.size()) return elements.size() < o.elements.size();
        return elements < o.elements;
    }
};

inline Subgroup subgroup_from(GroupPtr G, std::vector<int> seed) {
    return Subgroup{G, closure(*G, std::move(seed))};
}

inline Subgroup trivial_subgroup(GroupPtr G) { return subgroup_from(G, {}); }

inline Subgroup full_subgroup(GroupPtr G) {
    std::vector<int> all(G->order());
    for (int i = 0; i < G->order(); ++i) all[i] = i;
    return Subgroup{std::move(G), std::move(all)};
}

inline bool is_subgroup_of(const Subgroup& inner, const Subgroup& outer) {
    return std::includes(outer.elements.begin(), outer.elements.end(), inner.elements.begin(),
                         inner.elements.end());
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    Subgroup r{a.parent, {}};
    std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                          std::back_inserter(r.elements));
    return r;
}

// Complete duplicate-free subgroup list in canonical order: by size, then by
// lexicographic element list. Closure-based breadth-first enumeration.
inline std::vector<Subgroup> all_subgroups(const GroupPtr& G, int bound = kDefaultSubgroupBound) {
    if (G->order() > bound)
        fail(errc::resource_limit, "subgroup enumeration bound " + std::to_string(bound) +
                                       " exceeded by group of order " + std::to_string(G->order()));
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> frontier{closure(*G, {})};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& H : frontier) {
            for (int g = 0; g < G->order(); ++g) {
                if (std::binary_search(H.begin(), H.end(), g)) continue;
                std::vector<int> seed = H;
                seed.push_back(g);
                std::vector<int> K = closure(*G, std::move(seed));
                if (seen.insert(K).second) next.push_back(std::move(K));
            }
        }
        frontier = std::move(next);
    }
    std::vector<Subgroup> out;
    out.reserve(seen.size());
    for (auto& el : seen) out.push_back(Subgroup{G, el});
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Subgroup> maximal_subgroups(const GroupPtr& G, int bound = kDefaultSubgroupBound) {
    std::vector<Subgroup> all = all_subgroups(G, bound);
    std::vector<Subgroup> proper;
    for (auto& H : all)
        if (H.order() < G->order()) proper.push_back(std::move(H));
    std::vector<Subgroup> out;
    for (const auto& H : proper) {
        bool maximal = true;
        for (const auto& K : proper)
            if (H.order() < K.order() && is_subgroup_of(H, K)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(H);
    }
    return out;
}

inline bool is_cyclic(const Subgroup& H) {
    for (int g : H.elements)
        if (H.parent->element_order(g) == H.order()) return true;
    return false;
}

inline int subgroup_index(const GroupPtr& G, const Subgroup& H) {
    if (!H.parent->same_structure(*G)) fail(errc::invalid_input, "subgroup belongs to a different group");
    if (G->order() % H.order() != 0) fail(errc::invalid_input, "not a subgroup: order does not divide");
    return G->order() / H.order();
}

// One representative per right coset Hg. The coset of H itself is represented
// by the identity; every other coset by its smallest element index. Listed
// with the identity first, then ascending by representative.
inline std::vector<int> right_coset_reps(const GroupPtr& G, const Subgroup& H) {
    const int index = subgroup_index(G, H);
    std::vector<int> coset_of(G->order(), -1);
    std::vector<int> reps;
    for (int g = 0; g < G->order(); ++g) {
        if (coset_of[g] >= 0) continue;
        int rep = H.contains(g) ? G->identity() : g;
        for (int h : H.elements) coset_of[G->mul(h, g)] = rep;
        reps.push_back(rep);
    }
    std::sort(reps.begin(), reps.end(), [&](int a, int b) {
        bool ia = (a == G->identity() && H.contains(a));
        bool ib = (b == G->identity() && H.contains(b));
        if (ia != ib) return ia;
        return a < b;
    });
    if (static_cast<int>(reps.size()) != index) fail(errc::construction_error, "coset count mismatch");
    return reps;
}

// Materialize a subgroup as a standalone group; local index i corresponds to
// H.elements[i] (ascending, so nested materializations commute).
inline GroupPtr materialize_group(const Subgroup& H) {
    const int n = H.order();
    std::vector<int> local(H.parent->order(), -1);
    for (int i = 0; i < n; ++i) local[H.elements[i]] = i;
    std::vector<int> mul(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int prod = H.parent->mul(H.elements[i], H.elements[j]);
            if (local[prod] < 0) fail(errc::invalid_input, "element list is not closed under multiplication");
            mul[static_cast<std::size_t>(i) * n + j] = local[prod];
        }
    // Greedy generators over local indices.
    std::vector<int> gens;
    {
        std::vector<char> in(n, 0);
        std::vector<int> elems;
        int e = local[H.parent->identity()];
        elems.push_back(e);
        in[e] = 1;
        for (int g = 0; g < n && static_cast<int>(elems.size()) < n; ++g) {
            if (in[g]) continue;
            gens.push_back(g);
            elems.push_back(g);
            in[g] = 1;
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (std::size_t j = 0; j < elems.size(); ++j) {
                    int y = mul[static_cast<std::size_t>(elems[i]) * n + elems[j]];
                    if (!in[y]) {
                        in[y] = 1;
                        elems.push_back(y);
                    }
                }
        }
    }
    std::string label = H.parent->label() + "#" + std::to_string(n);
    return std::make_shared<FiniteGroup>(n, std::move(mul), std::move(gens), std::move(label));
}

} // namespace latcoh
