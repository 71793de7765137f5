#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "latcoh/group.hpp"
#include "latcoh/matrix.hpp"
#include "latcoh/normal_form.hpp"

namespace latcoh {

// Free Z-module of finite rank with a unimodular action of a finite group.
// The action is cached for every element and fully validated at construction:
// action(identity) = 1 and action(g)action(h) = action(gh) on all pairs, which
// also forces every matrix to be invertible over Z. Matrices act on column
// vectors.
class GammaLattice {
  public:
    GammaLattice(GroupPtr group, int rank, std::vector<IMat> action_by_element, std::string label)
        : group_(std::move(group)), rank_(rank), action_(std::move(action_by_element)), label_(std::move(label)) {
        if (rank_ < 0) fail(errc::invalid_input, "negative rank");
        if (static_cast<int>(action_.size()) != group_->order())
            fail(errc::invalid_input, "action must assign a matrix to every group element");
        for (const IMat& m : action_)
            if (m.rows() != static_cast<std::size_t>(rank_) || m.cols() != static_cast<std::size_t>(rank_))
                fail(errc::invalid_input, "action matrix has wrong shape");
        validate();
    }

    // Extend generator matrices along the multiplication table, then validate.
    static GammaLattice from_generators(const GroupPtr& group, int rank, const std::vector<IMat>& gen_mats,
                                        std::string label) {
        const auto& gens = group->generators();
        if (gen_mats.size() != gens.size())
            fail(errc::invalid_input, "need exactly one matrix per group generator");
        std::vector<IMat> act(group->order());
        std::vector<char> have(group->order(), 0);
        act[group->identity()] = IMat::identity(rank);
        have[group->identity()] = 1;
        std::vector<int> frontier{group->identity()};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int x : frontier)
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    int y = group->mul(x, gens[i]);
                    if (have[y]) continue;
                    act[y] = act[x].mul(gen_mats[i]);
                    have[y] = 1;
                    next.push_back(y);
                }
            frontier = std::move(next);
        }
        for (int g = 0; g < group->order(); ++g)
            if (!have[g]) fail(errc::construction_error, "generators do not reach element " + std::to_string(g));
        return GammaLattice(group, rank, std::move(act), std::move(label));
    }

    const GroupPtr& group() const { return group_; }
    int rank() const { return rank_; }
    const IMat& act(int g) const { return action_[g]; }
    const std::string& label() const { return label_; }

    bool same_content(const GammaLattice& o) const {
        if (rank_ != o.rank_ || !group_->same_structure(*o.group_)) return false;
        for (int g = 0; g < group_->order(); ++g)
            if (action_[g] != o.action_[g]) return false;
        return true;
    }

  private:
    void validate() const {
        if (!action_[group_->identity()].is_identity())
            fail(errc::invalid_input, "action of the identity is not the identity matrix");
        for (int a = 0; a < group_->order(); ++a)
            for (int b = 0; b < group_->order(); ++b)
                if (action_[a].mul(action_[b]) != action_[group_->mul(a, b)])
                    fail(errc::invalid_input, "not a representation: action(g)action(h) != action(gh) at (g,h)=(" +
                                                  std::to_string(a) + "," + std::to_string(b) + ")");
    }

    GroupPtr group_;
    int rank_;
    std::vector<IMat> action_;
    std::string label_;
};

using LatticePtr = std::shared_ptr<const GammaLattice>;

// Equivariant integer matrix between lattices over the same group.
struct LatticeMap {
    LatticePtr source, target;
    IMat matrix; // target.rank x source.rank

    LatticeMap(LatticePtr src, LatticePtr tgt, IMat m)
        : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
        if (!source->group()->same_structure(*target->group()))
            fail(errc::invalid_input, "lattice map endpoints live over different groups");
        if (matrix.rows() != static_cast<std::size_t>(target->rank()) ||
            matrix.cols() != static_cast<std::size_t>(source->rank()))
            fail(errc::invalid_input, "lattice map matrix has wrong shape");
        for (int g = 0; g < source->group()->order(); ++g)
            if (target->act(g).mul(matrix) != matrix.mul(source->act(g)))
                fail(errc::invalid_input, "map is not equivariant at element " + std::to_string(g));
    }

    std::vector<i64> apply(const std::vector<i64>& x) const { return matrix.mul_vec(x); }
};

inline LatticePtr trivial_lattice(const GroupPtr& G, int rank, std::string label = "") {
    if (label.empty()) label = "Z^" + std::to_string(rank);
    std::vector<IMat> act(G->order(), IMat::identity(rank));
    return std::make_shared<GammaLattice>(G, rank, std::move(act), std::move(label));
}

namespace detail {
// Position of each element's right coset among the chosen representatives.
inline std::vector<int> coset_positions(const GroupPtr& G, const Subgroup& H, const std::vector<int>& reps) {
    std::vector<int> pos(G->order(), -1);
    for (std::size_t c = 0; c < reps.size(); ++c)
        for (int h : H.elements) pos[G->mul(h, reps[c])] = static_cast<int>(c);
    for (int g = 0; g < G->order(); ++g)
        if (pos[g] < 0) fail(errc::construction_error, "cosets do not cover the group");
    return pos;
}
} // namespace detail

// Z[G/H] on the right cosets Hr; the action permutes basis vectors by
// sigma: e_{Hr} -> e_{H r sigma^{-1}}.
inline LatticePtr permutation_lattice(const GroupPtr& G, const Subgroup& H, std::string label = "") {
    const std::vector<int> reps = right_coset_reps(G, H);
    const std::vector<int> pos = detail::coset_positions(G, H, reps);
    const int n = static_cast<int>(reps.size());
    if (label.empty()) label = "Z[" + G->label() + "/H" + std::to_string(H.order()) + "]";
    std::vector<IMat> act(G->order());
    for (int s = 0; s < G->order(); ++s) {
        IMat m(n, n);
        for (int c = 0; c < n; ++c) m(pos[G->mul(reps[c], G->inv(s))], c) = 1;
        act[s] = std::move(m);
    }
    return std::make_shared<GammaLattice>(G, n, std::move(act), std::move(label));
}

inline LatticePtr regular_lattice(const GroupPtr& G) {
    return permutation_lattice(G, trivial_subgroup(G), "Z[" + G->label() + "]");
}

inline LatticePtr dual(const LatticePtr& M) {
    std::vector<IMat> act(M->group()->order());
    for (int g = 0; g < M->group()->order(); ++g) act[g] = M->act(M->group()->inv(g)).transpose();
    return std::make_shared<GammaLattice>(M->group(), M->rank(), std::move(act), M->label() + "^0");
}

struct DirectSum {
    LatticePtr sum;
    std::vector<LatticeMap> inject;
    std::vector<LatticeMap> project;
};

inline DirectSum direct_sum(const std::vector<LatticePtr>& parts) {
    if (parts.empty()) fail(errc::invalid_input, "direct sum of an empty family");
    const GroupPtr& G = parts[0]->group();
    int rank = 0;
    for (const auto& p : parts) {
        if (!p->group()->same_structure(*G)) fail(errc::invalid_input, "direct sum over mixed groups");
        rank += p->rank();
    }
    std::vector<IMat> act(G->order());
    for (int g = 0; g < G->order(); ++g) {
        IMat m(rank, rank);
        int off = 0;
        for (const auto& p : parts) {
            const IMat& b = p->act(g);
            for (int i = 0; i < p->rank(); ++i)
                for (int j = 0; j < p->rank(); ++j) m(off + i, off + j) = b(i, j);
            off += p->rank();
        }
        act[g] = std::move(m);
    }
    DirectSum out;
    out.sum = std::make_shared<GammaLattice>(G, rank, std::move(act), "sum" + std::to_string(parts.size()));
    int off = 0;
    for (const auto& p : parts) {
        IMat in(rank, p->rank()), pr(p->rank(), rank);
        for (int i = 0; i < p->rank(); ++i) {
            in(off + i, i) = 1;
            pr(i, off + i) = 1;
        }
        out.inject.emplace_back(p, out.sum, std::move(in));
        out.project.emplace_back(out.sum, p, std::move(pr));
        off += p->rank();
    }
    return out;
}

// Same underlying module, action restricted to a subgroup; lives over the
// materialized subgroup (local indices follow H.elements in ascending order).
inline LatticePtr restrict_lattice(const LatticePtr& M, const Subgroup& H) {
    if (!H.parent->same_structure(*M->group()))
        fail(errc::invalid_input, "restriction subgroup belongs to a different group");
    GroupPtr Hg = materialize_group(H);
    std::vector<IMat> act(Hg->order());
    for (int i = 0; i < Hg->order(); ++i) act[i] = M->act(H.elements[i]);
    return std::make_shared<GammaLattice>(std::move(Hg), M->rank(), std::move(act),
                                          M->label() + "|H" + std::to_string(H.order()));
}

// CoInd_H^G(M): H-equivariant functions f: G -> M with f(hg) = h f(g), encoded
// by their values on the right-coset representatives; (sigma f)(g) = f(g sigma).
inline LatticePtr coinduce(const Subgroup& H, const LatticePtr& M, const GroupPtr& G) {
    if (!H.parent->same_structure(*G)) fail(errc::invalid_input, "subgroup does not live in the target group");
    GroupPtr Hg = materialize_group(H);
    if (!M->group()->same_structure(*Hg))
        fail(errc::invalid_input, "coinduced module must live over the materialized subgroup");
    const std::vector<int> reps = right_coset_reps(G, H);
    const std::vector<int> pos = detail::coset_positions(G, H, reps);
    std::vector<int> local(G->order(), -1);
    for (int i = 0; i < H.order(); ++i) local[H.elements[i]] = i;
    const int t = static_cast<int>(reps.size());
    const int r = M->rank();
    const int rank = t * r;
    std::vector<IMat> act(G->order());
    for (int s = 0; s < G->order(); ++s) {
        IMat m(rank, rank);
        for (int c = 0; c < t; ++c) {
            const int gs = G->mul(reps[c], s);
            const int cprime = pos[gs];
            const int h = G->mul(gs, G->inv(reps[cprime]));
            const IMat& block = M->act(local[h]);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    if (block(i, j) != 0) m(c * r + i, cprime * r + j) = block(i, j);
        }
        act[s] = std::move(m);
    }
    return std::make_shared<GammaLattice>(G, rank, std::move(act),
                                          "CoInd(" + M->label() + ")");
}

struct KernelResult {
    LatticePtr lattice;
    LatticeMap inclusion; // kernel -> f.source, pure
};

inline KernelResult kernel_lattice(const LatticeMap& f) {
    const IMat K = kernel(f.matrix);
    const GroupPtr& G = f.source->group();
    const int k = static_cast<int>(K.cols());
    Solver solver(K);
    std::vector<IMat> act(G->order());
    for (int g = 0; g < G->order(); ++g) {
        auto X = solver.solve_mat(f.source->act(g).mul(K));
        if (!X) fail(errc::construction_error, "kernel is not stable under the action");
        act[g] = std::move(*X);
    }
    auto lat = std::make_shared<GammaLattice>(G, k, std::move(act), "ker(" + f.source->label() + ")");
    return KernelResult{lat, LatticeMap(lat, f.source, K)};
}

struct CokernelResult {
    LatticePtr lattice;
    LatticeMap projection; // f.target -> cokernel, surjective over Z
};

// Cokernel of a split injection onto a direct summand. Torsion is refused:
// every elementary divisor of f.matrix must be 1.
inline CokernelResult cokernel_torsion_free(const LatticeMap& f) {
    const std::size_t t = f.matrix.rows(), s = f.matrix.cols();
    SmithSummary snf = smith(f.matrix);
    if (snf.rank < s)
        fail(errc::torsion_error, "map has a nonzero kernel (rank " + std::to_string(snf.rank) + " < " +
                                      std::to_string(s) + ")");
    for (i64 d : snf.divisors)
        if (d != 1)
            fail(errc::torsion_error, "cokernel would have torsion: elementary divisor " + std::to_string(d));
    const std::size_t q = t - s;
    // U * matrix * V = [I; 0]; the last q rows of U present the quotient and
    // the last q columns of U^{-1} give a right inverse.
    IMat P(q, t), R(t, q);
    {
        std::vector<i64> e(t, 0);
        for (std::size_t j = 0; j < t; ++j) {
            std::fill(e.begin(), e.end(), 0);
            e[j] = 1;
            std::vector<BigInt> col = snf.apply_U(std::vector<i64>(e));
            for (std::size_t i = 0; i < q; ++i) P(i, j) = to_i64(col[s + i]);
        }
        for (std::size_t j = 0; j < q; ++j) {
            std::vector<BigInt> col = snf.U_inverse_col(s + j);
            for (std::size_t i = 0; i < t; ++i) R(i, j) = to_i64(col[i]);
        }
    }
    if (!P.mul(f.matrix).is_zero()) fail(errc::construction_error, "projection does not kill the image");
    if (!P.mul(R).is_identity()) fail(errc::construction_error, "projection has no right inverse");
    const GroupPtr& G = f.target->group();
    std::vector<IMat> act(G->order());
    for (int g = 0; g < G->order(); ++g) act[g] = P.mul(f.target->act(g)).mul(R);
    auto lat = std::make_shared<GammaLattice>(G, static_cast<int>(q), std::move(act),
                                              "coker(" + f.target->label() + ")");
    return CokernelResult{lat, LatticeMap(f.target, lat, std::move(P))};
}

// epsilon: Z[G/H] -> Z, every coset basis vector to 1.
inline LatticeMap augmentation(const GroupPtr& G, const Subgroup& H) {
    LatticePtr src = permutation_lattice(G, H);
    LatticePtr tgt = trivial_lattice(G, 1);
    IMat m(1, src->rank());
    for (int j = 0; j < src->rank(); ++j) m(0, j) = 1;
    return LatticeMap(std::move(src), std::move(tgt), std::move(m));
}

struct EsempioPhi {
    LatticeMap phi;         // Z[L]^2 -> Z[L]
    LatticeMap eps;         // Z[L] -> Z
    DirectSum square;       // Z[L] (+) Z[L]
    LatticePtr group_ring;  // Z[L]
};

// phi(sum n^1_l l, sum n^2_l l) = sum n^1_l l(l1 - 1) + n^2_l l(l2 - 1) for the
// first two generators l1, l2 of an abelian group.
inline EsempioPhi esempio_phi(const GroupPtr& L) {
    if (L->generators().size() < 2) fail(errc::invalid_input, "esempio map needs at least two generators");
    for (int a = 0; a < L->order(); ++a)
        for (int b = 0; b < L->order(); ++b)
            if (L->mul(a, b) != L->mul(b, a)) fail(errc::invalid_input, "esempio map needs an abelian group");
    const int l1 = L->generators()[0], l2 = L->generators()[1];
    const Subgroup triv = trivial_subgroup(L);
    LatticePtr ZL = permutation_lattice(L, triv);
    const std::vector<int> reps = right_coset_reps(L, triv);
    const std::vector<int> pos = detail::coset_positions(L, triv, reps);
    DirectSum square = direct_sum({ZL, ZL});
    const int n = L->order();
    IMat m(n, 2 * n);
    for (int c = 0; c < n; ++c) {
        const int lam = reps[c];
        m(pos[L->mul(lam, l1)], c) = num_add(m(pos[L->mul(lam, l1)], c), 1);
        m(pos[lam], c) = num_sub(m(pos[lam], c), 1);
        m(pos[L->mul(lam, l2)], n + c) = num_add(m(pos[L->mul(lam, l2)], n + c), 1);
        m(pos[lam], n + c) = num_sub(m(pos[lam], n + c), 1);
    }
    LatticeMap phi(square.sum, ZL, std::move(m));
    LatticeMap eps = augmentation(L, triv);
    return EsempioPhi{std::move(phi), std::move(eps), std::move(square), ZL};
}

// Move a lattice along a group isomorphism given as an index map.
inline LatticePtr transport(const LatticePtr& M, const GroupPtr& target, const std::vector<int>& iso) {
    const GroupPtr& S = M->group();
    if (S->order() != target->order() || static_cast<int>(iso.size()) != S->order())
        fail(errc::invalid_input, "isomorphism must be a bijection on indices");
    std::vector<char> hit(target->order(), 0);
    for (int v : iso) {
        if (v < 0 || v >= target->order() || hit[v]) fail(errc::invalid_input, "isomorphism is not a bijection");
        hit[v] = 1;
    }
    for (int a = 0; a < S->order(); ++a)
        for (int b = 0; b < S->order(); ++b)
            if (iso[S->mul(a, b)] != target->mul(iso[a], iso[b]))
                fail(errc::invalid_input, "index map is not a group isomorphism");
    std::vector<IMat> act(target->order());
    for (int g = 0; g < S->order(); ++g) act[iso[g]] = M->act(g);
    return std::make_shared<GammaLattice>(target, M->rank(), std::move(act), M->label() + "~");
}

} // namespace latcoh
