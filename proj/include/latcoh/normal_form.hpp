#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "latcoh/matrix.hpp"

namespace latcoh {

// Floor division with positive divisor, used for canonical HNF residues.
template <class S>
S num_fdiv(const S& a, const S& d) {
    S q = a / d;
    if (!num_is_zero(S(a - q * d)) && num_sign(a) < 0) q = q - S(1);
    return q;
}

enum class RowOpKind : unsigned char { Swap, AddMul, Combo };

// Swap:   rows i <-> j
// AddMul: row_i += a * row_j
// Combo:  (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j), ad - bc = ±1
template <class S>
struct RowOp {
    RowOpKind kind;
    std::uint32_t i, j;
    S a, b, c, d;
};

template <class S>
struct RowOpLog {
    std::size_t dim = 0;
    std::vector<RowOp<S>> ops;

    // v <- U v where U is the product of the recorded elementary matrices.
    template <class V>
    void apply(std::vector<V>& v) const {
        for (const auto& op : ops) {
            switch (op.kind) {
                case RowOpKind::Swap: std::swap(v[op.i], v[op.j]); break;
                case RowOpKind::AddMul: v[op.i] = num_add(v[op.i], num_mul(V(op.a), v[op.j])); break;
                case RowOpKind::Combo: {
                    V ni = num_add(num_mul(V(op.a), v[op.i]), num_mul(V(op.b), v[op.j]));
                    V nj = num_add(num_mul(V(op.c), v[op.i]), num_mul(V(op.d), v[op.j]));
                    v[op.i] = ni;
                    v[op.j] = nj;
                    break;
                }
            }
        }
    }

    // v <- U^{-1} v
    template <class V>
    void apply_inverse(std::vector<V>& v) const {
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            const auto& op = *it;
            switch (op.kind) {
                case RowOpKind::Swap: std::swap(v[op.i], v[op.j]); break;
                case RowOpKind::AddMul: v[op.i] = num_sub(v[op.i], num_mul(V(op.a), v[op.j])); break;
                case RowOpKind::Combo: {
                    V det = num_sub(num_mul(V(op.a), V(op.d)), num_mul(V(op.b), V(op.c)));
                    V ni = num_mul(det, num_sub(num_mul(V(op.d), v[op.i]), num_mul(V(op.b), v[op.j])));
                    V nj = num_mul(det, num_sub(num_mul(V(op.a), v[op.j]), num_mul(V(op.c), v[op.i])));
                    v[op.i] = ni;
                    v[op.j] = nj;
                    break;
                }
            }
        }
    }
};

template <class S>
struct SmithResult {
    std::vector<S> divisors; // d_1 | d_2 | ... | d_r, all positive
    std::size_t rank = 0;
    std::size_t rows = 0, cols = 0;
    RowOpLog<S> U; // row transform: U * A * (untracked column ops) = diag(divisors)
};

namespace detail {

template <class S>
void record(RowOpLog<S>& log, RowOp<S> op, bool track) {
    if (track) log.ops.push_back(std::move(op));
}

// Pivot choice: first entry of absolute value 1 in column-major order of the
// trailing submatrix, else the minimal nonzero absolute value (ties: smaller
// column, then smaller row). Returns false when the submatrix is zero.
template <class S>
bool find_pivot(const Mat<S>& A, std::size_t k, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    S best{};
    for (std::size_t c = k; c < A.cols(); ++c) {
        for (std::size_t r = k; r < A.rows(); ++r) {
            const S& v = A(r, c);
            if (num_is_zero(v)) continue;
            S av = num_abs(v);
            if (av == S(1)) {
                pr = r;
                pc = c;
                return true;
            }
            if (!found || av < best) {
                found = true;
                best = av;
                pr = r;
                pc = c;
            }
        }
    }
    return found;
}

} // namespace detail

// Smith normal form, tracking only the row transform. Column operations are
// applied but not recorded; callers that need V use column_echelon instead.
template <class S>
SmithResult<S> smith_normal_form(Mat<S> A, bool track_row_ops = true) {
    const std::size_t m = A.rows(), n = A.cols();
    SmithResult<S> res;
    res.rows = m;
    res.cols = n;
    res.U.dim = m;

    auto row_addmul = [&](std::size_t i, std::size_t j, const S& q) {
        for (std::size_t c = 0; c < n; ++c)
            if (!num_is_zero(A(j, c))) A(i, c) = num_add(A(i, c), num_mul(q, A(j, c)));
        detail::record(res.U, RowOp<S>{RowOpKind::AddMul, (std::uint32_t)i, (std::uint32_t)j, q, S(0), S(0), S(0)}, track_row_ops);
    };
    auto row_combo = [&](std::size_t i, std::size_t j, const S& a, const S& b, const S& c, const S& d) {
        for (std::size_t cc = 0; cc < n; ++cc) {
            S ni = num_add(num_mul(a, A(i, cc)), num_mul(b, A(j, cc)));
            S nj = num_add(num_mul(c, A(i, cc)), num_mul(d, A(j, cc)));
            A(i, cc) = ni;
            A(j, cc) = nj;
        }
        detail::record(res.U, RowOp<S>{RowOpKind::Combo, (std::uint32_t)i, (std::uint32_t)j, a, b, c, d}, track_row_ops);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < n; ++c) std::swap(A(i, c), A(j, c));
        detail::record(res.U, RowOp<S>{RowOpKind::Swap, (std::uint32_t)i, (std::uint32_t)j, S(0), S(0), S(0), S(0)}, track_row_ops);
    };
    auto col_addmul = [&](std::size_t i, std::size_t j, const S& q) { // col_i += q * col_j
        for (std::size_t r = 0; r < m; ++r)
            if (!num_is_zero(A(r, j))) A(r, i) = num_add(A(r, i), num_mul(q, A(r, j)));
    };
    auto col_combo = [&](std::size_t i, std::size_t j, const S& a, const S& b, const S& c, const S& d) {
        for (std::size_t r = 0; r < m; ++r) {
            S ni = num_add(num_mul(a, A(r, i)), num_mul(b, A(r, j)));
            S nj = num_add(num_mul(c, A(r, i)), num_mul(d, A(r, j)));
            A(r, i) = ni;
            A(r, j) = nj;
        }
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t r = 0; r < m; ++r) std::swap(A(r, i), A(r, j));
    };

    std::size_t k = 0;
    const std::size_t t = std::min(m, n);
    while (k < t) {
        std::size_t pr, pc;
        if (!detail::find_pivot(A, k, pr, pc)) break;
        if (pr != k) row_swap(k, pr);
        if (pc != k) col_swap(k, pc);

        for (;;) {
            bool dirty = false;
            for (std::size_t r = k + 1; r < m; ++r) {
                const S& b = A(r, k);
                if (num_is_zero(b)) continue;
                const S& a = A(k, k);
                if (num_is_zero(S(b % a))) {
                    row_addmul(r, k, num_neg(S(b / a)));
                } else {
                    S x, y;
                    S g = num_gcdext(a, b, x, y);
                    row_combo(k, r, x, y, num_neg(S(b / g)), S(a / g));
                    dirty = true;
                }
            }
            for (std::size_t c = k + 1; c < n; ++c) {
                const S& b = A(k, c);
                if (num_is_zero(b)) continue;
                const S& a = A(k, k);
                if (num_is_zero(S(b % a))) {
                    col_addmul(c, k, num_neg(S(b / a)));
                } else {
                    S x, y;
                    S g = num_gcdext(a, b, x, y);
                    col_combo(k, c, x, y, num_neg(S(b / g)), S(a / g));
                    dirty = true;
                }
            }
            if (!dirty) {
                bool clean = true;
                for (std::size_t r = k + 1; r < m && clean; ++r)
                    if (!num_is_zero(A(r, k))) clean = false;
                if (clean) break;
            }
        }
        if (num_sign(A(k, k)) < 0)
            for (std::size_t r = 0; r < m; ++r) A(r, k) = num_neg(A(r, k));
        ++k;
    }
    const std::size_t rank = k;

    // Enforce the divisibility chain on the diagonal.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < rank; ++i) {
            for (std::size_t j = i + 1; j < rank; ++j) {
                S di = A(i, i), dj = A(j, j);
                if (num_is_zero(S(dj % di))) continue;
                changed = true;
                col_addmul(i, j, S(1)); // A(j,i) = dj
                S x, y;
                S g = num_gcdext(di, dj, x, y);
                row_combo(i, j, x, y, num_neg(S(dj / g)), S(di / g));
                // A = [g, y*dj ; 0, lcm] on the (i,j) block; clear the stray entry.
                col_addmul(j, i, num_neg(S(A(i, j) / g)));
            }
        }
    }

    res.rank = rank;
    res.divisors.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) res.divisors.push_back(A(i, i));
    return res;
}

template <class S>
struct ColEchelon {
    Mat<S> H;                                               // A * V, pivot columns first
    Mat<S> V;                                               // unimodular, tracked on request
    bool has_V = false;
    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (row, col), rows strictly increasing
    std::size_t rank = 0;
};

// Column echelon form by unimodular column operations. With canonical=true the
// result is the unique column-style Hermite normal form of the column lattice:
// positive pivots, earlier columns reduced into [0, pivot) at later pivot rows.
template <class S>
ColEchelon<S> column_echelon(Mat<S> A, bool track_V, bool canonical) {
    const std::size_t m = A.rows(), n = A.cols();
    ColEchelon<S> res;
    res.has_V = track_V;
    Mat<S> V = track_V ? Mat<S>::identity(n) : Mat<S>();

    auto col_addmul = [&](std::size_t i, std::size_t j, const S& q) { // col_i += q * col_j
        for (std::size_t r = 0; r < m; ++r)
            if (!num_is_zero(A(r, j))) A(r, i) = num_add(A(r, i), num_mul(q, A(r, j)));
        if (track_V)
            for (std::size_t r = 0; r < n; ++r)
                if (!num_is_zero(V(r, j))) V(r, i) = num_add(V(r, i), num_mul(q, V(r, j)));
    };
    auto col_combo = [&](std::size_t i, std::size_t j, const S& a, const S& b, const S& c, const S& d) {
        for (std::size_t r = 0; r < m; ++r) {
            S ni = num_add(num_mul(a, A(r, i)), num_mul(b, A(r, j)));
            S nj = num_add(num_mul(c, A(r, i)), num_mul(d, A(r, j)));
            A(r, i) = ni;
            A(r, j) = nj;
        }
        if (track_V)
            for (std::size_t r = 0; r < n; ++r) {
                S ni = num_add(num_mul(a, V(r, i)), num_mul(b, V(r, j)));
                S nj = num_add(num_mul(c, V(r, i)), num_mul(d, V(r, j)));
                V(r, i) = ni;
                V(r, j) = nj;
            }
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m; ++r) std::swap(A(r, i), A(r, j));
        if (track_V)
            for (std::size_t r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
    };
    auto col_negate = [&](std::size_t i) {
        for (std::size_t r = 0; r < m; ++r) A(r, i) = num_neg(A(r, i));
        if (track_V)
            for (std::size_t r = 0; r < n; ++r) V(r, i) = num_neg(V(r, i));
    };

    std::size_t next = 0;
    for (std::size_t r = 0; r < m && next < n; ++r) {
        // Reduce the active columns until row r has at most one nonzero.
        for (;;) {
            std::size_t c0 = n;
            for (std::size_t c = next; c < n; ++c) {
                if (num_is_zero(A(r, c))) continue;
                if (c0 == n || num_abs(A(r, c)) < num_abs(A(r, c0))) c0 = c;
            }
            if (c0 == n) break; // row is zero on active columns
            bool lone = true;
            for (std::size_t c = next; c < n; ++c) {
                if (c == c0 || num_is_zero(A(r, c))) continue;
                lone = false;
                const S a = A(r, c0), b = A(r, c);
                if (num_is_zero(S(b % a))) {
                    col_addmul(c, c0, num_neg(S(b / a)));
                } else {
                    S x, y;
                    S g = num_gcdext(a, b, x, y);
                    col_combo(c0, c, x, y, num_neg(S(b / g)), S(a / g));
                }
            }
            if (lone) {
                col_swap(c0, next);
                if (num_sign(A(r, next)) < 0) col_negate(next);
                res.pivots.emplace_back(r, next);
                ++next;
                break;
            }
        }
    }
    res.rank = next;

    if (canonical) {
        for (std::size_t idx = 0; idx < res.rank; ++idx) {
            const std::size_t p = res.pivots[idx].first;
            const S& d = A(p, idx);
            for (std::size_t j = 0; j < idx; ++j) {
                S q = num_fdiv(A(p, j), d);
                if (!num_is_zero(q)) col_addmul(j, idx, num_neg(q));
            }
        }
    }

    res.H = std::move(A);
    res.V = std::move(V);
    return res;
}

// Basis of {x : A x = 0} as columns, in canonical Hermite shape.
template <class S>
Mat<S> kernel_basis(const Mat<S>& A) {
    ColEchelon<S> ech = column_echelon(A, true, false);
    const std::size_t n = A.cols(), k = n - ech.rank;
    Mat<S> K(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < n; ++r) K(r, j) = ech.V(r, ech.rank + j);
    if (k == 0) return K;
    ColEchelon<S> canon = column_echelon(std::move(K), false, true);
    Mat<S> B(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < n; ++r) B(r, j) = canon.H(r, j);
    return B;
}

// Canonical Hermite basis of the column lattice of A (zero columns dropped).
template <class S>
Mat<S> column_lattice_hnf(const Mat<S>& A) {
    ColEchelon<S> ech = column_echelon(A, false, true);
    Mat<S> B(A.rows(), ech.rank);
    for (std::size_t j = 0; j < ech.rank; ++j)
        for (std::size_t r = 0; r < A.rows(); ++r) B(r, j) = ech.H(r, j);
    return B;
}

// Factor A once, then solve A x = b over the integers any number of times.
template <class S>
class HnfSolver {
  public:
    explicit HnfSolver(const Mat<S>& A) : ech_(column_echelon(A, true, false)) {}

    std::optional<std::vector<S>> solve(const std::vector<S>& b) const {
        const std::size_t m = ech_.H.rows(), n = ech_.H.cols();
        std::vector<S> r = b;
        std::vector<S> w(n, S(0));
        for (std::size_t idx = 0; idx < ech_.rank; ++idx) {
            const auto [p, c] = ech_.pivots[idx];
            if (num_is_zero(r[p])) continue;
            const S& d = ech_.H(p, c);
            S q = r[p] / d;
            if (!num_is_zero(S(r[p] - q * d))) return std::nullopt;
            w[c] = q;
            for (std::size_t i = p; i < m; ++i)
                if (!num_is_zero(ech_.H(i, c))) r[i] = num_sub(r[i], num_mul(q, ech_.H(i, c)));
        }
        for (const S& v : r)
            if (!num_is_zero(v)) return std::nullopt;
        std::vector<S> x(n, S(0));
        for (std::size_t c = 0; c < ech_.rank; ++c) {
            if (num_is_zero(w[c])) continue;
            for (std::size_t i = 0; i < n; ++i)
                if (!num_is_zero(ech_.V(i, c))) x[i] = num_add(x[i], num_mul(w[c], ech_.V(i, c)));
        }
        return x;
    }

    // Solve A X = B columnwise; nullopt if any column has no integer solution.
    std::optional<Mat<S>> solve_mat(const Mat<S>& B) const {
        Mat<S> X(ech_.H.cols(), B.cols());
        for (std::size_t j = 0; j < B.cols(); ++j) {
            auto x = solve(B.col(j));
            if (!x) return std::nullopt;
            X.set_col(j, *x);
        }
        return X;
    }

    std::size_t rank() const { return ech_.rank; }

  private:
    ColEchelon<S> ech_;
};

// ---- i64 front ends with automatic escalation to BigInt -------------------

struct SmithSummary {
    std::vector<i64> divisors;
    std::size_t rank = 0, rows = 0, cols = 0;
    std::variant<RowOpLog<i64>, RowOpLog<BigInt>> U;

    std::vector<BigInt> apply_U(const std::vector<i64>& v) const {
        std::vector<BigInt> w = to_big(v);
        std::visit([&](const auto& log) { log.apply(w); }, U);
        return w;
    }
    std::vector<BigInt> U_inverse_col(std::size_t pos) const {
        std::vector<BigInt> e(rows, BigInt(0));
        e[pos] = 1;
        std::visit([&](const auto& log) { log.apply_inverse(e); }, U);
        return e;
    }
};

inline SmithSummary smith(const IMat& A, bool track_row_ops = true) {
    SmithSummary s;
    try {
        SmithResult<i64> r = smith_normal_form<i64>(A, track_row_ops);
        s.divisors = r.divisors;
        s.rank = r.rank;
        s.rows = r.rows;
        s.cols = r.cols;
        s.U = std::move(r.U);
        return s;
    } catch (const error& e) {
        if (e.kind() != errc::overflow) throw;
    }
    SmithResult<BigInt> r = smith_normal_form<BigInt>(to_big(A), track_row_ops);
    s.divisors.reserve(r.divisors.size());
    for (const BigInt& d : r.divisors) s.divisors.push_back(to_i64(d));
    s.rank = r.rank;
    s.rows = r.rows;
    s.cols = r.cols;
    s.U = std::move(r.U);
    return s;
}

inline IMat kernel(const IMat& A) {
    try {
        return kernel_basis<i64>(A);
    } catch (const error& e) {
        if (e.kind() != errc::overflow) throw;
    }
    return to_small(kernel_basis<BigInt>(to_big(A)));
}

inline IMat column_hnf(const IMat& A) {
    try {
        return column_lattice_hnf<i64>(A);
    } catch (const error& e) {
        if (e.kind() != errc::overflow) throw;
    }
    return to_small(column_lattice_hnf<BigInt>(to_big(A)));
}

// Integer linear solver over an i64 matrix, escalating internally. Safe for
// concurrent const use: overflow during a solve falls back to a local BigInt
// factorization instead of mutating shared state.
class Solver {
  public:
    explicit Solver(IMat A) : a_(std::move(A)) {
        try {
            small_.emplace(a_);
            return;
        } catch (const error& e) {
            if (e.kind() != errc::overflow) throw;
        }
        big_.emplace(to_big(a_));
    }

    std::optional<std::vector<i64>> solve(const std::vector<i64>& b) const {
        if (small_) {
            try {
                return small_->solve(b);
            } catch (const error& e) {
                if (e.kind() != errc::overflow) throw;
            }
        }
        if (!big_) {
            HnfSolver<BigInt> local(to_big(a_));
            return solve_big(local, b);
        }
        return solve_big(*big_, b);
    }

    std::optional<IMat> solve_mat(const IMat& B) const {
        IMat X(a_.cols(), B.cols());
        for (std::size_t j = 0; j < B.cols(); ++j) {
            auto x = solve(B.col(j));
            if (!x) return std::nullopt;
            X.set_col(j, *x);
        }
        return X;
    }

    std::size_t rank() const { return small_ ? small_->rank() : big_->rank(); }

  private:
    static std::optional<std::vector<i64>> solve_big(const HnfSolver<BigInt>& s, const std::vector<i64>& b) {
        auto x = s.solve(to_big(b));
        if (!x) return std::nullopt;
        return to_small(*x);
    }

    IMat a_;
    std::optional<HnfSolver<i64>> small_;
    std::optional<HnfSolver<BigInt>> big_;
};

} // namespace latcoh
