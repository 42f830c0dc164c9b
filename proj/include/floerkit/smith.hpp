#pragma once

// Classification of finitely generated F_p[[x]]-modules presented by
// matrices over the truncated ring F_p[[x]]/(x^N).  Every nonzero element of
// the local ring is a unit times a power of x, so the Smith form is a
// diagonal of x-powers; invariant factors below the working precision are
// exact, factors at or above it are indistinguishable from free and are
// reported as free with a precision flag.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "floerkit/errors.hpp"
#include "floerkit/ring.hpp"

namespace floerkit {

class SeriesMatrix {
  public:
    SeriesMatrix() : rows_(0), cols_(0), p_(2), precision_(kDefaultPrecision) {}
    SeriesMatrix(int rows, int cols, std::uint32_t p, int precision)
        : rows_(rows), cols_(cols), p_(p), precision_(precision),
          entries_(static_cast<size_t>(rows) * cols, TruncatedSeries::zero(p, precision)) {
        if (rows < 0 || cols < 0) throw structural_error("negative matrix dimension");
    }

    static SeriesMatrix identity(int n, std::uint32_t p, int precision) {
        SeriesMatrix m(n, n, p, precision);
        for (int i = 0; i < n; ++i) m.at(i, i) = TruncatedSeries::one(p, precision);
        return m;
    }
    static SeriesMatrix zero(int rows, int cols, std::uint32_t p, int precision) {
        return SeriesMatrix(rows, cols, p, precision);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }
    int precision() const { return precision_; }

    TruncatedSeries& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const TruncatedSeries& at(int i, int j) const {
        return entries_[static_cast<size_t>(i) * cols_ + j];
    }

    void set(int i, int j, const TruncatedSeries& s) {
        if (s.modulus() != p_ || s.precision() != precision_)
            throw structural_error("matrix entry with mismatched modulus or precision");
        at(i, j) = s;
    }
    void set_int(int i, int j, std::int64_t c) {
        at(i, j) = TruncatedSeries::constant(p_, precision_, c);
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.p_ != b.p_ || a.precision_ != b.precision_)
            throw structural_error("matrix product with mismatched modulus or precision");
        if (a.cols_ != b.rows_) throw structural_error("matrix product dimension mismatch");
        SeriesMatrix r(a.rows_, b.cols_, a.p_, a.precision_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
                }
            }
        return r;
    }
    friend SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw structural_error("matrix sum dimension mismatch");
        SeriesMatrix r(a.rows_, a.cols_, a.p_, a.precision_);
        for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] + b.entries_[i];
        return r;
    }
    friend SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw structural_error("matrix difference dimension mismatch");
        SeriesMatrix r(a.rows_, a.cols_, a.p_, a.precision_);
        for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = a.entries_[i] - b.entries_[i];
        return r;
    }
    SeriesMatrix operator-() const {
        SeriesMatrix r(rows_, cols_, p_, precision_);
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = -entries_[i];
        return r;
    }
    friend SeriesMatrix operator*(const TruncatedSeries& c, const SeriesMatrix& a) {
        SeriesMatrix r(a.rows_, a.cols_, a.p_, a.precision_);
        for (size_t i = 0; i < a.entries_.size(); ++i) r.entries_[i] = c * a.entries_[i];
        return r;
    }
    bool operator==(const SeriesMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const SeriesMatrix& o) const { return !(*this == o); }

    std::vector<TruncatedSeries> apply(const std::vector<TruncatedSeries>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw structural_error("apply: size mismatch");
        std::vector<TruncatedSeries> r(rows_, TruncatedSeries::zero(p_, precision_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    SeriesMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        SeriesMatrix r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()), p_,
                       precision_);
        for (size_t i = 0; i < row_idx.size(); ++i)
            for (size_t j = 0; j < col_idx.size(); ++j) r.at(i, j) = at(row_idx[i], col_idx[j]);
        return r;
    }
    std::vector<TruncatedSeries> column(int j) const {
        std::vector<TruncatedSeries> c;
        c.reserve(rows_);
        for (int i = 0; i < rows_; ++i) c.push_back(at(i, j));
        return c;
    }
    // Horizontal concatenation [a | b].
    static SeriesMatrix hconcat(const SeriesMatrix& a, const SeriesMatrix& b) {
        if (a.rows_ != b.rows_) throw structural_error("hconcat row mismatch");
        SeriesMatrix r(a.rows_, a.cols_ + b.cols_, a.p_, a.precision_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
            for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
        }
        return r;
    }
    static SeriesMatrix from_columns(const std::vector<std::vector<TruncatedSeries>>& columns,
                                     int rows, std::uint32_t p, int precision) {
        SeriesMatrix r(rows, static_cast<int>(columns.size()), p, precision);
        for (size_t j = 0; j < columns.size(); ++j) {
            if (static_cast<int>(columns[j].size()) != rows)
                throw structural_error("from_columns: ragged input");
            for (int i = 0; i < rows; ++i) r.at(i, j) = columns[j][i];
        }
        return r;
    }

  private:
    int rows_, cols_;
    std::uint32_t p_;
    int precision_;
    std::vector<TruncatedSeries> entries_;
};

// Isomorphism class of a finitely generated F_p[[x]]-module: free rank plus
// the multiset of torsion exponents, sorted ascending.  precision_limited
// marks free summands that a nonzero presentation could not separate from
// torsion of exponent >= N.
struct FinModule {
    int free_rank = 0;
    std::vector<int> torsion;  // each 0 < e < N, ascending
    bool precision_limited = false;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    int max_torsion_exponent() const { return torsion.empty() ? 0 : torsion.back(); }
    // dim_k of M / x^level M
    int k_dimension(int level) const {
        int d = free_rank * level;
        for (int e : torsion) d += std::min(e, level);
        return d;
    }
    bool operator==(const FinModule& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const FinModule& o) const { return !(*this == o); }
    std::string str() const {
        std::string s = "free^" + std::to_string(free_rank);
        for (int e : torsion) s += " + x^" + std::to_string(e);
        if (precision_limited) s += " (precision limited)";
        return s;
    }
};

// U * M * V = D with D diagonal of x-powers (exponents ascending), U and V
// invertible over the truncated ring.  exponents[j] is the exponent at (j,j);
// positions past the pivot count are zero in D.
struct SmithResult {
    SeriesMatrix U, U_inv, V, V_inv, D;
    std::vector<int> exponents;  // one entry per pivot, ascending
    int rows = 0, cols = 0;
    std::uint32_t p = 2;
    int precision = kDefaultPrecision;

    int pivot_count() const { return static_cast<int>(exponents.size()); }

    // Invariants of the cokernel of the presented map R^cols -> R^rows.
    FinModule cokernel(bool source_had_nonzero_entry) const {
        FinModule m;
        for (int e : exponents)
            if (e > 0) m.torsion.push_back(e);
        std::sort(m.torsion.begin(), m.torsion.end());
        m.free_rank = rows - pivot_count();
        m.precision_limited = m.free_rank > 0 && source_had_nonzero_entry;
        return m;
    }
};

inline SmithResult smith_decompose(const SeriesMatrix& input) {
    const std::uint32_t p = input.modulus();
    const int N = input.precision();
    SmithResult res;
    res.rows = input.rows();
    res.cols = input.cols();
    res.p = p;
    res.precision = N;
    res.U = SeriesMatrix::identity(input.rows(), p, N);
    res.U_inv = SeriesMatrix::identity(input.rows(), p, N);
    res.V = SeriesMatrix::identity(input.cols(), p, N);
    res.V_inv = SeriesMatrix::identity(input.cols(), p, N);
    SeriesMatrix M = input;

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < M.cols(); ++j) std::swap(M.at(a, j), M.at(b, j));
        for (int j = 0; j < res.U.cols(); ++j) std::swap(res.U.at(a, j), res.U.at(b, j));
        for (int i = 0; i < res.U_inv.rows(); ++i) std::swap(res.U_inv.at(i, a), res.U_inv.at(i, b));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int i = 0; i < M.rows(); ++i) std::swap(M.at(i, a), M.at(i, b));
        for (int i = 0; i < res.V.rows(); ++i) std::swap(res.V.at(i, a), res.V.at(i, b));
        for (int j = 0; j < res.V_inv.cols(); ++j) std::swap(res.V_inv.at(a, j), res.V_inv.at(b, j));
    };
    // row[a] -= q * row[b]; U tracks the same op, U_inv the inverse op.
    auto row_sub = [&](int a, const TruncatedSeries& q, int b) {
        for (int j = 0; j < M.cols(); ++j) M.at(a, j) = M.at(a, j) - q * M.at(b, j);
        for (int j = 0; j < res.U.cols(); ++j) res.U.at(a, j) = res.U.at(a, j) - q * res.U.at(b, j);
        for (int i = 0; i < res.U_inv.rows(); ++i)
            res.U_inv.at(i, b) = res.U_inv.at(i, b) + q * res.U_inv.at(i, a);
    };
    auto col_sub = [&](int a, const TruncatedSeries& q, int b) {
        for (int i = 0; i < M.rows(); ++i) M.at(i, a) = M.at(i, a) - q * M.at(i, b);
        for (int i = 0; i < res.V.rows(); ++i) res.V.at(i, a) = res.V.at(i, a) - q * res.V.at(i, b);
        for (int j = 0; j < res.V_inv.cols(); ++j)
            res.V_inv.at(b, j) = res.V_inv.at(b, j) + q * res.V_inv.at(a, j);
    };
    auto row_scale = [&](int a, const TruncatedSeries& u, const TruncatedSeries& u_inv) {
        for (int j = 0; j < M.cols(); ++j) M.at(a, j) = u * M.at(a, j);
        for (int j = 0; j < res.U.cols(); ++j) res.U.at(a, j) = u * res.U.at(a, j);
        for (int i = 0; i < res.U_inv.rows(); ++i) res.U_inv.at(i, a) = u_inv * res.U_inv.at(i, a);
    };

    const int bound = std::min(M.rows(), M.cols());
    for (int k = 0; k < bound; ++k) {
        // Pivot: minimal valuation in the trailing block, ties row-major.
        int best_i = -1, best_j = -1, best_val = kInfValuation;
        for (int i = k; i < M.rows(); ++i)
            for (int j = k; j < M.cols(); ++j) {
                int v = M.at(i, j).valuation();
                if (v < best_val) {
                    best_val = v;
                    best_i = i;
                    best_j = j;
                }
            }
        if (best_val == kInfValuation) break;  // trailing block zero to precision
        swap_rows(k, best_i);
        swap_cols(k, best_j);
        // Normalize pivot to a pure x-power.
        const TruncatedSeries pivot = M.at(k, k);
        const TruncatedSeries unit = pivot.shift_down(best_val);  // valuation 0
        const TruncatedSeries unit_inv = unit.inverse();
        row_scale(k, unit_inv, unit);
        // Clear column k then row k; quotients are exact because the pivot
        // valuation is minimal.
        for (int i = k + 1; i < M.rows(); ++i) {
            if (M.at(i, k).is_zero()) continue;
            row_sub(i, M.at(i, k).shift_down(best_val), k);
        }
        for (int j = k + 1; j < M.cols(); ++j) {
            if (M.at(k, j).is_zero()) continue;
            col_sub(j, M.at(k, j).shift_down(best_val), k);
        }
        res.exponents.push_back(best_val);
    }
    res.D = M;
    return res;
}

// ---------------------------------------------------------------------------
// Linear-system and submodule utilities built on the Smith form.

struct ImageDecision {
    bool member = false;
    std::vector<TruncatedSeries> witness;   // preimage when member
    std::optional<int> obstruction_level;   // valuation where solvability fails
};

// Decide whether target lies in the column span of map over the truncated
// ring; YES comes with a preimage, NO with the x-adic level of the obstruction.
inline ImageDecision in_image(const std::vector<TruncatedSeries>& target, const SeriesMatrix& map,
                              const SmithResult* cached = nullptr) {
    if (static_cast<int>(target.size()) != map.rows())
        throw structural_error("in_image: dimension mismatch");
    SmithResult local;
    const SmithResult& sm = cached ? *cached : (local = smith_decompose(map), local);
    const std::uint32_t p = map.modulus();
    const int N = map.precision();

    std::vector<TruncatedSeries> u = sm.U.apply(target);
    std::vector<TruncatedSeries> y(map.cols(), TruncatedSeries::zero(p, N));
    ImageDecision dec;
    int obstruction = kInfValuation;
    for (int i = 0; i < map.rows(); ++i) {
        int need = i < sm.pivot_count() ? sm.exponents[i] : kInfValuation;
        int have = u[i].valuation();
        if (have >= need) {
            if (i < sm.pivot_count() && i < map.cols()) y[i] = u[i].shift_down(need);
        } else {
            obstruction = std::min(obstruction, have);
        }
    }
    if (obstruction != kInfValuation) {
        dec.member = false;
        dec.obstruction_level = obstruction;
        return dec;
    }
    dec.member = true;
    dec.witness = sm.V.apply(y);
    return dec;
}

// Basis of the kernel of a matrix viewed as a map of free modules over the
// (untruncated) local PID: the columns of V at positions past the pivots.
// Valid when the true invariant factors lie below the working precision.
inline SeriesMatrix kernel_basis(const SeriesMatrix& m, const SmithResult* cached = nullptr) {
    SmithResult local;
    const SmithResult& sm = cached ? *cached : (local = smith_decompose(m), local);
    std::vector<int> free_cols;
    for (int j = sm.pivot_count(); j < m.cols(); ++j) free_cols.push_back(j);
    std::vector<int> all_rows(m.cols());
    for (int i = 0; i < m.cols(); ++i) all_rows[i] = i;
    return sm.V.submatrix(all_rows, free_cols);
}

// A module presented as coker(relations) together with its Smith data, so
// elements can be put in canonical coordinates.
class PresentedModule {
  public:
    PresentedModule(int generators, SeriesMatrix relations)
        : generators_(generators), relations_(std::move(relations)),
          smith_(smith_decompose(relations_)),
          invariants_(smith_.cokernel(!relations_.is_zero())) {
        if (relations_.rows() != generators) throw structural_error("presentation shape mismatch");
    }
    static PresentedModule free_module(int generators, std::uint32_t p, int precision) {
        return PresentedModule(generators, SeriesMatrix::zero(generators, 0, p, precision));
    }

    int generators() const { return generators_; }
    const SeriesMatrix& relations() const { return relations_; }
    const SmithResult& smith() const { return smith_; }
    const FinModule& invariants() const { return invariants_; }

    // Coordinates of an element in the Smith basis: position i has annihilator
    // x^{exponents[i]} (pivots) or is free (past the pivots).  Torsion
    // coordinates are reduced modulo their annihilator.
    std::vector<TruncatedSeries> canonical_coords(const std::vector<TruncatedSeries>& elem) const {
        if (static_cast<int>(elem.size()) != generators_)
            throw structural_error("canonical_coords: size mismatch");
        std::vector<TruncatedSeries> u = smith_.U.apply(elem);
        for (int i = 0; i < smith_.pivot_count(); ++i) {
            int e = smith_.exponents[i];
            // reduce mod x^e
            TruncatedSeries r = TruncatedSeries::zero(relations_.modulus(), relations_.precision());
            for (int j = 0; j < std::min(e, relations_.precision()); ++j)
                r.set_coeff(j, u[i].coeff(j));
            u[i] = r;
        }
        return u;
    }
    bool is_zero_class(const std::vector<TruncatedSeries>& elem) const {
        for (const auto& c : canonical_coords(elem))
            if (!c.is_zero()) return false;
        return true;
    }
    std::vector<int> free_positions() const {
        std::vector<int> pos;
        for (int i = smith_.pivot_count(); i < generators_; ++i) pos.push_back(i);
        return pos;
    }

  private:
    int generators_;
    SeriesMatrix relations_;
    SmithResult smith_;
    FinModule invariants_;
};

struct DivisibilityReport {
    int d = 0;                    // sup d with elem in x^d * (free part), capped at N
    bool precision_limited = false;  // d hit the precision ceiling
    bool torsion_component = false;  // elem has a nonzero torsion component
    bool free_part_defined = true;   // false when the module has no free summand
};

// Largest d with elem lying in x^d times the free summand, in the module's
// canonical basis.
inline DivisibilityReport x_divisibility(const std::vector<TruncatedSeries>& elem,
                                         const PresentedModule& module) {
    DivisibilityReport rep;
    const int N = module.relations().precision();
    auto coords = module.canonical_coords(elem);
    auto free_pos = module.free_positions();
    for (int i = 0; i < module.generators(); ++i) {
        bool is_free = std::find(free_pos.begin(), free_pos.end(), i) != free_pos.end();
        if (!is_free && !coords[i].is_zero()) rep.torsion_component = true;
    }
    if (free_pos.empty()) {
        rep.free_part_defined = false;
        rep.d = 0;
        return rep;
    }
    int d = kInfValuation;
    for (int i : free_pos) d = std::min(d, coords[i].valuation());
    if (d >= N || d == kInfValuation) {
        rep.d = N;
        rep.precision_limited = true;
    } else {
        rep.d = d;
    }
    return rep;
}

// Isomorphism class of the submodule of coker(relations) generated by the
// columns of gens: relations among the generators are the vectors a with
// gens*a in the column span of relations.
inline FinModule submodule_invariants(const SeriesMatrix& gens, const SeriesMatrix& relations) {
    if (gens.rows() != relations.rows()) throw structural_error("submodule_invariants shape");
    if (gens.cols() == 0) return FinModule{};
    SeriesMatrix stacked = SeriesMatrix::hconcat(gens, -relations);
    SeriesMatrix ker = kernel_basis(stacked);
    // project kernel onto the gens block
    std::vector<int> gen_rows(gens.cols());
    for (int i = 0; i < gens.cols(); ++i) gen_rows[i] = i;
    std::vector<int> all_cols(ker.cols());
    for (int j = 0; j < ker.cols(); ++j) all_cols[j] = j;
    SeriesMatrix rel_on_gens = ker.submatrix(gen_rows, all_cols);
    return smith_decompose(rel_on_gens).cokernel(!rel_on_gens.is_zero());
}

// Membership of every column of sub in the module spanned by the columns of
// big together with amb (ambient relations).  Obstructions in the top `slack`
// x-adic levels are forgiven; generating sets that passed through a division
// by x are only determined below those levels.
inline bool columns_contained(const SeriesMatrix& sub, const SeriesMatrix& big,
                              const SeriesMatrix& amb, int slack = 0) {
    SeriesMatrix span = SeriesMatrix::hconcat(big, amb);
    SmithResult sm = smith_decompose(span);
    for (int j = 0; j < sub.cols(); ++j) {
        auto dec = in_image(sub.column(j), span, &sm);
        if (dec.member) continue;
        if (!dec.obstruction_level || *dec.obstruction_level < span.precision() - slack)
            return false;
    }
    return true;
}

}  // namespace floerkit
