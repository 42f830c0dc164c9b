#pragma once

// Finite chains of complexes with continuation maps: the colimit of the
// homology functor over a finite totally ordered diagram is the last
// homology together with the composite maps into it.  On top of that sit the
// unit-tracking measurement (largest d with x^{-d} times the unit in the
// image) and the two-block lower-triangular vanishing chase.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "floerkit/homology.hpp"

namespace floerkit {

class SlopeDiagram {
  public:
    SlopeDiagram(std::vector<double> slopes, std::vector<ChainComplex> complexes,
                 std::vector<SeriesMatrix> maps,
                 std::optional<std::vector<TruncatedSeries>> unit = std::nullopt)
        : slopes_(std::move(slopes)), complexes_(std::move(complexes)), maps_(std::move(maps)),
          unit_(std::move(unit)) {
        if (complexes_.empty()) throw structural_error("diagram needs at least one complex");
        if (slopes_.size() != complexes_.size())
            throw structural_error("one slope per complex required");
        for (size_t i = 1; i < slopes_.size(); ++i)
            if (!(slopes_[i - 1] < slopes_[i]))
                throw structural_error("slopes must strictly increase");
        if (maps_.size() + 1 != complexes_.size())
            throw structural_error("need one continuation map per adjacent pair");
        for (size_t i = 0; i < maps_.size(); ++i) {
            // constructing the chain map validates shape, degree and d f = f d
            ChainMap check(complexes_[i], complexes_[i + 1], 0, maps_[i]);
        }
        if (unit_) {
            if (static_cast<int>(unit_->size()) != complexes_.front().size())
                throw structural_error("unit must live in the first complex");
            auto image = complexes_.front().differential().apply(*unit_);
            for (const auto& e : image)
                if (!e.is_zero()) throw structural_error("unit element is not a cycle");
        }
    }

    int length() const { return static_cast<int>(complexes_.size()); }
    const std::vector<double>& slopes() const { return slopes_; }
    const ChainComplex& complex(int i) const { return complexes_.at(i); }
    const SeriesMatrix& map(int i) const { return maps_.at(i); }
    bool has_unit() const { return unit_.has_value(); }
    const std::vector<TruncatedSeries>& unit() const {
        if (!unit_) throw domain_error("diagram carries no unit element");
        return *unit_;
    }

    // chain-level composite C_i -> C_m (identity when i = m)
    SeriesMatrix chain_composite(int i) const {
        const auto& last = complexes_.back();
        SeriesMatrix acc =
            SeriesMatrix::identity(complexes_.at(i).size(), last.modulus(), last.precision());
        for (size_t k = i; k < maps_.size(); ++k) acc = maps_[k] * acc;
        return acc;
    }

  private:
    std::vector<double> slopes_;
    std::vector<ChainComplex> complexes_;
    std::vector<SeriesMatrix> maps_;
    std::optional<std::vector<TruncatedSeries>> unit_;
};

struct ColimitResult {
    GradedFinModule invariants;                    // of the last homology
    std::vector<SeriesMatrix> composite_even;      // induced maps H(C_i) -> H(C_m)
    std::vector<SeriesMatrix> composite_odd;
    std::vector<GradedFinModule> image_invariants;  // of each composite image
};

inline ColimitResult colimit_module(const SlopeDiagram& d) {
    const int m = d.length();
    std::vector<std::unique_ptr<ComplexHomology>> h;
    for (int i = 0; i < m; ++i) h.push_back(std::make_unique<ComplexHomology>(d.complex(i)));
    ColimitResult result;
    result.invariants = h.back()->invariants();
    const bool graded = d.complex(0).graded();
    for (int i = 0; i < m; ++i) {
        ChainMap composite(d.complex(i), d.complex(m - 1), 0, d.chain_composite(i));
        SeriesMatrix even = induced_map(*h[i], *h[m - 1], composite, 0);
        result.composite_even.push_back(even);
        GradedFinModule img;
        img.even = submodule_invariants(even, h[m - 1]->degree(0).module().relations());
        if (graded) {
            SeriesMatrix odd = induced_map(*h[i], *h[m - 1], composite, 1);
            img.odd = submodule_invariants(odd, h[m - 1]->degree(1).module().relations());
            result.composite_odd.push_back(odd);
        } else {
            result.composite_odd.push_back(even);
        }
        result.image_invariants.push_back(img);
    }
    return result;
}

struct MuResult {
    int value = 0;
    bool degenerate = false;         // unit has no free component in the colimit
    bool unreachable = false;        // no power of the unit is hit from this index
    bool precision_limited = false;  // the scan hit the truncation ceiling
};

// sup { d : x^{-d} [unit] lies in the image of H(C_i) -> H(C_m) }, measured
// inside the free part of the colimit.
inline MuResult mu_from_diagram(const SlopeDiagram& d, int probe_index) {
    if (!d.has_unit()) throw domain_error("diagram carries no unit element");
    const int m = d.length();
    if (probe_index < 0 || probe_index >= m) throw domain_error("probe index out of range");
    const std::uint32_t p = d.complex(0).modulus();
    const int N = d.complex(0).precision();

    ComplexHomology h0(d.complex(0));
    ComplexHomology hm(d.complex(m - 1));
    ComplexHomology hi(d.complex(probe_index));

    // the unit must be homogeneous; take its degree from a nonzero coordinate
    int unit_degree = 0;
    for (int g = 0; g < d.complex(0).size(); ++g)
        if (!d.unit()[g].is_zero()) unit_degree = d.complex(0).generators()[g].degree;
    const DegreeHomology& target = hm.degree(unit_degree);

    // unit class pushed to the colimit
    ChainMap push_all(d.complex(0), d.complex(m - 1), 0, d.chain_composite(0));
    auto unit_cycle_m = push_all.matrix().apply(d.unit());
    auto unit_canon = target.class_coords(target.restrict_to_degree(unit_cycle_m));
    auto canon_full = target.module().canonical_coords(unit_canon);

    auto free_pos = target.module().free_positions();
    MuResult result;
    if (free_pos.empty()) {
        result.degenerate = true;
        return result;
    }
    std::vector<TruncatedSeries> u_free;
    for (int i : free_pos) u_free.push_back(canon_full[i]);
    bool u_zero = true;
    for (const auto& e : u_free)
        if (!e.is_zero()) u_zero = false;
    if (u_zero) {
        result.degenerate = true;
        return result;
    }

    // free components of the image generators of H(C_i) in the colimit
    ChainMap push_i(d.complex(probe_index), d.complex(m - 1), 0, d.chain_composite(probe_index));
    SeriesMatrix ind = induced_map(hi, hm, push_i, unit_degree);
    SeriesMatrix gens(static_cast<int>(free_pos.size()), ind.cols(), p, N);
    for (int j = 0; j < ind.cols(); ++j) {
        std::vector<TruncatedSeries> col;
        for (int r = 0; r < ind.rows(); ++r) col.push_back(ind.at(r, j));
        auto canon = target.module().canonical_coords(col);
        for (size_t r = 0; r < free_pos.size(); ++r) gens.at(static_cast<int>(r), j) = canon[free_pos[r]];
    }

    // scan d downward; solvability of x^{max(d,0)} G y = x^{max(-d,0)} u is
    // monotone in -d
    for (int dd = N - 1; dd >= -(N - 1); --dd) {
        TruncatedSeries xg = TruncatedSeries::x_power(p, N, dd > 0 ? dd : 0);
        TruncatedSeries xu = TruncatedSeries::x_power(p, N, dd < 0 ? -dd : 0);
        SeriesMatrix lhs = xg * gens;
        std::vector<TruncatedSeries> rhs;
        for (const auto& e : u_free) rhs.push_back(xu * e);
        if (in_image(rhs, lhs).member) {
            result.value = dd;
            result.precision_limited = dd == N - 1;
            return result;
        }
    }
    result.unreachable = true;
    return result;
}

// ---------------------------------------------------------------------------
// Two-block lower-triangular vanishing.

struct BlockedDiagram {
    SlopeDiagram diagram;
    std::vector<std::vector<int>> block_of;  // per complex, block id 0/1 per generator
};

struct VanishingVerdict {
    bool hypothesis_holds = false;  // every diagonal-block class dies by the end
    bool total_vanishes = false;    // every class of every H(C_i), i < m, dies
    bool chase_succeeded = false;   // the explicit witness chase closed
    std::string failure;            // description of the first failure
};

namespace detail {

inline std::vector<int> block_indices(const std::vector<int>& block_of, int which) {
    std::vector<int> idx;
    for (size_t i = 0; i < block_of.size(); ++i)
        if (block_of[i] == which) idx.push_back(static_cast<int>(i));
    return idx;
}

}  // namespace detail

inline VanishingVerdict lower_triangular_vanishing(const BlockedDiagram& input) {
    const SlopeDiagram& d = input.diagram;
    const int m = d.length();
    if (static_cast<int>(input.block_of.size()) != m)
        throw structural_error("one block assignment per complex required");
    // validate triangularity of differentials and maps: no entries from
    // block-1 sources into block-0 targets
    for (int i = 0; i < m; ++i) {
        auto b0 = detail::block_indices(input.block_of[i], 0);
        auto b1 = detail::block_indices(input.block_of[i], 1);
        const auto& diff = d.complex(i).differential();
        for (int r : b0)
            for (int c : b1)
                if (!diff.at(r, c).is_zero())
                    throw structural_error("differential is not lower triangular for the blocks");
        if (i + 1 < m) {
            auto t0 = detail::block_indices(input.block_of[i + 1], 0);
            for (int r : t0)
                for (int c : b1)
                    if (!d.map(i).at(r, c).is_zero())
                        throw structural_error("continuation map does not respect the blocks");
        }
    }

    auto diagonal_complex = [&](int i, int block) {
        auto idx = detail::block_indices(input.block_of[i], block);
        std::vector<Generator> gens;
        for (int g : idx) gens.push_back(d.complex(i).generators()[g]);
        return ChainComplex(gens, d.complex(i).differential().submatrix(idx, idx),
                            d.complex(i).graded());
    };

    VanishingVerdict verdict;
    // hypothesis: diagonal composites vanish on homology
    verdict.hypothesis_holds = true;
    const bool graded = d.complex(0).graded();
    for (int block = 0; block < 2 && verdict.hypothesis_holds; ++block) {
        auto last = diagonal_complex(m - 1, block);
        ComplexHomology h_last(last);
        for (int i = 0; i + 1 < m && verdict.hypothesis_holds; ++i) {
            auto here = diagonal_complex(i, block);
            // diagonal composite: block submatrix of the chain composite
            auto src_idx = detail::block_indices(input.block_of[i], block);
            auto tgt_idx = detail::block_indices(input.block_of[m - 1], block);
            SeriesMatrix comp = d.chain_composite(i).submatrix(tgt_idx, src_idx);
            ComplexHomology h_here(here);
            ChainMap cm(here, last, 0, comp);
            for (int deg = 0; deg < (graded ? 2 : 1); ++deg) {
                SeriesMatrix ind = induced_map(h_here, h_last, cm, deg);
                auto img = submodule_invariants(ind, h_last.degree(deg).module().relations());
                if (!img.is_zero()) {
                    verdict.hypothesis_holds = false;
                    verdict.failure = "diagonal class survives from index " + std::to_string(i) +
                                      " in block " + std::to_string(block);
                }
            }
        }
    }

    // brute-force total vanishing (used for the verdict either way)
    verdict.total_vanishes = true;
    {
        ComplexHomology h_last(d.complex(m - 1));
        for (int i = 0; i + 1 < m && verdict.total_vanishes; ++i) {
            ComplexHomology h_here(d.complex(i));
            ChainMap cm(d.complex(i), d.complex(m - 1), 0, d.chain_composite(i));
            for (int deg = 0; deg < (graded ? 2 : 1); ++deg) {
                SeriesMatrix ind = induced_map(h_here, h_last, cm, deg);
                auto img = submodule_invariants(ind, h_last.degree(deg).module().relations());
                if (!img.is_zero()) verdict.total_vanishes = false;
            }
        }
    }

    if (!verdict.hypothesis_holds) return verdict;

    // the explicit chase: for every homology generator z of every H(C_i),
    // subtract a block-0 primitive, then a block-1 primitive, and verify the
    // pushed cycle is exactly a boundary
    verdict.chase_succeeded = true;
    auto b0_last = detail::block_indices(input.block_of[m - 1], 0);
    auto b1_last = detail::block_indices(input.block_of[m - 1], 1);
    const auto& d_last = d.complex(m - 1).differential();
    SeriesMatrix d00 = d_last.submatrix(b0_last, b0_last);
    SeriesMatrix d11 = d_last.submatrix(b1_last, b1_last);
    const std::uint32_t p = d.complex(0).modulus();
    const int N = d.complex(0).precision();

    for (int i = 0; i + 1 < m && verdict.chase_succeeded; ++i) {
        ComplexHomology h_here(d.complex(i));
        SeriesMatrix push = d.chain_composite(i);
        for (int deg = 0; deg < (graded ? 2 : 1); ++deg) {
            const DegreeHomology& dh = h_here.degree(deg);
            for (int gcol = 0; gcol < dh.kernel().cols(); ++gcol) {
                // cycle in full coordinates of C_i
                std::vector<TruncatedSeries> z(d.complex(i).size(),
                                               TruncatedSeries::zero(p, N));
                const auto& amb = dh.ambient_indices();
                for (size_t r = 0; r < amb.size(); ++r) z[amb[r]] = dh.kernel().at(static_cast<int>(r), gcol);
                auto w = push.apply(z);
                // step 1: kill the block-0 component
                std::vector<TruncatedSeries> w0;
                for (int r : b0_last) w0.push_back(w[r]);
                auto sol0 = in_image(w0, d00);
                if (!sol0.member) {
                    verdict.chase_succeeded = false;
                    verdict.failure = "block-0 primitive missing at index " + std::to_string(i);
                    break;
                }
                std::vector<TruncatedSeries> lift(d.complex(m - 1).size(),
                                                  TruncatedSeries::zero(p, N));
                for (size_t r = 0; r < b0_last.size(); ++r) lift[b0_last[r]] = sol0.witness[r];
                auto correction = d_last.apply(lift);
                for (size_t r = 0; r < w.size(); ++r) w[r] = w[r] - correction[r];
                // step 2: the remaining class lives in block 1
                std::vector<TruncatedSeries> w1;
                for (int r : b1_last) w1.push_back(w[r]);
                auto sol1 = in_image(w1, d11);
                if (!sol1.member) {
                    verdict.chase_succeeded = false;
                    verdict.failure = "block-1 primitive missing at index " + std::to_string(i);
                    break;
                }
                std::vector<TruncatedSeries> lift1(d.complex(m - 1).size(),
                                                   TruncatedSeries::zero(p, N));
                for (size_t r = 0; r < b1_last.size(); ++r) lift1[b1_last[r]] = sol1.witness[r];
                auto correction1 = d_last.apply(lift1);
                for (size_t r = 0; r < w.size(); ++r) w[r] = w[r] - correction1[r];
                for (const auto& e : w)
                    if (!e.is_zero()) {
                        verdict.chase_succeeded = false;
                        verdict.failure = "chase residual nonzero at index " + std::to_string(i);
                    }
                if (!verdict.chase_succeeded) break;
            }
            if (!verdict.chase_succeeded) break;
        }
    }
    return verdict;
}

}  // namespace floerkit
