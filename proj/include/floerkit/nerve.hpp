#pragma once

// Functor data into the differential-graded nerve of chain complexes, the
// machine check of its structural equation, and the explicit two-simplex
// witness used to propagate torsion through compositions.
//
// Witness matrices, with the shifted differentials negated:
//
//   Gamma = C2 + C0[1]            Delta = C1 + C0[1] + C2 + C1[1]
//
//        [ d2  h ]                  [ d1  f   0   1  ]          [ g -k  1  0 ]
//   dG = [ 0  -d0 ]            dD = [ 0  -d0  0   0  ]      p = [ 0  1  0  0 ]
//                                   [ 0   0   d2 -g  ]
//                                   [ 0   0   0  -d1 ]
//
//        [ 0  0 ]
//    i = [ 0  1 ]               K = single identity block  C1 -> C1[1].
//        [ 1  k ]
//        [ 0 -f ]
//
// At p = 2 the signs vanish and these reduce to the unsigned matrices.  The
// five identities (dG^2 = dD^2 = 0, p and i chain maps, p i = 1,
// 1 - i p = dD K + K dD) are all verified exactly; a failing identity is a
// contract violation naming it, never a silent sign flip.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floerkit/homology.hpp"

namespace floerkit {

struct StructuralResidual {
    std::vector<int> subsimplex;
    bool vanishes = false;
    SeriesMatrix residual;
};

struct FunctorReport {
    std::vector<StructuralResidual> entries;
    bool all_vanish() const {
        for (const auto& e : entries)
            if (!e.vanishes) return false;
        return true;
    }
};

class FunctorData {
  public:
    FunctorData(std::vector<ChainComplex> vertices,
                std::map<std::vector<int>, SeriesMatrix> maps)
        : vertices_(std::move(vertices)), maps_(std::move(maps)) {
        const int n = dimension();
        if (n < 0) throw structural_error("functor data needs at least one vertex");
        if (n > 4) throw structural_error("simplex dimension capped at 4");
        for (const auto& [subset, matrix] : maps_) {
            if (subset.size() < 2) throw structural_error("maps are attached to |S| >= 2");
            for (size_t i = 1; i < subset.size(); ++i)
                if (subset[i - 1] >= subset[i])
                    throw structural_error("subsimplex vertices must be strictly increasing");
            if (subset.front() < 0 || subset.back() > n)
                throw structural_error("subsimplex vertex out of range");
            // declared degree 1 - m; validated entrywise
            const ChainComplex& src = vertices_[subset.front()];
            const ChainComplex& tgt = vertices_[subset.back()];
            if (matrix.rows() != tgt.size() || matrix.cols() != src.size())
                throw structural_error("map shape mismatch on subsimplex");
            int m = static_cast<int>(subset.size()) - 1;
            int deg = ((1 - m) % 2 + 2) % 2;
            if (src.graded() && tgt.graded()) {
                for (int i = 0; i < tgt.size(); ++i)
                    for (int j = 0; j < src.size(); ++j)
                        if (!matrix.at(i, j).is_zero() &&
                            tgt.generators()[i].degree != (src.generators()[j].degree + deg) % 2)
                            throw structural_error("map entry violates degree 1 - (|S|-1)");
            }
        }
    }

    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    const ChainComplex& vertex(int i) const { return vertices_.at(i); }
    const std::vector<ChainComplex>& vertices() const { return vertices_; }

    bool has_map(const std::vector<int>& subset) const { return maps_.count(subset) > 0; }
    const SeriesMatrix& map(const std::vector<int>& subset) const {
        auto it = maps_.find(subset);
        if (it == maps_.end())
            throw structural_error("missing map for a subsimplex of size " +
                                   std::to_string(subset.size()));
        return it->second;
    }

    // Evaluate the structural equation on every subsimplex with >= 2 vertices:
    //   sum_{j=1}^{m-1} (-1)^j (c_{S[j..m]} c_{S[0..j]} - c_{S - S[j]})
    //     - c_S d_{S[0]} - (-1)^m d_{S[m]} c_S  =  0.
    FunctorReport verify() const {
        FunctorReport report;
        const int n = dimension();
        std::vector<std::vector<int>> subsets;
        for (int mask = 0; mask < (1 << (n + 1)); ++mask) {
            std::vector<int> s;
            for (int v = 0; v <= n; ++v)
                if (mask & (1 << v)) s.push_back(v);
            if (s.size() >= 2) subsets.push_back(std::move(s));
        }
        for (const auto& S : subsets) {
            const int m = static_cast<int>(S.size()) - 1;
            const ChainComplex& src = vertices_[S.front()];
            const ChainComplex& tgt = vertices_[S.back()];
            const std::uint32_t p = src.modulus();
            const int N = src.precision();

            SeriesMatrix lhs(tgt.size(), src.size(), p, N);
            for (int j = 1; j <= m - 1; ++j) {
                std::vector<int> lower(S.begin(), S.begin() + j + 1);   // S[0..j]
                std::vector<int> upper(S.begin() + j, S.end());         // S[j..m]
                std::vector<int> face;                                  // drop S[j]
                for (int t = 0; t <= m; ++t)
                    if (t != j) face.push_back(S[t]);
                SeriesMatrix term = map(upper) * map(lower) - map(face);
                lhs = lhs + TruncatedSeries::constant(p, N, j % 2 == 0 ? 1 : -1) * term;
            }
            const SeriesMatrix& c = map(S);
            SeriesMatrix rhs = c * src.differential() +
                               TruncatedSeries::constant(p, N, m % 2 == 0 ? 1 : -1) *
                                   (tgt.differential() * c);
            StructuralResidual entry{S, false, lhs - rhs};
            entry.vanishes = entry.residual.is_zero();
            report.entries.push_back(std::move(entry));
        }
        return report;
    }

    // Face restriction: drop one vertex and keep all maps among the rest.
    FunctorData face(int dropped) const {
        std::vector<ChainComplex> verts;
        std::vector<int> old_of_new;
        for (int v = 0; v <= dimension(); ++v)
            if (v != dropped) {
                verts.push_back(vertices_[v]);
                old_of_new.push_back(v);
            }
        std::map<std::vector<int>, SeriesMatrix> maps;
        for (const auto& [subset, matrix] : maps_) {
            bool keep = true;
            std::vector<int> renamed;
            for (int v : subset) {
                if (v == dropped) {
                    keep = false;
                    break;
                }
                int idx = static_cast<int>(std::lower_bound(old_of_new.begin(), old_of_new.end(), v) -
                                           old_of_new.begin());
                renamed.push_back(idx);
            }
            if (keep) maps.emplace(std::move(renamed), matrix);
        }
        return FunctorData(std::move(verts), std::move(maps));
    }

    ChainComplex cone_of_edge(int i, int j) const {
        ChainMap edge(vertex(i), vertex(j), 0, map({i, j}));
        return mapping_cone(edge);
    }

  private:
    std::vector<ChainComplex> vertices_;
    std::map<std::vector<int>, SeriesMatrix> maps_;
};

// The explicit chain-homotopy-equivalence bundle between the cone of h and
// the totalization of a verified two-simplex (f, g, h, k).
struct WitnessBundle {
    ChainComplex gamma;          // cone of h
    ChainComplex delta;          // C1 + C0[1] + C2 + C1[1]
    SeriesMatrix projection;     // p : Delta -> Gamma
    SeriesMatrix inclusion;      // i : Gamma -> Delta
    SeriesMatrix homotopy;       // K : Delta -> Delta, 1 - i p = dD K + K dD
    std::vector<int> sub_indices;  // the cone-of-f subcomplex inside Delta
};

namespace detail {
inline void place_block(SeriesMatrix& big, const SeriesMatrix& block, int row0, int col0) {
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) big.at(row0 + i, col0 + j) = block.at(i, j);
}
}  // namespace detail

inline WitnessBundle composition_witness(const ChainMap& f, const ChainMap& g, const ChainMap& h,
                                         const SeriesMatrix& k) {
    const ChainComplex& C0 = f.source();
    const ChainComplex& C1 = g.source();
    const ChainComplex& C2 = g.target();
    const std::uint32_t p = C0.modulus();
    const int N = C0.precision();
    if (f.target().size() != C1.size() || h.source().size() != C0.size() ||
        h.target().size() != C2.size())
        throw structural_error("composition witness: vertex mismatch");
    if (k.rows() != C2.size() || k.cols() != C0.size())
        throw structural_error("composition witness: homotopy shape mismatch");

    // hypothesis: h - g f = k d0 + d2 k
    SeriesMatrix defect = h.matrix() - g.matrix() * f.matrix() -
                          (k * C0.differential() + C2.differential() * k);
    if (!defect.is_zero())
        throw contract_violation("composition witness hypothesis h - gf = kd + dk fails");

    const int n0 = C0.size(), n1 = C1.size(), n2 = C2.size();

    WitnessBundle bundle{
        mapping_cone(h),
        ChainComplex::zero_complex(p, N),
        SeriesMatrix(0, 0, p, N),
        SeriesMatrix(0, 0, p, N),
        SeriesMatrix(0, 0, p, N),
        {},
    };

    // Delta = C1 + C0[1] + C2 + C1[1]
    std::vector<Generator> delta_gens;
    auto append = [&](const ChainComplex& c, const std::string& suffix, bool shifted) {
        for (const auto& gen : c.generators()) {
            Generator gg = gen;
            gg.label += suffix;
            if (shifted && c.graded()) gg.degree = 1 - gg.degree;
            delta_gens.push_back(gg);
        }
    };
    append(C1, "_1", false);
    append(C0, "_0[1]", true);
    append(C2, "_2", false);
    append(C1, "_1[1]", true);

    const int total = n1 + n0 + n2 + n1;
    SeriesMatrix dD(total, total, p, N);
    const int o1 = 0, o0 = n1, o2 = n1 + n0, o1s = n1 + n0 + n2;
    detail::place_block(dD, C1.differential(), o1, o1);
    detail::place_block(dD, f.matrix(), o1, o0);
    detail::place_block(dD, SeriesMatrix::identity(n1, p, N), o1, o1s);
    detail::place_block(dD, -C0.differential(), o0, o0);
    detail::place_block(dD, C2.differential(), o2, o2);
    detail::place_block(dD, -g.matrix(), o2, o1s);
    detail::place_block(dD, -C1.differential(), o1s, o1s);
    bundle.delta = ChainComplex(delta_gens, dD);  // d^2 = 0 re-verified here

    // p = [[g, -k, 1, 0], [0, 1, 0, 0]]
    SeriesMatrix P(n2 + n0, total, p, N);
    detail::place_block(P, g.matrix(), 0, o1);
    detail::place_block(P, -k, 0, o0);
    detail::place_block(P, SeriesMatrix::identity(n2, p, N), 0, o2);
    detail::place_block(P, SeriesMatrix::identity(n0, p, N), n2, o0);

    // i = [[0,0],[0,1],[1,k],[0,-f]]
    SeriesMatrix I(total, n2 + n0, p, N);
    detail::place_block(I, SeriesMatrix::identity(n0, p, N), o0, n2);
    detail::place_block(I, SeriesMatrix::identity(n2, p, N), o2, 0);
    detail::place_block(I, k, o2, n2);
    detail::place_block(I, -f.matrix(), o1s, n2);

    // K: identity corner block C1 -> C1[1]
    SeriesMatrix K(total, total, p, N);
    detail::place_block(K, SeriesMatrix::identity(n1, p, N), o1s, o1);

    const SeriesMatrix& dG = bundle.gamma.differential();
    if (!(dG * dG).is_zero()) throw contract_violation("witness identity d_Gamma^2 = 0 fails");
    if (!(dD * dD).is_zero()) throw contract_violation("witness identity d_Delta^2 = 0 fails");
    if (!(dG * P - P * dD).is_zero()) throw contract_violation("witness identity: p is not a chain map");
    if (!(dD * I - I * dG).is_zero()) throw contract_violation("witness identity: i is not a chain map");
    if (P * I != SeriesMatrix::identity(n2 + n0, p, N))
        throw contract_violation("witness identity p i = 1 fails");
    SeriesMatrix lhs = SeriesMatrix::identity(total, p, N) - I * P;
    if (lhs != dD * K + K * dD)
        throw contract_violation("witness identity 1 - ip = dK + Kd fails");

    bundle.projection = std::move(P);
    bundle.inclusion = std::move(I);
    bundle.homotopy = std::move(K);
    for (int t = 0; t < n1 + n0; ++t) bundle.sub_indices.push_back(t);
    return bundle;
}

struct TorsionVerdict {
    bool hypotheses_hold = false;   // cones of f and g are x-torsion
    bool conclusion_holds = false;  // cone of h is x-torsion
    std::optional<int> bound_f, bound_g, bound_h;
};

inline TorsionVerdict torsion_propagation(const ChainMap& f, const ChainMap& g, const ChainMap& h,
                                          const SeriesMatrix& k) {
    composition_witness(f, g, h, k);  // verifies the hypothesis identities
    TorsionVerdict verdict;
    auto [tf, df] = is_x_torsion(homology(mapping_cone(f)));
    auto [tg, dg] = is_x_torsion(homology(mapping_cone(g)));
    auto [th, dh] = is_x_torsion(homology(mapping_cone(h)));
    verdict.bound_f = df;
    verdict.bound_g = dg;
    verdict.bound_h = dh;
    verdict.hypotheses_hold = tf && tg;
    verdict.conclusion_holds = th;
    return verdict;
}

}  // namespace floerkit
