#pragma once

// Z/2-graded chain complexes over F_p[[x]]/(x^N).  The differential has odd
// degree and squares to zero; both are checked at every construction site.
// An ungraded mode (every generator in degree 0, differential unconstrained)
// is provided for the p = 2 models whose periodicity shifts degree by one.

#include <string>
#include <utility>
#include <vector>

#include "floerkit/errors.hpp"
#include "floerkit/smith.hpp"

namespace floerkit {

struct Generator {
    std::string label;
    int degree = 0;  // 0 or 1
};

class ChainComplex {
  public:
    ChainComplex(std::vector<Generator> generators, SeriesMatrix differential, bool graded = true)
        : generators_(std::move(generators)), d_(std::move(differential)), graded_(graded) {
        const int n = static_cast<int>(generators_.size());
        if (d_.rows() != n || d_.cols() != n)
            throw structural_error("differential must be square in the generator basis");
        for (auto& g : generators_) {
            if (g.degree != 0 && g.degree != 1) throw structural_error("degrees live in Z/2");
            if (!graded_ && g.degree != 0)
                throw structural_error("ungraded complexes keep every generator in degree 0");
        }
        if (graded_) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!d_.at(i, j).is_zero() &&
                        generators_[i].degree != (generators_[j].degree + 1) % 2)
                        throw structural_error("differential entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") violates odd degree");
        }
        if (!(d_ * d_).is_zero()) throw structural_error("differential does not square to zero");
    }

    static ChainComplex zero_complex(std::uint32_t p, int precision) {
        return ChainComplex({}, SeriesMatrix::zero(0, 0, p, precision));
    }

    int size() const { return static_cast<int>(generators_.size()); }
    const std::vector<Generator>& generators() const { return generators_; }
    const SeriesMatrix& differential() const { return d_; }
    bool graded() const { return graded_; }
    std::uint32_t modulus() const { return d_.modulus(); }
    int precision() const { return d_.precision(); }

    std::vector<int> indices_of_degree(int deg) const {
        std::vector<int> idx;
        for (int i = 0; i < size(); ++i)
            if (generators_[i].degree == deg % 2) idx.push_back(i);
        return idx;
    }

    // Degree shift: swaps Z/2 degrees and negates the differential (a no-op
    // sign at p = 2).
    ChainComplex shift() const {
        std::vector<Generator> gens = generators_;
        if (graded_)
            for (auto& g : gens) g.degree = 1 - g.degree;
        for (auto& g : gens) g.label += "[1]";
        return ChainComplex(std::move(gens), -d_, graded_);
    }

    ChainComplex rename(const std::string& suffix) const {
        std::vector<Generator> gens = generators_;
        for (auto& g : gens) g.label += suffix;
        return ChainComplex(std::move(gens), d_, graded_);
    }

    // Tensor with the residue field: every entry replaced by its constant
    // coefficient, result over F_p with precision 1.
    ChainComplex tensor_k() const {
        SeriesMatrix dbar(size(), size(), modulus(), 1);
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) dbar.set(i, j, d_.at(i, j).reduce_mod_x());
        return ChainComplex(generators_, std::move(dbar), graded_);
    }

    friend ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
        if (a.modulus() != b.modulus() || a.precision() != b.precision() ||
            a.graded() != b.graded())
            throw structural_error("direct sum of incompatible complexes");
        std::vector<Generator> gens = a.generators_;
        gens.insert(gens.end(), b.generators_.begin(), b.generators_.end());
        SeriesMatrix d(a.size() + b.size(), a.size() + b.size(), a.modulus(), a.precision());
        for (int i = 0; i < a.size(); ++i)
            for (int j = 0; j < a.size(); ++j) d.at(i, j) = a.d_.at(i, j);
        for (int i = 0; i < b.size(); ++i)
            for (int j = 0; j < b.size(); ++j) d.at(a.size() + i, a.size() + j) = b.d_.at(i, j);
        return ChainComplex(std::move(gens), std::move(d), a.graded());
    }

  private:
    std::vector<Generator> generators_;
    SeriesMatrix d_;
    bool graded_;
};

// A map of complexes with a Z/2 degree.  Degree-0 maps are required to be
// chain maps; maps of odd degree carry no equation here (the equations they
// satisfy come from functor data).
class ChainMap {
  public:
    ChainMap(const ChainComplex& source, const ChainComplex& target, int degree,
             SeriesMatrix matrix, bool enforce_chain_map = true)
        : source_(&source), target_(&target), degree_(degree % 2), matrix_(std::move(matrix)) {
        if (matrix_.rows() != target.size() || matrix_.cols() != source.size())
            throw structural_error("chain map matrix has wrong shape");
        if (source.graded() && target.graded()) {
            for (int i = 0; i < target.size(); ++i)
                for (int j = 0; j < source.size(); ++j)
                    if (!matrix_.at(i, j).is_zero() &&
                        target.generators()[i].degree !=
                            (source.generators()[j].degree + degree_) % 2)
                        throw structural_error("chain map entry violates declared degree");
        }
        if (degree_ == 0 && enforce_chain_map && !commutes())
            throw structural_error("degree-0 map does not commute with the differentials");
    }

    bool commutes() const {
        return (target_->differential() * matrix_ - matrix_ * source_->differential()).is_zero();
    }

    const ChainComplex& source() const { return *source_; }
    const ChainComplex& target() const { return *target_; }
    int degree() const { return degree_; }
    const SeriesMatrix& matrix() const { return matrix_; }

    static ChainMap identity(const ChainComplex& c) {
        return ChainMap(c, c, 0, SeriesMatrix::identity(c.size(), c.modulus(), c.precision()));
    }
    static ChainMap multiplication_by(const TruncatedSeries& s, const ChainComplex& c) {
        return ChainMap(c, c, 0, s * SeriesMatrix::identity(c.size(), c.modulus(), c.precision()));
    }

    friend ChainMap compose(const ChainMap& g, const ChainMap& f) {
        if (&f.target() != &g.source() && f.target().size() != g.source().size())
            throw structural_error("composition of non-composable chain maps");
        return ChainMap(f.source(), g.target(), (f.degree() + g.degree()) % 2,
                        g.matrix() * f.matrix(), /*enforce_chain_map=*/false);
    }

  private:
    const ChainComplex* source_;
    const ChainComplex* target_;
    int degree_;
    SeriesMatrix matrix_;
};

// cone(f: A -> B) = B + A[1] with differential [[d_B, f], [0, -d_A]].
// The shifted differential is negated (Koszul convention); at p = 2 the sign
// vanishes and this agrees with the unsigned construction.
inline ChainComplex mapping_cone(const ChainMap& f) {
    if (f.degree() != 0) throw structural_error("mapping cone needs a degree-0 map");
    if (!f.commutes()) throw contract_violation("mapping_cone: input is not a chain map");
    const ChainComplex& A = f.source();
    const ChainComplex& B = f.target();
    std::vector<Generator> gens;
    for (const auto& g : B.generators()) gens.push_back(g);
    for (const auto& g : A.generators()) {
        Generator h = g;
        h.label += "[1]";
        if (A.graded()) h.degree = 1 - h.degree;
        gens.push_back(h);
    }
    const int nb = B.size(), na = A.size();
    SeriesMatrix d(nb + na, nb + na, B.modulus(), B.precision());
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) d.at(i, j) = B.differential().at(i, j);
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < na; ++j) d.at(i, nb + j) = f.matrix().at(i, j);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) d.at(nb + i, nb + j) = -A.differential().at(i, j);
    return ChainComplex(std::move(gens), std::move(d), A.graded() && B.graded());
}

}  // namespace floerkit
