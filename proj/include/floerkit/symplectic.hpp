#pragma once

// The computable linear model on C^n: paths in Sp(2n) with piecewise
// quadratic generators, the crossing-form index of nondegenerate paths
// (normalized so the small positive rotation on C^n has index n), rotation
// spectra of unitary time-1 maps, the infimal-slope invariant, and the
// composition formula for one-parameter families.
//
// Conventions: R^{2n} = C^n with stacked coordinates (x, y), J = [[0,-I],[I,0]],
// a path solves dPsi/dt = J S(t) Psi with S(t) symmetric (the Hessian of the
// generating quadratic Hamiltonian H = <S z, z>/2).

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "floerkit/errors.hpp"

namespace floerkit::linear {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

struct Tolerances {
    double symplectic = 1e-9;
    double degenerate = 1e-9;
    double crossing_isolation = 1e-6;
    int base_grid = 2048;        // samples per unit time
    int max_grid = 1 << 20;
};

inline Mat standard_J(int n) {
    Mat J = Mat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = -Mat::Identity(n, n);
    J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
    return J;
}

// exp(theta J) = rotation by theta in every complex coordinate
inline Mat rotation(int n, double theta) {
    Mat R = Mat::Zero(2 * n, 2 * n);
    R.topLeftCorner(n, n) = std::cos(theta) * Mat::Identity(n, n);
    R.topRightCorner(n, n) = -std::sin(theta) * Mat::Identity(n, n);
    R.bottomLeftCorner(n, n) = std::sin(theta) * Mat::Identity(n, n);
    R.bottomRightCorner(n, n) = std::cos(theta) * Mat::Identity(n, n);
    return R;
}

inline Mat symplectic_inverse(const Mat& m) {
    const int n = static_cast<int>(m.rows()) / 2;
    Mat J = standard_J(n);
    return -J * m.transpose() * J;
}

inline double symplectic_defect(const Mat& m) {
    const int n = static_cast<int>(m.rows()) / 2;
    Mat J = standard_J(n);
    return (m.transpose() * J * m - J).cwiseAbs().maxCoeff();
}

// A path tau in [0,1] -> Sp(2n) with Psi(0) = I and an accessible generator.
class SymplecticPath {
  public:
    virtual ~SymplecticPath() = default;
    virtual int complex_dim() const = 0;
    virtual Mat value(double t) const = 0;
    virtual Mat generator(double t) const = 0;  // S(t)
};

struct ExpSegment {
    Mat hessian;      // symmetric 2n x 2n
    double duration;  // > 0
};

// Piecewise description: on each segment the generator is the affine path
// S(t) = S_start interpolated to S_end is NOT supported here; segments carry
// constant generators, products of exponentials give the path.
class LinearIsotopy : public SymplecticPath {
  public:
    LinearIsotopy(int n, std::vector<ExpSegment> segments)
        : n_(n), segments_(std::move(segments)) {
        if (n_ < 1) throw domain_error("complex dimension must be positive");
        if (segments_.empty()) throw domain_error("isotopy needs at least one segment");
        double total = 0;
        for (auto& seg : segments_) {
            if (seg.duration <= 0) throw domain_error("segment duration must be positive");
            if (seg.hessian.rows() != 2 * n_ || seg.hessian.cols() != 2 * n_)
                throw structural_error("segment Hessian has the wrong size");
            if ((seg.hessian - seg.hessian.transpose()).cwiseAbs().maxCoeff() > 1e-12)
                throw structural_error("segment Hessian is not symmetric");
            total += seg.duration;
        }
        // reparametrize to total time 1; the generator scales accordingly
        for (auto& seg : segments_) {
            seg.hessian *= total;
            seg.duration /= total;
        }
        Mat J = standard_J(n_);
        Mat acc = Mat::Identity(2 * n_, 2 * n_);
        starts_.push_back(0.0);
        boundary_values_.push_back(acc);
        double t = 0;
        for (auto& seg : segments_) {
            t += seg.duration;
            acc = ((J * seg.hessian) * seg.duration).exp() * acc;
            starts_.push_back(t);
            boundary_values_.push_back(acc);
        }
    }

    static LinearIsotopy reeb(int n, double slope) {
        Mat S = 2.0 * M_PI * slope * Mat::Identity(2 * n, 2 * n);
        return LinearIsotopy(n, {{S, 1.0}});
    }
    static LinearIsotopy diagonal_rotations(const std::vector<double>& angles) {
        const int n = static_cast<int>(angles.size());
        Mat S = Mat::Zero(2 * n, 2 * n);
        for (int j = 0; j < n; ++j) {
            S(j, j) = 2.0 * M_PI * angles[j];
            S(n + j, n + j) = 2.0 * M_PI * angles[j];
        }
        return LinearIsotopy(n, {{S, 1.0}});
    }
    // conjugate the whole path by a fixed symplectic matrix
    LinearIsotopy conjugated(const Mat& c) const {
        Mat cinv = symplectic_inverse(c);
        std::vector<ExpSegment> segs;
        for (const auto& seg : segments_)
            segs.push_back({cinv.transpose() * seg.hessian * cinv, seg.duration});
        return LinearIsotopy(n_, segs);
    }
    // direct sum with another isotopy (interleaving complex coordinates)
    friend LinearIsotopy direct_sum(const LinearIsotopy& a, const LinearIsotopy& b);

    int complex_dim() const override { return n_; }
    Mat value(double t) const override {
        if (t <= 0) return Mat::Identity(2 * n_, 2 * n_);
        if (t > 1) t = 1;
        size_t k = segment_of(t);
        double local = t - starts_[k];
        Mat J = standard_J(n_);
        return ((J * segments_[k].hessian) * local).exp() * boundary_values_[k];
    }
    Mat generator(double t) const override {
        size_t k = segment_of(std::min(std::max(t, 0.0), 1.0));
        return segments_[k].hessian;
    }
    const std::vector<ExpSegment>& segments() const { return segments_; }

  private:
    size_t segment_of(double t) const {
        size_t k = 0;
        while (k + 1 < segments_.size() && starts_[k + 1] < t) ++k;
        return k;
    }
    int n_;
    std::vector<ExpSegment> segments_;  // durations normalized to sum 1
    std::vector<double> starts_;        // normalized start times
    std::vector<Mat> boundary_values_;
};

inline LinearIsotopy direct_sum(const LinearIsotopy& a, const LinearIsotopy& b) {
    // time grids must agree; resample on the merged breakpoints
    std::vector<double> cuts{0.0};
    {
        double t = 0;
        for (const auto& s : a.segments_) cuts.push_back(t += s.duration);
        t = 0;
        for (const auto& s : b.segments_) cuts.push_back(t += s.duration);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-12; }),
               cuts.end());
    const int na = a.n_, nb = b.n_, n = na + nb;
    std::vector<ExpSegment> segs;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        Mat Sa = a.generator(mid), Sb = b.generator(mid);
        Mat S = Mat::Zero(2 * n, 2 * n);
        // stacked coordinates: (x_a, x_b, y_a, y_b)
        S.block(0, 0, na, na) = Sa.topLeftCorner(na, na);
        S.block(0, n, na, na) = Sa.topRightCorner(na, na);
        S.block(n, 0, na, na) = Sa.bottomLeftCorner(na, na);
        S.block(n, n, na, na) = Sa.bottomRightCorner(na, na);
        S.block(na, na, nb, nb) = Sb.topLeftCorner(nb, nb);
        S.block(na, n + na, nb, nb) = Sb.topRightCorner(nb, nb);
        S.block(n + na, na, nb, nb) = Sb.bottomLeftCorner(nb, nb);
        S.block(n + na, n + na, nb, nb) = Sb.bottomRightCorner(nb, nb);
        segs.push_back({S, cuts[i + 1] - cuts[i]});
    }
    return LinearIsotopy(n, segs);
}

// tau -> base(tau)^{-1} R(s tau): the pair path whose index jumps measure the
// spectrum of base relative to the rotation flow.
class ReebTwistedPath : public SymplecticPath {
  public:
    ReebTwistedPath(const SymplecticPath& base, double slope) : base_(&base), slope_(slope) {}
    int complex_dim() const override { return base_->complex_dim(); }
    Mat value(double t) const override {
        return symplectic_inverse(base_->value(t)) *
               rotation(base_->complex_dim(), 2.0 * M_PI * slope_ * t);
    }
    Mat generator(double t) const override {
        Mat phi = base_->value(t);
        Mat S = base_->generator(t);
        const int n = base_->complex_dim();
        Mat M = 2.0 * M_PI * slope_ * Mat::Identity(2 * n, 2 * n) - S;
        return phi.transpose() * M * phi;
    }

  private:
    const SymplecticPath* base_;
    double slope_;
};

// ---------------------------------------------------------------------------
// Crossing-form index.

namespace detail {

inline double min_singular_value(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m.transpose() * m, Eigen::EigenvaluesOnly);
    double lambda = es.eigenvalues().minCoeff();
    return lambda > 0 ? std::sqrt(lambda) : 0.0;
}

// signature of the generator restricted to the kernel of Psi(t) - I
struct CrossingData {
    int signature = 0;
    int kernel_dim = 0;
    bool regular = true;
};

inline CrossingData crossing_form(const SymplecticPath& path, double t, const Tolerances& tol) {
    const int two_n = 2 * path.complex_dim();
    Mat gap = path.value(t) - Mat::Identity(two_n, two_n);
    Eigen::JacobiSVD<Mat> svd(gap, Eigen::ComputeFullV);
    CrossingData data;
    std::vector<int> kernel_cols;
    for (int i = 0; i < two_n; ++i)
        if (svd.singularValues()(i) < tol.crossing_isolation) kernel_cols.push_back(i);
    data.kernel_dim = static_cast<int>(kernel_cols.size());
    if (data.kernel_dim == 0) return data;
    Mat V(two_n, data.kernel_dim);
    for (int c = 0; c < data.kernel_dim; ++c) V.col(c) = svd.matrixV().col(kernel_cols[c]);
    Mat Q = V.transpose() * path.generator(t) * V;
    Q = 0.5 * (Q + Q.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(Q);
    double scale = 1.0 + Q.cwiseAbs().maxCoeff();
    for (int i = 0; i < data.kernel_dim; ++i) {
        double lambda = es.eigenvalues()(i);
        if (lambda > tol.degenerate * scale) data.signature += 1;
        else if (lambda < -tol.degenerate * scale) data.signature -= 1;
        else data.regular = false;
    }
    return data;
}

// golden-section minimizer of sigma_min(Psi(t) - I)
inline double refine_minimum(const SymplecticPath& path, double lo, double hi) {
    const int two_n = 2 * path.complex_dim();
    auto f = [&](double t) {
        return min_singular_value(path.value(t) - Mat::Identity(two_n, two_n));
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Conley-Zehnder index of a nondegenerate path by crossing forms:
//   CZ = sign(Gamma_0)/2 + sum over interior crossings of sign(Gamma_t),
// where Gamma_t is the generator restricted to ker(Psi(t) - I).  The grid is
// refined near candidate crossings; an unresolvable crossing raises a
// precision error, a degenerate endpoint a degeneracy error.
inline int cz_index(const SymplecticPath& path, const Tolerances& tol = {}) {
    const int n = path.complex_dim();
    const int two_n = 2 * n;
    const Mat I = Mat::Identity(two_n, two_n);

    if ((path.value(0.0) - I).cwiseAbs().maxCoeff() > tol.symplectic)
        throw structural_error("path does not start at the identity");
    if (detail::min_singular_value(path.value(1.0) - I) <= tol.degenerate)
        throw degenerate_error("time-1 map has 1 as an eigenvalue");

    for (int grid = tol.base_grid; grid <= tol.max_grid; grid *= 2) {
        // symplecticity spot check
        for (int i = 0; i <= 16; ++i) {
            double t = double(i) / 16.0;
            if (symplectic_defect(path.value(t)) > tol.symplectic)
                throw structural_error("sampled matrix is not symplectic to tolerance");
        }
        std::vector<double> dip(grid + 1);
        for (int i = 0; i <= grid; ++i)
            dip[i] = detail::min_singular_value(path.value(double(i) / grid) - I);
        // candidate crossings: local minima of the dip profile, including the
        // boundary intervals (a crossing can hide between the last sample and
        // an endpoint)
        std::vector<double> crossings;
        bool ambiguous = false;
        for (int i = 0; i <= grid; ++i) {
            if (i > 0 && dip[i] > dip[i - 1]) continue;
            if (i < grid && dip[i] > dip[i + 1]) continue;
            if (dip[i] > 0.5) continue;  // cheap reject, |e^{i theta} - 1| scale
            double lo = i == 0 ? 0.0 : double(i - 1) / grid;
            double hi = i == grid ? 1.0 : double(i + 1) / grid;
            double t = detail::refine_minimum(path, lo, hi);
            double v = detail::min_singular_value(path.value(t) - I);
            if (v < tol.crossing_isolation * 0.1) {
                // the zero at t = 0 is the endpoint contribution, never an
                // interior crossing; time 1 is nondegenerate by hypothesis
                if (t > 1e-7 && t < 1.0 - 1e-9) crossings.push_back(t);
            } else if (v < tol.crossing_isolation * 10) {
                ambiguous = true;  // dip without a clean zero: refine the grid
            }
        }
        if (ambiguous) continue;
        // merge crossings closer than the isolation tolerance
        std::sort(crossings.begin(), crossings.end());
        std::vector<double> merged;
        for (double t : crossings)
            if (merged.empty() || t - merged.back() > tol.crossing_isolation) merged.push_back(t);

        // endpoint contribution: the form at t = 0 on the full space
        Mat S0 = path.generator(0.0);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S0 + S0.transpose()));
        double scale = 1.0 + S0.cwiseAbs().maxCoeff();
        int sig0 = 0;
        bool regular = true;
        for (int i = 0; i < two_n; ++i) {
            double lambda = es.eigenvalues()(i);
            if (lambda > tol.degenerate * scale) sig0 += 1;
            else if (lambda < -tol.degenerate * scale) sig0 -= 1;
            else regular = false;
        }
        if (!regular) throw degenerate_error("generator is degenerate at the start of the path");
        if (sig0 % 2 != 0) throw precision_error("odd endpoint signature");
        int index = sig0 / 2;

        bool all_regular = true;
        for (double t : merged) {
            auto data = detail::crossing_form(path, t, tol);
            if (data.kernel_dim == 0) continue;
            if (!data.regular) {
                all_regular = false;
                break;
            }
            index += data.signature;
        }
        if (all_regular) return index;
    }
    throw precision_error("crossing could not be isolated after maximal refinement");
}

inline int mu_linear(const SymplecticPath& path, const Tolerances& tol = {}) {
    return cz_index(path, tol) - path.complex_dim();
}

// ---------------------------------------------------------------------------
// Spectra of unitary time-1 maps.

// the real 2n x 2n matrix as a complex n x n matrix; requires commuting with J
inline CMat complexify(const Mat& u, double tol = 1e-9) {
    const int n = static_cast<int>(u.rows()) / 2;
    Mat J = standard_J(n);
    if ((u * J - J * u).cwiseAbs().maxCoeff() > tol)
        throw domain_error("matrix is not complex-linear");
    if ((u.transpose() * u - Mat::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() > tol)
        throw domain_error("matrix is not unitary to tolerance");
    CMat c(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c(i, j) = std::complex<double>(u(i, j), u(n + i, j));
    return c;
}

// angles a in [0,1) with e^{2 pi i a} among the eigenvalues, with multiplicity
inline std::vector<double> eigenvalue_angles(const Mat& unitary_real, double tol = 1e-9) {
    CMat c = complexify(unitary_real, tol);
    Eigen::ComplexEigenSolver<CMat> es(c);
    std::vector<double> angles;
    for (int i = 0; i < c.rows(); ++i) {
        auto lambda = es.eigenvalues()(i);
        double a = std::atan2(lambda.imag(), lambda.real()) / (2.0 * M_PI);
        a -= std::floor(a);
        if (a >= 1.0) a -= 1.0;
        angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

struct SpectrumWindow {
    double lo = 0, hi = 0;
    std::vector<double> points;  // sorted, with multiplicity
};

inline SpectrumWindow spectrum(const Mat& unitary_real, double lo, double hi, double tol = 1e-9) {
    if (hi < lo) throw domain_error("empty spectrum window");
    SpectrumWindow window{lo, hi, {}};
    for (double a : eigenvalue_angles(unitary_real, tol)) {
        for (double s = a + std::ceil(lo - a - 1e-12); s <= hi + 1e-12; s += 1.0)
            if (s >= lo - 1e-12) window.points.push_back(s);
    }
    std::sort(window.points.begin(), window.points.end());
    return window;
}

// ---------------------------------------------------------------------------
// The infimal-slope invariant: inf { s : mu(path^{-1} R_{st}) >= 0 }.  The
// index of the twisted path is locally constant between spectrum points of
// the time-1 map, so the infimum is located by a monotone scan over the
// gaps between consecutive spectrum points, probing each gap off-spectrum.

struct SlopeInvariant {
    double value = 0;
    std::vector<double> spectrum_points;  // within the search window
};

inline int mu_twisted_probe(const SymplecticPath& path, double gap_lo, double gap_hi,
                            const Tolerances& tol) {
    // probe the gap off-spectrum, nudging when a probe happens to be degenerate
    const double width = gap_hi - gap_lo;
    for (double offset : {0.5, 0.38196601125, 0.61803398875, 0.25, 0.75, 0.1, 0.9}) {
        try {
            ReebTwistedPath twisted(path, gap_lo + offset * width);
            return mu_linear(twisted, tol);
        } catch (const degenerate_error&) {
        }
    }
    throw precision_error("all probes in a spectrum gap were degenerate");
}

inline SlopeInvariant c_r_linear(const SymplecticPath& path, const Tolerances& tol = {}) {
    const Mat U = path.value(1.0);
    auto base_angles = eigenvalue_angles(U, 1e-7);
    if (base_angles.empty()) throw domain_error("time-1 map has no eigenvalues (empty?)");

    for (double radius = 4.0; radius <= 64.0; radius *= 2.0) {
        // spectrum points in [-radius, radius], deduplicated to gap bounds
        std::vector<double> pts;
        for (double a : base_angles)
            for (double s = a - std::ceil(radius + 1); s <= radius + 1; s += 1.0) pts.push_back(s);
        std::sort(pts.begin(), pts.end());
        std::vector<double> gaps;  // distinct spectrum values
        for (double s : pts)
            if (gaps.empty() || s - gaps.back() > 1e-9) gaps.push_back(s);
        // mu on each open interval (gaps[i], gaps[i+1]); monotone in i
        int first_nonneg = -1;
        bool below_found = false;
        for (size_t i = 0; i + 1 < gaps.size(); ++i) {
            if (gaps[i + 1] < -radius || gaps[i] > radius) continue;
            int mu = mu_twisted_probe(path, gaps[i], gaps[i + 1], tol);
            if (mu >= 0) {
                first_nonneg = static_cast<int>(i);
                break;
            }
            below_found = true;
        }
        if (first_nonneg >= 0 && below_found) {
            SlopeInvariant out;
            out.value = gaps[first_nonneg];
            out.spectrum_points = gaps;
            return out;
        }
        // otherwise the window missed the transition; widen
    }
    throw precision_error("slope invariant not bracketed in the search window");
}

// ---------------------------------------------------------------------------
// One-parameter families and the composition formula.

struct FamilySegment {
    Mat hessian_start;  // generator at s = 0
    Mat hessian_end;    // generator at s = 1
    double duration;
};

// A 1-simplex of isotopies: s in [0,1] -> LinearIsotopy with affinely
// interpolated segment generators.
class IsotopyFamily {
  public:
    IsotopyFamily(int n, std::vector<FamilySegment> segments)
        : n_(n), segments_(std::move(segments)) {
        if (segments_.empty()) throw domain_error("family needs at least one segment");
    }
    int complex_dim() const { return n_; }
    LinearIsotopy at(double s) const {
        std::vector<ExpSegment> segs;
        for (const auto& f : segments_)
            segs.push_back({(1.0 - s) * f.hessian_start + s * f.hessian_end, f.duration});
        return LinearIsotopy(n_, segs);
    }
    static IsotopyFamily reeb_family(int n, double slope_start, double slope_end) {
        Mat i2n = Mat::Identity(2 * n, 2 * n);
        return IsotopyFamily(
            n, {{2.0 * M_PI * slope_start * i2n, 2.0 * M_PI * slope_end * i2n, 1.0}});
    }

  private:
    int n_;
    std::vector<FamilySegment> segments_;
};

struct CompositionReport {
    bool composable = true;          // endpoint isotopies match pointwise
    bool start_identity = true;      // family at s = 0 equals the first input at s = 0
    bool end_telescopes = true;      // family at s = 1 equals the last input at s = 1
    double max_defect = 0;
};

// The composed family (sigma_m,s,t sigma_m,0,t^{-1}) ... (sigma_1,s,t
// sigma_1,0,t^{-1}) sigma_1,0,t.
class ComposedFamily {
  public:
    explicit ComposedFamily(std::vector<IsotopyFamily> simplices)
        : simplices_(std::move(simplices)) {
        if (simplices_.empty()) throw domain_error("nothing to compose");
    }
    int complex_dim() const { return simplices_.front().complex_dim(); }
    Mat value(double s, double t) const {
        const int n = complex_dim();
        Mat acc = simplices_.front().at(0.0).value(t);
        for (const auto& fam : simplices_) {
            Mat base = fam.at(0.0).value(t);
            Mat moved = fam.at(s).value(t);
            acc = moved * symplectic_inverse(base) * acc;
        }
        (void)n;
        return acc;
    }
    CompositionReport verify(int t_samples = 17, double tol = 1e-7) const {
        CompositionReport report;
        for (int i = 0; i <= t_samples; ++i) {
            double t = double(i) / t_samples;
            for (size_t k = 0; k + 1 < simplices_.size(); ++k) {
                double defect = (simplices_[k].at(1.0).value(t) -
                                 simplices_[k + 1].at(0.0).value(t))
                                    .cwiseAbs()
                                    .maxCoeff();
                report.max_defect = std::max(report.max_defect, defect);
                if (defect > tol) report.composable = false;
            }
            double d0 = (value(0.0, t) - simplices_.front().at(0.0).value(t)).cwiseAbs().maxCoeff();
            if (d0 > tol) report.start_identity = false;
            double d1 = (value(1.0, t) - simplices_.back().at(1.0).value(t)).cwiseAbs().maxCoeff();
            report.max_defect = std::max({report.max_defect, d0, d1});
            if (d1 > tol) report.end_telescopes = false;
        }
        return report;
    }

  private:
    std::vector<IsotopyFamily> simplices_;
};

// ---------------------------------------------------------------------------
// Axiom suite along a family: locate the family's discriminant crossings and
// verify the index is constant between them, monotone when requested, and
// right-continuous at the crossings.

struct AxiomReport {
    std::vector<double> crossings;           // s values with degenerate time-1 map
    std::vector<int> mu_between;             // one value per gap
    bool locally_constant = true;            // G5
    bool monotone = true;                    // G1 (meaningful for monotone families)
    bool right_continuous = true;            // G2
};

inline AxiomReport axiom_suite(const IsotopyFamily& family, double s_lo, double s_hi,
                               const Tolerances& tol = {}, int s_grid = 512) {
    AxiomReport report;
    const int two_n = 2 * family.complex_dim();
    const Mat I = Mat::Identity(two_n, two_n);
    auto dip = [&](double s) {
        return detail::min_singular_value(family.at(s).value(1.0) - I);
    };
    std::vector<double> vals(s_grid + 1);
    for (int i = 0; i <= s_grid; ++i) vals[i] = dip(s_lo + (s_hi - s_lo) * i / s_grid);
    for (int i = 1; i < s_grid; ++i) {
        if (vals[i] > vals[i - 1] || vals[i] > vals[i + 1] || vals[i] > 0.5) continue;
        double a = s_lo + (s_hi - s_lo) * (i - 1) / s_grid;
        double b = s_lo + (s_hi - s_lo) * (i + 1) / s_grid;
        // golden-section on the family parameter
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = dip(x1), f2 = dip(x2);
        for (int it = 0; it < 60 && (b - a) > 1e-13; ++it) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1; x1 = b - phi * (b - a); f1 = dip(x1);
            } else {
                a = x1; x1 = x2; f1 = f2; x2 = a + phi * (b - a); f2 = dip(x2);
            }
        }
        double s_star = 0.5 * (a + b);
        if (dip(s_star) < tol.crossing_isolation * 0.1) {
            if (report.crossings.empty() || s_star - report.crossings.back() > 1e-9)
                report.crossings.push_back(s_star);
        }
    }
    // gaps: [s_lo, c_1], [c_1, c_2], ..., [c_k, s_hi]
    std::vector<double> bounds{s_lo};
    for (double c : report.crossings) bounds.push_back(c);
    bounds.push_back(s_hi);
    int prev_mu = 0;
    for (size_t g = 0; g + 1 < bounds.size(); ++g) {
        double lo = bounds[g], hi = bounds[g + 1];
        double margin = 0.05 * (hi - lo);
        std::vector<double> probes{lo + margin, 0.5 * (lo + hi), hi - margin};
        std::vector<int> mus;
        for (double s : probes) {
            LinearIsotopy iso = family.at(s);
            mus.push_back(mu_linear(iso, tol));
        }
        if (mus[0] != mus[1] || mus[1] != mus[2]) report.locally_constant = false;
        report.mu_between.push_back(mus[1]);
        if (g > 0 && mus[1] < prev_mu) report.monotone = false;
        prev_mu = mus[1];
        // right-continuity at the left crossing of this gap
        if (g > 0) {
            double base = bounds[g];
            int m1 = mu_linear(family.at(std::min(base + 1e-3 * (hi - lo), hi - margin)), tol);
            int m2 = mu_linear(family.at(std::min(base + 1e-4 * (hi - lo), hi - margin)), tol);
            if (m1 != m2 || m1 != mus[1]) report.right_continuous = false;
        }
    }
    return report;
}

}  // namespace floerkit::linear
