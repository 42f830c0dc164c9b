#pragma once

// JSON wire formats.  Series are arrays of integer coefficients; the
// enclosing object carries the modulus and precision.  Output always uses
// ordered keys so byte-identical runs stay byte-identical.

#include <json.hpp>

#include <string>
#include <vector>

#include "floerkit/diagram.hpp"
#include "floerkit/morse.hpp"
#include "floerkit/nerve.hpp"
#include "floerkit/simplex_paths.hpp"
#include "floerkit/symplectic.hpp"

namespace floerkit::io {

using json = nlohmann::ordered_json;

inline json series_to_json(const TruncatedSeries& s) {
    json arr = json::array();
    for (int j = 0; j < s.precision(); ++j) arr.push_back(s.coeff(j));
    return arr;
}

inline TruncatedSeries series_from_json(const json& arr, std::uint32_t p, int precision) {
    if (!arr.is_array()) throw domain_error("series must be an array of integers");
    std::vector<std::int64_t> coeffs;
    for (const auto& c : arr) coeffs.push_back(c.get<std::int64_t>());
    return TruncatedSeries::from_coeffs(p, precision, coeffs);
}

inline json matrix_entries_to_json(const SeriesMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(series_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline SeriesMatrix matrix_entries_from_json(const json& rows, int nrows, int ncols,
                                             std::uint32_t p, int precision) {
    SeriesMatrix m(nrows, ncols, p, precision);
    if (static_cast<int>(rows.size()) != nrows) throw domain_error("matrix row count mismatch");
    for (int i = 0; i < nrows; ++i) {
        if (static_cast<int>(rows[i].size()) != ncols)
            throw domain_error("matrix column count mismatch");
        for (int j = 0; j < ncols; ++j) m.set(i, j, series_from_json(rows[i][j], p, precision));
    }
    return m;
}

inline json matrix_to_json(const SeriesMatrix& m) {
    json out;
    out["p"] = m.modulus();
    out["precision"] = m.precision();
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = matrix_entries_to_json(m);
    return out;
}

inline SeriesMatrix matrix_from_json(const json& obj) {
    std::uint32_t p = obj.at("p").get<std::uint32_t>();
    int precision = obj.value("precision", kDefaultPrecision);
    return matrix_entries_from_json(obj.at("entries"), obj.at("rows").get<int>(),
                                    obj.at("cols").get<int>(), p, precision);
}

inline json complex_to_json(const ChainComplex& c) {
    json out;
    out["p"] = c.modulus();
    out["precision"] = c.precision();
    if (!c.graded()) out["ungraded"] = true;
    json gens = json::array();
    for (const auto& g : c.generators()) gens.push_back({{"label", g.label}, {"degree", g.degree}});
    out["generators"] = gens;
    out["differential"] = matrix_entries_to_json(c.differential());
    return out;
}

inline ChainComplex complex_from_json(const json& obj, int default_precision = kDefaultPrecision) {
    std::uint32_t p = obj.at("p").get<std::uint32_t>();
    int precision = obj.value("precision", default_precision);
    bool graded = !obj.value("ungraded", false);
    std::vector<Generator> gens;
    for (const auto& g : obj.at("generators"))
        gens.push_back({g.at("label").get<std::string>(), g.value("degree", 0)});
    int n = static_cast<int>(gens.size());
    SeriesMatrix d = matrix_entries_from_json(obj.at("differential"), n, n, p, precision);
    return ChainComplex(std::move(gens), std::move(d), graded);
}

inline json finmodule_to_json(const FinModule& m) {
    json out;
    out["free_rank"] = m.free_rank;
    out["torsion"] = m.torsion;
    if (m.precision_limited) out["precision_limited"] = true;
    return out;
}

inline json graded_to_json(const GradedFinModule& g) {
    json out;
    out["even"] = finmodule_to_json(g.even);
    out["odd"] = finmodule_to_json(g.odd);
    return out;
}

// ---------------------------------------------------------------------------
// Functor data: maps keyed by vertex strings like "01", "012".

inline FunctorData functor_from_json(const json& obj) {
    std::uint32_t p = obj.at("p").get<std::uint32_t>();
    int precision = obj.value("precision", kDefaultPrecision);
    std::vector<ChainComplex> vertices;
    for (const auto& v : obj.at("vertices")) {
        json patched = v;
        if (!patched.contains("p")) patched["p"] = p;
        if (!patched.contains("precision")) patched["precision"] = precision;
        vertices.push_back(complex_from_json(patched));
    }
    std::map<std::vector<int>, SeriesMatrix> maps;
    for (const auto& [key, entries] : obj.at("maps").items()) {
        std::vector<int> subset;
        for (char ch : key) {
            if (ch < '0' || ch > '9') throw domain_error("map keys are digit strings like 012");
            subset.push_back(ch - '0');
        }
        if (subset.size() < 2) throw domain_error("map keys need at least two vertices");
        const auto& src = vertices.at(subset.front());
        const auto& tgt = vertices.at(subset.back());
        maps.emplace(subset,
                     matrix_entries_from_json(entries, tgt.size(), src.size(), p, precision));
    }
    return FunctorData(std::move(vertices), std::move(maps));
}

// ---------------------------------------------------------------------------
// Morse data.

inline GMorseData morse_from_json(const json& obj) {
    std::uint32_t p = obj.at("p").get<std::uint32_t>();
    std::vector<CriticalPoint> pts;
    for (const auto& q : obj.at("points"))
        pts.push_back({q.at("label").get<std::string>(), q.at("index").get<int>(),
                       q.at("orbit").get<int>(), q.value("element", 0), q.value("fixed", false)});
    std::map<std::pair<int, int>, std::int64_t> flows;
    auto find = [&](const std::string& label) {
        for (size_t i = 0; i < pts.size(); ++i)
            if (pts[i].label == label) return static_cast<int>(i);
        throw domain_error("unknown critical point label " + label);
    };
    if (obj.contains("flows"))
        for (const auto& f : obj.at("flows"))
            flows[{find(f.at("from").get<std::string>()), find(f.at("to").get<std::string>())}] =
                f.at("count").get<std::int64_t>();
    return GMorseData(p, std::move(pts), std::move(flows));
}

// ---------------------------------------------------------------------------
// Linear model.

inline linear::Mat real_matrix_from_json(const json& rows, int dim) {
    linear::Mat m(dim, dim);
    if (static_cast<int>(rows.size()) != dim) throw domain_error("matrix size mismatch");
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(rows[i].size()) != dim) throw domain_error("matrix size mismatch");
        for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

inline linear::LinearIsotopy isotopy_from_json(const json& obj) {
    int n = obj.at("n").get<int>();
    std::vector<linear::ExpSegment> segments;
    for (const auto& seg : obj.at("segments")) {
        std::string type = seg.value("type", "exp");
        if (type != "exp") throw domain_error("unknown segment type " + type);
        segments.push_back(
            {real_matrix_from_json(seg.at("S"), 2 * n), seg.value("duration", 1.0)});
    }
    return linear::LinearIsotopy(n, std::move(segments));
}

inline linear::IsotopyFamily family_from_json(const json& obj) {
    int n = obj.at("n").get<int>();
    std::vector<linear::FamilySegment> segments;
    for (const auto& seg : obj.at("segments"))
        segments.push_back({real_matrix_from_json(seg.at("S0"), 2 * n),
                            real_matrix_from_json(seg.at("S1"), 2 * n),
                            seg.value("duration", 1.0)});
    return linear::IsotopyFamily(n, std::move(segments));
}

// ---------------------------------------------------------------------------
// Slope diagrams.

inline SlopeDiagram diagram_from_json(const json& obj) {
    std::vector<double> slopes;
    for (const auto& s : obj.at("slopes")) slopes.push_back(s.get<double>());
    std::uint32_t p = obj.at("p").get<std::uint32_t>();
    int precision = obj.value("precision", kDefaultPrecision);
    std::vector<ChainComplex> complexes;
    for (const auto& c : obj.at("complexes")) {
        json patched = c;
        if (!patched.contains("p")) patched["p"] = p;
        if (!patched.contains("precision")) patched["precision"] = precision;
        complexes.push_back(complex_from_json(patched));
    }
    std::vector<SeriesMatrix> maps;
    if (obj.contains("maps"))
        for (size_t i = 0; i < obj.at("maps").size(); ++i)
            maps.push_back(matrix_entries_from_json(obj.at("maps")[i], complexes[i + 1].size(),
                                                    complexes[i].size(), p, precision));
    std::optional<std::vector<TruncatedSeries>> unit;
    if (obj.contains("unit")) {
        const auto& u = obj.at("unit");
        std::vector<TruncatedSeries> vec(complexes.front().size(),
                                         TruncatedSeries::zero(p, precision));
        if (u.is_string()) {
            // a generator label
            bool found = false;
            for (int g = 0; g < complexes.front().size(); ++g)
                if (complexes.front().generators()[g].label == u.get<std::string>()) {
                    vec[g] = TruncatedSeries::one(p, precision);
                    found = true;
                }
            if (!found) throw domain_error("unit label not found in the first complex");
        } else {
            for (size_t g = 0; g < u.size() && g < vec.size(); ++g)
                vec[g] = series_from_json(u[g], p, precision);
        }
        unit = std::move(vec);
    }
    return SlopeDiagram(std::move(slopes), std::move(complexes), std::move(maps), std::move(unit));
}

// ---------------------------------------------------------------------------
// Paths.

inline json barycentric_to_json(const BarycentricPoint& point) {
    json arr = json::array();
    for (const auto& r : point) arr.push_back(r.str());
    return arr;
}

}  // namespace floerkit::io
