// Command-line front end: JSON in, JSON or aligned text out, deterministic
// exit codes (0 success / verified, 1 verification failure, 2 input error).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "floerkit/json_io.hpp"
#include "floerkit/selftest.hpp"

using floerkit::io::json;

namespace {

int default_precision() {
    if (const char* env = std::getenv("FLOERKIT_PRECISION")) {
        int value = std::atoi(env);
        if (value >= 1) return value;
    }
    return floerkit::kDefaultPrecision;
}

json load_input(const std::string& spec) {
    std::string text;
    if (spec == "-") {
        std::stringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    } else if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) {
        text = spec;
    } else {
        std::ifstream file(spec);
        if (!file) throw floerkit::domain_error("cannot open input file " + spec);
        std::stringstream buffer;
        buffer << file.rdbuf();
        text = buffer.str();
    }
    return json::parse(text);
}

json with_default_precision(json obj) {
    if (obj.is_object() && !obj.contains("precision")) obj["precision"] = default_precision();
    return obj;
}

struct Emitter {
    bool as_json = false;
    void print(const json& out, const std::function<void(const json&)>& text_renderer) const {
        if (as_json) {
            std::cout << out.dump(2) << "\n";
        } else {
            text_renderer(out);
        }
    }
};

void render_finmodule_line(const std::string& label, const json& m) {
    std::cout << label << ": free rank " << m.at("free_rank").get<int>() << ", torsion [";
    bool first = true;
    for (const auto& e : m.at("torsion")) {
        if (!first) std::cout << ", ";
        std::cout << "x^" << e.get<int>();
        first = false;
    }
    std::cout << "]";
    if (m.value("precision_limited", false)) std::cout << " (precision limited)";
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chain-level toolkit: truncated-coefficient homological algebra, "
                 "equivariant Morse models, simplex path combinatorics, and the "
                 "linear-model index computations"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("-f,--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));

    auto* cz_cmd = app.add_subcommand("cz", "Conley-Zehnder index of an isotopy");
    std::string cz_input;
    cz_cmd->add_option("input", cz_input, "JSON file, inline JSON, or - for stdin")->required();

    auto* mu_cmd = app.add_subcommand("mu", "index minus complex dimension");
    std::string mu_input;
    mu_cmd->add_option("input", mu_input)->required();

    auto* spec_cmd = app.add_subcommand("spectrum", "rotation spectrum of the time-1 map");
    std::string spec_input;
    double spec_lo = 0.0, spec_hi = 1.0;
    spec_cmd->add_option("input", spec_input)->required();
    spec_cmd->add_option("--from", spec_lo, "window lower bound");
    spec_cmd->add_option("--to", spec_hi, "window upper bound");

    auto* compose_cmd = app.add_subcommand("compose", "compose a chain of isotopy families");
    std::string compose_input;
    compose_cmd->add_option("input", compose_input)->required();

    auto* nerve_cmd = app.add_subcommand("nerve-verify", "check the structural equation");
    std::string nerve_input;
    nerve_cmd->add_option("input", nerve_input)->required();

    auto* cone_cmd = app.add_subcommand("cone", "mapping cone of a chain map");
    std::string cone_input;
    cone_cmd->add_option("input", cone_input)->required();

    auto* morse_cmd = app.add_subcommand("morse-eq", "equivariant Morse complex and unit verdict");
    std::string morse_input;
    int morse_level = 8;
    morse_cmd
        ->add_option("input", morse_input,
                     "JSON data or a builtin name like pt:p=3, free-orbit:p=2, "
                     "fixed-plus-orbit:p=5")
        ->required();
    morse_cmd->add_option("--level", morse_level, "skeleton level of the classifying model");

    auto* paths_cmd = app.add_subcommand("paths", "straight-line path combinatorics");
    int paths_n = 2;
    std::string paths_cube, paths_eval, paths_push;
    paths_cmd->add_option("--n", paths_n, "simplex dimension")->required();
    paths_cmd->add_option("--cube", paths_cube, "comma-separated rational coordinates");
    paths_cmd->add_option("--eval", paths_eval, "comma-separated times to evaluate");
    paths_cmd->add_option("--push", paths_push, "monotone map images, e.g. 0,2,3");

    auto* diag_cmd = app.add_subcommand("diagram-mu", "unit measurement on a slope diagram");
    std::string diag_input;
    int diag_at = -1;
    diag_cmd->add_option("input", diag_input)->required();
    diag_cmd->add_option("--at", diag_at, "probe index (default: every index)");

    auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    bool corrupt = false;
    self_cmd->add_flag("--corrupt-sign", corrupt,
                       "deliberately flip a witness sign; the run must fail naming the identity");

    CLI11_PARSE(app, argc, argv);
    Emitter emit{format == "json"};

    try {
        if (*cz_cmd || *mu_cmd) {
            auto obj = load_input(*cz_cmd ? cz_input : mu_input);
            auto iso = floerkit::io::isotopy_from_json(obj);
            int value =
                *cz_cmd ? floerkit::linear::cz_index(iso) : floerkit::linear::mu_linear(iso);
            json out{{*cz_cmd ? "cz" : "mu", value}, {"n", iso.complex_dim()}};
            emit.print(out, [&](const json&) { std::cout << value << "\n"; });
            return 0;
        }
        if (*spec_cmd) {
            auto obj = load_input(spec_input);
            auto iso = floerkit::io::isotopy_from_json(obj);
            auto window = floerkit::linear::spectrum(iso.value(1.0), spec_lo, spec_hi);
            json points = json::array();
            for (double s : window.points) points.push_back(s);
            json out{{"from", spec_lo}, {"to", spec_hi}, {"points", points}};
            emit.print(out, [&](const json&) {
                std::cout << "spectrum in [" << spec_lo << ", " << spec_hi << "]:";
                for (double s : window.points) std::cout << " " << s;
                std::cout << "\n";
            });
            return 0;
        }
        if (*compose_cmd) {
            auto obj = load_input(compose_input);
            std::vector<floerkit::linear::IsotopyFamily> families;
            for (const auto& fam : obj.at("simplices"))
                families.push_back(floerkit::io::family_from_json(fam));
            floerkit::linear::ComposedFamily composed(families);
            auto report = composed.verify();
            auto time1 = composed.value(1.0, 1.0);
            json matrix = json::array();
            for (int i = 0; i < time1.rows(); ++i) {
                json row = json::array();
                for (int j = 0; j < time1.cols(); ++j) row.push_back(time1(i, j));
                matrix.push_back(row);
            }
            json out{{"composable", report.composable},
                     {"start_identity", report.start_identity},
                     {"end_telescopes", report.end_telescopes},
                     {"max_defect", report.max_defect},
                     {"time1_at_s1", matrix}};
            emit.print(out, [&](const json&) {
                std::cout << (report.composable ? "composable" : "NOT composable")
                          << ", start identity " << (report.start_identity ? "ok" : "BROKEN")
                          << ", end telescopes " << (report.end_telescopes ? "ok" : "BROKEN")
                          << ", max defect " << report.max_defect << "\n";
            });
            return (report.composable && report.start_identity && report.end_telescopes) ? 0 : 1;
        }
        if (*nerve_cmd) {
            auto obj = with_default_precision(load_input(nerve_input));
            auto data = floerkit::io::functor_from_json(obj);
            auto report = data.verify();
            json entries = json::array();
            for (const auto& e : report.entries) {
                std::string key;
                for (int v : e.subsimplex) key += std::to_string(v);
                entries.push_back({{"subsimplex", key}, {"vanishes", e.vanishes}});
            }
            json out{{"all_vanish", report.all_vanish()}, {"residuals", entries}};
            emit.print(out, [&](const json&) {
                for (const auto& e : report.entries) {
                    std::string key;
                    for (int v : e.subsimplex) key += std::to_string(v);
                    std::cout << "  [" << key << "] residual "
                              << (e.vanishes ? "vanishes" : "NONZERO") << "\n";
                }
                std::cout << (report.all_vanish() ? "structural equation holds"
                                                  : "structural equation VIOLATED")
                          << "\n";
            });
            return report.all_vanish() ? 0 : 1;
        }
        if (*cone_cmd) {
            auto obj = load_input(cone_input);
            int precision = obj.value("precision", default_precision());
            json src_json = obj.at("source");
            json tgt_json = obj.at("target");
            if (obj.contains("p")) {
                if (!src_json.contains("p")) src_json["p"] = obj.at("p");
                if (!tgt_json.contains("p")) tgt_json["p"] = obj.at("p");
            }
            auto source = floerkit::io::complex_from_json(src_json, precision);
            auto target = floerkit::io::complex_from_json(tgt_json, precision);
            auto map = floerkit::io::matrix_entries_from_json(
                obj.at("map"), target.size(), source.size(), source.modulus(), source.precision());
            floerkit::ChainMap f(source, target, 0, map);
            auto cone = floerkit::mapping_cone(f);
            auto h = floerkit::homology(cone);
            json out{{"cone", floerkit::io::complex_to_json(cone)},
                     {"homology", floerkit::io::graded_to_json(h)}};
            emit.print(out, [&](const json&) {
                std::cout << "cone on " << cone.size() << " generators\n";
                render_finmodule_line("H_even", floerkit::io::finmodule_to_json(h.even));
                render_finmodule_line("H_odd", floerkit::io::finmodule_to_json(h.odd));
            });
            return 0;
        }
        if (*morse_cmd) {
            std::optional<floerkit::GMorseData> data;
            std::uint32_t p = 2;
            if (morse_input.rfind("pt:p=", 0) == 0) {
                p = std::stoul(morse_input.substr(5));
                data = floerkit::single_fixed_point(p);
            } else if (morse_input.rfind("free-orbit:p=", 0) == 0) {
                p = std::stoul(morse_input.substr(13));
                data = floerkit::free_orbit(p);
            } else if (morse_input.rfind("fixed-plus-orbit:p=", 0) == 0) {
                p = std::stoul(morse_input.substr(19));
                data = floerkit::fixed_plus_free_orbit(p);
            } else {
                auto obj = load_input(morse_input);
                data = floerkit::io::morse_from_json(obj);
                p = data->group_order();
            }
            auto bg = floerkit::build_bg_model(p, morse_level);
            auto eq = floerkit::build_cm_eq(*data, bg, default_precision());
            auto h = floerkit::homology(eq.complex);
            auto verdict = floerkit::unit_torsion_check(eq);
            std::string verdict_name =
                verdict.verdict == floerkit::UnitVerdict::NotTorsion
                    ? "NOT-TORSION"
                    : verdict.verdict == floerkit::UnitVerdict::Torsion ? "TORSION" : "DEGENERATE";
            json out{{"p", p},
                     {"generators", eq.complex.size()},
                     {"homology", floerkit::io::graded_to_json(h)},
                     {"unit", verdict_name}};
            if (verdict.verdict == floerkit::UnitVerdict::Torsion)
                out["unit_torsion_bound"] = verdict.torsion_bound;
            emit.print(out, [&](const json&) {
                std::cout << "equivariant complex on " << eq.complex.size() << " generators\n";
                render_finmodule_line("H_even", floerkit::io::finmodule_to_json(h.even));
                if (eq.complex.graded())
                    render_finmodule_line("H_odd", floerkit::io::finmodule_to_json(h.odd));
                std::cout << "unit: " << verdict_name;
                if (verdict.verdict == floerkit::UnitVerdict::Torsion)
                    std::cout << " (x-power " << verdict.torsion_bound << ")";
                std::cout << "\n";
            });
            return 0;
        }
        if (*paths_cmd) {
            std::vector<floerkit::Rational> cube;
            if (!paths_cube.empty()) {
                std::stringstream ss(paths_cube);
                std::string token;
                while (std::getline(ss, token, ','))
                    cube.push_back(floerkit::Rational::parse(token));
            }
            auto path = floerkit::from_cube(paths_n, cube);
            json out;
            json taus = json::array();
            for (const auto& t : path.taus()) taus.push_back(t.str());
            out["taus"] = taus;
            json layout_json = json::array();
            std::string layout_err;
            try {
                auto layout = floerkit::interval_layout(path);
                for (const auto& [lo, hi] : layout.intervals)
                    layout_json.push_back({{"from", lo.str()}, {"to", hi.str()}});
                out["intervals"] = layout_json;
            } catch (const floerkit::degenerate_layout_error& e) {
                out["intervals_degenerate"] = e.what();
                layout_err = e.what();
            }
            json evals = json::array();
            if (!paths_eval.empty()) {
                std::stringstream ss(paths_eval);
                std::string token;
                while (std::getline(ss, token, ',')) {
                    auto tau = floerkit::Rational::parse(token);
                    evals.push_back(
                        {{"tau", tau.str()},
                         {"point", floerkit::io::barycentric_to_json(path.evaluate(tau))}});
                }
                out["evaluations"] = evals;
            }
            if (!paths_push.empty()) {
                std::stringstream ss(paths_push);
                std::string token;
                std::vector<int> images;
                while (std::getline(ss, token, ',')) images.push_back(std::stoi(token));
                int target = 0;
                for (int v : images) target = std::max(target, v);
                floerkit::MonotoneMap f(images, target);
                auto push = floerkit::pushforward(f, path);
                json rho = json::array();
                for (const auto& [t, v] : push.rho.breakpoints)
                    rho.push_back({{"tau", t.str()}, {"rho", v.str()}});
                out["pushforward"] = {{"rho", rho},
                                      {"segment_from", push.segment.sigma_lo.str()},
                                      {"segment_to", push.segment.sigma_hi.str()}};
            }
            emit.print(out, [&](const json&) {
                std::cout << "taus:";
                for (const auto& t : path.taus()) std::cout << " " << t.str();
                std::cout << "\n";
                if (layout_err.empty()) {
                    std::cout << "intervals:";
                    for (const auto& item : layout_json)
                        std::cout << " [" << item.at("from").get<std::string>() << ", "
                                  << item.at("to").get<std::string>() << "]";
                    std::cout << "\n";
                } else {
                    std::cout << "intervals: degenerate (" << layout_err << ")\n";
                }
                for (const auto& e : evals) {
                    std::cout << "  l(" << e.at("tau").get<std::string>() << ") =";
                    for (const auto& c : e.at("point")) std::cout << " " << c.get<std::string>();
                    std::cout << "\n";
                }
            });
            return 0;
        }
        if (*diag_cmd) {
            auto obj = with_default_precision(load_input(diag_input));
            auto diagram = floerkit::io::diagram_from_json(obj);
            json out;
            json values = json::array();
            auto run_probe = [&](int index) {
                auto mu = floerkit::mu_from_diagram(diagram, index);
                json one{{"index", index}};
                if (mu.degenerate) one["degenerate"] = true;
                else if (mu.unreachable) one["unreachable"] = true;
                else {
                    one["mu"] = mu.value;
                    if (mu.precision_limited) one["precision_limited"] = true;
                }
                values.push_back(one);
            };
            if (diag_at >= 0) run_probe(diag_at);
            else
                for (int i = 0; i < diagram.length(); ++i) run_probe(i);
            out["values"] = values;
            emit.print(out, [&](const json&) {
                for (const auto& one : values) {
                    std::cout << "index " << one.at("index").get<int>() << ": ";
                    if (one.value("degenerate", false)) std::cout << "degenerate";
                    else if (one.value("unreachable", false)) std::cout << "unreachable";
                    else std::cout << "mu = " << one.at("mu").get<int>();
                    std::cout << "\n";
                }
            });
            return 0;
        }
        if (*self_cmd) {
            floerkit::selftest::Options opts;
            opts.corrupt_sign = corrupt;
            auto t0 = std::chrono::steady_clock::now();
            auto results = floerkit::selftest::run_acceptance(opts);
            auto t1 = std::chrono::steady_clock::now();
            double total = std::chrono::duration<double>(t1 - t0).count();
            bool all = true;
            for (const auto& r : results) all = all && r.passed;
            bool in_budget = total < 120.0;
            if (emit.as_json) {
                // no timings in json mode, only the budget verdict, so output
                // stays byte-deterministic
                json out;
                json list = json::array();
                for (const auto& r : results) {
                    json one{{"name", r.name}, {"passed", r.passed}};
                    if (!r.detail.empty()) one["detail"] = r.detail;
                    list.push_back(one);
                }
                out["criteria"] = list;
                out["all_passed"] = all;
                out["runtime_within_budget"] = in_budget;
                std::cout << out.dump(2) << "\n";
            } else {
                for (const auto& r : results)
                    std::printf("[%s] %-24s %7.2fs (budget %.0fs)%s%s\n",
                                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                                r.budget_seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
                std::printf("[%s] %-24s %7.2fs (budget 120s)\n", in_budget ? "PASS" : "FAIL",
                            "total-wall-clock", total);
            }
            return (all && in_budget) ? 0 : 1;
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const floerkit::contract_violation& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const floerkit::precision_error& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
