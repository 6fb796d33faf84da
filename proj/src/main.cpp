// Configuration-driven command line front end: geometry construction,
// certificate evaluation, spectrum computation, parameter sweeps, and mesh
// export.  One JSON config per run; scalar fields may be overridden with
// --set path=value.  Exit codes: 0 success, 2 validation error, 3 numerical
// convergence error.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyleig/certificate.hpp"
#include "cyleig/errors.hpp"
#include "cyleig/report.hpp"
#include "cyleig/solver.hpp"

using nlohmann::json;
using namespace cyleig;

namespace {

json default_config() {
    return json{
        {"genus", 1},
        {"alpha", 0.75},  // may be the string "auto"
        {"alpha_margin", 0.05},
        {"test_function", {{"family", "im_zk"}, {"k", 1}, {"p", 3}}},
        {"end", {{"r0", 1.0}, {"R", 3.0}, {"L", "auto"}}},
        {"mesh", {{"h", 0.05}}},
        {"solver", {{"k", 6}, {"tol", 1e-8}}},
        {"sector", "odd"},
        {"sweep", {{"alpha_min", 0.55}, {"alpha_max", 0.78}, {"count", 24}, {"solve", false}}},
        {"output", {{"dir", "."}, {"prefix", "run"}, {"eigenvectors", false}, {"svg", false}}},
    };
}

void deep_merge(json& base, const json& over) {
    if (!over.is_object() || !base.is_object()) {
        base = over;
        return;
    }
    for (auto it = over.begin(); it != over.end(); ++it) {
        if (base.contains(it.key()))
            deep_merge(base[it.key()], it.value());
        else
            base[it.key()] = it.value();
    }
}

void apply_set(json& cfg, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw DomainError("--set expects path=value: " + kv);
    const std::string path = kv.substr(0, eq), raw = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (...) {
        value = raw;  // bare string
    }
    json* node = &cfg;
    size_t pos = 0;
    while (true) {
        const size_t dot = path.find('.', pos);
        const std::string key = path.substr(pos, dot - pos);
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

TestFunction make_test_function(const json& cfg) {
    const json& tf = cfg.at("test_function");
    const std::string family = tf.value("family", "im_zk");
    if (family == "im_zk") return TestFunction::family(tf.value("k", 1), tf.value("p", 3));
    if (family == "tabulated")
        return TestFunction::tabulated(tf.value("k", 1),
                                       tf.at("samples").get<std::vector<double>>());
    throw DomainError("unknown test_function.family: " + family);
}

// Resolve alpha = "auto" to the critical angle plus the configured margin.
double resolve_alpha(json& cfg) {
    const int genus = cfg.at("genus").get<int>();
    if (cfg.at("alpha").is_string()) {
        if (cfg.at("alpha").get<std::string>() != "auto")
            throw DomainError("alpha must be a number or \"auto\"");
        const TestFunction phi = make_test_function(cfg);
        const double astar = critical_alpha(phi, genus);
        const double margin = cfg.value("alpha_margin", 0.05);
        const double alpha = std::min(astar + margin, M_PI / (4.0 * genus) - 0.01);
        cfg["alpha_star"] = astar;
        cfg["alpha"] = alpha;
    }
    return cfg.at("alpha").get<double>();
}

Sector parse_sector(const std::string& s) {
    if (s == "odd") return Sector::odd;
    if (s == "even") return Sector::even;
    if (s == "full") return Sector::full;
    throw DomainError("sector must be odd|even|full");
}

std::filesystem::path output_dir(const json& cfg) {
    std::string dir = cfg.at("output").value("dir", ".");
    if (const char* env = std::getenv("CYLEIG_OUTPUT_DIR")) dir = env;
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw DomainError("cannot write output file: " + p.string());
    os << content;
}

SpectrumConfig spectrum_config(json& cfg) {
    SpectrumConfig sc;
    sc.genus = cfg.at("genus").get<int>();
    sc.alpha = resolve_alpha(cfg);
    if (cfg.contains("alpha_prime") && cfg.at("alpha_prime").is_number())
        sc.alpha_prime = cfg.at("alpha_prime").get<double>();
    sc.r0 = cfg.at("end").value("r0", 1.0);
    sc.R = cfg.at("end").value("R", 3.0);
    sc.L = cfg.at("end").at("L").is_number() ? cfg.at("end").at("L").get<double>() : 0.0;
    sc.h = cfg.at("mesh").value("h", 0.05);
    sc.k = cfg.at("solver").value("k", 6);
    sc.tol = cfg.at("solver").value("tol", 1e-8);
    sc.sector = parse_sector(cfg.value("sector", "odd"));
    return sc;
}

SurfaceGeometry build_geometry(json& cfg) {
    const int genus = cfg.at("genus").get<int>();
    const double alpha = resolve_alpha(cfg);
    if (cfg.contains("alpha_prime") && cfg.at("alpha_prime").is_number())
        return make_surface_broken(alpha, cfg.at("alpha_prime").get<double>());
    return make_surface(genus, alpha);
}

int run_geometry(json& cfg) {
    const SurfaceGeometry geo = build_geometry(cfg);
    json rep = geometry_to_json(geo);
    rep["config"] = cfg;
    const std::string text = rep.dump(2) + "\n";
    write_file(output_dir(cfg) / (cfg["output"].value("prefix", "run") + "_geometry.json"), text);
    std::cout << text;
    return 0;
}

int run_certify(json& cfg) {
    const int genus = cfg.at("genus").get<int>();
    const double alpha = resolve_alpha(cfg);
    const TestFunction phi = make_test_function(cfg);
    const CertificateReport rep = check_condition(phi, genus, alpha);
    json out = certificate_to_json(rep, genus, alpha);
    out["config"] = cfg;
    const std::string text = out.dump(2) + "\n";
    write_file(output_dir(cfg) / (cfg["output"].value("prefix", "run") + "_certificate.json"),
               text);
    std::cout << text;
    return 0;
}

int run_spectrum(json& cfg) {
    const SpectrumConfig sc = spectrum_config(cfg);
    const SpectrumReport rep = compute_spectrum(sc);
    json out = spectrum_to_json(rep);
    out["config"] = cfg;
    const std::string prefix = cfg["output"].value("prefix", "run");
    const auto dir = output_dir(cfg);
    write_file(dir / (prefix + "_spectrum.json"), out.dump(2) + "\n");
    if (cfg["output"].value("eigenvectors", false)) {
        // re-solve once at the reported truncation to export node values
        SurfaceGeometry geo = (sc.alpha_prime > 0.0)
                                  ? make_surface_broken(sc.alpha, sc.alpha_prime)
                                  : make_surface(sc.genus, sc.alpha);
        EndProfile profile = make_profile(sc.r0, sc.R, geo.ell);
        GluedMesh mesh = build_glued_mesh(geo, profile, rep.L, sc.h);
        AssembledSystem sys = assemble(mesh, &profile);
        ReducedSystem red = apply_sector(sys, mesh, sc.sector, TruncationBC::dirichlet);
        EigenSolveResult sol = solve_smallest(red.A, red.M, sc.k, sc.tol);
        std::string csv = csv_row({"node", "value"});
        if (sol.vectors.cols() > 0) {
            const auto values = expand_to_nodes(sys, red, sol.vectors.col(0));
            for (size_t i = 0; i < values.size(); ++i)
                csv += csv_row({std::to_string(i), std::to_string(values[i])});
        }
        write_file(dir / (prefix + "_eigenvector.csv"), csv);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_sweep(json& cfg) {
    const int genus = cfg.at("genus").get<int>();
    const TestFunction phi = make_test_function(cfg);
    const json& sw = cfg.at("sweep");
    const double a0 = sw.value("alpha_min", 0.55), a1 = sw.value("alpha_max", 0.78);
    const int count = sw.value("count", 24);
    const bool solve = sw.value("solve", false);
    if (!(count >= 2 && a0 < a1)) throw DomainError("sweep: need count >= 2 and alpha_min < alpha_max");

    const double energy = dirichlet_energy(phi), norm = weighted_l2(phi);
    const double rayleigh = energy / norm;
    std::string csv = csv_row({"alpha", "ell", "rayleigh", "threshold", "holds",
                               "lambda_min_odd"});
    std::vector<double> xs, thr_series, lam_series;
    for (int i = 0; i < count; ++i) {
        const double alpha = a0 + (a1 - a0) * i / double(count - 1);
        const double ell = boundary_length(genus, alpha);
        const double threshold = 1.0 / (ell * ell);
        const bool holds = rayleigh < threshold;
        std::string lam = "";
        double lam_val = std::nan("");
        if (solve) {
            json sub = cfg;
            sub["alpha"] = alpha;
            SpectrumConfig sc = spectrum_config(sub);
            sc.sector = Sector::odd;
            const SpectrumReport rep = compute_spectrum(sc);
            if (!rep.eigenvalues_dirichlet.empty()) {
                lam_val = rep.eigenvalues_dirichlet.front();
                lam = json(lam_val).dump();
            }
        }
        csv += csv_row({json(alpha).dump(), json(ell).dump(), json(rayleigh).dump(),
                        json(threshold).dump(), holds ? "true" : "false", lam});
        xs.push_back(alpha);
        thr_series.push_back(threshold);
        lam_series.push_back(lam_val);
    }
    const std::string prefix = cfg["output"].value("prefix", "run");
    const auto dir = output_dir(cfg);
    write_file(dir / (prefix + "_sweep.csv"), csv);
    if (cfg["output"].value("svg", false)) {
        std::vector<PlotSeries> series = {{"1/ell^2", thr_series}};
        if (solve) series.push_back({"lambda_min (odd)", lam_series});
        write_file(dir / (prefix + "_sweep.svg"),
                   line_plot_svg("spectrum vs alpha", xs, series));
    }
    std::cout << csv;
    return 0;
}

int run_mesh(json& cfg) {
    const SpectrumConfig sc = spectrum_config(cfg);
    SurfaceGeometry geo = (sc.alpha_prime > 0.0) ? make_surface_broken(sc.alpha, sc.alpha_prime)
                                                 : make_surface(sc.genus, sc.alpha);
    EndProfile profile = make_profile(sc.r0, sc.R, geo.ell);
    const double L = sc.L > 0.0 ? sc.L : sc.R + 2.0;
    GluedMesh mesh = build_glued_mesh(geo, profile, L, sc.h);
    json out = mesh_to_json(mesh);
    out["config"] = cfg;
    const std::string prefix = cfg["output"].value("prefix", "run");
    const auto dir = output_dir(cfg);
    write_file(dir / (prefix + "_mesh.json"), out.dump(2) + "\n");
    // profile samples for external plotting
    std::string csv = csv_row({"r", "F"});
    for (int i = 0; i <= 200; ++i) {
        const double r = L * i / 200.0;
        csv += csv_row({json(r).dump(), json(profile.F(r)).dump()});
    }
    write_file(dir / (prefix + "_profile.csv"), csv);
    std::cout << "{\"status\":\"ok\",\"nodes\":" << mesh.num_nodes()
              << ",\"triangles\":" << mesh.triangles.size() << "}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) + " - cylindrical-end surface eigenvalue toolkit"};
    app.set_version_flag("--version", kVersion);
    std::string config_path;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "JSON run configuration file");
    app.add_option("--set", sets, "override a config field: path.to.field=value");
    app.require_subcommand(1);
    auto* c_geo = app.add_subcommand("geometry", "construct the surface, emit JSON");
    auto* c_cert = app.add_subcommand("certify", "evaluate the eigenvalue certificate");
    auto* c_spec = app.add_subcommand("spectrum", "compute low eigenvalues (FEM)");
    auto* c_sweep = app.add_subcommand("sweep", "sweep alpha, emit CSV (and SVG)");
    auto* c_mesh = app.add_subcommand("mesh", "build and export the glued mesh");

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = default_config();
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw DomainError("cannot read config file: " + config_path);
            json user;
            is >> user;
            deep_merge(cfg, user);
        }
        for (const auto& kv : sets) apply_set(cfg, kv);

        if (c_geo->parsed()) return run_geometry(cfg);
        if (c_cert->parsed()) return run_certify(cfg);
        if (c_spec->parsed()) return run_spectrum(cfg);
        if (c_sweep->parsed()) return run_sweep(cfg);
        if (c_mesh->parsed()) return run_mesh(cfg);
        throw DomainError("no subcommand");
    } catch (const ConvergenceError& e) {
        std::cout << json{{"status", "error"}, {"kind", "convergence"}, {"reason", e.what()},
                          {"best_estimate", e.best}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const MeshError& e) {
        std::cout << json{{"status", "error"}, {"kind", "mesh"}, {"reason", e.what()}}.dump()
                  << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cout << json{{"status", "error"}, {"kind", "validation"}, {"reason", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cout << json{{"status", "error"}, {"kind", "validation"}, {"reason", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"status", "error"}, {"kind", "internal"}, {"reason", e.what()}}.dump()
                  << "\n";
        return 3;
    }
}
