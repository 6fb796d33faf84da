#include "cyleig/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyleig {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

const char* sector_name(Sector s) {
    switch (s) {
        case Sector::odd: return "odd";
        case Sector::even: return "even";
        default: return "full";
    }
}

}  // namespace

json geometry_to_json(const SurfaceGeometry& geo) {
    json j;
    j["version"] = kVersion;
    j["genus"] = geo.genus;
    j["alpha"] = geo.alpha;
    j["alpha_prime"] = geo.alpha_prime;
    j["ell"] = geo.ell;
    j["threshold"] = 1.0 / (geo.ell * geo.ell);
    json disks = json::array(), cores = json::array(), gens = json::array();
    for (const auto& d : geo.disks)
        disks.push_back({{"center", complex_to_json(d.center)},
                         {"radius", d.radius},
                         {"orthogonality_residual", d.orthogonality_residual()}});
    for (const auto& d : geo.core_disks)
        cores.push_back({{"center", complex_to_json(d.center)},
                         {"radius", d.radius},
                         {"orthogonality_residual", d.orthogonality_residual()}});
    for (const auto& s : geo.generators)
        gens.push_back({{"a", complex_to_json(s.a())},
                        {"b", complex_to_json(s.b())},
                        {"normalization_residual", s.normalization_residual()}});
    j["disks"] = disks;
    j["core_disks"] = cores;
    j["generators"] = gens;
    // identity residuals of the defining relations
    const int n = 4 * geo.genus;
    double pairing_residual = 0.0;
    for (int k = 1; k <= 2 * geo.genus; ++k) {
        const OrthoDisk& from = geo.disks[k - 1];
        const OrthoDisk& to = geo.disks[k - 1 + 2 * geo.genus];
        for (int i = 0; i < 16; ++i) {
            const Complex z = from.center + from.radius * std::polar(1.0, 2 * M_PI * i / 16.0);
            if (std::abs(z) >= 1.0) continue;
            const Complex w = geo.generators[k - 1](z);
            pairing_residual = std::max(pairing_residual,
                                        std::abs(std::abs(w - to.center) - to.radius));
        }
    }
    j["pairing_residual"] = pairing_residual;
    double perp_residual = 0.0;
    for (int i = 0; i < n; ++i) {
        const double inv = inversive_distance(geo.core_disks[i], geo.disks[i % n]);
        perp_residual = std::max(perp_residual, std::abs(inv));  // 0 = orthogonal
    }
    j["core_side_orthogonality_residual"] = perp_residual;
    return j;
}

json certificate_to_json(const CertificateReport& rep, int genus, double alpha) {
    json j;
    j["version"] = kVersion;
    j["genus"] = genus;
    j["alpha"] = alpha;
    j["dirichlet_energy"] = rep.dirichlet_energy;
    j["weighted_l2"] = rep.weighted_l2;
    j["rayleigh"] = rep.rayleigh;
    j["ell"] = rep.ell;
    j["threshold"] = rep.threshold;
    j["holds"] = rep.holds;
    j["equivalent_form_value"] = rep.equivalent_form_value;
    j["quadrature_error_estimate"] = rep.quadrature_error_estimate;
    return j;
}

json spectrum_to_json(const SpectrumReport& rep) {
    json j;
    j["version"] = kVersion;
    j["sector"] = sector_name(rep.sector);
    j["ell"] = rep.ell;
    j["threshold"] = rep.threshold;
    j["h"] = rep.h;
    j["L"] = rep.L;
    j["eigenvalues_dirichlet"] = rep.eigenvalues_dirichlet;
    j["residuals_dirichlet"] = rep.residuals_dirichlet;
    j["eigenvalues_neumann"] = rep.eigenvalues_neumann;
    j["residuals_neumann"] = rep.residuals_neumann;
    j["count_below_threshold"] = rep.count_below_threshold;
    j["decay_rate_estimate"] = rep.decay_rate_est;
    j["L_sequence"] = rep.L_sequence;
    j["lambda_min_by_L"] = rep.lambda_min_by_L;
    j["warnings"] = rep.warnings;
    return j;
}

json mesh_to_json(const GluedMesh& mesh) {
    json j;
    j["version"] = kVersion;
    j["h"] = mesh.h;
    j["L"] = mesh.L;
    j["ell"] = mesh.ell;
    j["num_core"] = mesh.num_core;
    json cv = json::array(), ev = json::array(), tris = json::array();
    for (const auto& z : mesh.core_vertices) cv.push_back(complex_to_json(z));
    for (const auto& v : mesh.end_vertices) ev.push_back(json::array({v[0], v[1]}));
    for (size_t t = 0; t < mesh.triangles.size(); ++t)
        tris.push_back(json::array({mesh.triangles[t][0], mesh.triangles[t][1],
                                    mesh.triangles[t][2], mesh.tri_chart[t]}));
    j["core_vertices"] = cv;
    j["end_vertices"] = ev;
    j["triangles"] = tris;
    json sp = json::array();
    for (const auto& p : mesh.side_pairings)
        sp.push_back(json::array({p.a, p.b, p.transform}));
    j["side_pairings"] = sp;
    j["interface_pairs"] = mesh.interface_pairs;
    j["symmetry_pairs"] = mesh.symmetry_pairs;
    j["fixed_nodes"] = mesh.fixed_nodes;
    j["truncation_nodes"] = mesh.truncation_nodes;
    return j;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

std::string line_plot_svg(const std::string& title, const std::vector<double>& x,
                          const std::vector<PlotSeries>& series) {
    const int W = 640, H = 420, ML = 60, MR = 20, MT = 40, MB = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto& s : series)
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
       << H - MB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ML << "\" y=\"" << H - MB + 16 << "\" font-size=\"11\">" << xmin
       << "</text>\n<text x=\"" << W - MR - 40 << "\" y=\"" << H - MB + 16
       << "\" font-size=\"11\">" << xmax << "</text>\n";
    os << "<text x=\"4\" y=\"" << H - MB << "\" font-size=\"11\">" << ymin
       << "</text>\n<text x=\"4\" y=\"" << MT + 10 << "\" font-size=\"11\">" << ymax
       << "</text>\n";
    for (size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[s % 4] << "\" points=\"";
        for (size_t i = 0; i < x.size() && i < series[s].y.size(); ++i) {
            if (!std::isfinite(series[s].y[i])) continue;
            os << px(x[i]) << "," << py(series[s].y[i]) << " ";
        }
        os << "\"/>\n";
        os << "<text x=\"" << W - MR - 150 << "\" y=\"" << MT + 16 * (s + 1)
           << "\" font-size=\"12\" fill=\"" << colors[s % 4] << "\">" << series[s].label
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cyleig
