#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cyleig/certificate.hpp"
#include "cyleig/solver.hpp"

namespace cyleig {

inline constexpr const char* kVersion = "cyleig 0.1.0";

nlohmann::json geometry_to_json(const SurfaceGeometry& geo);
nlohmann::json certificate_to_json(const CertificateReport& rep, int genus, double alpha);
nlohmann::json spectrum_to_json(const SpectrumReport& rep);
nlohmann::json mesh_to_json(const GluedMesh& mesh);

// RFC-4180 field quoting (quote when the field contains comma/quote/newline).
std::string csv_field(const std::string& value);
std::string csv_row(const std::vector<std::string>& fields);

// Minimal static SVG 1.1 line chart; one polyline per series, shared x values.
struct PlotSeries {
    std::string label;
    std::vector<double> y;
};
std::string line_plot_svg(const std::string& title, const std::vector<double>& x,
                          const std::vector<PlotSeries>& series);

}  // namespace cyleig
