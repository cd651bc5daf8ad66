#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "holo/codes.hpp"
#include "holo/dynamics.hpp"
#include "holo/loops.hpp"
#include "holo/mpod.hpp"
#include "holo/transport.hpp"

// Serialization: the shared JSON matrix format
// {"rows": R, "cols": C, "data": [[re, im], ...]} (row-major), the LoopSpec
// schema, and plot-ready CSV emitters. CSV uses "." decimals, UTF-8, LF.

namespace holo {

using nlohmann::json;

inline json matrix_to_json(const Matrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            data.push_back({m(i, j).real(), m(i, j).imag()});
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline Matrix matrix_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
        throw InvalidSpec("matrix_from_json: data length does not match shape");
    }
    Matrix m(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j2 = 0; j2 < cols; ++j2, ++k) {
            m(i, j2) = Complex(data[k][0].get<double>(), data[k][1].get<double>());
        }
    }
    return m;
}

inline json loop_spec_to_json(const LoopSpec& spec) {
    json params;
    std::string variant;
    if (const auto* p = std::get_if<PlaquetteSpec>(&spec.params)) {
        variant = "plaquette";
        params = {{"alpha", p->alpha}, {"beta", p->beta}, {"kappa", p->kappa}};
    } else if (const auto* t = std::get_if<ThetaWindingSpec>(&spec.params)) {
        variant = "theta_winding";
        json radii = json::array();
        for (Eigen::Index i = 0; i < t->radii.size(); ++i) radii.push_back(t->radii[i]);
        params = {{"arm", t->arm}, {"radii", std::move(radii)}, {"windings", t->windings}};
    } else if (const auto* s = std::get_if<SphericalArcSpec>(&spec.params)) {
        variant = "spherical_arc";
        params = {{"phi0", s->phi0},
                  {"phi1", s->phi1},
                  {"theta0", s->theta0},
                  {"theta1", s->theta1},
                  {"kappa", s->kappa}};
    } else {
        variant = "piecewise_linear";
        const auto& pw = std::get<PiecewiseLinearSpec>(spec.params);
        json vertices = json::array();
        for (const auto& v : pw.vertices) {
            json vertex = json::array();
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                vertex.push_back({v[i].real(), v[i].imag()});
            }
            vertices.push_back(std::move(vertex));
        }
        params = {{"vertices", std::move(vertices)}};
    }
    return json{{"variant", variant},
                {"params", std::move(params)},
                {"orientation", spec.orientation},
                {"steps", spec.steps}};
}

inline LoopSpec loop_spec_from_json(const json& j) {
    LoopSpec spec;
    spec.orientation = j.at("orientation").get<int>();
    spec.steps = j.at("steps").get<int>();
    const std::string variant = j.at("variant").get<std::string>();
    const json& params = j.at("params");
    if (variant == "plaquette") {
        spec.params = PlaquetteSpec{params.at("alpha").get<double>(),
                                    params.at("beta").get<double>(),
                                    params.at("kappa").get<double>()};
    } else if (variant == "theta_winding") {
        ThetaWindingSpec t;
        t.arm = params.at("arm").get<int>();
        const auto& radii = params.at("radii");
        t.radii.resize(static_cast<Eigen::Index>(radii.size()));
        for (std::size_t i = 0; i < radii.size(); ++i) {
            t.radii[static_cast<Eigen::Index>(i)] = radii[i].get<double>();
        }
        t.windings = params.at("windings").get<int>();
        spec.params = std::move(t);
    } else if (variant == "spherical_arc") {
        spec.params = SphericalArcSpec{params.at("phi0").get<double>(),
                                       params.at("phi1").get<double>(),
                                       params.at("theta0").get<double>(),
                                       params.at("theta1").get<double>(),
                                       params.at("kappa").get<double>()};
    } else if (variant == "piecewise_linear") {
        PiecewiseLinearSpec pw;
        for (const auto& vertex : params.at("vertices")) {
            Vector v(static_cast<Eigen::Index>(vertex.size()));
            for (std::size_t i = 0; i < vertex.size(); ++i) {
                v[static_cast<Eigen::Index>(i)] =
                    Complex(vertex[i][0].get<double>(), vertex[i][1].get<double>());
            }
            pw.vertices.push_back(std::move(v));
        }
        spec.params = std::move(pw);
    } else {
        throw InvalidSpec("loop_spec_from_json: unknown variant '" + variant + "'");
    }
    return spec;
}

inline json holonomy_result_to_json(const HolonomyResult& result, SubspaceSelector selector) {
    return json{{"unitary", matrix_to_json(result.unitary)},
                {"frame_start", matrix_to_json(result.frame_start)},
                {"steps", result.steps},
                {"error_estimate", result.error_estimate},
                {"selector", selector.order}};
}

inline json gate_report_to_json(const GateReport& report) {
    json j{{"unitary", matrix_to_json(report.unitary)},
           {"leakage", report.leakage},
           {"factorizable", report.factorization.factorizable},
           {"factorization_residual", report.factorization.residual}};
    if (report.factorization.factorizable) {
        j["factor_first"] = matrix_to_json(report.factorization.first);
        j["factor_second"] = matrix_to_json(report.factorization.second);
    }
    return j;
}

namespace detail {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

inline std::string degeneracy_table_csv(const DegeneracyTable& table) {
    std::string out = "N,M,n,dimension\n";
    for (const auto& [order, dim] : table.entries) {
        out += std::to_string(table.photon_number) + "," + std::to_string(table.arms) + "," +
               std::to_string(order) + "," + std::to_string(dim) + "\n";
    }
    return out;
}

inline std::string spectrum_csv(const SpectralDecomposition& sd) {
    std::string out = "order,multiplicity,energy,residual\n";
    for (const auto& lvl : sd.levels()) {
        const double residual = std::abs(lvl.energy - lvl.order * sd.energy_scale());
        out += std::to_string(lvl.order) + "," + std::to_string(lvl.multiplicity) + "," +
               detail::format_double(lvl.energy) + "," + detail::format_double(residual) + "\n";
    }
    return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "T,leakage,block_error\n";
    for (const auto& row : rows) {
        out += detail::format_double(row.total_time) + "," + detail::format_double(row.leakage) +
               "," + detail::format_double(row.block_error) + "\n";
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_text_file: cannot open " + path);
    out << content;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_text_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace holo
