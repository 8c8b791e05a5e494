#include "sessile/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sessile/errors.hpp"

namespace sessile {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string equilibrium_csv(const EquilibriumShape& shape) {
  std::string out = "x1,zeta0,dzeta0,d2zeta0\n";
  for (std::size_t i = 0; i < shape.x.size(); ++i)
    append_row(out, {shape.x[i], shape.z[i], shape.dz[i], shape.d2z[i]});
  return out;
}

std::string summary_csv(const EquilibriumShape& shape) {
  std::string out = "ell,P0,psi0,apex,mass_check\n";
  const double mass_check = std::abs(shape.mass_quadrature() - shape.mass) / shape.mass;
  append_row(out, {shape.ell, shape.P0, shape.psi0, shape.apex, mass_check});
  return out;
}

std::string timeseries_csv(const std::vector<DiagnosticsRow>& rows) {
  std::string out =
      "t,E,dE,D,residual,M,L,R,theta_L,theta_R,X1,X2,trace_mismatch,picard_iters,mass_correction\n";
  for (const auto& r : rows)
    append_row(out, {r.t, r.E, r.dE, r.D, r.residual, r.M, r.L, r.R, r.theta_L, r.theta_R, r.X1, r.X2,
                     r.trace_mismatch, double(r.picard_iters), r.mass_correction});
  return out;
}

std::string field_csv(const Mesh& mesh, const FlowField& flow) {
  const std::size_t n = mesh.n_nodes();
  std::vector<double> p(n, 0.0);
  for (int v = 0; v < mesh.n_vertices; ++v) p[v] = flow.p[v];
  static constexpr int ends[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& t : mesh.tri)
    for (int e = 0; e < 3; ++e) p[t[3 + e]] = 0.5 * (flow.p[t[ends[e][0]]] + flow.p[t[ends[e][1]]]);
  std::string out = "x1,x2,u1,u2,p\n";
  for (std::size_t i = 0; i < n; ++i)
    append_row(out, {mesh.nodes[i][0], mesh.nodes[i][1], flow.u1[i], flow.u2[i], p[i]});
  return out;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), std::streamsize(content.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace sessile
