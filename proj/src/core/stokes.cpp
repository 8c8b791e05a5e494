#include "sessile/stokes.hpp"

#include <cmath>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

StokesDiscretization make_discretization(std::shared_ptr<const Mesh> mesh) {
  StokesDiscretization d;
  d.mesh = mesh;
  const Mesh& m = *mesh;
  d.qc = build_quad_cache(m, 4);
  const int n = int(m.n_nodes());
  d.dof1.assign(n, -1);
  d.dof2.assign(n, -1);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    d.dof1[i] = k++;
    bool substrate = m.tag[i] == NodeTag::Bottom || m.tag[i] == NodeTag::ContactLeft ||
                     m.tag[i] == NodeTag::ContactRight;
    if (!substrate) d.dof2[i] = k++;
  }
  d.n_u = k;
  d.n_p = m.n_vertices;
  d.grid = SurfaceGrid(m.surface_vertices_x1());
  d.surface_node = m.surface_nodes();
  d.corner_left_dof = d.dof1[m.corner_left];
  d.corner_right_dof = d.dof1[m.corner_right];
  return d;
}

MapField identity_map(const Mesh& m) {
  MapField f;
  f.J1 = 1.0;
  f.d.assign(m.n_nodes(), 0.0);
  return f;
}

PointMap point_map(const StokesDiscretization& d, const MapField& map, int t, int q) {
  const auto v = eval_p2(*d.mesh, d.qc, t, q, map.d);
  PointMap pm;
  pm.J1 = map.J1;
  pm.J2 = 1.0 + v.dy;
  pm.A = v.dx;
  pm.J = pm.J1 * pm.J2;
  pm.a11 = 1.0 / pm.J1;
  pm.a12 = -pm.A / pm.J;
  pm.a22 = 1.0 / pm.J2;
  return pm;
}

namespace {

struct LocalBlocks {
  double a[12][12];
  double b[3][12];
  double c[3];
};

// 1D quadratic Lagrange basis on [0,1] with nodes 0, 1/2, 1.
inline std::array<double, 3> p2_1d(double t) {
  return {(1 - t) * (1 - 2 * t), 4 * t * (1 - t), t * (2 * t - 1)};
}

}  // namespace

StokesSystem assemble_system(const StokesDiscretization& d, const MapField& map,
                             const PhysicalParams& p, const AssemblyOptions& opt) {
  const Mesh& m = *d.mesh;
  const int nt = int(m.n_triangles());
  if (map.d.size() != m.n_nodes()) throw AssemblyError("map field does not match the mesh");
  if (!(map.J1 > 0.0)) throw AssemblyError("nonpositive horizontal dilation");
  std::vector<LocalBlocks> loc(nt);
  std::vector<char> bad(nt, 0);
  const double mu = p.mu;
  parallel_for(nt, [&](std::size_t ti) {
    const int t = int(ti);
    LocalBlocks& L = loc[t];
    std::fill(&L.a[0][0], &L.a[0][0] + 144, 0.0);
    std::fill(&L.b[0][0], &L.b[0][0] + 36, 0.0);
    std::fill(L.c, L.c + 3, 0.0);
    for (int q = 0; q < d.qc.n_per_tri; ++q) {
      const int k = d.qc.index(t, q);
      const PointMap pm = point_map(d, map, t, q);
      if (!(pm.J2 > 0.0) || !std::isfinite(pm.A)) bad[t] = 1;
      double g[6][2];
      for (int i = 0; i < 6; ++i) {
        g[i][0] = pm.a11 * d.qc.dphi_x[k][i] + pm.a12 * d.qc.dphi_y[k][i];
        g[i][1] = pm.a22 * d.qc.dphi_y[k][i];
      }
      const double wJ = d.qc.w[k] * pm.J;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const double gg = g[i][0] * g[j][0] + g[i][1] * g[j][1];
          for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be) {
              double v = g[i][be] * g[j][al];
              if (al == be) v += gg;
              L.a[2 * i + al][2 * j + be] += mu * wJ * v;
            }
        }
      for (int kk = 0; kk < 3; ++kk) {
        const double psi = d.qc.psi[k][kk];
        L.c[kk] += wJ * psi;
        for (int j = 0; j < 6; ++j)
          for (int be = 0; be < 2; ++be) L.b[kk][2 * j + be] += wJ * psi * g[j][be];
      }
    }
  });
  for (char b : bad)
    if (b) throw AssemblyError("invalid map coefficients (J2 <= 0 or non-finite A)");

  std::vector<Eigen::Triplet<double>> ta, tb;
  ta.reserve(std::size_t(nt) * 144);
  tb.reserve(std::size_t(nt) * 36);
  StokesSystem s;
  s.mu = mu;
  s.c = Eigen::VectorXd::Zero(d.n_p);
  auto dof = [&](int node, int comp) { return comp == 0 ? d.dof1[node] : d.dof2[node]; };
  for (int t = 0; t < nt; ++t) {
    const auto& tn = m.tri[t];
    const LocalBlocks& L = loc[t];
    for (int i = 0; i < 6; ++i)
      for (int al = 0; al < 2; ++al) {
        const int r = dof(tn[i], al);
        if (r < 0) continue;
        for (int j = 0; j < 6; ++j)
          for (int be = 0; be < 2; ++be) {
            const int c = dof(tn[j], be);
            if (c < 0) continue;
            ta.emplace_back(r, c, L.a[2 * i + al][2 * j + be]);
          }
      }
    for (int kk = 0; kk < 3; ++kk) {
      s.c[tn[kk]] += L.c[kk];
      for (int j = 0; j < 6; ++j)
        for (int be = 0; be < 2; ++be) {
          const int c = dof(tn[j], be);
          if (c >= 0) tb.emplace_back(tn[kk], c, L.b[kk][2 * j + be]);
        }
    }
  }
  // Navier slip on the substrate.
  const auto& g6 = gauss01(6);
  for (const auto& e : m.bottom_edges) {
    const double x0 = m.nodes[e.n0][0], x1 = m.nodes[e.n1][0];
    const int nd[3] = {e.n0, e.nm, e.n1};
    double loc_s[3][3] = {{0}};
    for (std::size_t q = 0; q < g6.x.size(); ++q) {
      const auto b = p2_1d(g6.x[q]);
      const double w = g6.w[q] * (x1 - x0) * p.beta;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) loc_s[i][j] += w * b[i] * b[j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) ta.emplace_back(d.dof1[nd[i]], d.dof1[nd[j]], loc_s[i][j]);
  }
  if (opt.contact_terms) {
    const double kap = p.response.kappa();
    ta.emplace_back(d.corner_left_dof, d.corner_left_dof, kap);
    ta.emplace_back(d.corner_right_dof, d.corner_right_dof, kap);
  }
  s.A.resize(d.n_u, d.n_u);
  s.A.setFromTriplets(ta.begin(), ta.end());
  s.B.resize(d.n_p, d.n_u);
  s.B.setFromTriplets(tb.begin(), tb.end());
  s.rhs = Eigen::VectorXd::Zero(d.n_u);
  return s;
}

StokesSolver::StokesSolver(const StokesSystem& sys) : sys_(sys) {
  const int nu = int(sys.A.rows()), np = int(sys.B.rows());
  bordered_ = sys.m.size() == nu;
  const int n = nu + np;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(sys.A.nonZeros() + 2 * sys.B.nonZeros());
  for (int k = 0; k < sys.A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, k); it; ++it)
      t.emplace_back(it.row(), it.col(), it.value());
  for (int k = 0; k < sys.B.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, k); it; ++it) {
      t.emplace_back(it.col(), nu + it.row(), -it.value());
      t.emplace_back(nu + it.row(), it.col(), -it.value());
    }
  K_.resize(n, n);
  K_.setFromTriplets(t.begin(), t.end());
  K_.makeCompressed();
  lu_.analyzePattern(K_);
  lu_.factorize(K_);
  if (lu_.info() != Eigen::Success)
    throw SingularSystemError("Stokes saddle-point factorization failed: " + lu_.lastErrorMessage());
  if (bordered_) {
    // Border columns (0, c) for the relaxed constant divergence mode and
    // (-m, 0) for the extra constraint, eliminated by a 2x2 Schur complement.
    G_ = Eigen::MatrixXd::Zero(n, 2);
    G_.col(0).tail(np) = sys.c;
    G_.col(1).head(nu) = -sys.m;
    Y_ = lu_.solve(G_);
    if (lu_.info() != Eigen::Success || !Y_.allFinite()) throw SingularSystemError("Stokes border solve failed");
    Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
    D(1, 1) = sys.m_diag;
    S_ = D - G_.transpose() * Y_;
    if (!(std::abs(S_.determinant()) > 1e-300)) throw SingularSystemError("singular Stokes border block");
  }
}

FlowField StokesSolver::solve(const Eigen::VectorXd& rhs_u, double rhs_m) const {
  const int nu = int(sys_.A.rows()), np = int(sys_.B.rows());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(K_.rows());
  b.head(nu) = rhs_u;
  Eigen::VectorXd x = lu_.solve(b);
  if (lu_.info() != Eigen::Success || !x.allFinite()) throw SingularSystemError("Stokes solve failed");
  FlowField f;
  Eigen::Vector2d y = Eigen::Vector2d::Zero(), b2(0.0, rhs_m);
  if (bordered_) {
    y = S_.inverse() * (b2 - G_.transpose() * x);
    x -= Y_ * y;
    f.mu_c = y[0];
    f.lambda = y[1];
  }
  f.u = x.head(nu);
  f.p.assign(x.data() + nu, x.data() + nu + np);
  Eigen::VectorXd r = K_ * x - b;
  double rn = r.squaredNorm(), bn = b.squaredNorm();
  if (bordered_) {
    r += G_ * y;
    rn = r.squaredNorm() + (G_.transpose() * x + Eigen::Vector2d(0.0, sys_.m_diag * y[1]) - b2).squaredNorm();
    bn += rhs_m * rhs_m;
  }
  f.residual = bn > 0.0 ? std::sqrt(rn / bn) : std::sqrt(rn);
  return f;
}

FlowField solve_stokes(const StokesSystem& sys) { return StokesSolver(sys).solve(sys.rhs); }

FlowField expand_flow(const StokesDiscretization& d, const FlowField& f) {
  FlowField out = f;
  const int n = int(d.mesh->n_nodes());
  out.u1.assign(n, 0.0);
  out.u2.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (d.dof1[i] >= 0) out.u1[i] = f.u[d.dof1[i]];
    if (d.dof2[i] >= 0) out.u2[i] = f.u[d.dof2[i]];
  }
  return out;
}

Eigen::VectorXd load_vector(const StokesDiscretization& d, const VecFn& f, const VecFn& h,
                            const std::function<double(double)>& g) {
  const Mesh& m = *d.mesh;
  Eigen::VectorXd r = Eigen::VectorXd::Zero(d.n_u);
  if (f) {
    for (int t = 0; t < int(m.n_triangles()); ++t)
      for (int q = 0; q < d.qc.n_per_tri; ++q) {
        const int k = d.qc.index(t, q);
        const auto fv = f(d.qc.x[k], d.qc.y[k]);
        for (int i = 0; i < 6; ++i) {
          const int node = m.tri[t][i];
          const double w = d.qc.w[k] * d.qc.phi[k][i];
          if (d.dof1[node] >= 0) r[d.dof1[node]] += w * fv[0];
          if (d.dof2[node] >= 0) r[d.dof2[node]] += w * fv[1];
        }
      }
  }
  const auto& g6 = gauss01(6);
  if (h) {
    for (const auto& e : m.surface_edges) {
      const double x0 = m.nodes[e.n0][0], x1 = m.nodes[e.n1][0];
      const int nd[3] = {e.n0, e.nm, e.n1};
      for (std::size_t q = 0; q < g6.x.size(); ++q) {
        const double x = x0 + g6.x[q] * (x1 - x0);
        const auto pv = m.shape->eval(x);
        const double ds = g6.w[q] * (x1 - x0) * std::sqrt(1.0 + pv.dz * pv.dz);
        const auto hv = h(x, pv.z);
        const auto b = p2_1d(g6.x[q]);
        for (int i = 0; i < 3; ++i) {
          if (d.dof1[nd[i]] >= 0) r[d.dof1[nd[i]]] += ds * b[i] * hv[0];
          if (d.dof2[nd[i]] >= 0) r[d.dof2[nd[i]]] += ds * b[i] * hv[1];
        }
      }
    }
  }
  if (g) {
    for (const auto& e : m.bottom_edges) {
      const double x0 = m.nodes[e.n0][0], x1 = m.nodes[e.n1][0];
      const int nd[3] = {e.n0, e.nm, e.n1};
      for (std::size_t q = 0; q < g6.x.size(); ++q) {
        const double x = x0 + g6.x[q] * (x1 - x0);
        const double w = g6.w[q] * (x1 - x0) * g(x);
        const auto b = p2_1d(g6.x[q]);
        for (int i = 0; i < 3; ++i) r[d.dof1[nd[i]]] += w * b[i];
      }
    }
  }
  return r;
}

L2Errors l2_errors(const StokesDiscretization& d, const FlowField& flow, const VecFn& u_exact,
                   const std::function<double(double, double)>& p_exact) {
  const Mesh& m = *d.mesh;
  const QuadCache qc = build_quad_cache(m, 8);
  const FlowField f = flow.u1.empty() ? expand_flow(d, flow) : flow;
  double eu = 0.0, ep = 0.0;
  for (int t = 0; t < int(m.n_triangles()); ++t)
    for (int q = 0; q < qc.n_per_tri; ++q) {
      const int k = qc.index(t, q);
      double u1 = 0.0, u2 = 0.0, p = 0.0;
      for (int i = 0; i < 6; ++i) {
        u1 += qc.phi[k][i] * f.u1[m.tri[t][i]];
        u2 += qc.phi[k][i] * f.u2[m.tri[t][i]];
      }
      for (int i = 0; i < 3; ++i) p += qc.psi[k][i] * f.p[m.tri[t][i]];
      const auto ue = u_exact(qc.x[k], qc.y[k]);
      const double pe = p_exact(qc.x[k], qc.y[k]);
      eu += qc.w[k] * ((u1 - ue[0]) * (u1 - ue[0]) + (u2 - ue[1]) * (u2 - ue[1]));
      ep += qc.w[k] * (p - pe) * (p - pe);
    }
  return {std::sqrt(eu), std::sqrt(ep)};
}

SurfaceTraces surface_traces(const StokesDiscretization& d, const FlowField& flow, double J1,
                             const std::vector<double>& eps) {
  const Mesh& m = *d.mesh;
  const FlowField f = flow.u1.empty() ? expand_flow(d, flow) : flow;
  SurfaceTraces tr;
  tr.x1 = d.grid.nodes();
  const std::size_t n = tr.x1.size();
  tr.u1.resize(n);
  tr.u2.resize(n);
  tr.normal_flux.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int node = d.surface_node[i];
    tr.u1[i] = f.u1[node];
    tr.u2[i] = f.u2[node];
    const double de = eps.empty() ? 0.0 : d.grid.eval(eps, tr.x1[i]).second;
    const double slope = m.shape->eval(tr.x1[i]).dz + de;
    tr.normal_flux[i] = -tr.u1[i] * slope + J1 * tr.u2[i];
  }
  for (const auto& e : m.bottom_edges) {
    if (tr.bottom_x1.empty()) {
      tr.bottom_x1.push_back(m.nodes[e.n0][0]);
      tr.bottom_u1.push_back(f.u1[e.n0]);
    }
    tr.bottom_x1.push_back(m.nodes[e.nm][0]);
    tr.bottom_u1.push_back(f.u1[e.nm]);
    tr.bottom_x1.push_back(m.nodes[e.n1][0]);
    tr.bottom_u1.push_back(f.u1[e.n1]);
  }
  tr.u1_left = f.u1[m.corner_left];
  tr.u1_right = f.u1[m.corner_right];
  return tr;
}

double quadratic_form(const StokesSystem& sys, const Eigen::VectorXd& u) {
  return u.dot(sys.A * u);
}

}  // namespace sessile
