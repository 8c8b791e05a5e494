#include "sessile/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

double contact_velocity(const PhysicalParams& p, double slope, Side side) {
  const double c = p.sigma / std::sqrt(1.0 + slope * slope);
  return side == Side::Left ? p.response.V(c - p.gamma_jump) : p.response.V(p.gamma_jump - c);
}

double contact_slope_identity(const PhysicalParams& p, const EquilibriumShape& shape, double J1,
                              double rate, Side side) {
  const double w = p.response.W(rate);
  if (side == Side::Left) {
    const double c = w + p.gamma_jump;
    if (!(c > 0.0 && c < p.sigma)) throw DomainError("contact law has no real slope for this rate");
    return J1 * std::sqrt(p.sigma * p.sigma / (c * c) - 1.0) - shape.eval(-shape.ell).dz;
  }
  const double c = p.gamma_jump - w;
  if (!(c > 0.0 && c < p.sigma)) throw DomainError("contact law has no real slope for this rate");
  return -J1 * std::sqrt(p.sigma * p.sigma / (c * c) - 1.0) - shape.eval(shape.ell).dz;
}

std::vector<double> transport_rate(double J1, double ldot, double rdot, double ell,
                                   const std::vector<double>& x1, const std::vector<double>& dzeta,
                                   const std::vector<double>& normal_flux) {
  std::vector<double> out(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const double at = (rdot - ldot) * x1[i] / (2.0 * ell) + 0.5 * (rdot + ldot);
    out[i] = (at * dzeta[i] + normal_flux[i]) / J1;
  }
  return out;
}

DropletModel::DropletModel(std::shared_ptr<const EquilibriumShape> shape, int n_surface,
                           double delta_grade, DynamicsOptions opt)
    : shape_(std::move(shape)), opt_(opt) {
  mesh_ = std::make_shared<const Mesh>(build_mesh(shape_, n_surface, delta_grade));
  disc_ = make_discretization(mesh_);
  sq_ = make_surface_quadrature(disc_.grid, *shape_, 6);
  const SurfaceGrid& grid = sq_.grid;
  const int ns = grid.n_nodes();
  n_eps_ = ns - 2;

  const Eigen::SparseMatrix<double> Mf = grid.mass_matrix();
  std::vector<Eigen::Triplet<double>> t;
  for (int k = 0; k < Mf.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(Mf, k); it; ++it)
      if (it.row() >= 1 && it.row() <= ns - 2 && it.col() >= 1 && it.col() <= ns - 2)
        t.emplace_back(it.row() - 1, it.col() - 1, it.value());
  Eigen::SparseMatrix<double> Mi(n_eps_, n_eps_);
  Mi.setFromTriplets(t.begin(), t.end());
  mass_solver_.compute(Mi);
  if (mass_solver_.info() != Eigen::Success) throw SingularSystemError("surface mass matrix is singular");
  const auto bi = grid.basis_integrals();
  basis_int_.resize(n_eps_);
  for (int j = 0; j < n_eps_; ++j) basis_int_[j] = bi[j + 1];

  const Mesh& m = *mesh_;
  for (int i = 0; i < int(m.n_nodes()); ++i)
    if (m.tag[i] == NodeTag::Interior) interior_nodes_.push_back(i);
  std::vector<GeomPoint> pts;
  pts.reserve(interior_nodes_.size());
  for (int i : interior_nodes_) pts.push_back(make_geom_point(*shape_, m.nodes[i][0], m.nodes[i][1]));

  // The displacement is linear in eps: tabulate the response to each unit
  // nodal value.
  disp_op_.resize(Eigen::Index(interior_nodes_.size()), n_eps_);
  parallel_for(std::size_t(n_eps_), [&](std::size_t j) {
    std::vector<double> e(ns, 0.0);
    e[j + 1] = 1.0;
    const SurfaceExtension ext = extend_surface(grid, e);
    const PoissonExtension P(shape_->ell, opt_.n_fft, [&](double x) { return ext(x); });
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const EtaBar eb = harmonic_extension(P, pts[k]);
      disp_op_(Eigen::Index(k), Eigen::Index(j)) = pts[k].x2 * eb.eta / pts[k].z0;
    }
  });
  E_eq_ = sessile::energy(sq_, shape_->params, 1.0, std::vector<double>(ns, 0.0));
}

SurfaceState DropletModel::equilibrium_state() const {
  SurfaceState s;
  s.eps.assign(sq_.grid.n_nodes(), 0.0);
  return s;
}

SurfaceState DropletModel::initial_state(InitMode mode, int k, double amplitude) const {
  SurfaceState s = equilibrium_state();
  const auto& x = sq_.grid.nodes();
  const double ell = shape_->ell;
  switch (mode) {
    case InitMode::Equilibrium: break;
    case InitMode::SurfaceMode:
      for (std::size_t i = 1; i + 1 < x.size(); ++i)
        s.eps[i] = amplitude * std::sin(k * M_PI * (x[i] + ell) / (2.0 * ell));
      break;
    case InitMode::EndpointShift: {
      s.l = -amplitude;
      s.r = amplitude;
      const double J1 = J1_of(s.l, s.r, ell);
      for (std::size_t i = 1; i + 1 < x.size(); ++i) s.eps[i] = shape_->zeta0(x[i]) * (1.0 / J1 - 1.0);
      break;
    }
  }
  return s;
}

MapField DropletModel::map_field(const SurfaceState& s) const {
  MapField f;
  f.J1 = J1_of(s.l, s.r, shape_->ell);
  f.d.assign(mesh_->n_nodes(), 0.0);
  for (std::size_t i = 0; i < disc_.surface_node.size(); ++i) f.d[disc_.surface_node[i]] = s.eps[i];
  const Eigen::Map<const Eigen::VectorXd> ei(s.eps.data() + 1, n_eps_);
  const Eigen::VectorXd di = disp_op_ * ei;
  for (std::size_t k = 0; k < interior_nodes_.size(); ++k) f.d[interior_nodes_[k]] = di[Eigen::Index(k)];
  return f;
}

DiffeoReport DropletModel::map_validity(const MapField& map) const {
  const int nt = int(mesh_->n_triangles());
  const int nq = disc_.qc.n_per_tri;
  std::vector<MapCoef> c(std::size_t(nt) * nq);
  for (int t = 0; t < nt; ++t)
    for (int q = 0; q < nq; ++q) {
      const PointMap pm = point_map(disc_, map, t, q);
      MapCoef& mc = c[std::size_t(disc_.qc.index(t, q))];
      mc.J1 = pm.J1;
      mc.J2 = pm.J2;
      mc.A = pm.A;
      mc.J = pm.J;
      mc.K1 = 1.0 / pm.J1;
      mc.K2 = 1.0 / pm.J2;
      mc.K = 1.0 / pm.J;
      mc.a11 = pm.a11;
      mc.a12 = pm.a12;
      mc.a22 = pm.a22;
    }
  return check_diffeomorphism(c);
}

void DropletModel::check_state(const SurfaceState& s, DiffeoReport* report) const {
  if (int(s.eps.size()) != sq_.grid.n_nodes()) throw StepError("surface state has the wrong size");
  for (double v : s.eps)
    if (!std::isfinite(v)) throw StepError("surface perturbation is not finite");
  if (!std::isfinite(s.l) || !std::isfinite(s.r)) throw StepError("contact point positions are not finite");
  const DiffeoReport rep = map_validity(map_field(s));
  if (report) *report = rep;
  if (!rep.ok) throw StepError("map to the physical domain is not a diffeomorphism: " + rep.reason);
}

double DropletModel::energy(const SurfaceState& s) const {
  return sessile::energy(sq_, shape_->params, J1_of(s.l, s.r, shape_->ell), s.eps);
}

double DropletModel::mass(const SurfaceState& s) const {
  return sessile::mass(sq_, J1_of(s.l, s.r, shape_->ell), s.eps);
}

double DropletModel::renormalize_mass(SurfaceState& s, double target_mass) const {
  const double J1 = J1_of(s.l, s.r, shape_->ell);
  const auto& x = sq_.grid.nodes();
  double sz0 = 0.0, sz = 0.0;
  for (int j = 0; j < n_eps_; ++j) {
    const double z0 = shape_->zeta0(x[j + 1]);
    sz0 += basis_int_[j] * z0;
    sz += basis_int_[j] * (z0 + s.eps[j + 1]);
  }
  if (!(sz > 0.0)) throw StepError("droplet profile has nonpositive area");
  const double c = (target_mass / J1 - sq_.zeta0_integral + sz0) / sz;
  for (int j = 0; j < n_eps_; ++j) {
    const double z0 = shape_->zeta0(x[j + 1]);
    s.eps[j + 1] = c * (z0 + s.eps[j + 1]) - z0;
  }
  return std::abs(c - 1.0);
}

Evaluation DropletModel::evaluate(const SurfaceState& s) const {
  const PhysicalParams& p = shape_->params;
  const double ell = shape_->ell;
  Evaluation ev;
  check_state(s, &ev.diffeo);
  const MapField map = map_field(s);
  const double J1 = map.J1, K1 = 1.0 / J1;
  AssemblyOptions aopt;
  aopt.contact_terms = false;
  StokesSystem sys = assemble_system(disc_, map, p, aopt);

  std::vector<double> z, dz;
  surface_profile(sq_, s.eps, z, dz);
  const EnergyGradient eg = energy_gradient(sq_, p, J1, s.eps);

  // Kinematic operator: L2 projection of the surface transport onto the
  // interior surface nodes. The end point rates enter through the dilation
  // velocity only.
  std::vector<Eigen::Triplet<double>> ct;
  Eigen::VectorXd cl = Eigen::VectorXd::Zero(n_eps_), cr = Eigen::VectorXd::Zero(n_eps_);
  const auto& q = sq_.q;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const int e = q.elem[i];
    const double al = q.x[i] / (2.0 * ell) + 0.5;
    for (int kr = 0; kr < 3; ++kr) {
      const int r = 2 * e + kr - 1;
      if (r < 0 || r >= n_eps_) continue;
      const double coef = q.w[i] * K1 * q.phi[i][kr];
      for (int k = 0; k < 3; ++k) {
        const int node = disc_.surface_node[2 * e + k];
        if (disc_.dof1[node] >= 0) ct.emplace_back(r, disc_.dof1[node], -coef * dz[i] * q.phi[i][k]);
        if (disc_.dof2[node] >= 0) ct.emplace_back(r, disc_.dof2[node], coef * J1 * q.phi[i][k]);
      }
      cr[r] += coef * dz[i] * al;
      cl[r] += coef * dz[i] * (1.0 - al);
    }
  }
  Eigen::SparseMatrix<double> C(n_eps_, disc_.n_u);
  C.setFromTriplets(ct.begin(), ct.end());

  Eigen::VectorXd gE(n_eps_);
  double s_eps = 0.0;
  for (int j = 0; j < n_eps_; ++j) {
    gE[j] = eg.d_eps[j + 1];
    s_eps += basis_int_[j] * s.eps[j + 1];
  }
  const Eigen::VectorXd y = mass_solver_.solve(gE);
  const Eigen::VectorXd zz = mass_solver_.solve(basis_int_);
  const double area = sq_.zeta0_integral + s_eps;
  // Energy rate F.(u, ldot, rdot) and mass rate m.(u, ldot, rdot).
  const Eigen::VectorXd F = C.transpose() * y;
  const double FL = cl.dot(y) - eg.d_J1 / (2.0 * ell);
  const double FR = cr.dot(y) + eg.d_J1 / (2.0 * ell);
  sys.m = J1 * (C.transpose() * zz);
  const double mL = J1 * cl.dot(zz) - area / (2.0 * ell);
  const double mR = J1 * cr.dot(zz) + area / (2.0 * ell);

  const double sl = (shape_->eval(-ell).dz + sq_.grid.slope_left(s.eps)) * K1;
  const double sr = (shape_->eval(ell).dz + sq_.grid.slope_right(s.eps)) * K1;
  double uL = 0.0, uR = 0.0;
  FlowField flow;
  if (opt_.closure == ContactClosure::Pointwise) {
    // Rates fixed by the contact law; the multiplier enforces the mass rate.
    uL = contact_velocity(p, sl, Side::Left);
    uR = contact_velocity(p, sr, Side::Right);
    const StokesSolver solver(sys);
    flow = solver.solve(-F, mL * uL + mR * uR);
    ev.picard_iters = 1;
  } else {
    // Rayleigh principle: A u - B^T p - lambda m = -F and W(rate) - lambda m_side = -F_side.
    // The contact rates are eliminated: rate = (b_side + lambda m_side) / kappa with
    // b_side = -F_side - kappa What(rate), updated by Picard iteration.
    const double kap = p.response.kappa();
    sys.m_diag = -(mL * mL + mR * mR) / kap;
    const StokesSolver solver(sys);
    const bool linear = p.response.kind() == ContactResponse::Kind::Linear;
    for (int it = 1;; ++it) {
      const double bL = -FL - kap * p.response.W_hat(uL);
      const double bR = -FR - kap * p.response.W_hat(uR);
      flow = solver.solve(-F, (mL * bL + mR * bR) / kap);
      const double nL = (bL + mL * flow.lambda) / kap;
      const double nR = (bR + mR * flow.lambda) / kap;
      const double change = std::abs(nL - uL) + std::abs(nR - uR);
      uL = nL;
      uR = nR;
      ev.picard_iters = it;
      if (linear || change <= opt_.picard_tol * (1.0 + std::abs(uL) + std::abs(uR))) break;
      if (it >= opt_.picard_max) throw ConvergenceError("contact-law Picard iteration did not converge");
    }
  }
  if (!(flow.residual < 1e-6)) throw SingularSystemError("Stokes solve is inaccurate");

  const Eigen::VectorXd rate = mass_solver_.solve(C * flow.u + cl * uL + cr * uR);
  ev.eps_dot.assign(sq_.grid.n_nodes(), 0.0);
  for (int j = 0; j < n_eps_; ++j) ev.eps_dot[j + 1] = rate[j];
  ev.ldot = uL;
  ev.rdot = uR;
  ev.E = energy_of_samples(q.w, z, dz, J1, ell, p);
  ev.M = J1 * area;
  ev.D = dissipation(quadratic_form(sys, flow.u), uL, uR, p);

  ev.flow = expand_flow(disc_, flow);
  for (double& v : ev.flow.p) v += flow.lambda - shape_->P0;
  ev.trace_mismatch = std::max(std::abs(ev.flow.u1[mesh_->corner_left] - uL),
                               std::abs(ev.flow.u1[mesh_->corner_right] - uR));

  const double resL = std::abs(p.response.W(uL) - (p.sigma / std::sqrt(1.0 + sl * sl) - p.gamma_jump));
  const double resR = std::abs(p.response.W(uR) - (p.gamma_jump - p.sigma / std::sqrt(1.0 + sr * sr)));
  ev.contact_law_residual = std::max(resL, resR);
  return ev;
}

namespace {

SurfaceState axpy(const SurfaceState& s, double h, const Evaluation& k) {
  SurfaceState o = s;
  for (std::size_t i = 0; i < o.eps.size(); ++i) o.eps[i] += h * k.eps_dot[i];
  o.l += h * k.ldot;
  o.r += h * k.rdot;
  o.time += h;
  return o;
}

StepOutcome attempt(const DropletModel& model, const SurfaceState& s, const Evaluation& ev,
                    double dt, double target_mass, int depth) {
  StepOutcome out;
  bool failed = false;
  std::string why;
  try {
    const SurfaceState mid = axpy(s, 0.5 * dt, ev);
    const Evaluation ev_mid = model.evaluate(mid);
    out.state = axpy(s, dt, ev_mid);
    out.state.time = s.time + dt;
    out.mass_correction = model.renormalize_mass(out.state, target_mass);
    out.eval = model.evaluate(out.state);
    if (out.eval.E > ev.E + model.options().energy_tol)
      throw StepError("energy increased over a step");
    out.state.eps_dot = out.eval.eps_dot;
  } catch (const Error& e) {
    failed = true;
    why = e.what();
  }
  if (!failed) return out;
  if (depth >= model.options().max_halvings)
    throw StepError("time step rejected after " + std::to_string(depth) + " halvings: " + why);
  StepOutcome a = attempt(model, s, ev, 0.5 * dt, target_mass, depth + 1);
  StepOutcome b = attempt(model, a.state, a.eval, 0.5 * dt, target_mass, depth + 1);
  b.halvings += a.halvings + 1;
  b.mass_correction = std::max(a.mass_correction, b.mass_correction);
  return b;
}

}  // namespace

StepOutcome advance(const DropletModel& model, const SurfaceState& s, const Evaluation& ev,
                    double dt, double target_mass) {
  return attempt(model, s, ev, dt, target_mass, 0);
}

namespace {

DiagnosticsRow make_row(const DropletModel& model, const SurfaceState& s, const Evaluation& ev) {
  const double ell = model.shape().ell;
  const double J1 = J1_of(s.l, s.r, ell);
  DiagnosticsRow r;
  r.t = s.time;
  r.E = ev.E;
  r.dE = ev.E - model.equilibrium_energy();
  r.D = ev.D.total();
  r.M = ev.M;
  r.L = -ell + s.l;
  r.R = ell + s.r;
  const ContactAngles th = contact_angles(model.grid(), model.shape(), J1, s.eps);
  r.theta_L = th.left;
  r.theta_R = th.right;
  const CenterOfMass X = center_of_mass(model.surface(), s.l, s.r, s.eps);
  r.X1 = X.X1;
  r.X2 = X.X2;
  r.trace_mismatch = ev.trace_mismatch;
  r.contact_law_residual = ev.contact_law_residual;
  {
    const SurfaceQuadrature& sq = model.surface();
    std::vector<double> zeta, dzeta;
    surface_profile(sq, s.eps, zeta, dzeta);
    double acc = 0.0;
    for (std::size_t q = 0; q < dzeta.size(); ++q) {
      const double de = dzeta[q] - sq.dz0[q];
      acc += sq.q.w[q] * de * de;
    }
    const double kk = k1(s.l, s.r, ell);
    r.h1_proxy = acc + kk * kk;
  }
  r.picard_iters = ev.picard_iters;
  return r;
}

}  // namespace

RunResult run(const DropletModel& model, const RunConfig& cfg, const SnapshotFn& snapshot) {
  return run_from(model, model.initial_state(cfg.init_mode, cfg.init_k, cfg.amplitude), cfg, snapshot);
}

RunResult run_from(const DropletModel& model, SurfaceState s, const RunConfig& cfg,
                   const SnapshotFn& snapshot) {
  RunResult res;
  const double M = model.shape().mass;
  const double c0 = model.renormalize_mass(s, M);
  Evaluation ev = model.evaluate(s);
  s.eps_dot = ev.eps_dot;
  const long n_steps = std::max(1L, long(std::floor(cfg.t_end / cfg.dt + 1e-9)));
  res.rows.reserve(std::size_t(n_steps) + 1);
  res.rows.push_back(make_row(model, s, ev));
  res.rows.back().mass_correction = c0;
  res.max_mass_correction = c0;
  if (snapshot) snapshot(0, model, s, ev);
  for (long n = 1; n <= n_steps; ++n) {
    StepOutcome out = advance(model, s, ev, cfg.dt, M);
    out.state.time = double(n) * cfg.dt;
    s = std::move(out.state);
    ev = std::move(out.eval);
    res.total_halvings += out.halvings;
    res.max_mass_correction = std::max(res.max_mass_correction, out.mass_correction);
    DiagnosticsRow row = make_row(model, s, ev);
    row.mass_correction = out.mass_correction;
    const DiagnosticsRow& prev = res.rows.back();
    res.com_drift += std::hypot(row.X1 - prev.X1, row.X2 - prev.X2);
    res.rows.push_back(row);
    if (snapshot && n % cfg.every == 0) snapshot(int(n), model, s, ev);
  }
  std::vector<double> t, E, D;
  for (const auto& r : res.rows) {
    t.push_back(r.t);
    E.push_back(r.E);
    D.push_back(r.D);
  }
  const auto id = energy_identity_series(t, E, D);
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    res.rows[i].dEdt_plus_D = id[i];
    res.rows[i].residual = id[i] / std::max(res.rows[i].D, 1e-14);
  }
  res.final_state = s;
  return res;
}

DynamicsOptions dynamics_options(const RunConfig& cfg) {
  DynamicsOptions opt;
  opt.picard_tol = cfg.picard_tol;
  opt.picard_max = cfg.picard_max;
  opt.n_fft = cfg.n_fft;
  opt.closure = cfg.contact_closure == "pointwise" ? ContactClosure::Pointwise : ContactClosure::Variational;
  return opt;
}

RunResult run(const RunConfig& cfg, const SnapshotFn& snapshot) {
  cfg.validate();
  auto shape = std::make_shared<const EquilibriumShape>(solve_equilibrium(cfg.physical(), cfg.mass, 2048, cfg.quad_tol));
  const DropletModel model(shape, cfg.n_surface, cfg.delta_grade, dynamics_options(cfg));
  return run(model, cfg, snapshot);
}

}  // namespace sessile
