#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <functional>
#include <memory>
#include <vector>

#include "sessile/config.hpp"
#include "sessile/diagnostics.hpp"
#include "sessile/geometry.hpp"
#include "sessile/stokes.hpp"

namespace sessile {

enum class Side { Left, Right };

// Contact point velocity from the contact law: left V(sigma/sqrt(1+s^2) - [gamma]),
// right V([gamma] - sigma/sqrt(1+s^2)), with s the physical slope at the contact point.
double contact_velocity(const PhysicalParams& p, double slope, Side side);

// Closed-form end point slope of eps implied by the contact law for a given
// contact velocity: d1 eps(-ell) = J1 sqrt(sigma^2/(W(Ldot)+[gamma])^2 - 1) - d1 zeta0(-ell),
// mirrored on the right.
double contact_slope_identity(const PhysicalParams& p, const EquilibriumShape& shape, double J1,
                              double rate, Side side);

// d_t eps = K1 [ a_tilde d1 zeta + (u.N) sqrt(1 + d1 zeta0^2) ] at given points.
std::vector<double> transport_rate(double J1, double ldot, double rdot, double ell,
                                   const std::vector<double>& x1, const std::vector<double>& dzeta,
                                   const std::vector<double>& normal_flux);

// Pointwise: contact rates from the contact law at the measured end point
// slope. Variational: rates from the discrete Rayleigh principle, which makes
// the semi-discrete energy identity exact but satisfies the contact law only
// up to discretization error.
enum class ContactClosure { Pointwise, Variational };

struct DynamicsOptions {
  ContactClosure closure = ContactClosure::Variational;
  double picard_tol = 1e-10;
  int picard_max = 10;
  int n_fft = 4096;
  int max_halvings = 8;
  double energy_tol = 1e-10;
};

// Rates and diagnostics of the quasi-stationary problem at one state.
struct Evaluation {
  FlowField flow;  // expanded to nodes
  std::vector<double> eps_dot;
  double ldot = 0.0, rdot = 0.0;
  double E = 0.0, M = 0.0;
  Dissipation D;
  int picard_iters = 0;
  // |W(rate) - (Young stress)| at the worse contact point
  double contact_law_residual = 0.0;
  // |u1(corner) - rate| at the worse contact point
  double trace_mismatch = 0.0;
  DiffeoReport diffeo;
};

// Fixed-domain model of the droplet: mesh, discretization, surface space and
// the linear map from eps to the nodal displacement of Pi.
class DropletModel {
 public:
  DropletModel(std::shared_ptr<const EquilibriumShape> shape, int n_surface, double delta_grade,
               DynamicsOptions opt = {});

  const EquilibriumShape& shape() const { return *shape_; }
  const PhysicalParams& params() const { return shape_->params; }
  const Mesh& mesh() const { return *mesh_; }
  const StokesDiscretization& discretization() const { return disc_; }
  const SurfaceQuadrature& surface() const { return sq_; }
  const SurfaceGrid& grid() const { return sq_.grid; }
  const DynamicsOptions& options() const { return opt_; }

  SurfaceState equilibrium_state() const;
  SurfaceState initial_state(InitMode mode, int k, double amplitude) const;

  MapField map_field(const SurfaceState& s) const;
  // Map validity at the quadrature points of the mesh.
  DiffeoReport map_validity(const MapField& map) const;
  // Throws StepError when the state is not a valid droplet.
  void check_state(const SurfaceState& s, DiffeoReport* report = nullptr) const;

  Evaluation evaluate(const SurfaceState& s) const;

  // Multiplicative mass correction of zeta; returns |factor - 1|.
  double renormalize_mass(SurfaceState& s, double target_mass) const;

  double energy(const SurfaceState& s) const;
  double mass(const SurfaceState& s) const;
  double equilibrium_energy() const { return E_eq_; }

 private:
  std::shared_ptr<const EquilibriumShape> shape_;
  std::shared_ptr<const Mesh> mesh_;
  StokesDiscretization disc_;
  SurfaceQuadrature sq_;
  DynamicsOptions opt_;
  // interior surface nodes 1..n-2 carry the eps unknowns
  int n_eps_ = 0;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> mass_solver_;
  Eigen::VectorXd basis_int_;  // interior basis integrals
  std::vector<int> interior_nodes_;  // mesh nodes strictly inside the domain
  Eigen::MatrixXd disp_op_;          // interior-node displacement per eps unknown
  double E_eq_ = 0.0;
};

struct StepOutcome {
  SurfaceState state;
  Evaluation eval;  // at the new state
  double mass_correction = 0.0;
  int halvings = 0;
};

// Explicit midpoint step of (eps, l, r) over dt, starting from a state whose
// evaluation is given. Rejected substeps (invalid geometry or an energy
// increase beyond tolerance) are retried with halved steps.
StepOutcome advance(const DropletModel& model, const SurfaceState& s, const Evaluation& ev,
                    double dt, double target_mass);

struct DiagnosticsRow {
  double t = 0, E = 0, dE = 0, D = 0, M = 0, L = 0, R = 0;
  double dEdt_plus_D = 0;  // central difference of E plus D
  double residual = 0;     // dEdt_plus_D / max(D, 1e-14)
  double theta_L = 0, theta_R = 0, X1 = 0, X2 = 0;
  double trace_mismatch = 0, contact_law_residual = 0;
  double h1_proxy = 0;  // int |d1 eps|^2 dx1 + k1^2
  int picard_iters = 0;
  double mass_correction = 0;
};

struct RunResult {
  std::vector<DiagnosticsRow> rows;
  double com_drift = 0.0;  // accumulated |X(t_{n+1}) - X(t_n)|
  double max_mass_correction = 0.0;
  int total_halvings = 0;
  SurfaceState final_state;
};

// Callback for field snapshots: (step, model, state, evaluation).
using SnapshotFn =
    std::function<void(int, const DropletModel&, const SurfaceState&, const Evaluation&)>;

DynamicsOptions dynamics_options(const RunConfig& cfg);
RunResult run(const RunConfig& cfg, const SnapshotFn& snapshot = nullptr);
RunResult run(const DropletModel& model, const RunConfig& cfg, const SnapshotFn& snapshot = nullptr);
// As above from a given initial state (the init.* settings are ignored).
RunResult run_from(const DropletModel& model, SurfaceState initial, const RunConfig& cfg,
                   const SnapshotFn& snapshot = nullptr);

}  // namespace sessile
