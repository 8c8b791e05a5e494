#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <functional>
#include <memory>
#include <vector>

#include "sessile/fe.hpp"
#include "sessile/mesh.hpp"
#include "sessile/params.hpp"
#include "sessile/surface.hpp"

namespace sessile {

// Degrees of freedom of the quadratic-velocity / linear-pressure pair on a
// mesh. The vertical velocity is eliminated on the substrate (u2 = 0 there);
// the pressure lives on the vertices.
struct StokesDiscretization {
  std::shared_ptr<const Mesh> mesh;
  QuadCache qc;
  std::vector<int> dof1, dof2;  // per mesh node, -1 when constrained
  int n_u = 0;
  int n_p = 0;
  // Surface partition induced by the mesh and the mesh node of each surface node.
  SurfaceGrid grid;
  std::vector<int> surface_node;
  int corner_left_dof = -1, corner_right_dof = -1;
};
StokesDiscretization make_discretization(std::shared_ptr<const Mesh> mesh);

// The map Pi, represented by J1 and the vertical displacement d = x2 * eta / zeta0
// interpolated at the mesh nodes.
struct MapField {
  double J1 = 1.0;
  std::vector<double> d;
};
MapField identity_map(const Mesh& m);

// Pointwise map data at a cached quadrature point.
struct PointMap {
  double J1 = 1, J2 = 1, A = 0, J = 1;
  double a11 = 1, a12 = 0, a22 = 1;
};
PointMap point_map(const StokesDiscretization& d, const MapField& map, int t, int q);

struct StokesSystem {
  Eigen::SparseMatrix<double> A;  // n_u x n_u: viscous, slip and linear contact terms
  Eigen::SparseMatrix<double> B;  // n_p x n_u: (B u)_k = int J psi_k div_A u
  Eigen::VectorXd c;              // int J psi_k
  Eigen::VectorXd rhs;            // n_u
  // Optional extra constraint m.u = 0. When present the constant pressure
  // mode of the divergence constraint is replaced by it (see solve_stokes).
  Eigen::VectorXd m;
  // Diagonal entry of the extra constraint row (from eliminated scalar unknowns).
  double m_diag = 0.0;
  double mu = 1.0;
};

struct AssemblyOptions {
  bool contact_terms = true;  // kappa u1 w1 at both corners
};
StokesSystem assemble_system(const StokesDiscretization& d, const MapField& map,
                             const PhysicalParams& p, const AssemblyOptions& opt = {});

// Velocity at every mesh node (zero where constrained), pressure per vertex.
struct FlowField {
  std::vector<double> u1, u2, p;
  Eigen::VectorXd u;      // free velocity coefficients
  double lambda = 0.0;    // multiplier of the extra constraint
  double mu_c = 0.0;      // relaxation of the constant divergence mode
  double residual = 0.0;  // relative residual of the linear solve
};

// Sparse LU of the saddle-point matrix; the factorization is reused for
// several right-hand sides.
class StokesSolver {
 public:
  explicit StokesSolver(const StokesSystem& sys);
  FlowField solve(const Eigen::VectorXd& rhs_u, double rhs_m = 0.0) const;
  const StokesSystem& system() const { return sys_; }

 private:
  StokesSystem sys_;
  Eigen::SparseMatrix<double> K_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  bool bordered_ = false;
  Eigen::MatrixXd G_, Y_;
  Eigen::Matrix2d S_;
};

// Solve once with the system's own right-hand side.
FlowField solve_stokes(const StokesSystem& sys);
FlowField expand_flow(const StokesDiscretization& d, const FlowField& f);

// Load vector for body force f, surface traction h and substrate shear g:
// int f.w + int_surface h.w ds + int_substrate g w1 dx1.
using VecFn = std::function<std::array<double, 2>(double, double)>;
Eigen::VectorXd load_vector(const StokesDiscretization& d, const VecFn& f, const VecFn& h,
                            const std::function<double(double)>& g);

// L2 errors of a solution against exact fields (degree-8 quadrature).
struct L2Errors {
  double u = 0.0, p = 0.0;
};
L2Errors l2_errors(const StokesDiscretization& d, const FlowField& flow, const VecFn& u_exact,
                   const std::function<double(double, double)>& p_exact);

// Velocity of a nodal field at the surface grid nodes, normal flux
// u.N sqrt(1 + zeta0'^2) = -u1 zeta' + J1 u2 with zeta' = zeta0' + eps', the
// substrate tangential velocity and the corner velocities.
struct SurfaceTraces {
  std::vector<double> x1;
  std::vector<double> u1, u2;
  std::vector<double> normal_flux;  // at surface nodes
  std::vector<double> bottom_x1, bottom_u1;
  double u1_left = 0.0, u1_right = 0.0;
};
SurfaceTraces surface_traces(const StokesDiscretization& d, const FlowField& flow, double J1,
                             const std::vector<double>& eps);

// Quadratic form u.A u of the assembled viscous, slip and contact terms.
double quadratic_form(const StokesSystem& sys, const Eigen::VectorXd& u);

}  // namespace sessile
