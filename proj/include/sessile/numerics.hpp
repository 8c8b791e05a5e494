#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace sessile {

// Adaptive 15-point Gauss-Kronrod with an absolute error target.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol);

struct QuadRule1D {
  std::vector<double> x;  // on [0, 1]
  std::vector<double> w;  // sums to 1
};

// Gauss-Legendre rule on [0,1]; n in {2,3,4,5,6,8,10,16,32}.
const QuadRule1D& gauss01(int n);

struct TriRule {
  std::vector<std::array<double, 3>> lambda;  // barycentric coordinates
  std::vector<double> w;                      // sums to 1 (multiply by area)
  int degree;
};

// Symmetric rules on the triangle: degree 4 (6 points) and degree 8 (16 points).
const TriRule& tri_rule(int degree);

// Chebyshev-Lobatto nodes on [a,b] in increasing order.
std::vector<double> cheb_lobatto(int n, double a, double b);
// Barycentric weights for the Chebyshev-Lobatto nodes.
std::vector<double> cheb_lobatto_bary_weights(int n);
// Clenshaw-Curtis weights on [a,b] for the Chebyshev-Lobatto nodes.
std::vector<double> clenshaw_curtis_weights(int n, double a, double b);

// Barycentric weights for arbitrary distinct nodes.
std::vector<double> bary_weights(const std::vector<double>& x);
double bary_eval(const std::vector<double>& x, const std::vector<double>& w,
                 const std::vector<double>& f, double t);
// Row-major n x n differentiation matrix of the polynomial interpolant.
std::vector<double> bary_diff_matrix(const std::vector<double>& x, const std::vector<double>& w);
std::vector<double> apply_matrix(const std::vector<double>& D, const std::vector<double>& f);

// Thread count from SESSILE_THREADS (default 1).
int thread_count();
// Runs body(i) for i in [0,n), splitting the range statically across threads.
// Each index must only write its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sessile
