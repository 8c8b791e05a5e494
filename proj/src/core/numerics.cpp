#include "sessile/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

#include "sessile/errors.hpp"

namespace sessile {

namespace bq = boost::math::quadrature;

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
  if (a == b) return 0.0;
  double l1 = 0.0;
  double coarse = bq::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, nullptr, &l1);
  (void)coarse;
  double rel = abs_tol / std::max(l1, 1e-300);
  rel = std::clamp(rel, 4e-15, 1e-3);
  double err = 0.0;
  double v = bq::gauss_kronrod<double, 15>::integrate(f, a, b, 12, rel, &err);
  if (!std::isfinite(v)) throw DomainError("non-finite integrand in adaptive quadrature");
  return v;
}

namespace {

template <unsigned N>
QuadRule1D make_gauss01() {
  QuadRule1D r;
  const auto& xs = bq::gauss<double, N>::abscissa();
  const auto& ws = bq::gauss<double, N>::weights();
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.emplace_back(xs[i], ws[i]);
    if (xs[i] != 0.0) pts.emplace_back(-xs[i], ws[i]);
  }
  std::sort(pts.begin(), pts.end());
  for (auto& [x, w] : pts) {
    r.x.push_back(0.5 * (x + 1.0));
    r.w.push_back(0.5 * w);
  }
  return r;
}

TriRule make_tri4() {
  TriRule r;
  r.degree = 4;
  auto add3 = [&](double a, double w) {
    double b = 1.0 - 2.0 * a;
    r.lambda.push_back({a, a, b});
    r.lambda.push_back({a, b, a});
    r.lambda.push_back({b, a, a});
    for (int i = 0; i < 3; ++i) r.w.push_back(w);
  };
  add3(0.445948490915965, 0.223381589678011);
  add3(0.091576213509771, 0.109951743655322);
  return r;
}

TriRule make_tri8() {
  TriRule r;
  r.degree = 8;
  r.lambda.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.w.push_back(0.144315607677787);
  auto add3 = [&](double a, double w) {
    double b = 1.0 - 2.0 * a;
    r.lambda.push_back({a, a, b});
    r.lambda.push_back({a, b, a});
    r.lambda.push_back({b, a, a});
    for (int i = 0; i < 3; ++i) r.w.push_back(w);
  };
  add3(0.459292588292723, 0.095091634267285);
  add3(0.170569307751760, 0.103217370534718);
  add3(0.050547228317031, 0.032458497623198);
  double a = 0.008394777409958, b = 0.263112829634638, c = 1.0 - a - b;
  double w6 = 0.027230314174435;
  for (auto l : {std::array<double, 3>{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b},
                 {c, b, a}}) {
    r.lambda.push_back(l);
    r.w.push_back(w6);
  }
  double s = 0.0;
  for (double w : r.w) s += w;
  for (double& w : r.w) w /= s;
  return r;
}

}  // namespace

const QuadRule1D& gauss01(int n) {
  static const std::map<int, QuadRule1D> rules = {
      {2, make_gauss01<2>()},   {3, make_gauss01<3>()},   {4, make_gauss01<4>()},
      {5, make_gauss01<5>()},   {6, make_gauss01<6>()},   {8, make_gauss01<8>()},
      {10, make_gauss01<10>()}, {16, make_gauss01<16>()}, {32, make_gauss01<32>()}};
  auto it = rules.find(n);
  if (it == rules.end()) throw DomainError("unsupported Gauss-Legendre order");
  return it->second;
}

const TriRule& tri_rule(int degree) {
  static const TriRule r4 = make_tri4();
  static const TriRule r8 = make_tri8();
  if (degree <= 4) return r4;
  if (degree <= 8) return r8;
  throw DomainError("unsupported triangle rule degree");
}

std::vector<double> cheb_lobatto(int n, double a, double b) {
  std::vector<double> x(n);
  const double m = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int j = 0; j < n; ++j) {
    // sin form keeps the nodes exactly antisymmetric about the midpoint
    double t = M_PI * (2.0 * j - (n - 1)) / (2.0 * (n - 1));
    x[j] = m + h * std::sin(t);
  }
  x.front() = a;
  x.back() = b;
  return x;
}

std::vector<double> cheb_lobatto_bary_weights(int n) {
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = (j % 2 == 0 ? 1.0 : -1.0);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

std::vector<double> clenshaw_curtis_weights(int n, double a, double b) {
  const int N = n - 1;
  std::vector<double> w(n, 0.0);
  const double h = 0.5 * (b - a);
  if (N == 0) {
    w[0] = 2.0 * h;
    return w;
  }
  for (int k = 0; k <= N; ++k) {
    double theta = M_PI * k / N;
    double v = 1.0;
    if (k == 0 || k == N) {
      w[k] = (N % 2 == 0) ? 1.0 / (double(N) * N - 1.0) : 1.0 / (double(N) * N);
      continue;
    }
    if (N % 2 == 0) {
      for (int j = 1; j < N / 2; ++j) v -= 2.0 * std::cos(2.0 * j * theta) / (4.0 * j * j - 1.0);
      v -= std::cos(N * theta) / (double(N) * N - 1.0);
    } else {
      for (int j = 1; j <= (N - 1) / 2; ++j)
        v -= 2.0 * std::cos(2.0 * j * theta) / (4.0 * j * j - 1.0);
    }
    w[k] = 2.0 * v / N;
  }
  for (double& x : w) x *= h;
  // nodes cos(theta_k) run from b to a; the weights are symmetric
  return w;
}

std::vector<double> bary_weights(const std::vector<double>& x) {
  // Products are accumulated in log form; only ratios of weights matter.
  const std::size_t n = x.size();
  std::vector<double> logw(n, 0.0), sign(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = x[j] - x[k];
      acc -= std::log(std::abs(d));
      if (d < 0) sign[j] = -sign[j];
    }
    logw[j] = acc;
  }
  const double top = n ? *std::max_element(logw.begin(), logw.end()) : 0.0;
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = sign[j] * std::exp(logw[j] - top);
  return w;
}

double bary_eval(const std::vector<double>& x, const std::vector<double>& w,
                 const std::vector<double>& f, double t) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = t - x[j];
    if (d == 0.0) return f[j];
    double c = w[j] / d;
    num += c * f[j];
    den += c;
  }
  return num / den;
}

std::vector<double> bary_diff_matrix(const std::vector<double>& x, const std::vector<double>& w) {
  const std::size_t n = x.size();
  std::vector<double> D(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double v = (w[j] / w[i]) / (x[i] - x[j]);
      D[i * n + j] = v;
      diag -= v;
    }
    D[i * n + i] = diag;
  }
  return D;
}

std::vector<double> apply_matrix(const std::vector<double>& D, const std::vector<double>& f) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += D[i * n + j] * f[j];
    out[i] = s;
  }
  return out;
}

int thread_count() {
  static const int n = [] {
    const char* env = std::getenv("SESSILE_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return std::clamp(v, 1, 256);
  }();
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int nt = thread_count();
  if (nt <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first;
  std::mutex m;
  const std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(m);
        if (!first) first = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace sessile
