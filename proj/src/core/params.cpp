#include "sessile/params.hpp"

#include <cmath>

#include "sessile/errors.hpp"

namespace sessile {

ContactResponse ContactResponse::linear(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ValidationError("response.kappa must be positive");
  return ContactResponse(Kind::Linear, kappa, 0.0);
}

ContactResponse ContactResponse::sinh(double A, double B) {
  if (!(A > 0.0) || !std::isfinite(A)) throw ValidationError("response.A must be positive");
  if (!(B > 0.0) || !std::isfinite(B)) throw ValidationError("response.B must be positive");
  return ContactResponse(Kind::Sinh, A, B);
}

double ContactResponse::V(double z) const {
  if (kind_ == Kind::Linear) return z / a_;
  return a_ * std::sinh(b_ * z);
}

double ContactResponse::dV(double z) const {
  if (kind_ == Kind::Linear) return 1.0 / a_;
  return a_ * b_ * std::cosh(b_ * z);
}

double ContactResponse::W(double z) const {
  if (kind_ == Kind::Linear) return a_ * z;
  return std::asinh(z / a_) / b_;
}

double ContactResponse::dW(double z) const {
  if (kind_ == Kind::Linear) return a_;
  return 1.0 / (b_ * std::sqrt(a_ * a_ + z * z));
}

double ContactResponse::kappa() const { return dW(0.0); }

double ContactResponse::W_hat(double z) const { return W(z) / kappa() - z; }

void PhysicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string(name) + " must be positive and finite");
  };
  positive(mu, "physics.mu");
  positive(g, "physics.g");
  positive(sigma, "physics.sigma");
  positive(beta, "physics.beta");
  if (!std::isfinite(gamma_jump))
    throw ValidationError("physics.gamma_jump must be finite");
  double ratio = gamma_jump / sigma;
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ValidationError(
        "gamma_jump/sigma must lie in (0,1) (Young sign condition 0 < [gamma]/sigma < 1)");
}

double young_angle(const PhysicalParams& p) { return std::acos(-p.gamma_jump / p.sigma); }

double endpoint_slope(const PhysicalParams& p) {
  return std::sqrt(p.sigma * p.sigma - p.gamma_jump * p.gamma_jump) / p.gamma_jump;
}

double contact_inclination(const PhysicalParams& p) { return std::atan(endpoint_slope(p)); }

}  // namespace sessile
