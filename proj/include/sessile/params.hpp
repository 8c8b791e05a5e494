#pragma once

namespace sessile {

// Contact response V (velocity as a function of the uncompensated Young
// stress) and its inverse W.
class ContactResponse {
 public:
  enum class Kind { Linear, Sinh };

  static ContactResponse linear(double kappa);
  static ContactResponse sinh(double A, double B);

  Kind kind() const { return kind_; }
  double A() const { return a_; }
  double B() const { return b_; }

  double V(double z) const;
  double dV(double z) const;
  double W(double z) const;
  double dW(double z) const;
  double kappa() const;
  // W(z)/kappa - z
  double W_hat(double z) const;

 private:
  ContactResponse(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_;  // Linear: kappa; Sinh: A
  double b_;  // Sinh: B
};

struct PhysicalParams {
  double mu = 1.0;
  double g = 1.0;
  double sigma = 1.0;
  double gamma_jump = 0.6;
  double beta = 1.0;
  ContactResponse response = ContactResponse::linear(1.0);

  // Throws ValidationError naming the violated constraint.
  void validate() const;
};

double young_angle(const PhysicalParams& p);
double endpoint_slope(const PhysicalParams& p);
// Inclination of the free surface at the contact points, in (0, pi/2).
double contact_inclination(const PhysicalParams& p);

}  // namespace sessile
