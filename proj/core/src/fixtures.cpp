#include "gsteer/fixtures.hpp"

#include <cmath>

namespace gsteer::fixtures {

namespace {

EigenmodeSpec piecewise(std::vector<double> levels, double squeezing_db, double excess_db,
                        Quadrature squeezed) {
  EigenmodeSpec e;
  e.shape = ProfileShape::kPiecewise;
  e.levels = std::move(levels);
  e.squeezing_db = squeezing_db;
  e.antisqueezing_excess_db = excess_db;
  e.squeezed = squeezed;
  return e;
}

}  // namespace

CombModel default_comb() {
  CombModel model;
  model.n_pixels = 16;
  model.efficiency = 0.85;
  model.provenance =
      "calibration fixture: 8 Hermite-Gauss eigenmodes, -5 dB to -0.3 dB, 1 dB excess, "
      "15% loss; not measured data";
  for (std::size_t k = 0; k < 8; ++k) {
    EigenmodeSpec e;
    e.order = k;
    e.width = 0.17;
    e.squeezing_db = -(5.0 - 4.7 * static_cast<double>(k) / 7.0);
    e.antisqueezing_excess_db = 1.0;
    e.squeezed = k % 2 == 0 ? Quadrature::kX : Quadrature::kP;
    model.eigenmodes.push_back(e);
  }
  return model;
}

CombModel single_eigenmode() {
  CombModel model;
  model.n_pixels = 16;
  model.efficiency = 0.85;
  model.provenance = "single eigenmode, constant on each coarse band";
  model.eigenmodes.push_back(piecewise({1.0, 2.0, 2.0, 1.0}, -5.0, 1.0, Quadrature::kX));
  return model;
}

CombModel one_way() {
  std::vector<double> beta(16, 0.0);
  std::vector<double> phi(16, 0.0);
  std::vector<double> gamma(16, 0.0);
  for (std::size_t p = 4; p < 8; ++p) beta[p] = 0.5;
  for (std::size_t p = 8; p < 12; ++p) gamma[p] = 0.5;
  const double a = 1.0 / std::sqrt(8.0);
  for (std::size_t p : {0, 2, 12, 14}) phi[p] = a;
  for (std::size_t p : {1, 3, 13, 15}) phi[p] = -a;
  std::vector<double> plus(16);
  std::vector<double> minus(16);
  for (std::size_t p = 0; p < 16; ++p) {
    const double mu = std::sqrt(0.3) * phi[p] + std::sqrt(0.7) * gamma[p];
    plus[p] = (beta[p] + mu) / std::sqrt(2.0);
    minus[p] = (beta[p] - mu) / std::sqrt(2.0);
  }
  CombModel model;
  model.n_pixels = 16;
  model.efficiency = 0.9;
  model.provenance = "band B entangled with an A/D pixel pattern invisible at 4 pixels";
  model.eigenmodes.push_back(piecewise(plus, -5.0, 0.0, Quadrature::kX));
  model.eigenmodes.push_back(piecewise(minus, -5.0, 0.0, Quadrature::kP));
  return model;
}

CombModel mirror_pairs() {
  const double h = 1.0 / std::sqrt(2.0);
  CombModel model;
  model.n_pixels = 4;
  model.efficiency = 0.85;
  model.provenance = "EPR pairs B<->C and A<->D on the coarse bands";
  model.eigenmodes.push_back(piecewise({0.0, h, h, 0.0}, -4.0, 1.0, Quadrature::kX));
  model.eigenmodes.push_back(piecewise({0.0, h, -h, 0.0}, -4.0, 1.0, Quadrature::kP));
  model.eigenmodes.push_back(piecewise({h, 0.0, 0.0, h}, -4.0, 1.0, Quadrature::kX));
  model.eigenmodes.push_back(piecewise({h, 0.0, 0.0, -h}, -4.0, 1.0, Quadrature::kP));
  return model;
}

CombModel tmsv_like(double r) {
  CombModel model;
  model.n_pixels = 4;
  model.efficiency = 1.0;
  model.provenance = "one flat eigenmode squeezed with 2r";
  model.eigenmodes.push_back(
      piecewise({1.0}, 10.0 * std::log10(std::exp(-4.0 * r)), 0.0, Quadrature::kX));
  return model;
}

CovarianceMatrix two_mode_squeezed_vacuum(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Matrix m(4, 4);
  m << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return CovarianceMatrix(std::move(m));
}

}  // namespace gsteer::fixtures
