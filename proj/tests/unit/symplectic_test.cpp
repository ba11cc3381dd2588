#include <gtest/gtest.h>

#include <cmath>

#include "gsteer/comb.hpp"
#include "gsteer/error.hpp"
#include "gsteer/symplectic.hpp"
#include "oracles.hpp"
#include "random_states.hpp"

namespace gsteer {
namespace {

void expect_spectra_near(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

TEST(SymplecticForm, SquaresToMinusIdentity) {
  const Matrix w = symplectic_form(3);
  EXPECT_TRUE((w * w).isApprox(-Matrix::Identity(6, 6)));
  EXPECT_TRUE(w.transpose().isApprox(-w));
}

TEST(SymplecticEigenvalues, Vacuum) {
  expect_spectra_near(symplectic_eigenvalues(Matrix::Identity(8, 8)), {1, 1, 1, 1}, 1e-12);
}

TEST(SymplecticEigenvalues, Thermal) {
  expect_spectra_near(symplectic_eigenvalues(3.0 * Matrix::Identity(2, 2)), {3.0}, 1e-12);
}

TEST(SymplecticEigenvalues, SqueezedVacuumIsPure) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-1.4);
  m(1, 1) = std::exp(1.4);
  expect_spectra_near(symplectic_eigenvalues(m), {1.0}, 1e-12);
}

TEST(SymplecticEigenvalues, SortedAscending) {
  Matrix m = Matrix::Zero(6, 6);
  const double v[] = {5.0, 2.0, 3.5};
  for (int i = 0; i < 3; ++i) m(2 * i, 2 * i) = m(2 * i + 1, 2 * i + 1) = v[i];
  expect_spectra_near(symplectic_eigenvalues(m), {2.0, 3.5, 5.0}, 1e-12);
}

TEST(SymplecticEigenvalues, RejectsNonPositiveDefinite) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = -1.0;
  EXPECT_THROW(symplectic_eigenvalues(m), NotPositiveDefiniteError);
}

TEST(SymplecticEigenvalues, MatchesCholeskyRouteOnRandomStates) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 8);
    const Matrix sigma = testing::random_physical_cm(n, rng);
    expect_spectra_near(symplectic_eigenvalues(sigma),
                        testing::symplectic_eigenvalues_oracle(sigma), 1e-8);
  }
}

TEST(SymplecticEigenvalues, PureStatesGiveOnes) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 8);
    for (double nu : symplectic_eigenvalues(testing::random_pure_cm(n, rng))) {
      EXPECT_NEAR(nu, 1.0, 1e-8);
    }
  }
}

TEST(SymplecticEigenvalues, InvariantUnderSymplecticConjugation) {
  testing::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 6);
    const Matrix sigma = testing::random_physical_cm(n, rng);
    const Matrix s = testing::random_symplectic(n, rng, 0.8);
    Matrix moved = s.transpose() * sigma * s;
    moved = 0.5 * (moved + moved.transpose());
    expect_spectra_near(symplectic_eigenvalues(moved), symplectic_eigenvalues(sigma), 1e-8);
  }
}

// Exactly coincident pairs from one flat eigenmode over four pixels stall
// the real QR iteration for some squeezing values.
TEST(SymplecticEigenvalues, FlatSingleEigenmodeStates) {
  for (int step = 0; step <= 400; ++step) {
    CombModel model;
    model.n_pixels = 4;
    EigenmodeSpec e;
    e.shape = ProfileShape::kPiecewise;
    e.levels = {1.0};
    e.squeezing_db = -6.0 - 0.01 * step;
    model.eigenmodes.push_back(e);
    const Matrix sigma = cm_from_overlaps(model, pixel_overlap_matrix(model)).entries();
    expect_spectra_near(symplectic_eigenvalues(sigma), {1.0, 1.0, 1.0, 1.0}, 1e-8);
  }
}

}  // namespace
}  // namespace gsteer
