#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fracmoser/gridfield.hpp"
#include "fracmoser/moser_family.hpp"

using namespace fm;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridField(3, 8.0, 128), std::domain_error);
  CHECK_THROWS_AS(GridField(1, 8.0, 100), std::domain_error);
  CHECK_THROWS_AS(GridField(1, 2.0, 128), std::domain_error);
}

TEST_CASE("single Fourier mode is an eigenfunction of the riesz symbol") {
  const int N = 256;
  const double L = 8.0;
  GridField f(1, L, N);
  const double k_mode = 3.0 * M_PI / L;  // on the frequency lattice
  for (int i = 0; i < N; ++i) f.values[i] = std::cos(k_mode * f.coord(i));
  const double sigma = 0.7;
  GridField out = spectral_apply(f, SymbolSpec::riesz(sigma));
  const double factor = std::pow(k_mode * k_mode, sigma);
  for (int i = 0; i < N; i += 17)
    CHECK(out.values[i] == doctest::Approx(factor * f.values[i]).epsilon(1e-10));
}

TEST_CASE("single mode under the bessel symbol") {
  const int N = 128;
  const double L = 4.0;
  GridField f(1, L, N);
  const double k_mode = 5.0 * M_PI / L;
  for (int i = 0; i < N; ++i) f.values[i] = std::cos(k_mode * f.coord(i));
  const double tau = 1.0, sigma = 0.5;
  GridField out = spectral_apply(f, SymbolSpec::bessel(tau, sigma));
  const double factor = std::pow(tau + k_mode * k_mode, sigma);
  for (int i = 0; i < N; i += 13)
    CHECK(out.values[i] == doctest::Approx(factor * f.values[i]).epsilon(1e-10));
}

TEST_CASE("zero field maps to zero") {
  GridField f(2, 4.0, 64);
  GridField out = spectral_apply(f, SymbolSpec::bessel(1.0, 0.5));
  for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("difference of symbols on a single mode") {
  const int N = 128;
  const double L = 4.0;
  GridField f(1, L, N);
  const double k_mode = 4.0 * M_PI / L;
  for (int i = 0; i < N; ++i) f.values[i] = std::cos(k_mode * f.coord(i));
  GridField out = bessel_minus_riesz(f, 1.0, 0.5);
  const double k2 = k_mode * k_mode;
  const double factor = std::sqrt(1.0 + k2) - std::sqrt(k2);
  for (int i = 0; i < N; i += 11)
    CHECK(out.values[i] == doctest::Approx(factor * f.values[i]).epsilon(1e-9));
}

TEST_CASE("tau = 0 difference vanishes identically") {
  GridField f(1, 8.0, 256);
  for (int i = 0; i < 256; ++i) f.values[i] = std::exp(-f.coord(i) * f.coord(i));
  GridField out = bessel_minus_riesz(f, 0.0, 0.5);
  for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("riesz symbol sends the mean to zero") {
  GridField f(1, 8.0, 128);
  for (int i = 0; i < 128; ++i) f.values[i] = 2.5;  // pure zero mode
  GridField out = spectral_apply(f, SymbolSpec::riesz(0.5));
  for (double v : out.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("norm equivalence between combined and shifted norms") {
  // ||u||_p + ||(-Delta)^sigma u||_p vs ||(I-Delta)^sigma u||_p on random
  // band-limited fields: ratio within a fixed constant
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const int N = 256;
  const double L = 8.0;
  const double sigma = 0.6;
  for (double p : {1.5, 2.0, 3.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      GridField f(1, L, N);
      for (int m = 1; m <= 6; ++m) {
        const double a = amp(rng), ph = amp(rng) * M_PI;
        for (int i = 0; i < N; ++i)
          f.values[i] += a * std::cos(M_PI / L * m * f.coord(i) + ph);
      }
      const double u_p = grid_lp_norm(f, p);
      const double riesz_p =
          grid_lp_norm(spectral_apply(f, SymbolSpec::riesz(sigma)), p);
      const double bessel_p =
          grid_lp_norm(spectral_apply(f, SymbolSpec::bessel(1.0, sigma)), p);
      const double ratio = (u_p + riesz_p) / bessel_p;
      CHECK(ratio > 0.1);
      CHECK(ratio < 10.0);
    }
  }
}

TEST_CASE("shifted-minus-Riesz remainder of the family shrinks like 1/k") {
  // || (tau I - Delta)^{1/2} u_eps - (-Delta)^{1/2} u_eps ||^2 log(1/eps)
  // stays bounded (the lower-order remainder carries no sharpness)
  for (int k : {2, 3, 4}) {
    MoserParams params(Dim(2), ExponentPair(2), std::exp(-k));
    const int N = k >= 4 ? 2048 : 1024;
    GridField f = GridField::sample_radial(u_eps(params), N, 8.0);
    GridField w = bessel_minus_riesz(f, 1.0, 0.5);
    const double n2 = grid_lp_norm(w, 2.0);
    const double product = n2 * n2 * k;
    CHECK(product > 0.001);
    CHECK(product < 0.1);
  }
}

TEST_CASE("radial sampling agrees with direct evaluation") {
  MoserParams params(Dim(2), ExponentPair(2), std::exp(-2));
  RadialProfile u = u_eps(params);
  GridField f = GridField::sample_radial(u, 128, 4.0);
  CHECK(f.dim == 2);
  CHECK(f.at(64, 64) == doctest::Approx(u.value(0.0)));
  CHECK(f.at(64, 96) == doctest::Approx(u.value(f.coord(96))));
}
