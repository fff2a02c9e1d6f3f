#include <cmath>
#include <vector>

#include <doctest.h>

#include "wdbc/errors.hpp"
#include "wdbc/kernels.hpp"
#include "wdbc/rng.hpp"

using wdbc::KernelKind;
using wdbc::KernelSpec;
using wdbc::Matrix;
using wdbc::Vector;

TEST_CASE("factories validate their parameters") {
  CHECK_NOTHROW(KernelSpec::polynomial(1));
  CHECK_THROWS_AS(KernelSpec::polynomial(0), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::rbf(0.0), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::rbf(-1.0), wdbc::InvalidArgument);
}

TEST_CASE("parse and to_string round-trip") {
  for (const char* text : {"linear", "poly:d=3", "poly:d=2", "rbf:gamma=0.05",
                           "tanh:kappa=0.001,c=-1"}) {
    const KernelSpec spec = KernelSpec::parse(text);
    CHECK(KernelSpec::parse(spec.to_string()) == spec);
  }
  const KernelSpec rbf = KernelSpec::parse("rbf:gamma=0.25");
  CHECK(rbf.kind == KernelKind::Rbf);
  CHECK(rbf.gamma == 0.25);
  const KernelSpec th = KernelSpec::parse("tanh:kappa=0.5,c=-0.75");
  CHECK(th.kappa == 0.5);
  CHECK(th.c == -0.75);
}

TEST_CASE("parse rejects malformed specs") {
  CHECK_THROWS_AS(KernelSpec::parse("gaussian:gamma=1"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse("rbf"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:gamma=abc"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:gamma=1,gamma=2"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse("rbf:sigma=1"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse("poly:d=1.5"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse("tanh:kappa=1"), wdbc::InvalidArgument);
  CHECK_THROWS_AS(KernelSpec::parse(""), wdbc::InvalidArgument);
}

TEST_CASE("kernel evaluations match the formulas") {
  const Vector x{1.0, 2.0};
  const Vector z{-1.0, 0.5};
  const double d = 1.0 * -1.0 + 2.0 * 0.5;  // 0
  CHECK(wdbc::kernel_eval(KernelSpec::linear(), x, z) == doctest::Approx(d));
  CHECK(wdbc::kernel_eval(KernelSpec::polynomial(3), x, x) ==
        doctest::Approx(std::pow(5.0, 3)));
  const double sq = 4.0 + 2.25;
  CHECK(wdbc::kernel_eval(KernelSpec::rbf(0.5), x, z) ==
        doctest::Approx(std::exp(-0.5 * sq)).epsilon(1e-14));
  CHECK(wdbc::kernel_eval(KernelSpec::tanh(0.2, -1.0), x, z) ==
        doctest::Approx(std::tanh(0.2 * d - 1.0)).epsilon(1e-14));
}

TEST_CASE("rbf kernel is 1 on the diagonal") {
  const Vector x{3.0, -4.0, 5.0};
  CHECK(wdbc::kernel_eval(KernelSpec::rbf(2.0), x, x) == doctest::Approx(1.0));
}

TEST_CASE("gram matrix is symmetric and matches pairwise evaluation") {
  wdbc::RngState rng(3);
  Matrix xs(6, 3);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 3; ++j) xs(i, j) = rng.next_normal();
  }
  for (const char* text : {"linear", "poly:d=2", "rbf:gamma=0.3",
                           "tanh:kappa=0.1,c=-0.5"}) {
    const KernelSpec spec = KernelSpec::parse(text);
    const Matrix k = wdbc::gram(spec, xs);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        CHECK(k(i, j) == k(j, i));
        CHECK(k(i, j) ==
              doctest::Approx(wdbc::kernel_eval(spec, xs.row(i), xs.row(j)))
                  .epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("rectangular gram matches pairwise evaluation") {
  wdbc::RngState rng(5);
  Matrix a(4, 2);
  Matrix b(3, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 2; ++j) a(i, j) = rng.next_normal();
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) b(i, j) = rng.next_normal();
  }
  const KernelSpec spec = KernelSpec::rbf(0.7);
  const Matrix k = wdbc::gram(spec, a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(k.cols() == 3);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(k(i, j) ==
            doctest::Approx(wdbc::kernel_eval(spec, a.row(i), b.row(j)))
                .epsilon(1e-14));
    }
  }
}

TEST_CASE("only the tanh kernel is flagged indefinite") {
  CHECK(KernelSpec::linear().positive_semidefinite());
  CHECK(KernelSpec::polynomial(2).positive_semidefinite());
  CHECK(KernelSpec::rbf(1.0).positive_semidefinite());
  CHECK_FALSE(KernelSpec::tanh(0.1, -1.0).positive_semidefinite());
}

TEST_CASE("kernel_eval checks dimensions") {
  const Vector x{1.0, 2.0};
  const Vector z{1.0};
  CHECK_THROWS_AS(wdbc::kernel_eval(KernelSpec::linear(), x, z),
                  wdbc::DimensionMismatch);
}
