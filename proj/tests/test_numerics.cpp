#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cfr/channel.hpp>
#include <cfr/numerics.hpp>
#include <cfr/schemes.hpp>

using namespace cfr;

namespace {

GaussianIntMatrix make_mat(int rows, int cols, std::initializer_list<GaussInt> vals) {
  GaussianIntMatrix m(rows, cols);
  auto it = vals.begin();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m.at(r, c) = *it++;
  }
  return m;
}

std::vector<GaussInt> gvec(std::initializer_list<GaussInt> vals) { return {vals}; }

}  // namespace

TEST_CASE("hermitian form on diagonal matrices selects entries") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = 2.0;
  QuadraticForm V(d);
  CHECK(hermitian_form(gvec({{1, 0}, {0, 0}}), V) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hermitian_form(gvec({{0, 0}, {0, 0}}), V) == doctest::Approx(0.0));
}

TEST_CASE("hermitian form on a rank-one-deflated identity") {
  // h = (1,1), snr 10: value at a = (1,1) is 2 - 10*4/21 = 2/21.
  CVector h(2);
  h << Complex(1, 0), Complex(1, 0);
  QuadraticForm V = cmf_form(h, 10.0);
  CHECK(hermitian_form(gvec({{1, 0}, {1, 0}}), V) == doctest::Approx(2.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("hermitian form rejects dimension mismatch") {
  QuadraticForm V(CMatrix::Identity(2, 2));
  CHECK_THROWS_AS((void)hermitian_form(gvec({{1, 0}}), V), ContractViolation);
}

TEST_CASE("hermitian form is invariant under unit scaling of the vector") {
  RandomStream rng(7);
  for (int t = 0; t < 50; ++t) {
    CMatrix A(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = rng.complex_normal(1.0);
    QuadraticForm V(CMatrix(A * A.adjoint()));
    std::vector<GaussInt> a = gvec({{2, -1}, {0, 3}, {-1, 1}});
    double base = hermitian_form(a, V);
    // units: -1, i, -i
    std::vector<GaussInt> neg, mi, mmi;
    for (GaussInt g : a) {
      neg.push_back({-g.re, -g.im});
      mi.push_back({-g.im, g.re});
      mmi.push_back({g.im, -g.re});
    }
    CHECK(hermitian_form(neg, V) == doctest::Approx(base).epsilon(1e-12));
    CHECK(hermitian_form(mi, V) == doctest::Approx(base).epsilon(1e-12));
    CHECK(hermitian_form(mmi, V) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("projector on an axis row") {
  GaussianIntMatrix E = make_mat(1, 2, {{1, 0}, {0, 0}});
  CMatrix P = projector(E, 2);
  CHECK(std::abs(P(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(P(0, 1)) < 1e-12);
  CHECK(std::abs(P(1, 0)) < 1e-12);
  CHECK(std::abs(P(1, 1)) < 1e-12);
}

TEST_CASE("projector on the all-ones row") {
  GaussianIntMatrix E = make_mat(1, 2, {{1, 0}, {1, 0}});
  CMatrix P = projector(E, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(std::abs(P(i, j) - 0.5) < 1e-12);
}

TEST_CASE("projector of an empty log is zero") {
  CMatrix P = projector(GaussianIntMatrix::empty(2), 2);
  CHECK(P.norm() == doctest::Approx(0.0));
}

TEST_CASE("projector reproduces its rows and kills the orthogonal complement") {
  GaussianIntMatrix E = make_mat(1, 3, {{1, 1}, {0, -2}, {3, 0}});
  CMatrix P = projector(E, 3);
  CHECK((P * P - P).norm() < 1e-9);
  CHECK((P - P.adjoint()).norm() < 1e-9);
  // range(P) is spanned by the columns of E*
  CVector col = to_cmatrix(E).adjoint().col(0);
  CHECK((P * col - col).norm() < 1e-9);
  // a vector pushed into the orthogonal complement stays annihilated
  CVector orth(3);
  orth << Complex(0, 2), Complex(1, 1), Complex(0, 0);
  orth = orth - P * orth;
  CHECK((P * orth).norm() < 1e-9);
}

TEST_CASE("projector rejects dependent rows") {
  GaussianIntMatrix E = make_mat(2, 2, {{1, 0}, {1, 0}, {2, 0}, {2, 0}});
  CHECK_THROWS_AS((void)projector(E, 2), DependentEquationLog);
}

TEST_CASE("exact rank on simple integer matrices") {
  CHECK(exact_rank(make_mat(2, 2, {{1, 0}, {0, 0}, {0, 0}, {1, 0}})) == 2);
  CHECK(exact_rank(make_mat(2, 2, {{1, 0}, {1, 0}, {2, 0}, {2, 0}})) == 1);
  // (1+i)(2-2i) = 4 = 2*2: determinant vanishes exactly.
  CHECK(exact_rank(make_mat(2, 2, {{1, 1}, {2, 0}, {2, 0}, {2, -2}})) == 1);
  CHECK(exact_rank(GaussianIntMatrix::empty(3)) == 0);
}

TEST_CASE("exact rank agrees with floating SVD rank on random matrices") {
  RandomStream rng(11);
  for (int t = 0; t < 1000; ++t) {
    int rows = 1 + static_cast<int>(rng.uniform() * 4);
    int cols = 1 + static_cast<int>(rng.uniform() * 4);
    GaussianIntMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        m.at(r, c) = {static_cast<std::int64_t>(rng.uniform() * 11) - 5,
                      static_cast<std::int64_t>(rng.uniform() * 11) - 5};
      }
    }
    Eigen::JacobiSVD<CMatrix> svd(to_cmatrix(m));
    int svd_rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > 1e-6) ++svd_rank;
    }
    CHECK(exact_rank(m) == svd_rank);
  }
}

TEST_CASE("exact rank with an appended row leaves the matrix unchanged") {
  GaussianIntMatrix m = make_mat(1, 2, {{1, 0}, {0, 1}});
  std::vector<GaussInt> dep = gvec({{0, 1}, {-1, 0}});  // i * first row
  std::vector<GaussInt> ind = gvec({{1, 0}, {0, 0}});
  CHECK(exact_rank_with_row(m, dep) == 1);
  CHECK(exact_rank_with_row(m, ind) == 2);
  CHECK(m.rows() == 1);
}

TEST_CASE("quadratic form construction rejects non-hermitian input") {
  CMatrix bad(2, 2);
  bad << Complex(1, 0), Complex(2, 0), Complex(0, 0), Complex(1, 0);
  CHECK_THROWS_AS(QuadraticForm{bad}, ContractViolation);
}
