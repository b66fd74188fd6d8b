#include <doctest.h>

#include "wedgekit/field.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/rng.hpp"
#include "wedgekit/subspace.hpp"

using namespace wedgekit;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Matrix<Rat> random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix<Rat> m(rows, cols, Q);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = Rat(rng.int_in(-3, 3));
  return m;
}

Subspace<Rat> random_subspace(Rng& rng, std::size_t ambient) {
  std::size_t gens = static_cast<std::size_t>(rng.int_in(0, ambient));
  return Subspace<Rat>::span(random_matrix(rng, ambient, gens));
}

}  // namespace

TEST_CASE("span canonicalization makes equality decidable") {
  // Same plane through two different generating sets.
  Matrix<Rat> g1 = Matrix<Rat>::from_ints({{1, 0}, {0, 1}, {1, 1}}, Q);
  Matrix<Rat> g2 = Matrix<Rat>::from_ints({{2, 1, 3}, {0, 1, 1}, {2, 2, 4}}, Q);
  Subspace<Rat> a = Subspace<Rat>::span(g1);
  Subspace<Rat> b = Subspace<Rat>::span(g2);
  CHECK(a.dim() == 2);
  CHECK(a == b);

  // Canonical basis is reduced column echelon: identity on pivot rows.
  for (std::size_t k = 0; k < a.dim(); ++k)
    for (std::size_t l = 0; l < a.dim(); ++l)
      CHECK(a.basis().at(a.pivots()[k], l) == (k == l ? 1 : 0));

  CHECK(Subspace<Rat>::zero(3, Q).dim() == 0);
  CHECK(Subspace<Rat>::full(3, Q).dim() == 3);
  CHECK(Subspace<Rat>::span(Matrix<Rat>::identity(3, Q)) ==
        Subspace<Rat>::full(3, Q));
  CHECK(Subspace<Rat>::span(Matrix<Rat>(3, 2, Q)) == Subspace<Rat>::zero(3, Q));
}

TEST_CASE("membership and inclusion") {
  Subspace<Rat> plane =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{1, 0}, {0, 1}, {0, 0}}, Q));
  CHECK(plane.contains(Matrix<Rat>::from_ints({{3}, {-2}, {0}}, Q)));
  CHECK_FALSE(plane.contains(Matrix<Rat>::from_ints({{0}, {0}, {1}}, Q)));

  Subspace<Rat> line =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{1}, {1}, {0}}, Q));
  CHECK(line.is_subspace_of(plane));
  CHECK_FALSE(plane.is_subspace_of(line));
  CHECK(subspace_le(line, plane));
  CHECK(Subspace<Rat>::zero(3, Q).is_subspace_of(line));
  CHECK(plane.is_subspace_of(Subspace<Rat>::full(3, Q)));

  CHECK_THROWS_AS(line.is_subspace_of(Subspace<Rat>::zero(2, Q)), DimensionError);
  CHECK_THROWS_AS(subspace_sum(line, Subspace<Rat>::zero(4, Q)), DimensionError);
}

TEST_CASE("kernel vectors really annihilate") {
  Matrix<Rat> m = Matrix<Rat>::from_ints({{1, 2, 3}, {2, 4, 6}}, Q);
  Subspace<Rat> k = kernel(m);
  CHECK(k.dim() == 2);  // rank 1, nullity 2
  CHECK((m * k.basis()).is_zero());
  CHECK(k.contains(Matrix<Rat>::from_ints({{-2}, {1}, {0}}, Q)));

  CHECK(kernel(Matrix<Rat>::identity(3, Q)) == Subspace<Rat>::zero(3, Q));
  CHECK(kernel(Matrix<Rat>(2, 3, Q)) == Subspace<Rat>::full(3, Q));

  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = static_cast<std::size_t>(rng.int_in(1, 4));
    std::size_t cols = static_cast<std::size_t>(rng.int_in(1, 4));
    Matrix<Rat> a = random_matrix(rng, rows, cols);
    Subspace<Rat> n = kernel(a);
    CHECK(n.dim() == cols - rank(a));  // rank-nullity
    CHECK((a * n.basis()).is_zero());
  }
}

TEST_CASE("sum and intersection of subspaces") {
  Subspace<Rat> xy =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{1, 0}, {0, 1}, {0, 0}}, Q));
  Subspace<Rat> yz =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{0, 0}, {1, 0}, {0, 1}}, Q));
  Subspace<Rat> y_axis =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{0}, {1}, {0}}, Q));
  CHECK(subspace_intersect(xy, yz) == y_axis);
  CHECK(subspace_sum(xy, yz) == Subspace<Rat>::full(3, Q));
  CHECK(subspace_sum(y_axis, Subspace<Rat>::zero(3, Q)) == y_axis);
  CHECK(subspace_intersect(y_axis, Subspace<Rat>::zero(3, Q)) ==
        Subspace<Rat>::zero(3, Q));

  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    Subspace<Rat> x = random_subspace(rng, 4);
    Subspace<Rat> y = random_subspace(rng, 4);
    Subspace<Rat> s = subspace_sum(x, y);
    Subspace<Rat> i = subspace_intersect(x, y);
    CHECK(x.is_subspace_of(s));
    CHECK(y.is_subspace_of(s));
    CHECK(i.is_subspace_of(x));
    CHECK(i.is_subspace_of(y));
    // Dimension formula.
    CHECK(s.dim() + i.dim() == x.dim() + y.dim());
    CHECK(subspace_sum(x, y) == subspace_sum(y, x));
    CHECK(subspace_intersect(x, y) == subspace_intersect(y, x));
  }
}

TEST_CASE("modular law holds for random triples") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    // Force x <= z by summing x into z.
    Subspace<Rat> x = random_subspace(rng, 4);
    Subspace<Rat> y = random_subspace(rng, 4);
    Subspace<Rat> z = subspace_sum(x, random_subspace(rng, 4));
    REQUIRE(x.is_subspace_of(z));
    CHECK(subspace_intersect(subspace_sum(x, y), z) ==
          subspace_sum(x, subspace_intersect(y, z)));
  }
}

TEST_CASE("annihilators") {
  Subspace<Rat> diag =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{1}, {1}}, Q));
  Subspace<Rat> anti =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{1}, {-1}}, Q));
  CHECK(perp(diag) == anti);

  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    Subspace<Rat> x = random_subspace(rng, 5);
    Subspace<Rat> xp = perp(x);
    CHECK(xp.dim() == 5 - x.dim());
    CHECK(perp(xp) == x);  // double annihilator
    // Pairing vanishes: basis(xp)^T basis(x) = 0.
    CHECK((xp.basis().transpose() * x.basis()).is_zero());
    // Order reversal on a containing space.
    Subspace<Rat> big = subspace_sum(x, random_subspace(rng, 5));
    CHECK(perp(big).is_subspace_of(xp));
  }
  CHECK(perp(Subspace<Rat>::zero(3, Q)) == Subspace<Rat>::full(3, Q));
  CHECK(perp(Subspace<Rat>::full(3, Q)) == Subspace<Rat>::zero(3, Q));
}

TEST_CASE("quotient projection and section") {
  Subspace<Rat> line =
      Subspace<Rat>::span(Matrix<Rat>::from_ints({{1}, {1}, {0}}, Q));
  QuotientSpace<Rat> q = quotient(line);
  CHECK(q.dim() == 2);
  CHECK(q.projection() == Matrix<Rat>::from_ints({{-1, 1, 0}, {0, 0, 1}}, Q));
  CHECK(q.section() == Matrix<Rat>::from_ints({{0, 0}, {1, 0}, {0, 1}}, Q));

  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    Subspace<Rat> x = random_subspace(rng, 4);
    QuotientSpace<Rat> qx = quotient(x);
    // p kills exactly x: zero on x, full rank on the rest.
    CHECK((qx.projection() * x.basis()).is_zero());
    CHECK(rank(qx.projection()) == qx.dim());
    CHECK(kernel(qx.projection()) == x);
    // p s = id on the quotient.
    CHECK(qx.projection() * qx.section() ==
          Matrix<Rat>::identity(qx.dim(), Q));
  }

  // Degenerate ends.
  QuotientSpace<Rat> by_zero = quotient(Subspace<Rat>::zero(2, Q));
  CHECK(by_zero.projection() == Matrix<Rat>::identity(2, Q));
  QuotientSpace<Rat> by_full = quotient(Subspace<Rat>::full(2, Q));
  CHECK(by_full.dim() == 0);
  CHECK(by_full.projection().rows() == 0);
}

TEST_CASE("induced maps on quotients") {
  QuotientSpace<Rat> q1 =
      quotient(Subspace<Rat>::span(Matrix<Rat>::from_ints({{1}, {0}}, Q)));
  QuotientSpace<Rat> q2 =
      quotient(Subspace<Rat>::span(Matrix<Rat>::from_ints({{0}, {1}}, Q)));
  Matrix<Rat> swap_map = Matrix<Rat>::from_ints({{0, 1}, {1, 0}}, Q);
  // swap sends span{e0} to span{e1}, so it descends.
  Matrix<Rat> induced = induced_quotient_map(swap_map, q1, q2);
  CHECK(induced == Matrix<Rat>::from_ints({{1}}, Q));
  CHECK(induced * q1.projection() == q2.projection() * swap_map);

  // The identity does not send span{e0} into span{e1}.
  CHECK_THROWS_AS(
      induced_quotient_map(Matrix<Rat>::identity(2, Q), q1, q2),
      FactorizationError);
}

TEST_CASE("factoring through injections and kernels") {
  Matrix<Rat> inj = Matrix<Rat>::from_ints({{1}, {1}}, Q);
  Matrix<Rat> g = Matrix<Rat>::from_ints({{2}, {2}}, Q);
  Matrix<Rat> u = factor_through(inj, g);
  CHECK(u == Matrix<Rat>::from_ints({{2}}, Q));
  CHECK(inj * u == g);

  CHECK_THROWS_AS(factor_through(inj, Matrix<Rat>::from_ints({{1}, {2}}, Q)),
                  FactorizationError);
  CHECK_THROWS_AS(
      factor_through(Matrix<Rat>::from_ints({{1, 1}, {1, 1}}, Q), g),
      PreconditionError);

  // Universal property of the kernel.
  Matrix<Rat> h = Matrix<Rat>::from_ints({{1, 1, 1}}, Q);
  Subspace<Rat> k = kernel(h);
  Matrix<Rat> good = Matrix<Rat>::from_ints({{1}, {-2}, {1}}, Q);
  REQUIRE((h * good).is_zero());
  Matrix<Rat> w = factor_through_kernel(k, good);
  CHECK(k.basis() * w == good);
  Matrix<Rat> bad = Matrix<Rat>::from_ints({{1}, {0}, {0}}, Q);
  CHECK_THROWS_AS(factor_through_kernel(k, bad), FactorizationError);
}

TEST_CASE("subspaces over F_p") {
  FieldSpec f3 = FieldSpec::prime_field(3);
  // In F_3^2 the vector (1,2) spans the same line as (2,1) = 2*(1,2).
  Matrix<Fp> v(2, 1, f3);
  v.at(0, 0) = Fp(1, 3);
  v.at(1, 0) = Fp(2, 3);
  Matrix<Fp> w(2, 1, f3);
  w.at(0, 0) = Fp(2, 3);
  w.at(1, 0) = Fp(1, 3);
  CHECK(Subspace<Fp>::span(v) == Subspace<Fp>::span(w));
  CHECK(perp(perp(Subspace<Fp>::span(v))) == Subspace<Fp>::span(v));
}
