#include <doctest.h>

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "wedgekit/coalgebra.hpp"
#include "wedgekit/coradical.hpp"
#include "wedgekit/field.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/subspace.hpp"
#include "wedgekit/wedge.hpp"

using namespace wedgekit;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Subspace<Rat> coords(std::size_t dim, std::initializer_list<std::size_t> which) {
  Matrix<Rat> gens(dim, which.size(), Q);
  std::size_t k = 0;
  for (std::size_t i : which) gens.at(i, k++) = Rat(1);
  return Subspace<Rat>::span(gens);
}

/// Local product-of-subspaces helper so the radical-power assertions do not
/// lean on the implementation's own iteration.
Subspace<Rat> prod_span(const DualAlgebra<Rat>& d, const Subspace<Rat>& x,
                        const Subspace<Rat>& y) {
  Matrix<Rat> prods(d.dim(), 0, Q);
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < y.dim(); ++j)
      prods = hstack(prods, d.product(x.basis().column(i), y.basis().column(j)));
  return Subspace<Rat>::span(prods);
}

}  // namespace

TEST_CASE("trace of a square matrix") {
  Matrix<Rat> m = Matrix<Rat>::from_ints({{1, 2}, {3, 4}}, Q);
  CHECK(trace(m) == Rat(5));
  CHECK(trace(Matrix<Rat>::identity(7, Q)) == Rat(7));
  CHECK(trace(Matrix<Rat>(0, 0, Q)) == Rat(0));
  CHECK_THROWS_AS(trace(Matrix<Rat>(2, 3, Q)), DimensionError);
}

TEST_CASE("radical of the dual of divided powers") {
  // Truncated polynomials K[x]/(x^3): the Gram matrix of the trace form is
  // diag-like with trace(L_1) = 3, trace(L_x L_{x^j}) = 0, so the kernel is
  // exactly span{x, x^2}.
  DualAlgebra<Rat> d2(divided_power<Rat>(2));
  Subspace<Rat> rad2 = jacobson_radical(d2);
  CHECK(rad2 == coords(3, {1, 2}));

  for (std::size_t n = 0; n <= 4; ++n) {
    DualAlgebra<Rat> d(divided_power<Rat>(n));
    Subspace<Rat> rad = jacobson_radical(d);
    Matrix<Rat> gens(n + 1, n, Q);
    for (std::size_t i = 1; i <= n; ++i) gens.at(i, i - 1) = Rat(1);
    CHECK(rad == Subspace<Rat>::span(gens));
  }
}

TEST_CASE("semisimple duals have zero radical") {
  // The trace form of a matrix algebra is nondegenerate, and the diagonal
  // algebra dual to a grouplike coalgebra is a product of fields.
  CHECK(jacobson_radical(DualAlgebra<Rat>(matrix_coalgebra<Rat>(2))).is_zero());
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(jacobson_radical(DualAlgebra<Rat>(grouplike<Rat>(n))).is_zero());
  }
}

TEST_CASE("radical power chain of the dual of divided_power(3)") {
  DualAlgebra<Rat> d(divided_power<Rat>(3));
  Subspace<Rat> rad = jacobson_radical(d);
  CHECK(rad == coords(4, {1, 2, 3}));
  Subspace<Rat> r2 = prod_span(d, rad, rad);
  Subspace<Rat> r3 = prod_span(d, r2, rad);
  Subspace<Rat> r4 = prod_span(d, r3, rad);
  CHECK(r2 == coords(4, {2, 3}));
  CHECK(r3 == coords(4, {3}));
  CHECK(r4.is_zero());
}

TEST_CASE("coradical closed forms") {
  for (std::size_t n = 0; n <= 4; ++n) {
    RadicalResult<Rat> r = coradical(divided_power<Rat>(n));
    CHECK(r.coradical == coords(n + 1, {0}));
    CHECK(r.nilpotency_witness == n + 1);
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    RadicalResult<Rat> r = coradical(matrix_coalgebra<Rat>(n));
    CHECK(r.coradical.is_full());
    CHECK(r.radical.is_zero());
    CHECK(r.nilpotency_witness == 1);
  }
  RadicalResult<Rat> mixed =
      coradical(direct_sum(grouplike<Rat>(2), divided_power<Rat>(2)));
  CHECK(mixed.coradical == coords(5, {0, 1, 2}));
  CHECK(mixed.nilpotency_witness == 3);
}

TEST_CASE("coradical of a direct sum is the sum of coradicals") {
  std::vector<Coalgebra<Rat>> parts = {divided_power<Rat>(2), grouplike<Rat>(2),
                                       matrix_coalgebra<Rat>(2)};
  for (const auto& a : parts) {
    for (const auto& b : parts) {
      Coalgebra<Rat> sum = direct_sum(a, b);
      Subspace<Rat> got = coradical(sum).coradical;
      Subspace<Rat> ca = coradical(a).coradical;
      Subspace<Rat> cb = coradical(b).coradical;
      Matrix<Rat> gens(sum.dim(), ca.dim() + cb.dim(), Q);
      for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < ca.dim(); ++j)
          gens.at(i, j) = ca.basis().at(i, j);
      for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < cb.dim(); ++j)
          gens.at(a.dim() + i, ca.dim() + j) = cb.basis().at(i, j);
      CHECK(got == Subspace<Rat>::span(gens));
    }
  }
}

TEST_CASE("prime fields are rejected") {
  FieldSpec f5 = FieldSpec::prime_field(5);
  FieldSpec f7 = FieldSpec::prime_field(7);
  CHECK_THROWS_AS(jacobson_radical(DualAlgebra<Fp>(grouplike<Fp>(2, f5))),
                  UnsupportedField);
  CHECK_THROWS_AS(coradical(divided_power<Fp>(2, f7)), UnsupportedField);
}

TEST_CASE("coradical filtration exhausts and stabilizes at the nilpotency index") {
  // Dually, stage n of the filtration annihilates exactly rad^n, so the
  // filtration reaches the full space precisely when the power vanishes:
  // the stabilization index must equal the nilpotency witness.
  std::vector<Coalgebra<Rat>> corpus = {
      divided_power<Rat>(2), divided_power<Rat>(4), grouplike<Rat>(3),
      matrix_coalgebra<Rat>(2),
      direct_sum(grouplike<Rat>(2), divided_power<Rat>(2))};
  for (const auto& c : corpus) {
    RadicalResult<Rat> r = coradical(c);
    WedgeFiltration<Rat> filt = build_filtration(c, r.coradical);
    CHECK(filt.colimit().is_full());
    CHECK(filt.stabilization_index() == r.nilpotency_witness);
    DualAlgebra<Rat> d(c);
    Subspace<Rat> power = r.radical;
    for (std::size_t n = 1; n <= filt.stabilization_index(); ++n) {
      CHECK(filt.stage(n) == perp(power));
      power = prod_span(d, power, r.radical);
    }
  }
}

TEST_CASE("simple subcoalgebras lie inside the coradical") {
  Coalgebra<Rat> c = direct_sum(grouplike<Rat>(2), divided_power<Rat>(2));
  Subspace<Rat> corad = coradical(c).coradical;
  for (std::size_t i : {0u, 1u, 2u}) {
    Subspace<Rat> line = coords(5, {i});
    CHECK(is_subcoalgebra(c, line));
    CHECK(line.is_subspace_of(corad));
  }

  Coalgebra<Rat> g = grouplike<Rat>(3);
  Subspace<Rat> gc = coradical(g).coradical;
  for (std::size_t i : {0u, 1u, 2u}) CHECK(coords(3, {i}).is_subspace_of(gc));

  CHECK(coords(4, {0}).is_subspace_of(coradical(divided_power<Rat>(3)).coradical));
}
