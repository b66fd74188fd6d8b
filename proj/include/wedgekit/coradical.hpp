#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wedgekit/coalgebra.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/subspace.hpp"
#include "wedgekit/wedge.hpp"

namespace wedgekit {

namespace detail {

/// Span of all pairwise products a*b with a from x, b from y.
template <class K>
Subspace<K> product_span(const DualAlgebra<K>& d, const Subspace<K>& x,
                         const Subspace<K>& y) {
  Matrix<K> prods(d.dim(), 0, d.field());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < y.dim(); ++j) {
      prods = hstack(prods, d.product(x.basis().column(i), y.basis().column(j)));
    }
  }
  return Subspace<K>::span(prods);
}

/// Smallest k with r^k = 0, established by explicit power iteration; doubles
/// as an independent check on the trace-form kernel. Throws when r is not
/// nilpotent within the dimension bound.
template <class K>
std::size_t nilpotency_witness(const DualAlgebra<K>& d, const Subspace<K>& r) {
  Subspace<K> power = r;
  std::size_t k = 1;
  while (!power.is_zero()) {
    if (k > d.dim() + 1) {
      throw Error("internal: trace-form kernel is not nilpotent");
    }
    power = product_span(d, power, r);
    ++k;
  }
  return k;
}

/// Radical by Dickson's trace-form criterion, verified to be a nilpotent
/// two-sided ideal; returns it together with its nilpotency index.
template <class K>
std::pair<Subspace<K>, std::size_t> radical_with_witness(const DualAlgebra<K>& d) {
  if (!d.field().is_rationals()) {
    throw UnsupportedField("the radical computation requires characteristic zero");
  }
  std::size_t n = d.dim();
  Matrix<K> id = Matrix<K>::identity(n, d.field());
  std::vector<Matrix<K>> lmul;
  lmul.reserve(n);
  for (std::size_t i = 0; i < n; ++i) lmul.push_back(d.left_mult(id.column(i)));
  Matrix<K> gram(n, n, d.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      K t = trace(lmul[i] * lmul[j]);
      gram.at(i, j) = t;
      gram.at(j, i) = t;  // the trace form is symmetric
    }
  }
  Subspace<K> rad = kernel(gram);
  if (!(ideal_closure(d, rad) == rad)) {
    throw Error("internal: trace-form kernel is not a two-sided ideal");
  }
  std::size_t witness = nilpotency_witness(d, rad);
  return {std::move(rad), witness};
}

}  // namespace detail

/// Jacobson radical of a finite-dimensional algebra over Q: the kernel of the
/// trace form (a, b) -> trace(L_a L_b) of the left regular representation
/// (Dickson's criterion, valid in characteristic zero). Prime fields are
/// rejected; positive-characteristic radical algorithms are out of scope.
template <class K>
Subspace<K> jacobson_radical(const DualAlgebra<K>& d) {
  return detail::radical_with_witness(d).first;
}

template <class K>
struct RadicalResult {
  Subspace<K> radical;             // of the dual algebra
  Subspace<K> coradical;           // = perp(radical), in the coalgebra
  std::size_t nilpotency_witness;  // smallest k with radical^k = 0
};

/// The coradical of a coalgebra over Q: the perp of the dual's Jacobson
/// radical. Verified to be a subcoalgebra whose wedge filtration exhausts
/// the whole coalgebra.
template <class K>
RadicalResult<K> coradical(const Coalgebra<K>& c) {
  if (!c.field().is_rationals()) {
    throw UnsupportedField("the coradical requires characteristic zero");
  }
  DualAlgebra<K> d(c);
  auto [rad, witness] = detail::radical_with_witness(d);
  Subspace<K> corad = perp(rad);
  if (!is_subcoalgebra(c, corad)) {
    throw Error("internal: coradical is not a subcoalgebra");
  }
  WedgeFiltration<K> filt = build_filtration(c, corad);
  if (!filt.colimit().is_full()) {
    throw Error("internal: coradical filtration fails to exhaust the coalgebra");
  }
  return RadicalResult<K>{std::move(rad), std::move(corad), witness};
}

}  // namespace wedgekit
