#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wedgekit/matrix.hpp"

namespace wedgekit {

/// Subspace of a numbered coordinate space, stored by its unique reduced
/// column-echelon basis (pivot rows ascending, identity block on the pivot
/// rows). Two Subspace values are equal as representations iff they have
/// the same span, so subobject equality is plain operator==.
template <class K>
class Subspace {
 public:
  static Subspace zero(std::size_t ambient, FieldSpec field) {
    return Subspace(ambient, Matrix<K>(ambient, 0, field), {});
  }

  static Subspace full(std::size_t ambient, FieldSpec field) {
    std::vector<std::size_t> piv(ambient);
    for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
    return Subspace(ambient, Matrix<K>::identity(ambient, field), std::move(piv));
  }

  /// Canonical form of the column span of `generators`.
  static Subspace span(const Matrix<K>& generators) {
    RrefResult<K> r = rref(generators.transpose());
    Matrix<K> basis(generators.rows(), r.rank, generators.field());
    for (std::size_t k = 0; k < r.rank; ++k) {
      for (std::size_t i = 0; i < generators.rows(); ++i) {
        basis.at(i, k) = r.reduced.at(k, i);
      }
    }
    return Subspace(generators.rows(), std::move(basis), std::move(r.pivots));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  FieldSpec field() const { return basis_.field(); }

  /// The inclusion map i_X read as an ambient x dim matrix.
  const Matrix<K>& basis() const { return basis_; }

  /// Pivot coordinates; the basis restricted to these rows is the identity.
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  /// Membership of every column of `vectors`.
  bool contains(const Matrix<K>& vectors) const {
    if (vectors.rows() != ambient_) throw DimensionError("contains: ambient mismatch");
    return solve(basis_, vectors).has_value();
  }

  bool is_subspace_of(const Subspace& other) const {
    require_compatible(other);
    return other.contains(basis_);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  void require_compatible(const Subspace& o) const {
    if (ambient_ != o.ambient_ || field() != o.field()) {
      throw DimensionError("subspaces live in different ambient spaces");
    }
  }

 private:
  Subspace(std::size_t ambient, Matrix<K> basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t ambient_;
  Matrix<K> basis_;
  std::vector<std::size_t> pivots_;
};

template <class K>
Subspace<K> subspace_sum(const Subspace<K>& x, const Subspace<K>& y) {
  x.require_compatible(y);
  return Subspace<K>::span(hstack(x.basis(), y.basis()));
}

/// Canonical subspace {v : m v = 0}.
template <class K>
Subspace<K> kernel(const Matrix<K>& m) {
  RrefResult<K> r = rref(m);
  std::vector<std::size_t> free_cols;
  std::size_t p = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (p < r.pivots.size() && r.pivots[p] == c) {
      ++p;
    } else {
      free_cols.push_back(c);
    }
  }
  Matrix<K> gens(m.cols(), free_cols.size(), m.field());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    gens.at(free_cols[k], k) = FieldTraits<K>::one(m.field());
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      gens.at(r.pivots[i], k) = -r.reduced.at(i, free_cols[k]);
    }
  }
  return Subspace<K>::span(gens);
}

/// Intersection via the kernel of the juxtaposed map [B_x | -B_y]: kernel
/// vectors (u; w) satisfy B_x u = B_y w, so the intersection is the span of
/// the vectors B_x u.
template <class K>
Subspace<K> subspace_intersect(const Subspace<K>& x, const Subspace<K>& y) {
  x.require_compatible(y);
  Matrix<K> neg = FieldTraits<K>::from_int(x.field(), -1) * y.basis();
  Subspace<K> null = kernel(hstack(x.basis(), neg));
  Matrix<K> u_part(x.dim(), null.dim(), x.field());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < null.dim(); ++j) {
      u_part.at(i, j) = null.basis().at(i, j);
    }
  }
  return Subspace<K>::span(x.basis() * u_part);
}

template <class K>
bool subspace_le(const Subspace<K>& x, const Subspace<K>& y) {
  return x.is_subspace_of(y);
}

/// Annihilator in the dual coordinate space (dual-basis pairing). In finite
/// dimension perp(perp(x)) = x.
template <class K>
Subspace<K> perp(const Subspace<K>& x) {
  return kernel(x.basis().transpose());
}

/// Cokernel data for an ambient space modulo a subspace: a projection that
/// kills exactly the subspace and a deterministic section embedding quotient
/// coordinates on the non-pivot rows.
template <class K>
class QuotientSpace {
 public:
  explicit QuotientSpace(Subspace<K> sub)
      : ambient_(sub.ambient_dim()),
        subspace_(std::move(sub)),
        projection_(ambient_ - subspace_.dim(), ambient_, subspace_.field()),
        section_(ambient_, ambient_ - subspace_.dim(), subspace_.field()) {
    // Free rows = complement of the pivot rows of the canonical basis.
    std::vector<std::size_t> free_rows;
    {
      std::size_t p = 0;
      for (std::size_t i = 0; i < ambient_; ++i) {
        if (p < subspace_.pivots().size() && subspace_.pivots()[p] == i) {
          ++p;
        } else {
          free_rows.push_back(i);
        }
      }
    }
    // projection = S_F (I - B R_P): subtract the unique basis combination
    // matching the pivot coordinates, then read off the free coordinates.
    const Matrix<K>& b = subspace_.basis();
    for (std::size_t q = 0; q < free_rows.size(); ++q) {
      std::size_t i = free_rows[q];
      projection_.at(q, i) = FieldTraits<K>::one(field());
      for (std::size_t k = 0; k < subspace_.dim(); ++k) {
        projection_.at(q, subspace_.pivots()[k]) -= b.at(i, k);
      }
      section_.at(i, q) = FieldTraits<K>::one(field());
    }
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return ambient_ - subspace_.dim(); }
  FieldSpec field() const { return subspace_.field(); }
  const Subspace<K>& subspace() const { return subspace_; }
  const Matrix<K>& projection() const { return projection_; }
  const Matrix<K>& section() const { return section_; }

 private:
  std::size_t ambient_;
  Subspace<K> subspace_;
  Matrix<K> projection_;
  Matrix<K> section_;
};

template <class K>
QuotientSpace<K> quotient(const Subspace<K>& x) {
  return QuotientSpace<K>(x);
}

/// The unique q with q p_{X1} = p_{X2} y, for y mapping X1 into X2.
/// Computed as p_{X2} y section_{X1}; the defining identity is re-checked,
/// which is exactly the condition y(X1) <= X2.
template <class K>
Matrix<K> induced_quotient_map(const Matrix<K>& y, const QuotientSpace<K>& q1,
                               const QuotientSpace<K>& q2) {
  if (y.cols() != q1.ambient_dim() || y.rows() != q2.ambient_dim()) {
    throw DimensionError("induced_quotient_map: shape mismatch");
  }
  Matrix<K> q = q2.projection() * y * q1.section();
  if (!(q * q1.projection() == q2.projection() * y)) {
    throw FactorizationError("map does not send the first subspace into the second");
  }
  return q;
}

/// The unique u with inj u = g. Requires inj injective; throws
/// FactorizationError when some column of g is outside the image.
template <class K>
Matrix<K> factor_through(const Matrix<K>& inj, const Matrix<K>& g) {
  if (rank(inj) != inj.cols()) {
    throw PreconditionError("factor_through requires an injective map");
  }
  std::optional<Matrix<K>> u = solve(inj, g);
  if (!u) throw FactorizationError("map does not factor through the subobject");
  return *u;
}

/// Universal property of the kernel: for g with h g = 0 and k = ker h, the
/// unique u with i_k u = g. Solvability of i_k u = g is equivalent to
/// h g = 0, so an offending g raises FactorizationError here.
template <class K>
Matrix<K> factor_through_kernel(const Subspace<K>& k, const Matrix<K>& g) {
  return factor_through(k.basis(), g);
}

template <class K>
std::ostream& operator<<(std::ostream& os, const Subspace<K>& s) {
  return os << "span cols of\n" << s.basis();
}

}  // namespace wedgekit
