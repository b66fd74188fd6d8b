#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wedgekit/matrix.hpp"
#include "wedgekit/report.hpp"
#include "wedgekit/subspace.hpp"

namespace wedgekit {

namespace detail {

/// Coassociativity and both counit laws as exact matrix identities.
/// delta is dim^2 x dim, epsilon is 1 x dim, both in the flat tensor basis.
template <class K>
VerificationReport axiom_report(const Matrix<K>& delta, const Matrix<K>& epsilon) {
  std::size_t d = delta.cols();
  FieldSpec f = delta.field();
  VerificationReport report;
  report.subject = "coalgebra axioms";

  auto first_bad_column = [d](const Matrix<K>& a, const Matrix<K>& b) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!(a.at(i, j) == b.at(i, j))) return std::to_string(j);
      }
    }
    return std::string();
  };

  Matrix<K> id = Matrix<K>::identity(d, f);
  Matrix<K> left = kronecker(delta, id) * delta;   // (Delta (x) id) Delta
  Matrix<K> right = kronecker(id, delta) * delta;  // (id (x) Delta) Delta
  std::string bad = first_bad_column(left, right);
  report.add("coassociativity", bad.empty(),
             bad.empty() ? "" : "first violating basis index " + bad);

  // k (x) V and V (x) k collapse to V under the flat indexing, so both
  // counit composites are square already.
  Matrix<K> counit_left = kronecker(epsilon, id) * delta;
  bad = first_bad_column(counit_left, id);
  report.add("counit_left", bad.empty(),
             bad.empty() ? "" : "first violating basis index " + bad);

  Matrix<K> counit_right = kronecker(id, epsilon) * delta;
  bad = first_bad_column(counit_right, id);
  report.add("counit_right", bad.empty(),
             bad.empty() ? "" : "first violating basis index " + bad);
  return report;
}

}  // namespace detail

/// Finite-dimensional coalgebra given by structure constants: the whole
/// comultiplication as one dim^2 x dim matrix in the flat tensor basis,
/// plus the counit as a 1 x dim row.
///
/// The checked constructor enforces coassociativity and the counit laws
/// exactly; `unchecked` exists so that deliberately broken structures can be
/// fed to check_axioms in tests and document validation.
///
/// Equality is structural (field, delta, epsilon); basis labels are
/// presentation only.
template <class K>
class Coalgebra {
 public:
  Coalgebra(Matrix<K> delta, Matrix<K> epsilon, std::vector<std::string> labels)
      : Coalgebra(std::move(delta), std::move(epsilon), std::move(labels), true) {}

  static Coalgebra unchecked(Matrix<K> delta, Matrix<K> epsilon,
                             std::vector<std::string> labels) {
    return Coalgebra(std::move(delta), std::move(epsilon), std::move(labels), false);
  }

  std::size_t dim() const { return delta_.cols(); }
  FieldSpec field() const { return delta_.field(); }
  const Matrix<K>& delta() const { return delta_; }
  const Matrix<K>& epsilon() const { return epsilon_; }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const Coalgebra& a, const Coalgebra& b) {
    return a.delta_ == b.delta_ && a.epsilon_ == b.epsilon_;
  }

 private:
  Coalgebra(Matrix<K> delta, Matrix<K> epsilon, std::vector<std::string> labels,
            bool check)
      : delta_(std::move(delta)), epsilon_(std::move(epsilon)), labels_(std::move(labels)) {
    std::size_t d = delta_.cols();
    if (delta_.rows() != d * d || epsilon_.rows() != 1 || epsilon_.cols() != d) {
      throw DimensionError("coalgebra structure matrices have wrong shapes");
    }
    if (labels_.size() != d) {
      labels_.clear();
      for (std::size_t i = 0; i < d; ++i) labels_.push_back("b" + std::to_string(i));
    }
    if (check) {
      VerificationReport r = detail::axiom_report(delta_, epsilon_);
      if (auto bad = r.first_failure()) {
        throw AxiomError(bad->name + " fails" +
                         (bad->detail.empty() ? "" : " (" + bad->detail + ")"));
      }
    }
  }

  Matrix<K> delta_;
  Matrix<K> epsilon_;
  std::vector<std::string> labels_;
};

template <class K>
VerificationReport check_axioms(const Coalgebra<K>& c) {
  return detail::axiom_report(c.delta(), c.epsilon());
}

/// Linear map intertwining two comultiplications and counits. The
/// constructor verifies both identities exactly and refuses invalid data.
template <class K>
class CoalgebraMorphism {
 public:
  CoalgebraMorphism(Coalgebra<K> source, Coalgebra<K> target, Matrix<K> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.cols() != source_.dim() || matrix_.rows() != target_.dim() ||
        matrix_.field() != source_.field() || source_.field() != target_.field()) {
      throw DimensionError("morphism matrix has wrong shape or field");
    }
    if (!(kronecker(matrix_, matrix_) * source_.delta() == target_.delta() * matrix_)) {
      throw MorphismError("matrix does not intertwine the comultiplications");
    }
    if (!(target_.epsilon() * matrix_ == source_.epsilon())) {
      throw MorphismError("matrix does not preserve the counit");
    }
  }

  const Coalgebra<K>& source() const { return source_; }
  const Coalgebra<K>& target() const { return target_; }
  const Matrix<K>& matrix() const { return matrix_; }

  bool is_injective() const { return rank(matrix_) == matrix_.cols(); }

 private:
  Coalgebra<K> source_;
  Coalgebra<K> target_;
  Matrix<K> matrix_;
};

template <class K>
CoalgebraMorphism<K> compose(const CoalgebraMorphism<K>& g, const CoalgebraMorphism<K>& f) {
  if (!(f.target() == g.source())) {
    throw DimensionError("compose: middle coalgebras differ");
  }
  return CoalgebraMorphism<K>(f.source(), g.target(), g.matrix() * f.matrix());
}

template <class K>
CoalgebraMorphism<K> identity_morphism(const Coalgebra<K>& c) {
  return CoalgebraMorphism<K>(c, c, Matrix<K>::identity(c.dim(), c.field()));
}

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

/// Basis c_0..c_n, Delta(c_m) = sum_{i+j=m} c_i (x) c_j, eps(c_m) = [m=0].
template <class K>
Coalgebra<K> divided_power(std::size_t n, FieldSpec field = FieldSpec::rationals()) {
  std::size_t d = n + 1;
  Matrix<K> delta(d * d, d, field);
  Matrix<K> epsilon(1, d, field);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t i = 0; i <= m; ++i) {
      delta.at(i * d + (m - i), m) = FieldTraits<K>::one(field);
    }
  }
  epsilon.at(0, 0) = FieldTraits<K>::one(field);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("c" + std::to_string(i));
  return Coalgebra<K>(std::move(delta), std::move(epsilon), std::move(labels));
}

/// Basis g_1..g_n of group-likes: Delta(g_i) = g_i (x) g_i, eps(g_i) = 1.
template <class K>
Coalgebra<K> grouplike(std::size_t n, FieldSpec field = FieldSpec::rationals()) {
  if (n < 1) throw PreconditionError("grouplike needs n >= 1");
  Matrix<K> delta(n * n, n, field);
  Matrix<K> epsilon(1, n, field);
  for (std::size_t i = 0; i < n; ++i) {
    delta.at(i * n + i, i) = FieldTraits<K>::one(field);
    epsilon.at(0, i) = FieldTraits<K>::one(field);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("g" + std::to_string(i));
  return Coalgebra<K>(std::move(delta), std::move(epsilon), std::move(labels));
}

/// Basis e_{ij} (flat index i*n+j), Delta(e_{ij}) = sum_k e_{ik} (x) e_{kj},
/// eps(e_{ij}) = [i=j]. Dual to the n x n matrix algebra.
template <class K>
Coalgebra<K> matrix_coalgebra(std::size_t n, FieldSpec field = FieldSpec::rationals()) {
  if (n < 1) throw PreconditionError("matrix_coalgebra needs n >= 1");
  std::size_t d = n * n;
  Matrix<K> delta(d * d, d, field);
  Matrix<K> epsilon(1, d, field);
  std::vector<std::string> labels(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t col = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        delta.at((i * n + k) * d + (k * n + j), col) = FieldTraits<K>::one(field);
      }
      if (i == j) epsilon.at(0, col) = FieldTraits<K>::one(field);
      labels[col] = "e" + std::to_string(i) + std::to_string(j);
    }
  }
  return Coalgebra<K>(std::move(delta), std::move(epsilon), std::move(labels));
}

/// Block comultiplication and concatenated counit. Labels from the right
/// summand get primes appended until they are distinct from the left ones.
template <class K>
Coalgebra<K> direct_sum(const Coalgebra<K>& a, const Coalgebra<K>& b) {
  if (a.field() != b.field()) throw FieldError("direct_sum over mixed fields");
  std::size_t da = a.dim(), db = b.dim(), d = da + db;
  FieldSpec f = a.field();
  Matrix<K> delta(d * d, d, f);
  Matrix<K> epsilon(1, d, f);
  for (std::size_t col = 0; col < da; ++col) {
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < da; ++j) {
        const K& v = a.delta().at(i * da + j, col);
        if (!FieldTraits<K>::is_zero(v)) delta.at(i * d + j, col) = v;
      }
    }
    epsilon.at(0, col) = a.epsilon().at(0, col);
  }
  for (std::size_t col = 0; col < db; ++col) {
    for (std::size_t i = 0; i < db; ++i) {
      for (std::size_t j = 0; j < db; ++j) {
        const K& v = b.delta().at(i * db + j, col);
        if (!FieldTraits<K>::is_zero(v)) {
          delta.at((da + i) * d + (da + j), da + col) = v;
        }
      }
    }
    epsilon.at(0, da + col) = b.epsilon().at(0, col);
  }
  std::vector<std::string> labels = a.labels();
  for (std::string name : b.labels()) {
    while (std::find(labels.begin(), labels.end(), name) != labels.end()) {
      name += "'";
    }
    labels.push_back(name);
  }
  return Coalgebra<K>(std::move(delta), std::move(epsilon), std::move(labels));
}

// ---------------------------------------------------------------------------
// Dual algebra
// ---------------------------------------------------------------------------

/// The convolution algebra on the dual coordinates: multiplication is the
/// transpose of delta, the unit is the transpose of epsilon. Serves as the
/// independent oracle substrate for wedges and the coradical.
///
/// The algebra laws are transposes of the coalgebra axioms enforced on
/// construction of the Coalgebra; check_dual_laws re-verifies them
/// explicitly. Construction itself stays cheap because duals are built
/// inside the subcoalgebra and coideal cross-checks.
template <class K>
class DualAlgebra {
 public:
  explicit DualAlgebra(const Coalgebra<K>& c)
      : mult_(c.delta().transpose()), unit_(c.epsilon().transpose()) {}

  std::size_t dim() const { return mult_.rows(); }
  FieldSpec field() const { return mult_.field(); }
  const Matrix<K>& mult() const { return mult_; }
  const Matrix<K>& unit() const { return unit_; }

  /// Product of two functionals given as coefficient columns.
  Matrix<K> product(const Matrix<K>& f, const Matrix<K>& g) const {
    return mult_ * kronecker(f, g);
  }

  /// Matrix of left multiplication by the functional a.
  Matrix<K> left_mult(const Matrix<K>& a) const {
    return mult_ * kronecker(a, Matrix<K>::identity(dim(), field()));
  }

 private:
  Matrix<K> mult_;  // dim x dim^2
  Matrix<K> unit_;  // dim x 1
};

template <class K>
DualAlgebra<K> dual_algebra(const Coalgebra<K>& c) {
  return DualAlgebra<K>(c);
}

/// Associativity and the two-sided unit law of the dual, as exact matrix
/// identities.
template <class K>
VerificationReport check_dual_laws(const DualAlgebra<K>& d) {
  Matrix<K> id = Matrix<K>::identity(d.dim(), d.field());
  VerificationReport report;
  report.subject = "dual algebra laws";
  report.add("associativity",
             d.mult() * kronecker(d.mult(), id) == d.mult() * kronecker(id, d.mult()));
  report.add("unit_left", d.mult() * kronecker(d.unit(), id) == id);
  report.add("unit_right", d.mult() * kronecker(id, d.unit()) == id);
  return report;
}

/// Smallest unital subalgebra containing the seed: iterate span-with-products
/// until stable. Stabilizes in at most dim steps.
template <class K>
Subspace<K> subalgebra_closure(const DualAlgebra<K>& d, const Subspace<K>& seed) {
  Subspace<K> s = Subspace<K>::span(hstack(seed.basis(), d.unit()));
  for (;;) {
    Matrix<K> products = s.basis();
    for (std::size_t i = 0; i < s.dim(); ++i) {
      for (std::size_t j = 0; j < s.dim(); ++j) {
        products = hstack(products, d.product(s.basis().column(i), s.basis().column(j)));
      }
    }
    Subspace<K> next = Subspace<K>::span(products);
    if (next == s) return s;
    s = next;
  }
}

/// Smallest two-sided ideal containing the seed.
template <class K>
Subspace<K> ideal_closure(const DualAlgebra<K>& d, const Subspace<K>& seed) {
  Subspace<K> s = Subspace<K>::span(seed.basis());
  Matrix<K> id = Matrix<K>::identity(d.dim(), d.field());
  for (;;) {
    Matrix<K> products = s.basis();
    for (std::size_t i = 0; i < s.dim(); ++i) {
      for (std::size_t j = 0; j < d.dim(); ++j) {
        products = hstack(products, d.product(s.basis().column(i), id.column(j)));
        products = hstack(products, d.product(id.column(j), s.basis().column(i)));
      }
    }
    Subspace<K> next = Subspace<K>::span(products);
    if (next == s) return s;
    s = next;
  }
}

// ---------------------------------------------------------------------------
// Subcoalgebras, coideals, induced structures
// ---------------------------------------------------------------------------

namespace detail {

/// Delta(x) inside x (x) x, as a containment of subspaces of the tensor square.
template <class K>
bool subcoalgebra_direct(const Coalgebra<K>& c, const Subspace<K>& x) {
  Subspace<K> xx = Subspace<K>::span(kronecker(x.basis(), x.basis()));
  return xx.contains(c.delta() * x.basis());
}

/// x_perp is a two-sided ideal of the dual algebra.
template <class K>
bool subcoalgebra_dual(const Coalgebra<K>& c, const Subspace<K>& x) {
  DualAlgebra<K> d(c);
  Subspace<K> ann = perp(x);
  Matrix<K> id = Matrix<K>::identity(c.dim(), c.field());
  for (std::size_t i = 0; i < ann.dim(); ++i) {
    for (std::size_t j = 0; j < c.dim(); ++j) {
      if (!ann.contains(d.product(ann.basis().column(i), id.column(j)))) return false;
      if (!ann.contains(d.product(id.column(j), ann.basis().column(i)))) return false;
    }
  }
  return true;
}

template <class K>
bool coideal_direct(const Coalgebra<K>& c, const Subspace<K>& i) {
  if (!(c.epsilon() * i.basis()).is_zero()) return false;
  Subspace<K> full = Subspace<K>::full(c.dim(), c.field());
  Subspace<K> mixed = subspace_sum(
      Subspace<K>::span(kronecker(i.basis(), full.basis())),
      Subspace<K>::span(kronecker(full.basis(), i.basis())));
  return mixed.contains(c.delta() * i.basis());
}

/// i_perp is a unital subalgebra of the dual.
template <class K>
bool coideal_dual(const Coalgebra<K>& c, const Subspace<K>& i) {
  DualAlgebra<K> d(c);
  Subspace<K> ann = perp(i);
  if (!ann.contains(d.unit())) return false;
  for (std::size_t a = 0; a < ann.dim(); ++a) {
    for (std::size_t b = 0; b < ann.dim(); ++b) {
      if (!ann.contains(d.product(ann.basis().column(a), ann.basis().column(b)))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

/// True iff Delta(x) <= x (x) x. The direct tensor-containment test is
/// primary; the dual-ideal test runs as a cross-check and a disagreement is
/// an internal-consistency failure, not a result.
template <class K>
bool is_subcoalgebra(const Coalgebra<K>& c, const Subspace<K>& x) {
  if (x.ambient_dim() != c.dim()) throw DimensionError("subspace outside the coalgebra");
  bool direct = detail::subcoalgebra_direct(c, x);
  bool dual = detail::subcoalgebra_dual(c, x);
  if (direct != dual) {
    throw Error("internal consistency failure: tensor and dual subcoalgebra tests disagree");
  }
  return direct;
}

/// True iff Delta(i) <= i (x) E + E (x) i and eps(i) = 0; cross-checked
/// through the dual exactly like is_subcoalgebra.
template <class K>
bool is_coideal(const Coalgebra<K>& c, const Subspace<K>& i) {
  if (i.ambient_dim() != c.dim()) throw DimensionError("subspace outside the coalgebra");
  bool direct = detail::coideal_direct(c, i);
  bool dual = detail::coideal_dual(c, i);
  if (direct != dual) {
    throw Error("internal consistency failure: tensor and dual coideal tests disagree");
  }
  return direct;
}

/// Quotient coalgebra E/I with the projection as a coalgebra morphism.
/// Structure constants are pushed through the projection along the section;
/// well-definedness is exactly the coideal condition, and the axioms are
/// re-verified on the result.
template <class K>
std::pair<Coalgebra<K>, CoalgebraMorphism<K>> quotient_coalgebra(const Coalgebra<K>& c,
                                                                 const Subspace<K>& i) {
  if (!is_coideal(c, i)) throw NotACoideal("quotient_coalgebra: not a coideal");
  QuotientSpace<K> q(i);
  Matrix<K> p = q.projection();
  Matrix<K> delta_q = kronecker(p, p) * c.delta() * q.section();
  Matrix<K> eps_q = c.epsilon() * q.section();
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < q.dim(); ++k) {
    // The section embeds quotient coordinates on non-pivot rows; reuse those
    // ambient labels.
    for (std::size_t row = 0; row < c.dim(); ++row) {
      if (!FieldTraits<K>::is_zero(q.section().at(row, k))) {
        labels.push_back(c.labels()[row]);
        break;
      }
    }
  }
  Coalgebra<K> quot(std::move(delta_q), std::move(eps_q), std::move(labels));
  CoalgebraMorphism<K> proj(c, quot, p);
  return {std::move(quot), std::move(proj)};
}

/// Coalgebra structure on a subcoalgebra x, with the inclusion as a
/// coalgebra morphism: Delta restricted to x factors through x (x) x.
template <class K>
std::pair<Coalgebra<K>, CoalgebraMorphism<K>> restrict_coalgebra(const Coalgebra<K>& c,
                                                                 const Subspace<K>& x) {
  if (!is_subcoalgebra(c, x)) throw NotASubcoalgebra("restrict_coalgebra: not a subcoalgebra");
  Matrix<K> incl = x.basis();
  Matrix<K> delta_x = factor_through(kronecker(incl, incl), c.delta() * incl);
  Matrix<K> eps_x = c.epsilon() * incl;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    // Reuse the ambient label when the basis column is a standard basis
    // vector; otherwise fall back to a positional name.
    std::size_t nonzero = 0, last = 0;
    for (std::size_t row = 0; row < c.dim(); ++row) {
      if (!FieldTraits<K>::is_zero(incl.at(row, k))) {
        ++nonzero;
        last = row;
      }
    }
    if (nonzero == 1 && incl.at(last, k) == FieldTraits<K>::one(c.field())) {
      labels.push_back(c.labels()[last]);
    } else {
      labels.push_back("v" + std::to_string(k));
    }
  }
  Coalgebra<K> sub(std::move(delta_x), std::move(eps_x), std::move(labels));
  CoalgebraMorphism<K> inclusion(sub, c, incl);
  return {std::move(sub), std::move(inclusion)};
}

}  // namespace wedgekit
