#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wedgekit/coalgebra.hpp"
#include "wedgekit/coradical.hpp"
#include "wedgekit/field.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/report.hpp"
#include "wedgekit/rng.hpp"
#include "wedgekit/subspace.hpp"
#include "wedgekit/wedge.hpp"

namespace wedgekit {

/// How a verification instance came to be; enough to regenerate it.
struct Provenance {
  std::uint64_t seed = 0;
  std::string family;
  std::string detail;
};

enum class HrVerdict { consistent, premise_violated, counterexample };

inline std::string to_string(HrVerdict v) {
  switch (v) {
    case HrVerdict::consistent:
      return "consistent";
    case HrVerdict::premise_violated:
      return "premise_violated";
    case HrVerdict::counterexample:
      return "COUNTEREXAMPLE";
  }
  return "unknown";
}

/// One theorem instance: a subcoalgebra D of E and a coalgebra morphism f
/// out of E. Malformed data is rejected here, so the verdict functions never
/// have to.
template <class K>
class HrInstance {
 public:
  HrInstance(Coalgebra<K> e, Subspace<K> d, CoalgebraMorphism<K> f,
             Provenance provenance = {})
      : e_(std::move(e)),
        d_(std::move(d)),
        f_(std::move(f)),
        provenance_(std::move(provenance)) {
    if (!(f_.source() == e_)) {
      throw PreconditionError("instance morphism does not start at the ambient coalgebra");
    }
    if (!is_subcoalgebra(e_, d_)) {
      throw NotASubcoalgebra("instance base is not a subcoalgebra");
    }
  }

  const Coalgebra<K>& ambient() const { return e_; }
  const Subspace<K>& base() const { return d_; }
  const CoalgebraMorphism<K>& morphism() const { return f_; }
  const Coalgebra<K>& target() const { return f_.target(); }
  const Provenance& provenance() const { return provenance_; }

 private:
  Coalgebra<K> e_;
  Subspace<K> d_;
  CoalgebraMorphism<K> f_;
  Provenance provenance_;
};

struct HrReport {
  bool premise_holds = false;     // kernel(f) meets D /\ D only in 0
  bool conclusion_holds = false;  // kernel(f) meets the colimit only in 0
  std::vector<bool> induction_trace;  // entry n: kernel(f) /\-stage-n intersection is 0
  HrVerdict verdict = HrVerdict::consistent;
  std::size_t stabilization_index = 0;
  std::vector<std::size_t> stage_dims;
  std::size_t kernel_dim = 0;
};

/// Checks the theorem on one instance. Injectivity of f restricted to a
/// stage is tested as kernel(f) ∩ stage = 0: one kernel computation serves
/// every stage, and the equivalence with rank of the composite is elementary.
template <class K>
HrReport verify_theorem(const HrInstance<K>& inst) {
  WedgeFiltration<K> filt = build_filtration(inst.ambient(), inst.base());
  Subspace<K> ker = kernel(inst.morphism().matrix());
  HrReport report;
  report.kernel_dim = ker.dim();
  report.stabilization_index = filt.stabilization_index();
  for (std::size_t n = 0; n < filt.size(); ++n) {
    report.stage_dims.push_back(filt.stage(n).dim());
    report.induction_trace.push_back(subspace_intersect(ker, filt.stage(n)).is_zero());
    // kernels only grow up the filtration, so the trace is monotone
    if (n > 0 && report.induction_trace[n] && !report.induction_trace[n - 1]) {
      throw Error("internal: induction trace is not monotone");
    }
  }
  std::size_t premise_index =
      std::min<std::size_t>(2, report.induction_trace.size() - 1);
  report.premise_holds = report.induction_trace[premise_index];
  report.conclusion_holds = report.induction_trace[filt.stabilization_index()];
  if (!report.premise_holds) {
    report.verdict = HrVerdict::premise_violated;
  } else if (!report.conclusion_holds) {
    report.verdict = HrVerdict::counterexample;
  } else {
    report.verdict = HrVerdict::consistent;
  }
  return report;
}

/// The corollary: with D the coradical of E, injectivity on D /\ D gives
/// injectivity of f itself (the coradical filtration exhausts E, so the
/// colimit-stage check is exactly injectivity of f).
template <class K>
HrReport verify_corollary(const Coalgebra<K>& e, const CoalgebraMorphism<K>& f) {
  if (!e.field().is_rationals()) {
    throw UnsupportedField("the corollary needs the coradical, hence characteristic zero");
  }
  RadicalResult<K> rad = coradical(e);  // asserts exhaustion
  HrInstance<K> inst(e, rad.coradical, f, Provenance{0, "corollary", "coradical base"});
  return verify_theorem(inst);
}

namespace detail {

template <class K>
Subspace<K> seeded_subspace(FieldSpec field, std::size_t ambient, Rng& rng) {
  std::size_t gens = static_cast<std::size_t>(
      rng.int_in(0, static_cast<std::int64_t>(ambient)));
  Matrix<K> m(ambient, gens, field);
  for (std::size_t i = 0; i < ambient; ++i) {
    for (std::size_t j = 0; j < gens; ++j) {
      m.at(i, j) = FieldTraits<K>::from_int(field, rng.int_in(-2, 2));
    }
  }
  return Subspace<K>::span(m);
}

}  // namespace detail

/// Seeded coideal via the duality dictionary: the perp of a subalgebra of
/// the dual (which always contains the unit) is a coideal. Deterministic
/// per seed.
template <class K>
Subspace<K> random_coideal(const Coalgebra<K>& c, std::uint64_t seed) {
  Rng rng(seed);
  DualAlgebra<K> d(c);
  return perp(subalgebra_closure(d, detail::seeded_subspace<K>(c.field(), c.dim(), rng)));
}

/// Seeded subcoalgebra: the perp of an ideal of the dual. Deterministic per
/// seed.
template <class K>
Subspace<K> random_subcoalgebra(const Coalgebra<K>& c, std::uint64_t seed) {
  Rng rng(seed);
  DualAlgebra<K> d(c);
  return perp(ideal_closure(d, detail::seeded_subspace<K>(c.field(), c.dim(), rng)));
}

/// Runs every lemma and proposition check from the wedge/filtration layer
/// over a corpus, with seeded random subcoalgebras as bases. Never throws:
/// a corpus entry that fails its axioms (or throws) contributes failing
/// check items and its remaining checks are skipped. Check names carry the
/// entry index and seed needed to reproduce them.
template <class K>
VerificationReport lemma_suite(const std::vector<Coalgebra<K>>& corpus) {
  VerificationReport report;
  report.subject = "lemma suite";
  for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
    const Coalgebra<K>& c = corpus[idx];
    std::string tag = "entry " + std::to_string(idx);
    VerificationReport axioms = check_axioms(c);
    bool lawful = axioms.all_passed();
    report.add(tag + " axioms", lawful, lawful ? "" : axioms.first_failure()->name);
    if (!lawful) continue;  // the lemmas presuppose a lawful coalgebra

    for (std::uint64_t seed : {std::uint64_t{101} + idx, std::uint64_t{202} + idx}) {
      std::string label = tag + " seed " + std::to_string(seed);
      try {
        Subspace<K> d = random_subcoalgebra(c, seed);
        WedgeFiltration<K> filt = build_filtration(c, d);
        std::size_t stab = filt.stabilization_index();

        bool compat = true;  // delta_j xi_i^j = delta_i (the colimit diagram commutes)
        bool comp_law = true;  // xi_i^k = xi_j^k xi_i^j (composition of wedge maps)
        for (std::size_t j = 0; j <= stab; ++j) {
          for (std::size_t i = 0; i <= j; ++i) {
            if (!(filt.stage(j).basis() * filt.xi(i, j) == filt.stage(i).basis())) {
              compat = false;
            }
            for (std::size_t k = j + 1; k <= stab; ++k) {
              if (!(filt.xi(i, k) == filt.xi(j, k) * filt.xi(i, j))) comp_law = false;
            }
          }
        }
        report.add(label + " delta-xi compatibility", compat);
        report.add(label + " xi composition law", comp_law);

        const std::vector<std::pair<std::size_t, std::size_t>> splits = {{1, 1}, {1, 2}};
        for (auto [m, n] : splits) {
          VerificationReport additivity = check_additivity(filt, m, n);
          additivity.subject = label + " " + additivity.subject;
          report.merge(additivity);
        }

        std::size_t tau_max = std::min<std::size_t>(filt.size() >= 2 ? filt.size() - 2 : 0, 3);
        for (std::size_t n = 1; n <= tau_max; ++n) {
          compute_tau(filt, n);  // self-verifying; throws on any violation
          report.add(label + " tau factorization n=" + std::to_string(n), true);
        }

        CoalgebraMorphism<K> inclusion = restrict_coalgebra(c, d).second;
        VerificationReport alpha_nat = check_alpha_square(inclusion, identity_morphism(c));
        alpha_nat.subject = label + " " + alpha_nat.subject;
        report.merge(alpha_nat);
      } catch (const Error& e) {
        report.add(label + " lemma checks", false, e.what());
      }
    }
  }
  return report;
}

inline constexpr std::size_t kStressMaxDimCap = 8;

struct StressConfig {
  std::size_t trials = 0;
  std::size_t dim_cap = kStressMaxDimCap;
  FieldSpec field = FieldSpec::rationals();
  std::uint64_t seed = 0;
};

struct StressSummary {
  std::size_t trials = 0;
  std::size_t consistent = 0;
  std::size_t premise_violated = 0;
  std::size_t counterexamples = 0;
  std::optional<Provenance> first_counterexample;
};

namespace detail {

/// A multiplicatively invertible scalar with small numerator: over Q any
/// nonzero small integer works; over F_p draw from [1, p-1].
template <class K>
K random_unit(FieldSpec field, Rng& rng) {
  if (field.is_rationals()) {
    return FieldTraits<K>::from_int(field, rng.int_in(1, 5));
  }
  std::int64_t top = static_cast<std::int64_t>(
      std::min<std::uint64_t>(field.modulus() - 1, 5));
  return FieldTraits<K>::from_int(field, rng.int_in(1, top));
}

/// A structured ambient coalgebra with dim <= dim_cap, a family tag, and a
/// nontrivial automorphism where the family admits an easy one (dilation of
/// divided powers, basis permutation of grouplikes; identity otherwise).
template <class K>
std::tuple<Coalgebra<K>, std::string, Matrix<K>> random_structured(
    FieldSpec field, std::size_t dim_cap, Rng& rng) {
  std::uint64_t pick = rng.below(4);
  if (pick == 3 && dim_cap < 3) pick = 1;
  std::size_t mat_max = 1;
  while ((mat_max + 1) * (mat_max + 1) <= dim_cap) ++mat_max;
  switch (pick) {
    case 0: {
      std::size_t n = static_cast<std::size_t>(
          rng.int_in(1, static_cast<std::int64_t>(dim_cap - 1)));
      Coalgebra<K> e = divided_power<K>(n, field);
      K lambda = random_unit<K>(field, rng);
      Matrix<K> sigma(n + 1, n + 1, field);
      K power = FieldTraits<K>::one(field);
      for (std::size_t i = 0; i <= n; ++i) {
        sigma.at(i, i) = power;
        power = power * lambda;
      }
      return {std::move(e), "divided_power(" + std::to_string(n) + ")", std::move(sigma)};
    }
    case 1: {
      std::size_t n = static_cast<std::size_t>(
          rng.int_in(1, static_cast<std::int64_t>(dim_cap)));
      Coalgebra<K> e = grouplike<K>(n, field);
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.below(i)]);
      }
      Matrix<K> sigma(n, n, field);
      for (std::size_t i = 0; i < n; ++i) {
        sigma.at(perm[i], i) = FieldTraits<K>::one(field);
      }
      return {std::move(e), "grouplike(" + std::to_string(n) + ")", std::move(sigma)};
    }
    case 2: {
      std::size_t k = static_cast<std::size_t>(
          rng.int_in(1, static_cast<std::int64_t>(mat_max)));
      Coalgebra<K> e = matrix_coalgebra<K>(k, field);
      Matrix<K> sigma = Matrix<K>::identity(k * k, field);
      return {std::move(e), "matrix_coalgebra(" + std::to_string(k) + ")", std::move(sigma)};
    }
    default: {
      std::size_t g = static_cast<std::size_t>(
          rng.int_in(1, static_cast<std::int64_t>(dim_cap - 2)));
      std::size_t p = static_cast<std::size_t>(
          rng.int_in(1, static_cast<std::int64_t>(dim_cap - g - 1)));
      Coalgebra<K> e = direct_sum(grouplike<K>(g, field), divided_power<K>(p, field));
      std::string family = "direct_sum(grouplike(" + std::to_string(g) +
                           "), divided_power(" + std::to_string(p) + "))";
      Matrix<K> sigma = Matrix<K>::identity(e.dim(), field);
      return {std::move(e), std::move(family), std::move(sigma)};
    }
  }
}

}  // namespace detail

/// The empirical confirmation harness: seeded instance generation mixing
/// structured built-ins with random coideal quotients (50/50), f drawn as a
/// quotient projection or an inclusion into a direct sum, both precomposed
/// with an automorphism. Every trial is reproducible from (seed, trial
/// index) alone; premise_violated instances are retained, not resampled.
template <class K>
StressSummary stress(const StressConfig& config) {
  if (config.dim_cap < 2 || config.dim_cap > kStressMaxDimCap) {
    throw PreconditionError("stress dim_cap must lie in [2, " +
                            std::to_string(kStressMaxDimCap) + "]");
  }
  StressSummary summary;
  summary.trials = config.trials;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    Rng rng = Rng::fork(config.seed, trial);

    bool structured = rng.chance(1, 2);
    auto [parent, parent_family, parent_sigma] =
        detail::random_structured<K>(config.field, config.dim_cap, rng);
    Coalgebra<K> e = parent;
    std::string family = parent_family;
    Matrix<K> sigma_matrix = parent_sigma;
    if (!structured) {
      Subspace<K> coideal = random_coideal(parent, rng.next());
      e = quotient_coalgebra(parent, coideal).first;
      family = "quotient(" + parent_family + ")";
      sigma_matrix = Matrix<K>::identity(e.dim(), config.field);
    }
    CoalgebraMorphism<K> sigma(e, e, sigma_matrix);

    Subspace<K> d = random_subcoalgebra(e, rng.next());

    std::string f_kind;
    std::optional<CoalgebraMorphism<K>> f;
    if (rng.chance(1, 2)) {
      Subspace<K> coideal = random_coideal(e, rng.next());
      f = compose(quotient_coalgebra(e, coideal).second, sigma);
      f_kind = "quotient projection";
    } else {
      std::size_t extra = static_cast<std::size_t>(rng.int_in(1, 2));
      Coalgebra<K> padded = direct_sum(e, grouplike<K>(extra, config.field));
      Matrix<K> incl(padded.dim(), e.dim(), config.field);
      for (std::size_t i = 0; i < e.dim(); ++i) {
        incl.at(i, i) = FieldTraits<K>::one(config.field);
      }
      f = compose(CoalgebraMorphism<K>(e, padded, incl), sigma);
      f_kind = "direct-sum inclusion";
    }

    Provenance provenance{config.seed, family,
                          "trial " + std::to_string(trial) + ", f = " + f_kind};
    HrInstance<K> inst(std::move(e), std::move(d), std::move(*f), std::move(provenance));
    HrReport report = verify_theorem(inst);
    switch (report.verdict) {
      case HrVerdict::consistent:
        ++summary.consistent;
        break;
      case HrVerdict::premise_violated:
        ++summary.premise_violated;
        break;
      case HrVerdict::counterexample:
        ++summary.counterexamples;
        if (!summary.first_counterexample) {
          summary.first_counterexample = inst.provenance();
        }
        break;
    }
  }
  return summary;
}

}  // namespace wedgekit
