#include "wedgekit/document.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wedgekit/errors.hpp"

namespace wedgekit {
namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("document is not valid JSON");
  return j;
}

void check_schema_version(const Json& j) {
  if (!j.is_object()) throw ParseError("document root must be a JSON object");
  if (!j.contains("schema_version")) return;  // absent means version 1
  const Json& v = j.at("schema_version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != kSchemaVersion) {
    throw ParseError("unsupported schema_version");
  }
}

FieldSpec parse_field(const Json& j) {
  if (!j.is_object() || !j.contains("field")) {
    throw ParseError("missing 'field'");
  }
  const Json& f = j.at("field");
  if (f.is_string() && f.get<std::string>() == "Q") {
    return FieldSpec::rationals();
  }
  if (f.is_object() && f.size() == 1 && f.contains("Fp") &&
      f.at("Fp").is_number_integer()) {
    std::int64_t p = f.at("Fp").get<std::int64_t>();
    if (p < 2) throw FieldError("bad modulus " + std::to_string(p));
    return FieldSpec::prime_field(static_cast<std::uint64_t>(p));
  }
  throw ParseError("'field' must be \"Q\" or {\"Fp\": p}");
}

std::size_t parse_index(const Json& v, std::size_t bound, const char* what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
      static_cast<std::size_t>(v.get<std::int64_t>()) >= bound) {
    throw ParseError(std::string("bad ") + what + " index");
  }
  return static_cast<std::size_t>(v.get<std::int64_t>());
}

template <class K>
Coalgebra<K> coalgebra_from_json(const Json& j, FieldSpec field,
                                 std::size_t size_cap, bool checked = true) {
  if (!j.contains("dim") || !j.at("dim").is_number_integer() ||
      j.at("dim").get<std::int64_t>() < 0) {
    throw ParseError("'dim' must be a non-negative integer");
  }
  std::size_t dim = static_cast<std::size_t>(j.at("dim").get<std::int64_t>());
  detail::require_tensor_size(dim, 2, size_cap);

  if (!j.contains("basis") || !j.at("basis").is_array() ||
      j.at("basis").size() != dim) {
    throw ParseError("'basis' must list exactly dim labels");
  }
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (const Json& l : j.at("basis")) {
    if (!l.is_string() || l.get<std::string>().empty()) {
      throw ParseError("basis labels must be nonempty strings");
    }
    labels.push_back(l.get<std::string>());
  }
  if (std::set<std::string>(labels.begin(), labels.end()).size() != dim) {
    throw ParseError("basis labels must be distinct");
  }

  if (!j.contains("delta") || !j.at("delta").is_array() ||
      j.at("delta").size() != dim) {
    throw ParseError("'delta' must list one triple list per basis element");
  }
  Matrix<K> delta(dim * dim, dim, field);
  for (std::size_t m = 0; m < dim; ++m) {
    const Json& entry = j.at("delta").at(m);
    if (!entry.is_array()) throw ParseError("delta entries must be arrays of triples");
    for (const Json& triple : entry) {
      if (!triple.is_array() || triple.size() != 3 || !triple.at(2).is_string()) {
        throw ParseError("delta triples must be [i, j, \"coeff\"]");
      }
      std::size_t i = parse_index(triple.at(0), dim, "delta row");
      std::size_t k = parse_index(triple.at(1), dim, "delta column");
      delta.at(i * dim + k, m) +=
          FieldTraits<K>::parse(field, triple.at(2).get<std::string>());
    }
  }

  if (!j.contains("epsilon") || !j.at("epsilon").is_array() ||
      j.at("epsilon").size() != dim) {
    throw ParseError("'epsilon' must list one coefficient per basis element");
  }
  Matrix<K> epsilon(1, dim, field);
  for (std::size_t m = 0; m < dim; ++m) {
    const Json& v = j.at("epsilon").at(m);
    if (!v.is_string()) throw ParseError("epsilon coefficients must be strings");
    epsilon.at(0, m) = FieldTraits<K>::parse(field, v.get<std::string>());
  }

  if (!checked) {
    return Coalgebra<K>::unchecked(std::move(delta), std::move(epsilon),
                                   std::move(labels));
  }
  // The checked constructor raises AxiomError naming the failing identity.
  return Coalgebra<K>(std::move(delta), std::move(epsilon), std::move(labels));
}

template <class K>
Json coalgebra_to_json(const Coalgebra<K>& c) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  if (c.field().is_rationals()) {
    j["field"] = "Q";
  } else {
    j["field"] = Json{{"Fp", c.field().modulus()}};
  }
  std::size_t dim = c.dim();
  j["dim"] = dim;
  j["basis"] = c.labels();
  Json delta = Json::array();
  for (std::size_t m = 0; m < dim; ++m) {
    Json entry = Json::array();
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        const K& coeff = c.delta().at(i * dim + k, m);
        if (!FieldTraits<K>::is_zero(coeff)) {
          entry.push_back(Json::array({i, k, FieldTraits<K>::str(coeff)}));
        }
      }
    }
    delta.push_back(std::move(entry));
  }
  j["delta"] = std::move(delta);
  Json eps = Json::array();
  for (std::size_t m = 0; m < dim; ++m) {
    eps.push_back(FieldTraits<K>::str(c.epsilon().at(0, m)));
  }
  j["epsilon"] = std::move(eps);
  return j;
}

std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch != ' ' && ch != '\t') out.push_back(ch);
  }
  return out;
}

template <class K>
Matrix<K> parse_generator(const Coalgebra<K>& c, const std::string& item) {
  FieldSpec field = c.field();
  Matrix<K> v(c.dim(), 1, field);
  std::size_t idx = 0;
  bool negative = false;
  if (item[0] == '+' || item[0] == '-') {
    negative = item[0] == '-';
    idx = 1;
  }
  while (idx < item.size()) {
    std::size_t end = item.find_first_of("+-", idx);
    if (end == idx) throw ParseError("empty term in generator '" + item + "'");
    std::string term = item.substr(idx, end == std::string::npos ? std::string::npos
                                                                 : end - idx);
    K coeff = FieldTraits<K>::one(field);
    std::string label = term;
    std::size_t star = term.find('*');
    if (star != std::string::npos) {
      coeff = FieldTraits<K>::parse(field, term.substr(0, star));
      label = term.substr(star + 1);
    }
    std::size_t pos = 0;
    while (pos < c.labels().size() && c.labels()[pos] != label) ++pos;
    if (pos == c.labels().size()) {
      throw ParseError("unknown basis label '" + label + "'");
    }
    if (negative) coeff = FieldTraits<K>::zero(field) - coeff;
    v.at(pos, 0) += coeff;
    if (end == std::string::npos) break;
    negative = item[end] == '-';
    idx = end + 1;
  }
  return v;
}

template <class K>
Subspace<K> basis_spec_impl(const Coalgebra<K>& c, const std::string& spec) {
  std::string s = strip_spaces(spec);
  if (s.empty() || s == "0") return Subspace<K>::zero(c.dim(), c.field());
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string item = s.substr(start, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - start);
    if (item.empty()) throw ParseError("empty generator in basis spec");
    items.push_back(std::move(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Matrix<K> gens(c.dim(), items.size(), c.field());
  for (std::size_t k = 0; k < items.size(); ++k) {
    Matrix<K> col = parse_generator(c, items[k]);
    for (std::size_t i = 0; i < c.dim(); ++i) gens.at(i, k) = col.at(i, 0);
  }
  return Subspace<K>::span(gens);
}

template <class K>
CoalgebraMorphism<K> morphism_from_json(const Json& j, const Coalgebra<K>& source) {
  check_schema_version(j);
  if (!j.contains("target")) throw ParseError("missing 'target' coalgebra");
  FieldSpec target_field = parse_field(j.at("target"));
  if (target_field != source.field()) {
    throw FieldError("morphism target field differs from the source field");
  }
  Coalgebra<K> target =
      coalgebra_from_json<K>(j.at("target"), target_field, kDefaultSizeCap);

  if (!j.contains("matrix") || !j.at("matrix").is_array() ||
      j.at("matrix").size() != target.dim()) {
    throw ParseError("'matrix' must have one row per target basis element");
  }
  Matrix<K> m(target.dim(), source.dim(), source.field());
  for (std::size_t r = 0; r < target.dim(); ++r) {
    const Json& row = j.at("matrix").at(r);
    if (!row.is_array() || row.size() != source.dim()) {
      throw ParseError("matrix rows must have one entry per source basis element");
    }
    for (std::size_t ccol = 0; ccol < source.dim(); ++ccol) {
      if (!row.at(ccol).is_string()) {
        throw ParseError("matrix entries must be coefficient strings");
      }
      m.at(r, ccol) =
          FieldTraits<K>::parse(source.field(), row.at(ccol).get<std::string>());
    }
  }
  return CoalgebraMorphism<K>(source, target, std::move(m));
}

template <class K>
Json morphism_to_json(const CoalgebraMorphism<K>& f) {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["target"] = coalgebra_to_json(f.target());
  Json rows = Json::array();
  for (std::size_t r = 0; r < f.matrix().rows(); ++r) {
    Json row = Json::array();
    for (std::size_t ccol = 0; ccol < f.matrix().cols(); ++ccol) {
      row.push_back(FieldTraits<K>::str(f.matrix().at(r, ccol)));
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

}  // namespace

AnyCoalgebra parse_coalgebra(const std::string& text, std::size_t size_cap) {
  Json j = parse_json(text);
  check_schema_version(j);
  FieldSpec field = parse_field(j);
  if (field.is_rationals()) {
    return coalgebra_from_json<Rat>(j, field, size_cap);
  }
  return coalgebra_from_json<Fp>(j, field, size_cap);
}

AnyCoalgebra parse_coalgebra_unchecked(const std::string& text,
                                       std::size_t size_cap) {
  Json j = parse_json(text);
  check_schema_version(j);
  FieldSpec field = parse_field(j);
  if (field.is_rationals()) {
    return coalgebra_from_json<Rat>(j, field, size_cap, false);
  }
  return coalgebra_from_json<Fp>(j, field, size_cap, false);
}

std::string serialize(const Coalgebra<Rat>& c) {
  return dump_document(coalgebra_to_json(c));
}

std::string serialize(const Coalgebra<Fp>& c) {
  return dump_document(coalgebra_to_json(c));
}

Subspace<Rat> parse_basis_spec(const Coalgebra<Rat>& c, const std::string& spec) {
  return basis_spec_impl(c, spec);
}

Subspace<Fp> parse_basis_spec(const Coalgebra<Fp>& c, const std::string& spec) {
  return basis_spec_impl(c, spec);
}

CoalgebraMorphism<Rat> parse_morphism(const std::string& text,
                                      const Coalgebra<Rat>& source) {
  return morphism_from_json(parse_json(text), source);
}

CoalgebraMorphism<Fp> parse_morphism(const std::string& text,
                                     const Coalgebra<Fp>& source) {
  return morphism_from_json(parse_json(text), source);
}

std::string serialize_morphism(const CoalgebraMorphism<Rat>& f) {
  return dump_document(morphism_to_json(f));
}

std::string serialize_morphism(const CoalgebraMorphism<Fp>& f) {
  return dump_document(morphism_to_json(f));
}

}  // namespace wedgekit
