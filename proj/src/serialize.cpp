#include "wignerlab/serialize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wignerlab {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw std::invalid_argument("malformed descriptor: " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    malformed(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    malformed("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json state_to_json(const PureState& s) {
  json vec = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) vec.push_back(complex_to_json(s[i]));
  return {{"dim", s.dim()}, {"vec", std::move(vec)}};
}

PureState state_from_json(const json& j) {
  const json& vec = field(j, "vec");
  if (!vec.is_array()) malformed("state 'vec' must be an array");
  if (j.contains("dim") && size_field(j, "dim") != vec.size()) malformed("state 'dim' disagrees with 'vec'");
  CVector v(static_cast<Eigen::Index>(vec.size()));
  for (std::size_t i = 0; i < vec.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(vec[i]);
  return PureState::from_vector(v);
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(complex_to_json(m(i, k)));
  }
  return out;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) malformed("matrix must be a nonempty array");
  const bool nested = j[0].is_array() && !j[0].empty() && j[0][0].is_array();
  if (nested) {
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) malformed("matrix must be square");
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
  }
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(j.size()))));
  if (static_cast<std::size_t>(n * n) != j.size()) malformed("flat matrix length is not a square");
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from_json(j[static_cast<std::size_t>(r * n + c)]);
  }
  return m;
}

json circle_map_to_json(const CircleMap& g) {
  switch (g.form()) {
    case CircleForm::Rotation:
    case CircleForm::ConjugateRotation:
    case CircleForm::Constant:
      return {{"form", to_string(g.form())}, {"c", complex_to_json(g.parameter())}};
    case CircleForm::Fold: return {{"form", "fold"}};
    case CircleForm::Power: return {{"form", "power"}, {"k", g.exponent()}};
    case CircleForm::Sampled: {
      json out = json::array();
      for (const auto& [in, o] : g.table()) out.push_back(json::array({in, o}));
      return out;
    }
    case CircleForm::Opaque: break;
  }
  throw std::invalid_argument("opaque circle maps cannot be serialized");
}

CircleMap circle_map_from_json(const json& j) {
  if (j.is_array()) {
    CircleMap::Table table;
    for (const auto& e : j) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        malformed("sampled circle map entries must be [theta_in, theta_out]");
      }
      table.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return CircleMap::sampled(std::move(table));
  }
  const json& form = field(j, "form");
  if (!form.is_string()) malformed("circle map 'form' must be a string");
  const auto f = form.get<std::string>();
  if (f == "identity") return CircleMap::identity();
  if (f == "conjugation") return CircleMap::conjugation();
  if (f == "rotation") return CircleMap::rotation(complex_from_json(field(j, "c")));
  if (f == "conj_rotation") return CircleMap::conjugate_rotation(complex_from_json(field(j, "c")));
  if (f == "constant") return CircleMap::constant(complex_from_json(field(j, "c")));
  if (f == "fold") return CircleMap::fold();
  if (f == "power") {
    const json& k = field(j, "k");
    if (!k.is_number_integer()) malformed("power 'k' must be an integer");
    return CircleMap::power(k.get<int>());
  }
  malformed("unknown circle map form '" + f + "'");
}

json map_to_json(const PureStateMap& m) { return {{"family", m.family()}, {"params", m.params()}}; }

PureStateMap map_from_json(const json& j) {
  const json& fam = field(j, "family");
  if (!fam.is_string()) malformed("'family' must be a string");
  const auto family = fam.get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();

  if (family == "identity") return make_identity_map(size_field(params, "dim"));
  if (family == "wigner") {
    const bool anti = params.contains("antiunitary") && params.at("antiunitary").get<bool>();
    return make_wigner_map({matrix_from_json(field(params, "U")), anti});
  }
  if (family == "phi") {
    if (params.contains("basis")) return make_phi_map(EntrywiseAbsParams{matrix_from_json(params.at("basis"))});
    return make_phi_map(size_field(params, "dim"));
  }
  if (family == "tau") return make_tau_map(circle_map_from_json(field(params, "g")));
  if (family == "composed") {
    return make_composed_map(matrix_from_json(field(params, "U")), matrix_from_json(field(params, "V")));
  }
  if (family == "block_embed") {
    if (params.contains("set") && params.at("set") != "e11_weight_above_threshold") {
      malformed("block_embed supports only the default set");
    }
    const double threshold = params.contains("threshold") ? params.at("threshold").get<double>() : 0.5;
    return make_block_embed_map(size_field(params, "dim"), threshold);
  }
  if (family == "separable_embed") {
    const json& anchors = field(params, "anchors");
    if (!anchors.is_array()) malformed("'anchors' must be an array of states");
    SeparableEmbedParams p;
    for (const auto& a : anchors) p.anchors.push_back(state_from_json(a));
    return make_separable_embed_map(p);
  }
  if (family == "proper_subspace") {
    const std::size_t alpha0 = params.contains("alpha0") ? size_field(params, "alpha0") : 0;
    return make_proper_subspace_map(size_field(params, "dim"), size_field(params, "k"), alpha0);
  }
  if (family == "constant") return make_constant_map(state_from_json(field(params, "state")));
  if (family == "conjugated") {
    return conjugate_map(map_from_json(field(params, "inner")), matrix_from_json(field(params, "pre")),
                         matrix_from_json(field(params, "post")));
  }
  malformed("unknown map family '" + family + "'");
}

}  // namespace wignerlab
