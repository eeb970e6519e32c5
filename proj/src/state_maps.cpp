#include "wignerlab/state_maps.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wignerlab/serialize.hpp"

namespace wignerlab {

namespace {

void require_dim(const PureState& p, std::size_t dim, const char* what) {
  if (p.dim() != dim) {
    throw std::invalid_argument(std::string(what) + ": expected dim " + std::to_string(dim) +
                                ", got " + std::to_string(p.dim()));
  }
}

void require_unitary(const CMatrix& u, const char* what) {
  if (!is_unitary(u)) throw std::invalid_argument(std::string(what) + ": matrix is not unitary");
}

CVector abs_entries(const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = std::abs(v(i));
  return out;
}

}  // namespace

PureStateMap::PureStateMap(std::string family, std::size_t dim_in, std::size_t dim_out, Fn fn,
                           nlohmann::json params)
    : family_(std::move(family)),
      dim_in_(dim_in),
      dim_out_(dim_out),
      fn_(std::make_shared<const Fn>(std::move(fn))),
      params_(std::move(params)) {}

PureState PureStateMap::operator()(const PureState& s) const {
  require_dim(s, dim_in_, family_.c_str());
  return (*fn_)(s);
}

PureState wigner_apply(const WignerMap& w, const PureState& p) {
  require_unitary(w.unitary, "wigner_apply");
  if (static_cast<std::size_t>(w.unitary.rows()) != p.dim()) {
    throw std::invalid_argument("wigner_apply: dimension mismatch");
  }
  if (w.antiunitary) return PureState::from_vector(CVector(w.unitary * p.vector().conjugate()));
  return PureState::from_vector(CVector(w.unitary * p.vector()));
}

PureState phi_abs(const EntrywiseAbsParams& params, const PureState& p) {
  if (static_cast<std::size_t>(params.basis.rows()) != p.dim()) {
    throw std::invalid_argument("phi_abs: dimension mismatch");
  }
  const CVector coeffs = params.basis.adjoint() * p.vector();
  return PureState::from_vector(CVector(params.basis * abs_entries(coeffs)));
}

PureState phi_abs(const PureState& p) { return PureState::from_vector(abs_entries(p.vector())); }

PureState tau_apply(const CircleMap& g, const PureState& p) {
  require_dim(p, 2, "tau_apply");
  const auto [prob, z] = two_by_two_params(p);
  // E_00 and E_11 are fixed points.
  if (std::abs(p[0] * std::conj(p[1])) == 0.0) return p;
  return state_from_params(prob, g(z));
}

PureState composed_phi_form(const CMatrix& u, const CMatrix& v, const PureState& p) {
  require_unitary(u, "composed_phi_form");
  require_unitary(v, "composed_phi_form");
  const PureState inner = wigner_apply({u, false}, p);
  return wigner_apply({v, false}, phi_abs(inner));
}

bool weight_on_first_above_half(const PureState& p) { return std::norm(p[0]) > 0.5; }

PureState block_embed_apply(const StatePredicate& in_set, const PureState& p) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  CVector out = CVector::Zero(2 * n);
  if (in_set(p)) {
    out.tail(n) = p.vector();
  } else {
    out.head(n) = p.vector();
  }
  return PureState::from_vector(out);
}

PureState separable_embed_apply(const SeparableEmbedParams& params, const PureState& p) {
  const auto& anchors = params.anchors;
  if (anchors.empty()) throw std::invalid_argument("separable_embed_apply: no anchors");
  const auto big_n = static_cast<Eigen::Index>(anchors.size());
  CVector out = CVector::Zero(2 * big_n);
  double weight = 1.0;
  for (Eigen::Index n = 0; n < big_n; ++n) {
    weight *= 0.5;  // 2^{-(n+1)}
    const double t = std::sqrt(transition_probability(p, anchors[static_cast<std::size_t>(n)]));
    const double amp = std::sqrt(weight);
    out(n) = amp * t;
    out(big_n + n) = amp * std::sqrt(std::max(0.0, 1.0 - t * t));
  }
  const double renorm = 1.0 / std::sqrt(1.0 - std::ldexp(1.0, -static_cast<int>(big_n)));
  return PureState::from_vector(CVector(out * renorm));
}

PureState proper_subspace_apply(std::size_t k, std::size_t alpha0, const PureState& p) {
  const std::size_t n = p.dim();
  if (k < 1 || k >= n) throw std::invalid_argument("proper_subspace_apply: need 1 <= k < n");
  if (alpha0 >= k) throw std::invalid_argument("proper_subspace_apply: alpha0 must be < k");
  const CVector& v = p.vector();
  const auto ki = static_cast<Eigen::Index>(k);
  const double perp = v.tail(static_cast<Eigen::Index>(n - k)).squaredNorm();
  CVector out(ki);
  for (Eigen::Index a = 0; a < ki; ++a) out(a) = std::abs(v(a));
  const auto a0 = static_cast<Eigen::Index>(alpha0);
  out(a0) = std::sqrt(perp + std::norm(v(a0)));
  return PureState::from_vector(out);
}

PureStateMap make_wigner_map(const WignerMap& w) {
  require_unitary(w.unitary, "make_wigner_map");
  const auto n = static_cast<std::size_t>(w.unitary.rows());
  nlohmann::json params = {{"U", matrix_to_json(w.unitary)}, {"antiunitary", w.antiunitary}};
  return PureStateMap("wigner", n, n, [w](const PureState& p) { return wigner_apply(w, p); },
                      std::move(params));
}

PureStateMap make_identity_map(std::size_t dim) {
  return make_wigner_map({CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)), false});
}

PureStateMap make_phi_map(std::size_t dim) {
  return PureStateMap("phi", dim, dim, [](const PureState& p) { return phi_abs(p); },
                      {{"dim", dim}});
}

PureStateMap make_phi_map(const EntrywiseAbsParams& params) {
  require_unitary(params.basis, "make_phi_map");
  const auto n = static_cast<std::size_t>(params.basis.rows());
  return PureStateMap("phi", n, n, [params](const PureState& p) { return phi_abs(params, p); },
                      {{"dim", n}, {"basis", matrix_to_json(params.basis)}});
}

PureStateMap make_tau_map(const CircleMap& g) {
  nlohmann::json params = nlohmann::json::object();
  if (g.form() != CircleForm::Opaque) params["g"] = circle_map_to_json(g);
  return PureStateMap("tau", 2, 2, [g](const PureState& p) { return tau_apply(g, p); },
                      std::move(params));
}

PureStateMap make_composed_map(const CMatrix& u, const CMatrix& v) {
  require_unitary(u, "make_composed_map");
  require_unitary(v, "make_composed_map");
  if (u.rows() != v.rows()) throw std::invalid_argument("make_composed_map: dimension mismatch");
  const auto n = static_cast<std::size_t>(u.rows());
  return PureStateMap("composed", n, n,
                      [u, v](const PureState& p) { return composed_phi_form(u, v, p); },
                      {{"U", matrix_to_json(u)}, {"V", matrix_to_json(v)}});
}

PureStateMap make_block_embed_map(std::size_t dim, double threshold) {
  auto pred = [threshold](const PureState& p) { return std::norm(p[0]) > threshold; };
  return PureStateMap("block_embed", dim, 2 * dim,
                      [pred](const PureState& p) { return block_embed_apply(pred, p); },
                      {{"dim", dim}, {"threshold", threshold}});
}

PureStateMap make_block_embed_map(std::size_t dim, StatePredicate in_set) {
  return PureStateMap("block_embed", dim, 2 * dim,
                      [in_set = std::move(in_set)](const PureState& p) {
                        return block_embed_apply(in_set, p);
                      },
                      {{"dim", dim}, {"set", "custom"}});
}

PureStateMap make_separable_embed_map(const SeparableEmbedParams& params) {
  if (params.anchors.empty()) throw std::invalid_argument("separable embedding needs anchors");
  const std::size_t d = params.anchors.front().dim();
  for (const auto& a : params.anchors) {
    if (a.dim() != d) throw std::invalid_argument("anchors have mixed dimensions");
  }
  nlohmann::json anchors = nlohmann::json::array();
  for (const auto& a : params.anchors) anchors.push_back(state_to_json(a));
  return PureStateMap("separable_embed", d, 2 * params.anchors.size(),
                      [params](const PureState& p) { return separable_embed_apply(params, p); },
                      {{"anchors", std::move(anchors)}});
}

PureStateMap make_separable_embed_map(std::size_t dim, std::size_t n_anchors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SeparableEmbedParams params;
  params.anchors.reserve(n_anchors);
  for (std::size_t i = 0; i < n_anchors; ++i) params.anchors.push_back(random_pure_state(dim, rng));
  return make_separable_embed_map(params);
}

PureStateMap make_proper_subspace_map(std::size_t dim, std::size_t k, std::size_t alpha0) {
  if (k < 1 || k >= dim) throw std::invalid_argument("proper subspace map: need 1 <= k < dim");
  if (alpha0 >= k) throw std::invalid_argument("proper subspace map: alpha0 must be < k");
  return PureStateMap("proper_subspace", dim, k,
                      [k, alpha0](const PureState& p) { return proper_subspace_apply(k, alpha0, p); },
                      {{"dim", dim}, {"k", k}, {"alpha0", alpha0}});
}

PureStateMap make_constant_map(const PureState& value) {
  return PureStateMap("constant", value.dim(), value.dim(),
                      [value](const PureState&) { return value; },
                      {{"state", state_to_json(value)}});
}

PureStateMap conjugate_map(const PureStateMap& map, const CMatrix& pre, const CMatrix& post) {
  if (static_cast<std::size_t>(pre.rows()) != map.dim_in() ||
      static_cast<std::size_t>(post.cols()) != map.dim_out()) {
    throw std::invalid_argument("conjugate_map: dimension mismatch");
  }
  nlohmann::json params = {{"inner", map_to_json(map)},
                           {"pre", matrix_to_json(pre)},
                           {"post", matrix_to_json(post)}};
  return PureStateMap("conjugated", static_cast<std::size_t>(pre.cols()),
                      static_cast<std::size_t>(post.rows()),
                      [map, pre, post](const PureState& p) {
                        const PureState inner = map(PureState::from_vector(CVector(pre * p.vector())));
                        return PureState::from_vector(CVector(post * inner.vector()));
                      },
                      std::move(params));
}

}  // namespace wignerlab
