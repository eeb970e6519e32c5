// Concrete maps between pure-state spaces: Wigner symmetries, the
// entrywise-absolute-value map, standard dim-2 maps tau_g, the composed
// absolute-value form, and the three counterexample constructions.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "wignerlab/circle_maps.hpp"
#include "wignerlab/projective.hpp"

namespace wignerlab {

/// A black-box map P(C^dim_in) -> P(C^dim_out). Immutable; `apply` is pure
/// and may be called concurrently.
class PureStateMap {
 public:
  using Fn = std::function<PureState(const PureState&)>;

  PureStateMap(std::string family, std::size_t dim_in, std::size_t dim_out, Fn fn,
               nlohmann::json params = nlohmann::json::object());

  /// Throws std::invalid_argument if `s` has the wrong dimension.
  PureState operator()(const PureState& s) const;

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::string& family() const { return family_; }
  const nlohmann::json& params() const { return params_; }

 private:
  std::string family_;
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::shared_ptr<const Fn> fn_;
  nlohmann::json params_;
};

struct WignerMap {
  CMatrix unitary;
  bool antiunitary = false;
};

/// Columns of `basis` form the reference orthonormal basis.
struct EntrywiseAbsParams {
  CMatrix basis;
};

struct SeparableEmbedParams {
  std::vector<PureState> anchors;
};

/// Unitary case: state of U v. Antiunitary case: state of U conj(v), i.e.
/// P -> U P^t U*. Throws std::invalid_argument for a non-unitary U.
PureState wigner_apply(const WignerMap& w, const PureState& p);

/// Replaces each coefficient in the reference basis by its modulus.
PureState phi_abs(const EntrywiseAbsParams& params, const PureState& p);
/// phi_abs with respect to the standard basis.
PureState phi_abs(const PureState& p);

/// Standard dim-2 map: fixes E_00 and E_11, sends (p, z) to (p, g(z)).
PureState tau_apply(const CircleMap& g, const PureState& p);

/// P -> V Phi(U P U*) V*.
PureState composed_phi_form(const CMatrix& u, const CMatrix& v, const PureState& p);

using StatePredicate = std::function<bool(const PureState&)>;

/// The default set for the block embedding: tr(P E_00) > 1/2.
bool weight_on_first_above_half(const PureState& p);

/// P -> diag(P, 0) when the predicate is false, diag(0, P) when true.
PureState block_embed_apply(const StatePredicate& in_set, const PureState& p);

/// Truncated separable embedding over the anchors x_1..x_N: with
/// t_n = |<x, x_n>|, the image is spanned by
///   sum_n 2^{-n/2} (t_n e_n + sqrt(1 - t_n^2) f_n),
/// e_n at index n-1 and f_n at index N+n-1, renormalized by
/// (1 - 2^{-N})^{-1/2}.
PureState separable_embed_apply(const SeparableEmbedParams& params, const PureState& p);

/// Proper-subspace absolute-value map. K is spanned by the first k standard
/// basis vectors of C^n; for v = sum_{a<k} b_a e_a + v_perp the image in C^k
/// is the state of sum_{a != a0} |b_a| e_a + sqrt(|v_perp|^2 + |b_a0|^2) e_a0.
PureState proper_subspace_apply(std::size_t k, std::size_t alpha0, const PureState& p);

// Factories producing black-box maps with serializable descriptors.
PureStateMap make_wigner_map(const WignerMap& w);
PureStateMap make_identity_map(std::size_t dim);
PureStateMap make_phi_map(std::size_t dim);
PureStateMap make_phi_map(const EntrywiseAbsParams& params);
PureStateMap make_tau_map(const CircleMap& g);
PureStateMap make_composed_map(const CMatrix& u, const CMatrix& v);
/// Default predicate tr(P E_00) > threshold.
PureStateMap make_block_embed_map(std::size_t dim, double threshold = 0.5);
PureStateMap make_block_embed_map(std::size_t dim, StatePredicate in_set);
PureStateMap make_separable_embed_map(const SeparableEmbedParams& params);
/// `n_anchors` seeded random anchors in C^dim.
PureStateMap make_separable_embed_map(std::size_t dim, std::size_t n_anchors, std::uint64_t seed);
PureStateMap make_proper_subspace_map(std::size_t dim, std::size_t k, std::size_t alpha0);
PureStateMap make_constant_map(const PureState& value);
/// P -> post map(pre P pre*) post*, i.e. v -> post * map(pre * v).
PureStateMap conjugate_map(const PureStateMap& map, const CMatrix& pre, const CMatrix& post);

}  // namespace wignerlab
