// Constructive classification of nonexpansive maps whose image contains a
// complete orthogonal system: probe with T_u states, extract the pair circle
// maps, decide the branch through induced homomorphisms and recover the
// unitaries.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wignerlab/circle_maps.hpp"
#include "wignerlab/projective.hpp"
#include "wignerlab/state_maps.hpp"

namespace wignerlab {

enum class Branch { WignerUnitary, WignerAntiunitary, EntrywiseAbs, StandardDim2, NotClassified };

std::string to_string(Branch b);

/// Raised inside the probing stage when the map leaves the classified family;
/// the public classify_* entry points turn it into Branch::NotClassified.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reconstructed model, acting on a representative x:
///   WignerUnitary      x -> U x
///   WignerAntiunitary  x -> U conj(x)
///   EntrywiseAbs       x -> V |U x|   (U |x| when V is absent)
///   StandardDim2       x -> V tau_g(U x)
/// In canonical mode U is the recovered diagonal unitary with U(0,0) = 1
/// (identity for StandardDim2).
struct ClassificationResult {
  Branch branch = Branch::NotClassified;
  CMatrix u;
  std::optional<CMatrix> v;
  /// Diagonal unitary of the canonical form (u_0 = 1, u_j = conj f_0j(1)).
  std::optional<CMatrix> diagonal;
  std::optional<CircleMap> g;
  std::optional<CircleClassification> g_class;
  double residual = 0.0;
  std::string reason;

  bool classified() const { return branch != Branch::NotClassified; }
};

struct ClassifierOptions {
  /// Number of equispaced roots of unity in the probe grid; must be a
  /// multiple of 4 so that i and -1 are probed. e^{i pi/5} is always added.
  std::size_t grid_size = 16;
  double tol = 1e-8;
  double branch_tol = 1e-6;
  std::size_t n_validation = 64;
  std::uint64_t seed = 0;
  std::size_t cosp_rotations = 8;
};

/// The state with entries 1/2 at (i,i), (j,j), u/2 at (i,j), conj(u)/2 at (j,i).
PureState probe_state(Complex u, std::size_t i, std::size_t j, std::size_t dim);

/// 16 (or grid_size) roots of unity followed by e^{i pi/5}.
std::vector<Complex> probe_grid(std::size_t grid_size);

/// f_ij on the grid: the map must send probe_state(u, i, j) to a state
/// supported on {i, j} with diagonal (1/2, 1/2) within 1e-8; f_ij(u) is twice
/// the (i, j) entry. Throws ClassificationError otherwise.
CircleMap extract_pair_map(const PureStateMap& map, std::size_t i, std::size_t j,
                           const std::vector<Complex>& grid);

/// g(z) = conj(f_1k(1)) f_1j(1) f_jk(z) on the common grid. Throws
/// std::invalid_argument when the grids differ or omit 1.
CircleMap induced_homomorphism(const CircleMap& f_1j, const CircleMap& f_1k, const CircleMap& f_jk);

/// True when every E_kk is mapped to itself within `tol` (entrywise).
bool fixes_standard_basis(const PureStateMap& map, double tol = 1e-8);

ClassificationResult classify_canonical(const PureStateMap& map, std::size_t dim,
                                        const ClassifierOptions& opts = {});

ClassificationResult classify_dim2(const PureStateMap& map, const ClassifierOptions& opts = {});

struct CanonicalReduction {
  CMatrix u_pre;   // U with U* E_jj U = Q_j
  CMatrix v_post;  // V with V* P_j V = E_jj
  PureStateMap canonical;  // P -> V* map(U* P U) V
};

/// Throws std::invalid_argument when `preimages` is not a COSP or its image
/// is not a COSP.
CanonicalReduction reduce_to_canonical(const PureStateMap& map, const OrthoSystem& preimages);

/// Full pipeline: COSP preimages (hint, else a bounded search), reduction,
/// canonical classification and composition of the unitaries.
ClassificationResult classify(const PureStateMap& map, std::size_t dim,
                              const std::optional<OrthoSystem>& preimage_hint = std::nullopt,
                              const ClassifierOptions& opts = {});

/// Evaluates the reconstructed model. Throws std::logic_error for
/// NotClassified results. For StandardDim2 the sampled g is looked up at the
/// nearest grid phase, so the model is exact only on grid phases.
PureState apply_model(const ClassificationResult& r, const PureState& p);

/// Max entrywise difference between the projectors of model and map outputs.
double validation_residual(const PureStateMap& map, const ClassificationResult& r,
                           const std::vector<PureState>& states);

nlohmann::json result_to_json(const ClassificationResult& r);

}  // namespace wignerlab
