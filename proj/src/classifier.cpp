#include "wignerlab/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wignerlab/serialize.hpp"
#include "wignerlab/verifier.hpp"

namespace wignerlab {

namespace {

constexpr double kProbeTol = 1e-8;

double projector_gap(const PureState& a, const PureState& b) {
  return (projector_matrix(a).matrix() - projector_matrix(b).matrix()).cwiseAbs().maxCoeff();
}

CVector abs_entries(const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = std::abs(v(i));
  return out;
}

std::vector<double> table_inputs(const CircleMap& f) {
  std::vector<double> out;
  for (const auto& [in, o] : f.table()) out.push_back(in);
  return out;
}

ClassificationResult not_classified(std::string reason, double residual = 0.0) {
  ClassificationResult r;
  r.branch = Branch::NotClassified;
  r.reason = std::move(reason);
  r.residual = residual;
  return r;
}

std::vector<PureState> random_states(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PureState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_pure_state(dim, rng));
  return out;
}

Branch branch_of(HomomorphismClass c) {
  switch (c) {
    case HomomorphismClass::Identity: return Branch::WignerUnitary;
    case HomomorphismClass::Conjugation: return Branch::WignerAntiunitary;
    case HomomorphismClass::ConstantOne: return Branch::EntrywiseAbs;
    case HomomorphismClass::NotApplicable: break;
  }
  return Branch::NotClassified;
}

std::vector<PureState> dim2_grid_states(const std::vector<Complex>& grid) {
  std::vector<PureState> out;
  for (int k = 1; k <= 9; ++k) {
    for (const auto& z : grid) out.push_back(state_from_params(0.1 * k, z));
  }
  return out;
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::WignerUnitary: return "WignerUnitary";
    case Branch::WignerAntiunitary: return "WignerAntiunitary";
    case Branch::EntrywiseAbs: return "EntrywiseAbs";
    case Branch::StandardDim2: return "StandardDim2";
    case Branch::NotClassified: return "NotClassified";
  }
  return "NotClassified";
}

PureState probe_state(Complex u, std::size_t i, std::size_t j, std::size_t dim) {
  if (i >= dim || j >= dim) throw std::out_of_range("probe index out of range");
  if (i == j) throw std::invalid_argument("probe indices must differ");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  // v v* has (i,j) entry v_i conj(v_j) = u/2.
  v(static_cast<Eigen::Index>(i)) = std::sqrt(0.5);
  v(static_cast<Eigen::Index>(j)) = std::conj(u / std::abs(u)) * std::sqrt(0.5);
  return PureState::from_vector(v);
}

std::vector<Complex> probe_grid(std::size_t grid_size) {
  auto grid = roots_of_unity(grid_size);
  grid.push_back(std::polar(1.0, std::numbers::pi / 5.0));
  return grid;
}

CircleMap extract_pair_map(const PureStateMap& map, std::size_t i, std::size_t j,
                           const std::vector<Complex>& grid) {
  if (grid.empty()) throw std::invalid_argument("probe grid is empty");
  const std::size_t n = map.dim_in();
  if (map.dim_out() != n) throw std::invalid_argument("extract_pair_map needs a square map");
  CircleMap::Table table;
  table.reserve(grid.size());
  for (const auto& u : grid) {
    const CMatrix out = projector_matrix(map(probe_state(u, i, j, n))).matrix();
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const bool in_support = (r == i || r == j) && (c == i || c == j);
        const auto ri = static_cast<Eigen::Index>(r);
        const auto ci = static_cast<Eigen::Index>(c);
        if (!in_support && std::abs(out(ri, ci)) > kProbeTol) {
          throw ClassificationError("probe image leaves the coordinate pair (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
        }
      }
    }
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    if (std::abs(out(ii, ii) - 0.5) > kProbeTol || std::abs(out(jj, jj) - 0.5) > kProbeTol) {
      throw ClassificationError("probe image does not keep the diagonal (1/2, 1/2)");
    }
    const Complex f = 2.0 * out(ii, jj);
    if (std::abs(std::abs(f) - 1.0) > kProbeTol) {
      throw ClassificationError("probe image off-diagonal is not of modulus 1/2");
    }
    table.emplace_back(principal_angle(u), std::arg(f));
  }
  return CircleMap::sampled(std::move(table));
}

CircleMap induced_homomorphism(const CircleMap& f_1j, const CircleMap& f_1k, const CircleMap& f_jk) {
  for (const auto* f : {&f_1j, &f_1k, &f_jk}) {
    if (f->form() != CircleForm::Sampled) throw std::invalid_argument("induced_homomorphism needs sampled maps");
  }
  const auto grid = table_inputs(f_jk);
  if (table_inputs(f_1j) != grid || table_inputs(f_1k) != grid) {
    throw std::invalid_argument("induced_homomorphism: grids differ");
  }
  if (std::none_of(grid.begin(), grid.end(), [](double t) { return t == 0.0; })) {
    throw std::invalid_argument("induced_homomorphism: grid must contain 1");
  }
  const Complex one(1.0, 0.0);
  const Complex scale = std::conj(f_1k(one)) * f_1j(one);
  CircleMap::Table table;
  table.reserve(grid.size());
  for (const auto& [in, out] : f_jk.table()) {
    table.emplace_back(in, std::arg(scale * std::polar(1.0, out)));
  }
  return CircleMap::sampled(std::move(table));
}

bool fixes_standard_basis(const PureStateMap& map, double tol) {
  if (map.dim_in() != map.dim_out()) return false;
  for (std::size_t k = 0; k < map.dim_in(); ++k) {
    const PureState e = PureState::basis(map.dim_in(), k);
    if (projector_gap(map(e), e) > tol) return false;
  }
  return true;
}

PureState apply_model(const ClassificationResult& r, const PureState& p) {
  const CVector& x = p.vector();
  switch (r.branch) {
    case Branch::WignerUnitary: return PureState::from_vector(CVector(r.u * x));
    case Branch::WignerAntiunitary: return PureState::from_vector(CVector(r.u * x.conjugate()));
    case Branch::EntrywiseAbs:
      if (r.v) return PureState::from_vector(CVector(*r.v * abs_entries(r.u * x)));
      return PureState::from_vector(CVector(r.u * abs_entries(x)));
    case Branch::StandardDim2: {
      if (!r.g) throw std::logic_error("StandardDim2 result without g");
      const PureState inner = tau_apply(*r.g, PureState::from_vector(CVector(r.u * x)));
      const CMatrix v = r.v ? *r.v : CMatrix::Identity(2, 2);
      return PureState::from_vector(CVector(v * inner.vector()));
    }
    case Branch::NotClassified: break;
  }
  throw std::logic_error("cannot apply the model of an unclassified map");
}

double validation_residual(const PureStateMap& map, const ClassificationResult& r,
                           const std::vector<PureState>& states) {
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, projector_gap(apply_model(r, s), map(s)));
  return worst;
}

ClassificationResult classify_canonical(const PureStateMap& map, std::size_t dim,
                                        const ClassifierOptions& opts) {
  if (dim < 3) throw std::invalid_argument("classify_canonical requires dim >= 3");
  if (map.dim_in() != dim || map.dim_out() != dim) throw std::invalid_argument("map dimension mismatch");
  if (opts.grid_size == 0 || opts.grid_size % 4 != 0) {
    throw std::invalid_argument("grid_size must be a positive multiple of 4");
  }
  if (!fixes_standard_basis(map)) return not_classified("map does not fix the standard basis");

  const auto grid = probe_grid(opts.grid_size);
  const auto roots = roots_of_unity(opts.grid_size);
  std::vector<std::vector<std::optional<CircleMap>>> f(dim, std::vector<std::optional<CircleMap>>(dim));
  try {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) f[i][j] = extract_pair_map(map, i, j, grid);
    }
  } catch (const ClassificationError& e) {
    return not_classified(e.what());
  }

  std::optional<Branch> branch;
  for (std::size_t j = 1; j < dim; ++j) {
    for (std::size_t k = j + 1; k < dim; ++k) {
      const CircleMap& f0j = *f[0][j];
      const CircleMap& f0k = *f[0][k];
      const CircleMap& fjk = *f[j][k];
      for (const auto& z : roots) {
        for (const auto& w : roots) {
          if (std::abs(f0j(z) * fjk(std::conj(z) * w) - f0k(w)) > opts.branch_tol) {
            return not_classified("pair maps violate f_0j(z) f_jk(conj(z) w) = f_0k(w)");
          }
        }
      }
      const CircleMap g = induced_homomorphism(f0j, f0k, fjk);
      for (const auto& z : roots) {
        for (const auto& w : roots) {
          if (std::abs(g(z * w) - g(z) * g(w)) > opts.branch_tol) {
            return not_classified("induced circle map is not a homomorphism");
          }
        }
      }
      const Branch b = branch_of(classify_homomorphism(g));
      if (b == Branch::NotClassified) return not_classified("induced homomorphism is not z, conj(z) or 1");
      if (branch && *branch != b) return not_classified("coordinate triples disagree on the branch");
      branch = b;
    }
  }

  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix d = CMatrix::Identity(n, n);
  for (std::size_t j = 1; j < dim; ++j) {
    d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = std::conj((*f[0][j])(Complex(1.0, 0.0)));
  }

  ClassificationResult r;
  r.branch = *branch;
  r.u = d;
  r.diagonal = d;

  auto states = random_states(dim, opts.n_validation, opts.seed);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      for (const auto& u : grid) states.push_back(probe_state(u, i, j, dim));
    }
  }
  r.residual = validation_residual(map, r, states);
  if (r.residual > opts.tol) {
    return not_classified("reconstructed model residual exceeds tolerance", r.residual);
  }
  return r;
}

ClassificationResult classify_dim2(const PureStateMap& map, const ClassifierOptions& opts) {
  if (map.dim_in() != 2 || map.dim_out() != 2) throw std::invalid_argument("classify_dim2 requires dim 2");
  if (opts.grid_size == 0) throw std::invalid_argument("grid_size must be positive");
  if (!fixes_standard_basis(map)) return not_classified("map does not fix the standard basis");

  const auto grid = probe_grid(opts.grid_size);
  ClassificationResult r;
  try {
    r.g = extract_pair_map(map, 0, 1, grid);
  } catch (const ClassificationError& e) {
    return not_classified(e.what());
  }
  r.branch = Branch::StandardDim2;
  r.u = CMatrix::Identity(2, 2);
  r.residual = validation_residual(map, r, dim2_grid_states(grid));
  if (r.residual > opts.tol) return not_classified("standard-map model residual exceeds tolerance", r.residual);
  try {
    r.g_class = classify_circle_map(*r.g, grid);
  } catch (const std::domain_error& e) {
    return not_classified(e.what(), r.residual);
  }
  return r;
}

CanonicalReduction reduce_to_canonical(const PureStateMap& map, const OrthoSystem& preimages) {
  const std::size_t n = map.dim_in();
  if (!is_cosp(preimages, n)) throw std::invalid_argument("preimages are not a COSP");
  const auto images = image_system(map, preimages);
  if (!images || !is_cosp(*images, n)) throw std::invalid_argument("image of the preimages is not a COSP");

  const auto ni = static_cast<Eigen::Index>(n);
  CMatrix q(ni, ni);
  CMatrix p(ni, ni);
  for (Eigen::Index k = 0; k < ni; ++k) {
    q.col(k) = preimages.members()[static_cast<std::size_t>(k)].vector();
    p.col(k) = images->members()[static_cast<std::size_t>(k)].vector();
  }
  return {q.adjoint(), p, conjugate_map(map, q, p.adjoint())};
}

ClassificationResult classify(const PureStateMap& map, std::size_t dim,
                              const std::optional<OrthoSystem>& preimage_hint,
                              const ClassifierOptions& opts) {
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
  if (map.dim_in() != dim || map.dim_out() != dim) throw std::invalid_argument("map dimension mismatch");

  std::optional<OrthoSystem> pre = preimage_hint;
  if (!pre) pre = find_cosp_in_image(map, dim, opts.cosp_rotations, opts.seed);
  if (!pre) return not_classified("COSP-image hypothesis unverified");

  std::optional<CanonicalReduction> red;
  try {
    red = reduce_to_canonical(map, *pre);
  } catch (const std::invalid_argument& e) {
    return not_classified(std::string("COSP-image hypothesis unverified: ") + e.what());
  }

  ClassificationResult canon = dim == 2 ? classify_dim2(red->canonical, opts)
                                        : classify_canonical(red->canonical, dim, opts);
  if (!canon.classified()) return canon;

  const CMatrix& uq = red->u_pre;   // Q*
  const CMatrix& vp = red->v_post;  // columns are image vectors
  ClassificationResult r = canon;
  std::vector<PureState> states;
  switch (canon.branch) {
    case Branch::WignerUnitary:
      r.u = vp * canon.u * uq;
      break;
    case Branch::WignerAntiunitary:
      r.u = vp * canon.u * uq.adjoint().transpose();
      break;
    case Branch::EntrywiseAbs:
      r.u = uq;
      r.v = vp * canon.u;
      break;
    case Branch::StandardDim2:
      r.u = uq;
      r.v = vp;
      for (const auto& s : dim2_grid_states(probe_grid(opts.grid_size))) {
        states.push_back(PureState::from_vector(CVector(uq.adjoint() * s.vector())));
      }
      break;
    case Branch::NotClassified: break;
  }
  if (states.empty()) states = random_states(dim, opts.n_validation, opts.seed + 1);
  r.residual = std::max(canon.residual, validation_residual(map, r, states));
  if (r.residual > opts.tol) return not_classified("composed model residual exceeds tolerance", r.residual);
  return r;
}

nlohmann::json result_to_json(const ClassificationResult& r) {
  nlohmann::json j = {{"branch", to_string(r.branch)},
                      {"U", nullptr},
                      {"V", nullptr},
                      {"g", nullptr},
                      {"residual", r.residual}};
  if (r.classified()) j["U"] = matrix_to_json(r.u);
  if (r.v) j["V"] = matrix_to_json(*r.v);
  if (r.diagonal) j["diagonal"] = matrix_to_json(*r.diagonal);
  if (r.g) j["g"] = circle_map_to_json(*r.g);
  if (r.g_class) {
    j["g_class"] = {{"kind", to_string(r.g_class->kind)},
                    {"c", complex_to_json(r.g_class->c)},
                    {"image_spread", r.g_class->image_spread}};
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

}  // namespace wignerlab
