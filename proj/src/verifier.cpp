#include "wignerlab/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "wignerlab/serialize.hpp"

namespace wignerlab {

namespace {

constexpr std::size_t kChunkSize = 512;

using Candidate = ViolationWitness;
using Draw = std::function<Candidate(std::mt19937_64&)>;

// Substream for one chunk, independent of which worker runs it.
std::mt19937_64 chunk_rng(std::uint64_t seed, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

// Draws n samples in fixed-size chunks and returns the sample with the
// largest gap (earliest index on ties). The result does not depend on the
// number of workers.
std::optional<Candidate> search(std::size_t n_samples, std::uint64_t seed, const Draw& draw) {
  const std::size_t n_chunks = (n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<std::optional<Candidate>> best(n_chunks);
  std::vector<std::exception_ptr> errors(n_chunks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < n_chunks; c = next++) {
      try {
        auto rng = chunk_rng(seed, c);
        const std::size_t count = std::min(kChunkSize, n_samples - c * kChunkSize);
        for (std::size_t i = 0; i < count; ++i) {
          Candidate cand = draw(rng);
          if (!best[c] || cand.gap > best[c]->gap) best[c] = std::move(cand);
        }
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  const std::size_t n_workers = std::min(worker_count(), std::max<std::size_t>(n_chunks, 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  std::optional<Candidate> out;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    if (errors[c]) std::rethrow_exception(errors[c]);
    if (best[c] && (!out || best[c]->gap > out->gap)) out = std::move(best[c]);
  }
  return out;
}

Candidate evaluate_pair(const PureStateMap& map, Property prop, PureState p, PureState q) {
  const double d_in = distance(p, q);
  const double d_out = distance(map(p), map(q));
  const double gap = property_gap(prop, d_in, d_out);
  return {std::move(p), std::move(q), d_in, d_out, gap};
}

// Coordinate-wise complex perturbations of both representatives, accepting
// moves that increase the gap; the step halves after a sweep with no
// accepted move.
Candidate refine(const PureStateMap& map, Property prop, Candidate best, std::size_t steps) {
  const Complex dirs[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  double step = 0.1;
  for (std::size_t s = 0; s < steps; ++s) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      const std::size_t n = best.p.dim();
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& dir : dirs) {
          CVector v = (which == 0 ? best.p : best.q).vector();
          v(static_cast<Eigen::Index>(k)) += step * dir;
          if (v.norm() == 0.0) continue;
          PureState moved = PureState::from_vector(v);
          Candidate cand = which == 0 ? evaluate_pair(map, prop, std::move(moved), best.q)
                                      : evaluate_pair(map, prop, best.p, std::move(moved));
          if (cand.gap > best.gap) {
            best = std::move(cand);
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-14) break;
  }
  return best;
}

void require_input_dim(const PureStateMap& map, std::size_t dim) {
  if (map.dim_in() != dim) {
    throw std::invalid_argument("map input dimension " + std::to_string(map.dim_in()) +
                                " does not match requested dim " + std::to_string(dim));
  }
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
}

CheckReport pair_check(const PureStateMap& map, Property prop, std::size_t dim, std::size_t n_samples,
                       std::size_t refine_steps, std::uint64_t seed) {
  require_input_dim(map, dim);
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  auto best = search(n_samples, seed, [&](std::mt19937_64& rng) {
    PureState p = random_pure_state(dim, rng);
    PureState q = random_pure_state(dim, rng);
    return evaluate_pair(map, prop, std::move(p), std::move(q));
  });
  Candidate worst = refine(map, prop, std::move(*best), refine_steps);
  CheckReport r{prop, n_samples, worst.gap, std::nullopt, seed};
  if (worst.gap > kWitnessThreshold) r.witness = std::move(worst);
  return r;
}

PureState orthogonal_partner(const PureState& p, std::mt19937_64& rng) {
  for (;;) {
    const PureState raw = random_pure_state(p.dim(), rng);
    CVector w = raw.vector() - p.vector() * p.vector().dot(raw.vector());
    if (w.norm() > 1e-6) return PureState::from_vector(w);
  }
}

}  // namespace

std::string to_string(Property p) {
  switch (p) {
    case Property::Nonexpansive: return "nonexpansive";
    case Property::Noncontractive: return "noncontractive";
    case Property::Isometry: return "isometry";
    case Property::OrthogonalityPreserving: return "orthogonality";
    case Property::Inclusion: return "inclusion";
  }
  return "nonexpansive";
}

Property property_from_string(const std::string& s) {
  if (s == "nonexpansive") return Property::Nonexpansive;
  if (s == "noncontractive") return Property::Noncontractive;
  if (s == "isometry") return Property::Isometry;
  if (s == "orthogonality" || s == "orthogonality_preserving") return Property::OrthogonalityPreserving;
  throw std::invalid_argument("unknown property '" + s + "'");
}

double property_gap(Property prop, double d_in, double d_out) {
  switch (prop) {
    case Property::Nonexpansive: return d_out - d_in;
    case Property::Noncontractive: return d_in - d_out;
    case Property::Isometry: return std::abs(d_out - d_in);
    case Property::OrthogonalityPreserving: return 1.0 - d_out * d_out;
    case Property::Inclusion: return d_in - d_out;
  }
  return 0.0;
}

double recompute_gap(const PureStateMap& map, Property prop, const PureState& p, const PureState& q) {
  if (prop == Property::OrthogonalityPreserving) return transition_probability(map(p), map(q));
  if (prop == Property::Inclusion) throw std::invalid_argument("inclusion witnesses need the target system");
  return property_gap(prop, distance(p, q), distance(map(p), map(q)));
}

std::size_t worker_count() {
  if (const char* env = std::getenv("WIGNERLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CheckReport check_nonexpansive(const PureStateMap& map, std::size_t dim, std::size_t n_samples,
                               std::size_t refine_steps, std::uint64_t seed) {
  return pair_check(map, Property::Nonexpansive, dim, n_samples, refine_steps, seed);
}

CheckReport check_noncontractive(const PureStateMap& map, std::size_t dim, std::size_t n_samples,
                                 std::size_t refine_steps, std::uint64_t seed) {
  return pair_check(map, Property::Noncontractive, dim, n_samples, refine_steps, seed);
}

CheckReport check_isometry(const PureStateMap& map, std::size_t dim, std::size_t n_samples,
                           std::uint64_t seed, std::size_t refine_steps) {
  return pair_check(map, Property::Isometry, dim, n_samples, refine_steps, seed);
}

CheckReport check_orthogonality_preserving(const PureStateMap& map, std::size_t dim,
                                           std::size_t n_samples, std::uint64_t seed) {
  require_input_dim(map, dim);
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  auto best = search(n_samples, seed, [&](std::mt19937_64& rng) {
    PureState p = random_pure_state(dim, rng);
    PureState q = orthogonal_partner(p, rng);
    const PureState fp = map(p);
    const PureState fq = map(q);
    const double overlap = transition_probability(fp, fq);
    const double d_in = distance(p, q);
    const double d_out = distance(fp, fq);
    return Candidate{std::move(p), std::move(q), d_in, d_out, overlap};
  });
  CheckReport r{Property::OrthogonalityPreserving, n_samples, best->gap, std::nullopt, seed};
  if (best->gap > kWitnessThreshold) r.witness = std::move(*best);
  return r;
}

std::optional<OrthoSystem> image_system(const PureStateMap& map, const OrthoSystem& preimages) {
  std::vector<PureState> images;
  images.reserve(preimages.size());
  for (const auto& q : preimages.members()) images.push_back(map(q));
  if (!is_osp(images)) return std::nullopt;
  return OrthoSystem(std::move(images));
}

CheckReport check_inclusion_lemma(const PureStateMap& map, const OrthoSystem& preimages,
                                  std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (preimages.size() == 0) throw std::invalid_argument("preimage system is empty");
  if (preimages.dim() != map.dim_in()) throw std::invalid_argument("preimage dimension mismatch");
  const auto targets = image_system(map, preimages);
  if (!targets) throw std::invalid_argument("images of the preimage system are not an OSP");

  const std::size_t m = preimages.size();
  auto best = search(n_samples, seed, [&](std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v = CVector::Zero(static_cast<Eigen::Index>(preimages.dim()));
    for (std::size_t j = 0; j < m; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      v += Complex(re, im) * preimages.members()[j].vector();
    }
    if (v.norm() == 0.0) v = preimages.members().front().vector();
    PureState q = PureState::from_vector(v);
    PureState image = map(q);
    double mass = 0.0;
    for (const auto& t : targets->members()) mass += transition_probability(image, t);
    return Candidate{std::move(q), std::move(image), 1.0, mass, 1.0 - mass};
  });
  CheckReport r{Property::Inclusion, n_samples, best->gap, std::nullopt, seed};
  if (best->gap > kWitnessThreshold) r.witness = std::move(*best);
  return r;
}

std::optional<OrthoSystem> find_cosp_in_image(const PureStateMap& map, std::size_t dim,
                                              const std::vector<CMatrix>& candidates) {
  if (map.dim_in() != dim || map.dim_out() != dim) {
    throw std::invalid_argument("find_cosp_in_image requires a square map of the given dim");
  }
  auto try_system = [&](const OrthoSystem& pre) -> std::optional<OrthoSystem> {
    const auto img = image_system(map, pre);
    if (img && is_cosp(*img, dim)) return pre;
    return std::nullopt;
  };
  if (auto s = try_system(OrthoSystem::standard(dim))) return s;
  for (const auto& u : candidates) {
    if (auto s = try_system(OrthoSystem::from_unitary_columns(u))) return s;
  }
  return std::nullopt;
}

std::optional<OrthoSystem> find_cosp_in_image(const PureStateMap& map, std::size_t dim,
                                              std::size_t extra_rotations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> rotations;
  rotations.reserve(extra_rotations);
  for (std::size_t i = 0; i < extra_rotations; ++i) rotations.push_back(random_unitary(dim, rng));
  return find_cosp_in_image(map, dim, rotations);
}

nlohmann::json report_to_json(const CheckReport& r) {
  nlohmann::json j = {{"property", to_string(r.property)},
                      {"samples", r.samples},
                      {"worst_gap", r.worst_gap},
                      {"witness", nullptr},
                      {"seed", r.seed}};
  if (r.witness) {
    j["witness"] = {{"P", state_to_json(r.witness->p)},
                    {"Q", state_to_json(r.witness->q)},
                    {"d_in", r.witness->d_in},
                    {"d_out", r.witness->d_out},
                    {"gap", r.witness->gap}};
  }
  return j;
}

}  // namespace wignerlab
