// Witness search for metric properties of black-box pure-state maps.
//
// Every check is sampling based: a report without a witness means "no
// witness found at this budget", never "property proven".

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wignerlab/projective.hpp"
#include "wignerlab/state_maps.hpp"

namespace wignerlab {

inline constexpr double kWitnessThreshold = 1e-9;
inline constexpr std::size_t kDefaultSamples = 10000;
inline constexpr std::size_t kDefaultRefineSteps = 200;

enum class Property { Nonexpansive, Noncontractive, Isometry, OrthogonalityPreserving, Inclusion };

std::string to_string(Property p);
/// Accepts the CLI spellings ("nonexpansive", "noncontractive", "isometry",
/// "orthogonality"). Throws std::invalid_argument otherwise.
Property property_from_string(const std::string& s);

/// A pair of input states certifying a failure. For the pair properties
/// d_in/d_out are the input and output distances. For the inclusion check
/// `p` is the dominated state, `q` its image, d_in is the required mass (1)
/// and d_out the mass the image puts on the target system.
struct ViolationWitness {
  PureState p;
  PureState q;
  double d_in;
  double d_out;
  double gap;
};

struct CheckReport {
  Property property;
  std::size_t samples = 0;
  double worst_gap = 0.0;
  std::optional<ViolationWitness> witness;
  std::uint64_t seed = 0;

  bool passed() const { return !witness.has_value(); }
};

/// Signed gap of a property on one input pair: positive means violated.
double property_gap(Property prop, double d_in, double d_out);

/// Recomputes a witness gap using only the map and projective_core.
double recompute_gap(const PureStateMap& map, Property prop, const PureState& p, const PureState& q);

/// Worker count: WIGNERLAB_THREADS when set to a positive integer, else the
/// hardware concurrency.
std::size_t worker_count();

/// gap = d(phi P, phi Q) - d(P, Q) over seeded random pairs, then local
/// refinement from the worst pair.
CheckReport check_nonexpansive(const PureStateMap& map, std::size_t dim, std::size_t n_samples,
                               std::size_t refine_steps, std::uint64_t seed);

/// gap = d(P, Q) - d(phi P, phi Q).
CheckReport check_noncontractive(const PureStateMap& map, std::size_t dim, std::size_t n_samples,
                                 std::size_t refine_steps, std::uint64_t seed);

/// gap = |d(phi P, phi Q) - d(P, Q)|.
CheckReport check_isometry(const PureStateMap& map, std::size_t dim, std::size_t n_samples,
                           std::uint64_t seed, std::size_t refine_steps = kDefaultRefineSteps);

/// Random orthogonal pairs (Gram-Schmidt); gap = tr(phi P phi Q).
CheckReport check_orthogonality_preserving(const PureStateMap& map, std::size_t dim,
                                           std::size_t n_samples, std::uint64_t seed);

/// For preimages Q_j whose images P_j form an OSP, samples states dominated by
/// sum Q_j and checks tr(phi(Q) sum P_j) >= 1 - 1e-9. Throws
/// std::invalid_argument when the images are not an OSP.
CheckReport check_inclusion_lemma(const PureStateMap& map, const OrthoSystem& preimages,
                                  std::size_t n_samples, std::uint64_t seed);

/// Tries the standard basis, then `extra_rotations` seeded Haar-random
/// rotations of it (or the given candidate unitaries), returning the first
/// COSP whose image is a COSP.
std::optional<OrthoSystem> find_cosp_in_image(const PureStateMap& map, std::size_t dim,
                                              std::size_t extra_rotations = 8,
                                              std::uint64_t seed = 0);
std::optional<OrthoSystem> find_cosp_in_image(const PureStateMap& map, std::size_t dim,
                                              const std::vector<CMatrix>& candidates);

/// Images of the members, validated as an OSP; std::nullopt otherwise.
std::optional<OrthoSystem> image_system(const PureStateMap& map, const OrthoSystem& preimages);

nlohmann::json report_to_json(const CheckReport& r);

}  // namespace wignerlab
