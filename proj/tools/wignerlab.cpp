// wignerlab: verify metric properties of pure-state maps, classify them, and
// run the counterexample demos.
//
// Exit codes: 0 = property holds at budget / classified, 1 = witness found /
// not classified, 2 = usage or I/O error. JSON goes to stdout (or --out),
// diagnostics to stderr.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wignerlab/acceptance.hpp"
#include "wignerlab/classifier.hpp"
#include "wignerlab/serialize.hpp"
#include "wignerlab/state_maps.hpp"
#include "wignerlab/verifier.hpp"

namespace {

using namespace wignerlab;
using nlohmann::json;

struct RunConfig {
  std::size_t dim = 3;
  std::uint64_t seed = 42;
  std::size_t samples = kDefaultSamples;
  std::size_t refine_steps = kDefaultRefineSteps;
  std::string map;
  std::string property = "nonexpansive";
  std::string preimages;
  std::string out;
  std::string demo;
  std::size_t anchors = 32;
  std::size_t k = 3;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_arg(const std::string& arg) {
  const std::string text = !arg.empty() && arg.front() == '@' ? read_file(arg.substr(1)) : arg;
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

// Built-in maps by name; anything that looks like JSON (or @file) is a
// descriptor.
PureStateMap resolve_map(const RunConfig& cfg) {
  const std::string& m = cfg.map;
  if (m.empty()) throw UsageError("--map is required");
  if (m.front() == '{' || m.front() == '@') return map_from_json(parse_json_arg(m));

  std::mt19937_64 rng(cfg.seed);
  const std::size_t d = cfg.dim;
  if (m == "phi") return make_phi_map(d);
  if (m == "identity") return make_identity_map(d);
  if (m == "wigner") return make_wigner_map({random_unitary(d, rng), false});
  if (m == "wigner-anti") return make_wigner_map({random_unitary(d, rng), true});
  if (m == "composed") {
    const CMatrix u = random_unitary(d, rng);
    return make_composed_map(u, random_unitary(d, rng));
  }
  if (m == "constant") return make_constant_map(PureState::basis(d, 0));
  if (m == "tau-fold") return make_tau_map(CircleMap::fold());
  if (m == "tau-constant") return make_tau_map(CircleMap::constant(1.0));
  if (m == "tau-power2") return make_tau_map(CircleMap::power(2));
  if (m == "block-embed") return make_block_embed_map(d);
  if (m == "separable-embed") return make_separable_embed_map(d, cfg.anchors, cfg.seed);
  if (m == "proper-subspace") return make_proper_subspace_map(d, cfg.k, 0);
  throw UsageError("unknown map '" + m + "'");
}

void emit(const RunConfig& cfg, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << text;
}

CheckReport run_property(const PureStateMap& map, Property prop, const RunConfig& cfg) {
  const std::size_t dim = map.dim_in();
  switch (prop) {
    case Property::Nonexpansive: return check_nonexpansive(map, dim, cfg.samples, cfg.refine_steps, cfg.seed);
    case Property::Noncontractive: return check_noncontractive(map, dim, cfg.samples, cfg.refine_steps, cfg.seed);
    case Property::Isometry: return check_isometry(map, dim, cfg.samples, cfg.seed, cfg.refine_steps);
    case Property::OrthogonalityPreserving: return check_orthogonality_preserving(map, dim, cfg.samples, cfg.seed);
    case Property::Inclusion: break;
  }
  throw UsageError("property not supported by verify");
}

int run_verify(const RunConfig& cfg) {
  const PureStateMap map = resolve_map(cfg);
  const CheckReport r = run_property(map, property_from_string(cfg.property), cfg);
  json j = report_to_json(r);
  j["map"] = map_to_json(map);
  emit(cfg, j);
  return r.passed() ? 0 : 1;
}

int run_classify(const RunConfig& cfg) {
  const PureStateMap map = resolve_map(cfg);
  if (map.dim_in() != map.dim_out()) throw UsageError("classify needs a map with equal input and output dimension");
  std::optional<OrthoSystem> hint;
  if (!cfg.preimages.empty()) {
    const json pre = parse_json_arg(cfg.preimages);
    if (!pre.is_array()) throw UsageError("--preimages must be a JSON array of states");
    std::vector<PureState> states;
    for (const auto& s : pre) states.push_back(state_from_json(s));
    hint = OrthoSystem(std::move(states));
  }
  ClassifierOptions opts;
  opts.seed = cfg.seed;
  const auto r = classify(map, map.dim_in(), hint, opts);
  emit(cfg, result_to_json(r));
  return r.classified() ? 0 : 1;
}

json expectation(const CheckReport& r, bool expect_witness) {
  json j = report_to_json(r);
  j["expected"] = expect_witness ? "witness" : "pass";
  j["confirmed"] = r.passed() != expect_witness;
  return j;
}

int run_demo(const RunConfig& cfg) {
  std::string name = cfg.demo;
  if (name == "example-4.1") name = "block-embed";
  if (name == "example-4.2") name = "separable-embed";

  json bundle = {{"demo", name}};
  bool ok = true;
  if (name == "block-embed") {
    const auto map = make_block_embed_map(cfg.dim);
    const auto nc = expectation(check_noncontractive(map, cfg.dim, cfg.samples, cfg.refine_steps, cfg.seed), false);
    const auto iso = expectation(check_isometry(map, cfg.dim, cfg.samples, cfg.seed, cfg.refine_steps), true);
    ok = nc["confirmed"].get<bool>() && iso["confirmed"].get<bool>();
    bundle["map"] = map_to_json(map);
    bundle["reports"] = {{"noncontractive", nc}, {"isometry", iso}};
  } else if (name == "separable-embed") {
    const auto map = make_separable_embed_map(cfg.dim, cfg.anchors, cfg.seed);
    const auto ne = expectation(check_nonexpansive(map, cfg.dim, cfg.samples, cfg.refine_steps, cfg.seed), false);
    const auto iso = expectation(check_isometry(map, cfg.dim, cfg.samples, cfg.seed, cfg.refine_steps), true);
    std::mt19937_64 rng(cfg.seed + 1);
    std::vector<PureState> images;
    for (int i = 0; i < 1000; ++i) images.push_back(map(random_pure_state(cfg.dim, rng)));
    double max_overlap = 0.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        max_overlap = std::max(max_overlap, transition_probability(images[i], images[j]));
      }
    }
    const bool injective = max_overlap < 1.0 - kOrthoTol;
    ok = ne["confirmed"].get<bool>() && iso["confirmed"].get<bool>() && injective;
    bundle["map"] = map_to_json(map);
    bundle["reports"] = {{"nonexpansive", ne},
                         {"injectivity", {{"samples", images.size()}, {"max_image_overlap", max_overlap},
                                          {"confirmed", injective}}},
                         {"isometry", iso}};
  } else if (name == "proper-subspace") {
    const auto map = make_proper_subspace_map(cfg.dim, cfg.k, 0);
    const auto ne = expectation(check_nonexpansive(map, cfg.dim, cfg.samples, cfg.refine_steps, cfg.seed), false);
    std::vector<PureState> pre;
    for (std::size_t a = 0; a < cfg.k; ++a) pre.push_back(PureState::basis(cfg.dim, a));
    const auto img = image_system(map, OrthoSystem(pre));
    const bool cosp = img && is_cosp(*img, cfg.k);
    json images = json::array();
    if (img) {
      for (const auto& s : img->members()) images.push_back(state_to_json(s));
    }
    ok = ne["confirmed"].get<bool>() && cosp;
    bundle["map"] = map_to_json(map);
    bundle["reports"] = {{"nonexpansive", ne}, {"cosp_image", {{"images", images}, {"confirmed", cosp}}}};
  } else {
    throw UsageError("unknown demo '" + cfg.demo + "' (block-embed, separable-embed, proper-subspace)");
  }
  bundle["passed"] = ok;
  emit(cfg, bundle);
  return ok ? 0 : 1;
}

int run_selftest(const RunConfig& cfg) {
  json rows = json::array();
  bool all = true;
  for (const auto& c : acceptance::criteria()) {
    const auto r = acceptance::run_criterion(c);
    std::cerr << acceptance::format_line(r) << '\n';
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  emit(cfg, {{"criteria", rows}, {"passed", all}});
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wignerlab: metric geometry of pure states and nonexpansive maps"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dim", cfg.dim, "Hilbert space dimension")->check(CLI::Range(2, 4096));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--samples", cfg.samples, "number of sampled pairs")->check(CLI::PositiveNumber);
    sub->add_option("--refine-steps", cfg.refine_steps, "local refinement sweeps");
    sub->add_option("--out", cfg.out, "write JSON here instead of stdout");
  };

  auto* verify = app.add_subcommand("verify", "search for a violation of a metric property");
  add_common(verify);
  verify->add_option("--map", cfg.map, "built-in name, inline JSON descriptor, or @file")->required();
  verify->add_option("--property", cfg.property, "nonexpansive | noncontractive | isometry | orthogonality");
  verify->add_option("--anchors", cfg.anchors, "anchors for separable-embed");
  verify->add_option("--k", cfg.k, "subspace dimension for proper-subspace");

  auto* cls = app.add_subcommand("classify", "classify a nonexpansive map");
  add_common(cls);
  cls->add_option("--map", cfg.map, "built-in name, inline JSON descriptor, or @file")->required();
  cls->add_option("--preimages", cfg.preimages, "JSON array of states (or @file) forming a COSP preimage");

  auto* demo = app.add_subcommand("demo", "build a counterexample and verify its properties");
  add_common(demo);
  demo->add_option("name", cfg.demo, "block-embed | separable-embed | proper-subspace")->required();
  demo->add_option("--anchors", cfg.anchors, "anchor count for separable-embed");
  demo->add_option("--k", cfg.k, "subspace dimension for proper-subspace");

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_option("--out", cfg.out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return run_verify(cfg);
    if (cls->parsed()) return run_classify(cfg);
    if (demo->parsed()) return run_demo(cfg);
    if (self->parsed()) return run_selftest(cfg);
  } catch (const std::exception& e) {
    std::cerr << "wignerlab: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
