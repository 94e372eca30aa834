#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coversys/cover.hpp"
#include "coversys/frames.hpp"
#include "coversys/space.hpp"

namespace coversys {

inline constexpr double kEta = std::numbers::ln2 / 4.0;

/// log(2^-23 lambda^4 eps^(2 log2(1/(lambda eps)) + 15)).
double strict_log_delta(double lambda, double epsilon);

/// log(2^-9 lambda^2 eps^(2 log2(1/(lambda eps)) + 11)), the exploration threshold.
double exploration_log_delta_bound(double lambda, double epsilon);

struct StructureParams {
  double C = 4.0;
  double epsilon = 0.5;
  double lambda = 0.5;
  double log_delta = 0.0;
  bool strict = true;

  /// lambda = eps / (16 C) and the matching delta.
  static StructureParams strict_params(double C, double epsilon);
  static StructureParams free_params(double epsilon, double lambda, double delta,
                                     double C = 4.0);

  /// eps / 2 in strict mode.
  double explore_epsilon() const { return strict ? epsilon / 2.0 : epsilon; }
  double delta() const;
};

enum class Verdict { Good, Bad, Neither, Pending };

/// Raised when tree construction meets a vertex that is neither good nor bad.
class NeitherVerdict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(Verdict v);

/// Values of one coordinate, as a membership mask.
using ValueSubset = std::vector<bool>;

struct LllReport {
  /// Indexed by position in I.
  std::vector<double> sums;
  std::vector<bool> heavy;
  /// Per plane, the uniform mass of H inside R_I.
  std::vector<Rational> masses;
  std::optional<std::size_t> argmax;
  std::size_t lemma35_hypotheses = 0;
  std::size_t lemma35_failures = 0;
};

/// Weighted sums sum_{H : j in F(H)} e^(eta |F(H)|) mass(H) over R_I, plus the
/// small-mass check on planes meeting the threshold hypothesis.
LllReport lll_inequality_report(const ProductSpace& space, std::span<const Hyperplane> planes,
                                CoordSet coords, const std::vector<ValueSubset>& r_sets,
                                double lambda, double epsilon);

struct Branch {
  std::uint32_t s = 0;
  CoordSet J;
  /// Indices into the planes passed to one_step.
  std::vector<std::size_t> planes;
};

struct OneStepResult {
  std::size_t i = 0;
  int case_number = 0;
  Verdict verdict = Verdict::Pending;
  std::vector<Branch> branches;
  std::vector<std::size_t> frame;
  std::vector<std::size_t> garbage;
  /// Case 2 only, indexed by position in I.
  std::vector<double> heavy_sums;
  double garbage_weight = 0.0;
};

/// `planes` live in the full space; their restrictions to `coords` must be a
/// minimal cover of S_I with every coordinate of I fixed somewhere.
OneStepResult one_step(const ProductSpace& space, std::span<const Hyperplane> planes,
                       CoordSet coords, const StructureParams& params,
                       std::uint64_t cap = kDefaultSieveCap);

/// Branches of the explored coordinate only.
std::vector<Branch> explore_coordinate(const ProductSpace& space,
                                       std::span<const Hyperplane> planes, CoordSet coords,
                                       std::size_t i, std::uint64_t cap = kDefaultSieveCap);

struct ExplorationNode {
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  CoordSet I;
  std::size_t i = 0;
  /// A_u, as indices into the root cover.
  std::vector<std::size_t> planes;
  std::optional<std::uint32_t> s;
  Verdict verdict = Verdict::Pending;
  int case_number = 0;
  std::vector<std::size_t> frame;
  std::vector<std::size_t> garbage;
};

struct ExplorationTree {
  ProductSpace space;
  std::vector<Hyperplane> planes;
  StructureParams params;
  std::vector<ExplorationNode> nodes;
};

ExplorationTree build_exploration_tree(const CoverSystem& a, const StructureParams& params,
                                       std::uint64_t cap = kDefaultSieveCap);

struct Validation {
  bool valid = false;
  std::string violation;
};

Validation validate_exploration_tree(const ExplorationTree& t,
                                     std::uint64_t cap = kDefaultSieveCap);

struct TreeFrame {
  /// Vertices of the subtree, in depth-first order.
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> beta;
  /// Coordinates in depth-first order of their beta vertices.
  std::vector<std::size_t> pi;
  std::vector<CoordSet> J;
  std::vector<CoordSet> I;
  /// anchors[i][j] = s_j(i) for j in J(i) \ {i}.
  std::vector<std::vector<std::optional<std::uint32_t>>> anchors;
  std::vector<std::vector<std::size_t>> layers;
  std::vector<std::vector<std::size_t>> garbage;
  CoordSet bad;
};

TreeFrame extract_tree_frame(const ExplorationTree& t);

struct TreeFrameValidation {
  bool valid = false;
  std::string violation;
  bool strong_disjointness = false;
  double max_garbage_contribution = 0.0;
  std::size_t garbage_volume = 0;
  double garbage_volume_bound = 0.0;
};

TreeFrameValidation validate_tree_frame(const ExplorationTree& t, const TreeFrame& f);

GeneralizedFrame tree_frame_to_generalized_frame(const ExplorationTree& t, const TreeFrame& f);

struct StructureReport {
  ExplorationTree tree;
  Validation tree_check;
  TreeFrame frame;
  TreeFrameValidation frame_check;
  GeneralizedFrameReport generalized_check;
  std::size_t frame_size = 0;
  std::size_t slack_total = 0;
  /// |A| <= C sum (|S_i| - 1).
  bool size_hypothesis = false;
  /// sum |F_i| >= (1 - eps) sum (|S_i| - 1).
  bool frame_bound = false;
};

StructureReport analyze(const CoverSystem& a, const StructureParams& params,
                        std::uint64_t cap = kDefaultSieveCap);

struct Lemma35Check {
  std::size_t samples = 0;
  std::size_t attempts = 0;
  std::size_t failures = 0;
};

/// Random (H, R, lambda, eps) satisfying the small-measure hypothesis.
Lemma35Check lemma35_random_check(std::size_t samples, std::uint64_t seed,
                                  std::size_t max_attempts = 10'000'000);

}  // namespace coversys
