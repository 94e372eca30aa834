#include "coversys/structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace coversys {

namespace {

constexpr double kLn2 = std::numbers::ln2;

Hyperplane restrict_or_empty(const Hyperplane& h, CoordSet coords) {
  if (coords.empty()) return Hyperplane();
  return restrict(h, coords);
}

ProductSpace restrict_space_or_empty(const ProductSpace& space, CoordSet coords) {
  if (coords.empty()) return ProductSpace();
  return restrict(space, coords);
}

// Empty string when the restrictions to `coords` are distinct, form a minimal
// cover of S_I and fix every coordinate of I.
std::string check_restricted_cover(const ProductSpace& space, std::span<const Hyperplane> planes,
                                   CoordSet coords, std::uint64_t cap) {
  std::vector<Hyperplane> restricted;
  std::set<Hyperplane> seen;
  for (const Hyperplane& h : planes) {
    restricted.push_back(restrict_or_empty(h, coords));
    if (!seen.insert(restricted.back()).second) return "two planes share a restriction";
  }
  const ProductSpace sub = restrict_space_or_empty(space, coords);
  const CoverSystem c(sub, std::move(restricted));
  if (c.fixed_set() != CoordSet::all(coords.size())) return "restrictions do not fix every coordinate";
  if (!is_cover(c, cap)) return "restrictions do not cover";
  if (!is_minimal(c, cap)) return "restrictions are not a minimal cover";
  return {};
}

std::vector<std::size_t> canonical_indices(std::span<const Hyperplane> planes) {
  std::vector<std::size_t> idx(planes.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return planes[a] < planes[b]; });
  return idx;
}

double garbage_term(const Hyperplane& h, CoordSet coords) {
  return std::exp2(-static_cast<double>((h.fixed_set() & coords).size()) / 4.0);
}

}  // namespace

double strict_log_delta(double lambda, double epsilon) {
  const double l = std::log2(1.0 / (lambda * epsilon));
  return -23.0 * kLn2 + 4.0 * std::log(lambda) + (2.0 * l + 15.0) * std::log(epsilon);
}

double exploration_log_delta_bound(double lambda, double epsilon) {
  const double l = std::log2(1.0 / (lambda * epsilon));
  return -9.0 * kLn2 + 2.0 * std::log(lambda) + (2.0 * l + 11.0) * std::log(epsilon);
}

StructureParams StructureParams::strict_params(double C, double epsilon) {
  if (!(C > 0)) throw std::invalid_argument("C must be positive");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  StructureParams p;
  p.C = C;
  p.epsilon = epsilon;
  p.lambda = epsilon / (16.0 * C);
  p.log_delta = strict_log_delta(p.lambda, epsilon);
  p.strict = true;
  if (!(p.log_delta < exploration_log_delta_bound(p.lambda, epsilon / 2.0))) {
    throw std::logic_error("strict delta violates the exploration threshold");
  }
  return p;
}

StructureParams StructureParams::free_params(double epsilon, double lambda, double delta,
                                             double C) {
  if (!(epsilon > 0) || !(lambda > 0) || !(delta > 0) || !(C > 0)) {
    throw std::invalid_argument("free parameters must be positive");
  }
  StructureParams p;
  p.C = C;
  p.epsilon = epsilon;
  p.lambda = lambda;
  p.log_delta = std::log(delta);
  p.strict = false;
  return p;
}

double StructureParams::delta() const { return std::exp(log_delta); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Good:
      return "good";
    case Verdict::Bad:
      return "bad";
    case Verdict::Neither:
      return "neither";
    case Verdict::Pending:
      return "pending";
  }
  return "pending";
}

// ---------------------------------------------------------------------------

LllReport lll_inequality_report(const ProductSpace& space, std::span<const Hyperplane> planes,
                                CoordSet coords, const std::vector<ValueSubset>& r_sets,
                                double lambda, double epsilon) {
  const auto elems = coords.elements();
  if (r_sets.size() != elems.size()) throw std::invalid_argument("one R-set per coordinate");
  std::vector<std::size_t> pos(space.dim(), 0);
  std::vector<std::uint64_t> r_size(elems.size(), 0);
  bool size_condition = true;
  for (std::size_t a = 0; a < elems.size(); ++a) {
    const std::size_t c = elems[a];
    pos[c] = a;
    if (r_sets[a].size() != space.size(c)) throw std::invalid_argument("R-set has wrong size");
    r_size[a] = static_cast<std::uint64_t>(std::count(r_sets[a].begin(), r_sets[a].end(), true));
    if (r_size[a] < 2) throw std::invalid_argument("every R-set needs two elements");
    if (static_cast<double>(r_size[a]) < epsilon * (space.size(c) - 1) + 1) size_condition = false;
  }
  const double log_delta0 = exploration_log_delta_bound(lambda, epsilon);

  LllReport out;
  out.sums.assign(elems.size(), 0.0);
  out.heavy.assign(elems.size(), false);
  for (const Hyperplane& h : planes) {
    validate(space, h);
    const CoordSet fixed = h.fixed_set() & coords;
    const auto fixed_elems = fixed.elements();
    bool inside = true;
    BigInt denominator = 1;
    double log_mass = 0.0;
    for (std::size_t c : fixed_elems) {
      if (!r_sets[pos[c]][h.value(c)]) inside = false;
      denominator *= r_size[pos[c]];
      log_mass -= std::log(static_cast<double>(r_size[pos[c]]));
    }
    out.masses.push_back(inside ? Rational(BigInt(1), denominator) : Rational(0));
    const double ell = static_cast<double>(fixed_elems.size());
    if (inside) {
      const double weight = std::exp(kEta * ell + log_mass);
      for (std::size_t c : fixed_elems) out.sums[pos[c]] += weight;
    }
    if (!size_condition) continue;
    for (std::size_t i : fixed_elems) {
      CoordSet rest = coords;
      rest.erase(i);
      if (log_measure(space, h, rest) > log_delta0) continue;
      ++out.lemma35_hypotheses;
      const double log_bound = std::log(lambda) - (ell / 2.0 + 4.0) * kLn2 -
                               std::log(static_cast<double>(space.size(i)));
      if (inside && log_mass > log_bound + 1e-12) ++out.lemma35_failures;
    }
  }
  for (std::size_t a = 0; a < elems.size(); ++a) {
    out.heavy[a] = out.sums[a] >= kEta / 2.0;
    if (!out.argmax || out.sums[a] > out.sums[*out.argmax]) out.argmax = a;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Branch> explore_coordinate(const ProductSpace& space,
                                       std::span<const Hyperplane> planes, CoordSet coords,
                                       std::size_t i, std::uint64_t cap) {
  if (!coords.contains(i)) throw std::invalid_argument("explored coordinate not in I");
  CoordSet rest = coords;
  rest.erase(i);
  const auto rest_elems = rest.elements();
  const auto order = canonical_indices(planes);
  const ProductSpace sub = restrict_space_or_empty(space, rest);
  std::vector<Branch> out;
  CoordSet union_j;
  for (std::uint32_t s = 0; s < space.size(i); ++s) {
    Branch b;
    b.s = s;
    std::vector<std::size_t> members;
    for (std::size_t idx : order) {
      if (planes[idx].is_free(i) || planes[idx].value(i) == s) members.push_back(idx);
    }
    if (members.empty()) throw std::logic_error("slice of a cover has no planes");
    if (rest.empty()) {
      b.planes.push_back(members.front());
    } else {
      std::map<Hyperplane, std::size_t> back;
      std::vector<Hyperplane> restricted;
      for (std::size_t idx : members) {
        Hyperplane r = restrict(planes[idx], rest);
        if (!back.emplace(r, idx).second) {
          throw std::logic_error("restriction of a minimal cover is not injective");
        }
        restricted.push_back(std::move(r));
      }
      const CoverSystem star = minimal_subcover(CoverSystem(sub, std::move(restricted)), cap);
      for (std::size_t r : star.fixed_set().elements()) b.J.insert(rest_elems[r]);
      for (const Hyperplane& r : star.planes()) b.planes.push_back(back.at(r));
      std::sort(b.planes.begin(), b.planes.end());
    }
    union_j = union_j | b.J;
    out.push_back(std::move(b));
  }
  if (union_j != rest) throw std::logic_error("branch coordinate sets do not cover I \\ {i}");
  return out;
}

OneStepResult one_step(const ProductSpace& space, std::span<const Hyperplane> planes,
                       CoordSet coords, const StructureParams& params, std::uint64_t cap) {
  if (coords.empty()) throw std::invalid_argument("one_step needs a nonempty coordinate set");
  if (!coords.subset_of(CoordSet::all(space.dim()))) {
    throw std::invalid_argument("coordinate set outside the space");
  }
  for (const Hyperplane& h : planes) validate(space, h);
  if (const std::string why = check_restricted_cover(space, planes, coords, cap); !why.empty()) {
    throw std::invalid_argument(why);
  }
  const double eps = params.explore_epsilon();
  const auto elems = coords.elements();
  const auto order = canonical_indices(planes);

  std::vector<bool> is_witness(planes.size(), false);
  std::vector<std::vector<std::size_t>> witnesses(elems.size());
  std::vector<ValueSubset> r_sets(elems.size());
  OneStepResult out;
  std::optional<std::size_t> case1;
  for (std::size_t a = 0; a < elems.size(); ++a) {
    const std::size_t c = elems[a];
    CoordSet rest = coords;
    rest.erase(c);
    r_sets[a].assign(space.size(c), true);
    for (std::size_t idx : order) {
      const Hyperplane& h = planes[idx];
      if (h.is_free(c)) continue;
      if (log_measure(space, h, rest) > params.log_delta) {
        is_witness[idx] = true;
        witnesses[a].push_back(idx);
        r_sets[a][h.value(c)] = false;
      }
    }
    const auto r = static_cast<double>(std::count(r_sets[a].begin(), r_sets[a].end(), true));
    if (!case1 && r < eps * (space.size(c) - 1) + 1) case1 = a;
  }

  if (case1) {
    out.case_number = 1;
    out.i = elems[*case1];
    out.verdict = Verdict::Good;
    out.frame = witnesses[*case1];
  } else {
    out.case_number = 2;
    std::vector<std::size_t> kept;
    std::vector<Hyperplane> kept_planes;
    for (std::size_t idx : order) {
      if (!is_witness[idx]) {
        kept.push_back(idx);
        kept_planes.push_back(planes[idx]);
      }
    }
    const LllReport lll =
        lll_inequality_report(space, kept_planes, coords, r_sets, params.lambda, eps);
    out.heavy_sums = lll.sums;
    const std::size_t a = *lll.argmax;
    out.i = elems[a];
    if (params.strict && lll.sums[a] < kEta / 2.0) {
      throw std::logic_error("no heavy coordinate although R_I is covered");
    }
    for (std::size_t idx : kept) {
      const Hyperplane& h = planes[idx];
      if (h.is_fixed(out.i) && (h.fixed_set() & coords).size() >= 2) {
        out.garbage.push_back(idx);
        out.garbage_weight += garbage_term(h, coords);
      }
    }
    if (out.garbage_weight >= space.size(out.i) / params.lambda) {
      out.verdict = Verdict::Bad;
    } else if (params.strict) {
      throw std::logic_error("garbage certificate fails under strict parameters");
    } else {
      out.verdict = Verdict::Neither;
      out.garbage.clear();
      return out;
    }
  }
  out.branches = explore_coordinate(space, planes, coords, out.i, cap);
  return out;
}

// ---------------------------------------------------------------------------

ExplorationTree build_exploration_tree(const CoverSystem& a, const StructureParams& params,
                                       std::uint64_t cap) {
  const std::size_t k = a.space().dim();
  if (k == 0) throw std::invalid_argument("exploration needs at least one coordinate");
  if (a.fixed_set() != CoordSet::all(k)) {
    throw std::invalid_argument("every coordinate must be fixed by some plane");
  }
  if (!is_cover(a, cap) || !is_minimal(a, cap)) {
    throw std::invalid_argument("exploration needs a minimal cover");
  }
  ExplorationTree t;
  t.space = a.space();
  t.planes.assign(a.planes().begin(), a.planes().end());
  t.params = params;
  ExplorationNode root;
  root.I = CoordSet::all(k);
  root.planes.resize(t.planes.size());
  std::iota(root.planes.begin(), root.planes.end(), std::size_t{0});
  t.nodes.push_back(std::move(root));

  std::deque<std::size_t> boundary{0};
  while (!boundary.empty()) {
    const std::size_t u = boundary.front();
    boundary.pop_front();
    if (t.nodes[u].I.size() == 1) {
      ExplorationNode& node = t.nodes[u];
      node.i = node.I.elements().front();
      node.verdict = Verdict::Good;
      node.frame = node.planes;
      continue;
    }
    const std::vector<std::size_t> members = t.nodes[u].planes;
    std::vector<Hyperplane> sub;
    for (std::size_t idx : members) sub.push_back(t.planes[idx]);
    const OneStepResult r = one_step(t.space, sub, t.nodes[u].I, params, cap);
    if (r.verdict == Verdict::Neither) {
      throw NeitherVerdict("vertex exploring coordinate " + std::to_string(r.i) +
                           " is neither good nor bad");
    }
    auto lift = [&](const std::vector<std::size_t>& local) {
      std::vector<std::size_t> global;
      for (std::size_t idx : local) global.push_back(members[idx]);
      std::sort(global.begin(), global.end());
      return global;
    };
    t.nodes[u].i = r.i;
    t.nodes[u].verdict = r.verdict;
    t.nodes[u].case_number = r.case_number;
    t.nodes[u].frame = lift(r.frame);
    t.nodes[u].garbage = lift(r.garbage);
    for (const Branch& b : r.branches) {
      if (b.J.empty()) continue;
      ExplorationNode child;
      child.parent = u;
      child.I = b.J;
      child.planes = lift(b.planes);
      child.s = b.s;
      t.nodes.push_back(std::move(child));
      const std::size_t id = t.nodes.size() - 1;
      t.nodes[u].children.push_back(id);
      boundary.push_back(id);
    }
  }
  return t;
}

Validation validate_exploration_tree(const ExplorationTree& t, std::uint64_t cap) {
  Validation out;
  auto fail = [&](std::size_t u, const std::string& why) {
    out.valid = false;
    out.violation = "vertex " + std::to_string(u) + ": " + why;
    return out;
  };
  const std::size_t k = t.space.dim();
  if (t.nodes.empty()) {
    out.violation = "empty tree";
    return out;
  }
  if (t.nodes[0].I != CoordSet::all(k) || t.nodes[0].parent) return fail(0, "root must carry [k]");
  const double eps = t.params.explore_epsilon();
  for (std::size_t u = 0; u < t.nodes.size(); ++u) {
    const ExplorationNode& node = t.nodes[u];
    if (!node.I.contains(node.i)) return fail(u, "explored coordinate not in I");
    std::vector<Hyperplane> members;
    for (std::size_t idx : node.planes) {
      if (idx >= t.planes.size()) return fail(u, "plane index out of range");
      members.push_back(t.planes[idx]);
    }
    if (const auto why = check_restricted_cover(t.space, members, node.I, cap); !why.empty()) {
      return fail(u, why);
    }
    CoordSet child_union;
    for (std::size_t v : node.children) {
      if (v >= t.nodes.size() || t.nodes[v].parent != u) return fail(u, "broken child link");
      child_union = child_union | t.nodes[v].I;
    }
    CoordSet rest = node.I;
    rest.erase(node.i);
    if (child_union != rest) return fail(u, "children do not partition I \\ {i}");

    if (node.parent) {
      const ExplorationNode& par = t.nodes[*node.parent];
      const std::set<std::size_t> parent_planes(par.planes.begin(), par.planes.end());
      CoordSet allowed = node.I;
      for (std::optional<std::size_t> w = node.parent; w; w = t.nodes[*w].parent) {
        allowed.insert(t.nodes[*w].i);
      }
      if (!node.s || *node.s >= t.space.size(par.i)) return fail(u, "missing anchor value");
      for (std::size_t idx : node.planes) {
        const Hyperplane& h = t.planes[idx];
        if (!parent_planes.count(idx)) return fail(u, "plane not inherited from the parent");
        if (!h.fixed_set().subset_of(allowed)) return fail(u, "plane fixes a foreign coordinate");
        if (h.is_fixed(par.i) && h.value(par.i) != *node.s) {
          return fail(u, "plane leaves the anchor of the parent coordinate");
        }
      }
    }

    const std::set<std::size_t> own(node.planes.begin(), node.planes.end());
    CoordSet others = node.I;
    others.erase(node.i);
    switch (node.verdict) {
      case Verdict::Good: {
        if (static_cast<double>(node.frame.size()) < (1.0 - eps) * (t.space.size(node.i) - 1)) {
          return fail(u, "good vertex with too few frame planes");
        }
        for (std::size_t idx : node.frame) {
          const Hyperplane& h = t.planes[idx];
          if (!own.count(idx)) return fail(u, "frame plane outside A_u");
          if (h.is_free(node.i)) return fail(u, "frame plane misses the explored coordinate");
          if (!(log_measure(t.space, h, others) > t.params.log_delta)) {
            return fail(u, "frame plane of measure at most delta");
          }
        }
        if (node.I.size() == 1) {
          if (node.planes.size() != t.space.size(node.i)) {
            return fail(u, "closed vertex is not a full set of singletons");
          }
        }
        break;
      }
      case Verdict::Bad: {
        double weight = 0.0;
        for (std::size_t idx : node.garbage) {
          const Hyperplane& h = t.planes[idx];
          if (!own.count(idx)) return fail(u, "garbage plane outside A_u");
          if (h.is_free(node.i)) return fail(u, "garbage plane misses the explored coordinate");
          if ((h.fixed_set() & node.I).size() < 2) return fail(u, "garbage plane too thin");
          weight += garbage_term(h, node.I);
        }
        if (weight < t.space.size(node.i) / t.params.lambda) {
          return fail(u, "garbage weight below |S_i| / lambda");
        }
        break;
      }
      default:
        return fail(u, "vertex is neither good nor bad");
    }
  }
  out.valid = true;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> preorder(const ExplorationTree& t) {
  std::vector<std::size_t> out;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    out.push_back(u);
    std::vector<std::size_t> kids = t.nodes[u].children;
    std::stable_sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
      return t.nodes[a].s.value_or(0) < t.nodes[b].s.value_or(0);
    });
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

bool is_ancestor_or_self(const ExplorationTree& t, std::size_t a, std::size_t b) {
  for (std::optional<std::size_t> w = b; w; w = t.nodes[*w].parent) {
    if (*w == a) return true;
  }
  return false;
}

}  // namespace

TreeFrame extract_tree_frame(const ExplorationTree& t) {
  const std::size_t k = t.space.dim();
  const auto order = preorder(t);
  std::vector<std::size_t> rank(t.nodes.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

  TreeFrame f;
  f.beta.assign(k, t.nodes.size());
  for (std::size_t u : order) {
    const std::size_t i = t.nodes[u].i;
    if (f.beta[i] == t.nodes.size()) f.beta[i] = u;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (f.beta[i] == t.nodes.size()) {
      throw std::invalid_argument("coordinate " + std::to_string(i) + " is never explored");
    }
  }
  std::vector<bool> in_t(t.nodes.size(), false);
  f.J.assign(k, CoordSet());
  f.I.assign(k, CoordSet());
  f.anchors.assign(k, std::vector<std::optional<std::uint32_t>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::optional<std::size_t> w = f.beta[i]; w; w = t.nodes[*w].parent) {
      in_t[*w] = true;
      f.J[i].insert(t.nodes[*w].i);
      if (const auto& par = t.nodes[*w].parent) f.anchors[i][t.nodes[*par].i] = t.nodes[*w].s;
    }
    f.I[i] = CoordSet::all(k) - f.J[i];
  }
  for (std::size_t u : order) {
    if (in_t[u]) f.vertices.push_back(u);
  }
  f.pi.resize(k);
  std::iota(f.pi.begin(), f.pi.end(), std::size_t{0});
  std::sort(f.pi.begin(), f.pi.end(),
            [&](std::size_t a, std::size_t b) { return rank[f.beta[a]] < rank[f.beta[b]]; });

  f.layers.assign(k, {});
  f.garbage.assign(k, {});
  for (std::size_t i = 0; i < k; ++i) {
    const ExplorationNode& b = t.nodes[f.beta[i]];
    if (b.verdict == Verdict::Good) {
      std::vector<std::size_t> layer = b.frame;
      std::sort(layer.begin(), layer.end());
      if (layer.size() > t.space.size(i) - 1) layer.resize(t.space.size(i) - 1);
      f.layers[i] = std::move(layer);
    } else if (b.verdict == Verdict::Bad) {
      f.garbage[i] = b.garbage;
      f.bad.insert(i);
    } else {
      throw std::invalid_argument("tree has an unresolved vertex");
    }
  }
  return f;
}

TreeFrameValidation validate_tree_frame(const ExplorationTree& t, const TreeFrame& f) {
  TreeFrameValidation out;
  auto fail = [&](std::string why) {
    out.valid = false;
    out.violation = std::move(why);
    return out;
  };
  const std::size_t k = t.space.dim();
  if (f.beta.size() != k || f.layers.size() != k || f.garbage.size() != k || f.pi.size() != k) {
    return fail("tree-frame has the wrong shape");
  }
  const std::set<std::size_t> in_t(f.vertices.begin(), f.vertices.end());
  // (a) labels along root paths are distinct; (c) edge values lie in the parent's set.
  for (std::size_t u : f.vertices) {
    std::set<std::size_t> labels;
    for (std::optional<std::size_t> w = u; w; w = t.nodes[*w].parent) {
      if (!in_t.count(*w)) return fail("subtree is not closed under parents");
      if (!labels.insert(t.nodes[*w].i).second) return fail("label repeats along a root path");
    }
    if (const auto& par = t.nodes[u].parent) {
      if (!t.nodes[u].s || *t.nodes[u].s >= t.space.size(t.nodes[*par].i)) {
        return fail("edge value outside the parent's set");
      }
    }
  }
  // (b) and (d).
  CoordSet seen;
  for (std::size_t pos = 0; pos < k; ++pos) {
    const std::size_t i = f.pi[pos];
    if (t.nodes[f.beta[i]].i != i) return fail("beta vertex carries the wrong label");
    seen.insert(i);
    if (!f.J[i].subset_of(seen)) return fail("ordering does not dominate J(i)");
  }
  // (i)-(iii).
  for (std::size_t i = 0; i < k; ++i) {
    if (f.layers[i].size() > t.space.size(i) - 1) return fail("layer exceeds |S_i| - 1");
    for (std::size_t idx : f.layers[i]) {
      const Hyperplane& h = t.planes[idx];
      if (h.is_free(i)) return fail("layer plane misses its coordinate");
      if (!(log_measure(t.space, h, f.I[i]) > t.params.log_delta)) {
        return fail("layer plane of measure at most delta on I(i)");
      }
      CoordSet anchored = f.J[i];
      anchored.erase(i);
      for (std::size_t j : anchored.elements()) {
        if (h.is_free(j)) continue;
        if (!f.anchors[i][j] || *f.anchors[i][j] != h.value(j)) {
          return fail("layer plane leaves its edge value");
        }
      }
    }
  }
  // (iv) and the stronger one-sided variant.
  const double big = -t.params.log_delta;
  out.strong_disjointness = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(f.layers[i].begin(), f.layers[i].end(), f.layers[j].begin(),
                            f.layers[j].end(), std::back_inserter(common));
      if (common.empty()) continue;
      const double li = std::log(static_cast<double>(t.space.size(i)));
      const double lj = std::log(static_cast<double>(t.space.size(j)));
      if (std::min(li, lj) >= big) return fail("large layers share a plane");
      if (std::max(li, lj) >= big) out.strong_disjointness = false;
    }
  }
  // Garbage lies on paths, with distinct thicknesses along each path.
  std::map<std::size_t, std::vector<std::size_t>> holders;
  for (std::size_t i : f.bad.elements()) {
    for (std::size_t idx : f.garbage[i]) holders[idx].push_back(i);
  }
  double lhs = 0.0;
  for (const auto& [idx, owners] : holders) {
    const Hyperplane& h = t.planes[idx];
    double contribution = 0.0;
    for (std::size_t x = 0; x < owners.size(); ++x) {
      const std::size_t bi = f.beta[owners[x]];
      contribution += garbage_term(h, t.nodes[bi].I);
      for (std::size_t y = x + 1; y < owners.size(); ++y) {
        const std::size_t bj = f.beta[owners[y]];
        if (!is_ancestor_or_self(t, bi, bj) && !is_ancestor_or_self(t, bj, bi)) {
          return fail("shared garbage plane off a single path");
        }
        if ((h.fixed_set() & t.nodes[bi].I).size() == (h.fixed_set() & t.nodes[bj].I).size()) {
          return fail("shared garbage plane with equal thickness");
        }
      }
    }
    out.max_garbage_contribution = std::max(out.max_garbage_contribution, contribution);
    lhs += contribution;
  }
  (void)lhs;
  if (out.max_garbage_contribution >= 5.0) return fail("garbage plane contributes 5 or more");
  out.garbage_volume = holders.size();
  double bad_mass = 0.0;
  for (std::size_t i : f.bad.elements()) bad_mass += t.space.size(i);
  out.garbage_volume_bound = bad_mass / (5.0 * t.params.lambda);
  if (!f.bad.empty() && static_cast<double>(out.garbage_volume) < out.garbage_volume_bound) {
    return fail("garbage volume below sum |S_i| / (5 lambda)");
  }
  out.valid = true;
  return out;
}

GeneralizedFrame tree_frame_to_generalized_frame(const ExplorationTree& t, const TreeFrame& f) {
  GeneralizedFrame g;
  g.space = t.space;
  g.log_delta = t.params.log_delta;
  for (const auto& layer : f.layers) {
    std::vector<Hyperplane> planes;
    for (std::size_t idx : layer) planes.push_back(t.planes[idx]);
    g.layers.push_back(std::move(planes));
  }
  g.order = f.pi;
  g.free_sets = f.I;
  g.anchors = f.anchors;
  return g;
}

StructureReport analyze(const CoverSystem& a, const StructureParams& params, std::uint64_t cap) {
  StructureReport r;
  r.tree = build_exploration_tree(a, params, cap);
  r.tree_check = validate_exploration_tree(r.tree, cap);
  r.frame = extract_tree_frame(r.tree);
  r.frame_check = validate_tree_frame(r.tree, r.frame);
  r.generalized_check = verify_generalized_frame(tree_frame_to_generalized_frame(r.tree, r.frame));
  for (const auto& layer : r.frame.layers) r.frame_size += layer.size();
  for (std::uint32_t s : a.space().sizes()) r.slack_total += s - 1;
  const double slack = static_cast<double>(r.slack_total);
  r.size_hypothesis = static_cast<double>(a.size()) <= params.C * slack;
  r.frame_bound = static_cast<double>(r.frame_size) >= (1.0 - params.epsilon) * slack;
  return r;
}

// ---------------------------------------------------------------------------

Lemma35Check lemma35_random_check(std::size_t samples, std::uint64_t seed,
                                  std::size_t max_attempts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> param(0.3, 0.95);
  std::uniform_real_distribution<double> log_size(std::log(2.0), std::log(1024.0));
  std::uniform_int_distribution<std::size_t> dims(2, 16);
  std::bernoulli_distribution fix(0.8);
  Lemma35Check out;
  while (out.samples < samples && out.attempts < max_attempts) {
    ++out.attempts;
    const double lambda = param(rng);
    const double eps = param(rng);
    const std::size_t k = dims(rng);
    std::vector<std::uint32_t> sizes(k);
    for (auto& s : sizes) {
      s = std::clamp<std::uint32_t>(static_cast<std::uint32_t>(std::lround(std::exp(log_size(rng)))),
                                    2, 1024);
    }
    const ProductSpace space(sizes);
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
    Hyperplane h = Hyperplane::whole(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i || fix(rng)) {
        h.set(j, std::uniform_int_distribution<std::uint32_t>(0, sizes[j] - 1)(rng));
      }
    }
    CoordSet rest = CoordSet::all(k);
    rest.erase(i);
    if (log_measure(space, h, rest) > exploration_log_delta_bound(lambda, eps)) continue;
    std::vector<ValueSubset> r_sets(k);
    for (std::size_t j = 0; j < k; ++j) {
      const auto lo = static_cast<std::uint32_t>(std::ceil(eps * (sizes[j] - 1) + 1));
      const std::uint32_t m =
          std::uniform_int_distribution<std::uint32_t>(std::min(lo, sizes[j]), sizes[j])(rng);
      std::vector<std::uint32_t> values(sizes[j]);
      std::iota(values.begin(), values.end(), 0U);
      std::shuffle(values.begin(), values.end(), rng);
      r_sets[j].assign(sizes[j], false);
      for (std::uint32_t x = 0; x < m; ++x) r_sets[j][values[x]] = true;
    }
    const std::vector<Hyperplane> one{h};
    const LllReport rep = lll_inequality_report(space, one, CoordSet::all(k), r_sets, lambda, eps);
    if (rep.lemma35_hypotheses == 0) continue;
    ++out.samples;
    if (rep.lemma35_failures > 0) ++out.failures;
  }
  return out;
}

}  // namespace coversys
