#include "coversys/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "coversys/census.hpp"
#include "coversys/cover.hpp"
#include "coversys/frames.hpp"
#include "coversys/io.hpp"
#include "coversys/structure.hpp"

namespace coversys::cli {

namespace {

CoverSystem load(const std::string& file, std::istream& in) {
  if (file == "-") return read_system(in, "<stdin>");
  std::ifstream f(file);
  if (!f) throw InputError("cannot open " + file);
  return read_system(f, file);
}

Json witness_json(const CoverSystem& c, const Point& x) {
  if (c.is_integer_view()) return point_to_integer(c, x);
  return point_json(x);
}

void emit(std::ostream& out, const Json& j) { out << dump_json(j) << "\n"; }

struct StructureFlags {
  double C = 4.0;
  double eps = 0.5;
  bool free = false;
  double delta = 0.0;
  double lambda = 0.0;

  StructureParams params() const {
    if (!free) return StructureParams::strict_params(C, eps);
    if (!(delta > 0) || !(lambda > 0)) {
      throw InputError("--free needs positive --delta and --lambda");
    }
    return StructureParams::free_params(eps, lambda, delta, C);
  }
};

void add_structure_flags(CLI::App* sub, StructureFlags& f) {
  sub->add_option("--C", f.C, "Size constant C in |A| <= C sum(|S_i|-1)");
  sub->add_option("--eps", f.eps, "Epsilon");
  sub->add_flag("--free", f.free, "Use --delta and --lambda instead of the strict choice");
  sub->add_option("--delta", f.delta, "Delta in free mode");
  sub->add_option("--lambda", f.lambda, "Lambda in free mode");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        std::istream& in) {
  CLI::App app("Exact tools for covering systems and hyperplane covers", "coversys");
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Report wall time on stderr");

  std::string file;
  std::uint64_t cap = kDefaultSieveCap;
  auto* verify = app.add_subcommand("verify", "Check that a system covers");
  auto* minimal = app.add_subcommand("minimal", "Check minimality and report witnesses");
  auto* simpson = app.add_subcommand("simpson", "Compare |A| with the Simpson bound");
  for (auto* sub : {verify, minimal, simpson}) {
    sub->add_option("file", file, "System file, or - for stdin")->required();
    sub->add_option("--cap", cap, "Maximum number of sieved points");
  }

  std::string modulus;
  bool enumerate_all = false;
  std::string index = "0";
  std::uint64_t limit = 1'000'000;
  std::optional<double> delta_opt;
  auto* frame_gen = app.add_subcommand("frame-gen", "Generate frame-family systems");
  frame_gen->add_option("--N", modulus, "Modulus, e.g. 2^2*3")->required();
  frame_gen->add_flag("--enumerate", enumerate_all, "Emit every system of the family");
  frame_gen->add_option("--index", index, "Mixed-radix index of a single system");
  frame_gen->add_option("--limit", limit, "Maximum family size in enumerate mode");

  auto* qvalue = app.add_subcommand("qvalue", "Q(N,<) for the canonical ordering");
  qvalue->add_option("--N", modulus, "Modulus, e.g. 2^2*3")->required();
  qvalue->add_option("--delta", delta_opt, "Also report Q_delta, G and G_delta");

  double x_min = 50.0;
  double x_max = 2000.0;
  double step = 10.0;
  bool csv = false;
  auto* asym = app.add_subcommand("asymptotics", "Table of r(x)");
  asym->add_option("--x-min", x_min);
  asym->add_option("--x-max", x_max);
  asym->add_option("--step", step);
  asym->add_flag("--csv", csv, "CSV instead of JSON");

  StructureFlags sflags;
  auto* explore = app.add_subcommand("explore", "Build and validate the exploration tree");
  auto* extract = app.add_subcommand("extract", "Extract and certify the generalized frame");
  for (auto* sub : {explore, extract}) {
    sub->add_option("file", file, "System file, or - for stdin")->required();
    sub->add_option("--cap", cap, "Maximum number of sieved points");
    add_structure_flags(sub, sflags);
  }

  CensusOptions copt;
  std::string out_dir;
  auto* enumerate = app.add_subcommand("enumerate", "Census of minimal covering systems");
  enumerate->add_option("--n", copt.n, "System size")->required();
  enumerate->add_option("--cap", copt.cap, "Largest admissible n");
  enumerate->add_flag("--keep-systems", copt.keep_systems, "Store every system");
  enumerate->add_flag("--distinct-moduli", copt.distinct_moduli, "Distinct moduli only");
  enumerate->add_option("--shards", copt.shards, "Number of parallel shards")
      ->check(CLI::PositiveNumber);
  enumerate->add_option("--out", out_dir, "Directory for shard files and census.json");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kHolds;
  try {
    if (verify->parsed()) {
      const CoverSystem c = load(file, in);
      const auto hole = find_uncovered(c, cap);
      Json j;
      j["covers"] = !hole;
      if (hole) j["witness"] = witness_json(c, *hole);
      emit(out, j);
      code = hole ? kFails : kHolds;
    } else if (minimal->parsed()) {
      const CoverSystem c = load(file, in);
      Json j;
      const auto hole = find_uncovered(c, cap);
      j["covers"] = !hole;
      if (hole) {
        j["minimal"] = false;
        j["witness"] = witness_json(c, *hole);
        code = kFails;
      } else {
        const MinimalityReport r = minimality(c, cap);
        j["minimal"] = r.minimal;
        j["witnesses"] = Json::array();
        for (const auto& w : r.witnesses) {
          j["witnesses"].push_back(w ? witness_json(c, *w) : Json(nullptr));
        }
        if (!r.minimal) j["subcover"] = to_json(minimal_subcover(c, cap));
        code = r.minimal ? kHolds : kFails;
      }
      emit(out, j);
    } else if (simpson->parsed()) {
      const CoverSystem c = load(file, in);
      const SimpsonReport r = simpson_check(c);
      Json j;
      j["bound"] = r.bound;
      j["size"] = r.size;
      j["tight"] = r.tight;
      emit(out, j);
      code = r.holds() ? kHolds : kFails;
    } else if (frame_gen->parsed()) {
      const FactoredModulus n = FactoredModulus::parse(modulus);
      const FrameFamily family(canonical_ordering(n));
      Json j;
      j["N"] = n.to_string();
      j["family_size"] = family.size().str();
      if (enumerate_all) {
        j["systems"] = Json::array();
        for (const CoverSystem& c : family.enumerate(limit)) {
          j["systems"].push_back(to_json(c));
        }
      } else {
        BigInt idx;
        try {
          idx = BigInt(index);
        } catch (const std::exception&) {
          throw InputError("--index must be a non-negative integer");
        }
        j["system"] = to_json(family.system(idx));
      }
      emit(out, j);
    } else if (qvalue->parsed()) {
      const FactoredModulus n = FactoredModulus::parse(modulus);
      const ArithOrdering ord = canonical_ordering(n);
      Json j;
      j["N"] = n.to_string();
      j["Q"] = q_value(ord);
      if (delta_opt) {
        j["Q_delta"] = q_delta(ord, *delta_opt);
        const GValues g = g_values(n, *delta_opt);
        j["G"] = g.g;
        j["G_delta"] = g.g_delta;
      }
      emit(out, j);
    } else if (asym->parsed()) {
      if (!(step > 0) || x_max < x_min) throw InputError("need step > 0 and x-max >= x-min");
      const auto rows = asymptotic_table(x_min, x_max, step);
      if (csv) {
        out << "x,n,pairs,Q,ratio\n";
        for (const auto& r : rows) {
          out << format_double(r.x) << "," << r.n << "," << r.pairs << "," << format_double(r.q)
              << "," << format_double(r.ratio) << "\n";
        }
      } else {
        Json j = Json::array();
        for (const auto& r : rows) {
          j.push_back({{"x", r.x}, {"n", r.n}, {"pairs", r.pairs}, {"Q", r.q}, {"ratio", r.ratio}});
        }
        emit(out, j);
      }
    } else if (explore->parsed()) {
      const CoverSystem c = load(file, in);
      const StructureParams params = sflags.params();
      try {
        const ExplorationTree t = build_exploration_tree(c, params, cap);
        const Validation v = validate_exploration_tree(t, cap);
        Json j = to_json(t);
        j["valid"] = v.valid;
        if (!v.valid) j["violation"] = v.violation;
        emit(out, j);
        code = v.valid ? kHolds : kFails;
      } catch (const NeitherVerdict& e) {
        emit(out, Json{{"valid", false}, {"violation", e.what()}});
        code = kFails;
      }
    } else if (extract->parsed()) {
      const CoverSystem c = load(file, in);
      const StructureParams params = sflags.params();
      try {
        const StructureReport r = analyze(c, params, cap);
        Json j;
        j["frame"] = to_json(r.frame);
        j["layers"] = Json::array();
        for (const auto& layer : r.frame.layers) {
          Json l = Json::array();
          for (std::size_t idx : layer) l.push_back(to_json(r.tree.planes[idx]));
          j["layers"].push_back(l);
        }
        j["generalized_frame"] = to_json(r.generalized_check);
        const bool ok = r.tree_check.valid && r.frame_check.valid && r.generalized_check.valid &&
                        (!r.size_hypothesis || r.frame_bound);
        Json cert;
        cert["tree_valid"] = r.tree_check.valid;
        cert["tree_frame_valid"] = r.frame_check.valid;
        if (!r.frame_check.valid) cert["tree_frame_violation"] = r.frame_check.violation;
        cert["generalized_frame_valid"] = r.generalized_check.valid;
        cert["frame_size"] = r.frame_size;
        cert["slack"] = r.slack_total;
        cert["size_hypothesis"] = r.size_hypothesis;
        cert["frame_bound"] = r.frame_bound;
        cert["pass"] = ok;
        j["certificate"] = cert;
        emit(out, j);
        code = ok ? kHolds : kFails;
      } catch (const NeitherVerdict& e) {
        emit(out, Json{{"certificate", {{"pass", false}, {"violation", e.what()}}}});
        code = kFails;
      }
    } else if (enumerate->parsed()) {
      std::vector<CensusRecord> parts;
      CensusRecord merged;
      if (out_dir.empty()) {
        merged = shard_and_merge(copt);
      } else {
        for (std::uint32_t s = 0; s < copt.shards; ++s) parts.push_back(enumerate_shard(copt, s));
        merged = write_census(copt, parts, out_dir);
      }
      emit(out, to_json(merged));
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  }
  if (timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    err << "time: " << format_double(dt.count()) << " s\n";
  }
  return code;
}

}  // namespace coversys::cli
