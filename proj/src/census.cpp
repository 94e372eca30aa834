#include "coversys/census.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "coversys/io.hpp"

namespace coversys {

namespace {

constexpr std::uint64_t kMaxMaskLcm = 64;

std::uint64_t full_mask(std::uint64_t n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::uint64_t progression_mask(std::uint64_t a, std::uint64_t d, std::uint64_t n) {
  std::uint64_t m = 0;
  for (std::uint64_t x = a; x < n; x += d) m |= std::uint64_t{1} << x;
  return m;
}

std::vector<std::uint64_t> divisors_above_one(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

void collect_lcms(const std::vector<std::uint64_t>& primes, std::size_t k, std::uint64_t budget,
                  FactoredModulus::FactorMap& cur, std::vector<FactoredModulus>& out) {
  if (k == primes.size()) {
    out.emplace_back(cur);
    return;
  }
  const std::uint64_t p = primes[k];
  collect_lcms(primes, k + 1, budget, cur, out);
  for (std::uint32_t g = 1; g * (p - 1) <= budget; ++g) {
    cur[p] = g;
    collect_lcms(primes, k + 1, budget - g * (p - 1), cur, out);
  }
  cur.erase(p);
}

class CoverSearch {
 public:
  CoverSearch(const ModuliCandidate& c, bool keep, CensusRecord& out)
      : c_(c), keep_(keep), out_(out), n_(c.lcm.value_or_throw()), full_(full_mask(n_)) {
    chosen_.resize(c.moduli.size());
    masks_.resize(c.moduli.size());
    reach_.assign(c.moduli.size() + 1, 0);
    for (std::size_t j = c.moduli.size(); j-- > 0;) reach_[j] = reach_[j + 1] + n_ / c.moduli[j];
  }

  void run() { place(0, 0); }

 private:
  bool all_private(std::size_t placed) const {
    for (std::size_t x = 0; x < placed; ++x) {
      std::uint64_t others = 0;
      for (std::size_t y = 0; y < placed; ++y) {
        if (y != x) others |= masks_[y];
      }
      if ((masks_[x] & ~others) == 0) return false;
    }
    return true;
  }

  void place(std::size_t pos, std::uint64_t covered) {
    const auto& moduli = c_.moduli;
    if (pos == moduli.size()) {
      if (covered != full_) return;
      ++count_;
      if (keep_) {
        CensusSystem sys;
        for (std::size_t j = 0; j < pos; ++j) {
          sys.emplace_back(chosen_[j], FactoredModulus::from_integer(moduli[j]));
        }
        out_.systems.push_back(std::move(sys));
      }
      return;
    }
    if (static_cast<std::uint64_t>(std::popcount(full_ & ~covered)) > reach_[pos]) return;
    const std::uint64_t d = moduli[pos];
    const std::uint64_t start = (pos > 0 && moduli[pos - 1] == d) ? chosen_[pos - 1] + 1 : 0;
    for (std::uint64_t a = start; a < d; ++a) {
      chosen_[pos] = a;
      masks_[pos] = progression_mask(a, d, n_);
      if ((masks_[pos] & ~covered) == 0) continue;
      if (!all_private(pos + 1)) continue;
      place(pos + 1, covered | masks_[pos]);
    }
  }

 public:
  std::uint64_t count_ = 0;

 private:
  const ModuliCandidate& c_;
  bool keep_;
  CensusRecord& out_;
  std::uint64_t n_;
  std::uint64_t full_;
  std::vector<std::uint64_t> chosen_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> reach_;
};

std::string candidate_key(const ModuliCandidate& c) {
  std::string key = c.lcm.to_string() + "|";
  for (std::size_t j = 0; j < c.moduli.size(); ++j) {
    if (j) key += ",";
    key += std::to_string(c.moduli[j]);
  }
  return key;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

void check_options(const CensusOptions& opt) {
  if (opt.n == 0) throw std::invalid_argument("census size must be positive");
  if (opt.n > opt.cap) {
    throw CapacityError("census size " + std::to_string(opt.n) + " exceeds the cap " +
                        std::to_string(opt.cap));
  }
  if (opt.shards == 0) throw std::invalid_argument("need at least one shard");
}

std::string shard_file_name(std::uint32_t s) {
  std::ostringstream name;
  name << "shard-" << std::setw(3) << std::setfill('0') << s << ".jsonl";
  return name.str();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<FactoredModulus> candidate_lcms(std::uint32_t n) {
  if (n == 0) return {};
  std::vector<FactoredModulus> out;
  FactoredModulus::FactorMap cur;
  collect_lcms(primes_up_to(n), 0, n - 1, cur, out);
  std::sort(out.begin(), out.end(), [](const FactoredModulus& a, const FactoredModulus& b) {
    return a.value_or_throw() < b.value_or_throw();
  });
  return out;
}

std::vector<ModuliCandidate> moduli_candidates(std::uint32_t n, bool distinct_moduli) {
  std::vector<ModuliCandidate> out;
  if (n == 1) {
    out.push_back({FactoredModulus(), {1}});
    return out;
  }
  for (const FactoredModulus& lcm : candidate_lcms(n)) {
    const std::uint64_t big = lcm.value_or_throw();
    if (big == 1) continue;
    if (big > kMaxMaskLcm) throw CapacityError("candidate modulus too large for the census");
    const auto divs = divisors_above_one(big);
    std::vector<std::uint64_t> cur;
    // Density sum(N/d) >= N, exact lcm, at most d copies of modulus d.
    auto rec = [&](auto&& self, std::size_t from, std::uint64_t density, std::uint64_t l) -> void {
      if (cur.size() == n) {
        if (density >= big && l == big) out.push_back({lcm, cur});
        return;
      }
      const std::size_t left = n - cur.size();
      for (std::size_t k = from; k < divs.size(); ++k) {
        const std::uint64_t d = divs[k];
        if (density + left * (big / d) < big) break;
        const auto copies = static_cast<std::uint64_t>(std::count(cur.begin(), cur.end(), d));
        if (copies >= d) continue;
        cur.push_back(d);
        self(self, distinct_moduli ? k + 1 : k, density + big / d, std::lcm(l, d));
        cur.pop_back();
      }
    };
    rec(rec, 0, 0, 1);
  }
  return out;
}

std::uint32_t shard_of(const ModuliCandidate& c, std::uint32_t shards) {
  return static_cast<std::uint32_t>(fnv1a(candidate_key(c)) % shards);
}

void enumerate_candidate(const ModuliCandidate& c, bool keep_systems, CensusRecord& out) {
  if (c.moduli.size() == 1 && c.moduli[0] == 1) {
    out.by_lcm[c.lcm] += 1;
    out.total += 1;
    out.contains_Z = true;
    if (keep_systems) out.systems.push_back({Progression(0, FactoredModulus())});
    return;
  }
  CoverSearch search(c, keep_systems, out);
  search.run();
  if (search.count_ > 0) {
    out.by_lcm[c.lcm] += search.count_;
    out.total += search.count_;
  }
}

CensusRecord enumerate_shard(const CensusOptions& opt, std::uint32_t shard) {
  check_options(opt);
  CensusRecord out;
  out.n = opt.n;
  for (const ModuliCandidate& c : moduli_candidates(opt.n, opt.distinct_moduli)) {
    if (shard_of(c, opt.shards) == shard) enumerate_candidate(c, opt.keep_systems, out);
  }
  std::sort(out.systems.begin(), out.systems.end());
  return out;
}

CensusRecord merge(std::span<const CensusRecord> parts) {
  CensusRecord out;
  for (const CensusRecord& r : parts) {
    if (out.n == 0) out.n = r.n;
    if (r.n != 0 && r.n != out.n) throw std::invalid_argument("merging records of different n");
    for (const auto& [lcm, count] : r.by_lcm) out.by_lcm[lcm] += count;
    out.total += r.total;
    out.contains_Z = out.contains_Z || r.contains_Z;
    out.systems.insert(out.systems.end(), r.systems.begin(), r.systems.end());
  }
  std::sort(out.systems.begin(), out.systems.end());
  return out;
}

CensusRecord shard_and_merge(const CensusOptions& opt) {
  check_options(opt);
  std::vector<std::future<CensusRecord>> jobs;
  for (std::uint32_t s = 0; s < opt.shards; ++s) {
    jobs.push_back(std::async(std::launch::async, [opt, s] { return enumerate_shard(opt, s); }));
  }
  std::vector<CensusRecord> parts;
  for (auto& j : jobs) parts.push_back(j.get());
  CensusRecord out = merge(parts);
  out.n = opt.n;
  return out;
}

CensusRecord enumerate_minimal_covers_Z(std::uint32_t n, std::uint32_t cap, bool keep_systems) {
  CensusOptions opt;
  opt.n = n;
  opt.cap = cap;
  opt.keep_systems = keep_systems;
  return enumerate_shard(opt, 0);
}

// ---------------------------------------------------------------------------

std::vector<CoverSystem> enumerate_minimal_hyperplane_covers(const ProductSpace& space,
                                                             bool require_full_support,
                                                             std::size_t max_size) {
  const std::size_t k = space.dim();
  const auto points = space.point_count();
  if (k > kHyperplaneCensusMaxCoords || !points || *points > kHyperplaneCensusMaxPoints) {
    throw CapacityError("space too large for hyperplane cover enumeration");
  }
  const auto strides = space.strides();
  std::vector<Hyperplane> planes;
  std::vector<std::uint32_t> c(k, 0);
  while (true) {
    Hyperplane h(c);
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i] == space.size(i)) h.set_free(i);
    }
    planes.push_back(h);
    std::size_t j = 0;
    for (; j < k; ++j) {
      if (++c[j] <= space.size(j)) break;
      c[j] = 0;
    }
    if (j == k) break;
  }
  std::sort(planes.begin(), planes.end());
  std::vector<std::uint64_t> masks;
  for (const Hyperplane& h : planes) {
    std::uint64_t m = 0;
    for_each_point(space, strides, h, [&](std::uint64_t x) { m |= std::uint64_t{1} << x; });
    masks.push_back(m);
  }
  const std::uint64_t full = full_mask(*points);

  std::vector<CoverSystem> out;
  std::vector<std::size_t> chosen;
  std::vector<bool> excluded(planes.size(), false);
  auto all_private = [&] {
    for (std::size_t x = 0; x < chosen.size(); ++x) {
      std::uint64_t others = 0;
      for (std::size_t y = 0; y < chosen.size(); ++y) {
        if (y != x) others |= masks[chosen[y]];
      }
      if ((masks[chosen[x]] & ~others) == 0) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::uint64_t covered) -> void {
    if (covered == full) {
      std::vector<Hyperplane> hs;
      for (std::size_t idx : chosen) hs.push_back(planes[idx]);
      CoverSystem sys(space, std::move(hs));
      if (!require_full_support || sys.fixed_set() == CoordSet::all(k)) {
        out.push_back(std::move(sys));
      }
      return;
    }
    if (chosen.size() >= max_size) return;
    const auto x = static_cast<std::uint64_t>(std::countr_one(covered));
    std::vector<std::size_t> tried;
    for (std::size_t idx = 0; idx < planes.size(); ++idx) {
      if (excluded[idx] || !((masks[idx] >> x) & 1U)) continue;
      chosen.push_back(idx);
      if (all_private()) self(self, covered | masks[idx]);
      chosen.pop_back();
      excluded[idx] = true;
      tried.push_back(idx);
    }
    for (std::size_t idx : tried) excluded[idx] = false;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const CoverSystem& a, const CoverSystem& b) {
    return std::lexicographical_compare(a.planes().begin(), a.planes().end(), b.planes().begin(),
                                        b.planes().end());
  });
  return out;
}

// ---------------------------------------------------------------------------

std::string fnv1a_hex(std::string_view bytes) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
  return s.str();
}

CensusRecord write_census(const CensusOptions& opt, std::span<const CensusRecord> shards,
                          const std::filesystem::path& dir) {
  check_options(opt);
  if (shards.size() != opt.shards) throw std::invalid_argument("one record per shard");
  std::filesystem::create_directories(dir);
  Json manifest;
  manifest["n"] = opt.n;
  manifest["cap"] = opt.cap;
  manifest["keep_systems"] = opt.keep_systems;
  manifest["distinct_moduli"] = opt.distinct_moduli;
  manifest["shards"] = Json::array();
  for (std::uint32_t s = 0; s < opt.shards; ++s) {
    const CensusRecord& r = shards[s];
    std::string body;
    for (const auto& [lcm, count] : r.by_lcm) {
      Json line;
      line["kind"] = "count";
      line["N"] = to_json(lcm);
      line["count"] = count;
      body += line.dump() + "\n";
    }
    for (const CensusSystem& sys : r.systems) {
      Json line;
      line["kind"] = "system";
      line["progressions"] = Json::array();
      for (const Progression& p : sys) line["progressions"].push_back(to_json(p));
      body += line.dump() + "\n";
    }
    const std::string file = shard_file_name(s);
    std::ofstream(dir / file, std::ios::binary | std::ios::trunc) << body;
    Json entry;
    entry["shard"] = s;
    entry["file"] = file;
    entry["checksum"] = fnv1a_hex(read_file(dir / file));
    entry["total"] = r.total;
    entry["contains_Z"] = r.contains_Z;
    manifest["shards"].push_back(entry);
  }
  CensusRecord merged = merge(shards);
  merged.n = opt.n;
  manifest["total"] = merged.total;
  manifest["contains_Z"] = merged.contains_Z;
  std::ofstream(dir / "census.json") << manifest.dump(2) << "\n";
  return merged;
}

CensusRecord read_census(const std::filesystem::path& dir) {
  Json manifest;
  {
    std::ifstream in(dir / "census.json");
    if (!in) throw InputError("missing manifest census.json in " + dir.string());
    manifest = parse_json(in, (dir / "census.json").string());
  }
  std::vector<CensusRecord> parts;
  const auto n = manifest.at("n").get<std::uint32_t>();
  for (const Json& entry : manifest.at("shards")) {
    const auto file = entry.at("file").get<std::string>();
    const std::string body = read_file(dir / file);
    if (fnv1a_hex(body) != entry.at("checksum").get<std::string>()) {
      throw InputError("checksum mismatch in " + file);
    }
    CensusRecord r;
    r.n = n;
    r.contains_Z = entry.value("contains_Z", false);
    std::istringstream lines(body);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (line.empty()) continue;
      const std::string where = file + ":" + std::to_string(line_no);
      Json j;
      try {
        j = Json::parse(line);
      } catch (const Json::parse_error& e) {
        throw InputError(where + ": " + e.what());
      }
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "count") {
        const auto count = j.at("count").get<std::uint64_t>();
        r.by_lcm[factored_from_json(j.at("N"), where)] += count;
        r.total += count;
      } else if (kind == "system") {
        CensusSystem sys;
        for (const Json& p : j.at("progressions")) sys.push_back(progression_from_json(p, where));
        r.systems.push_back(std::move(sys));
      } else {
        throw InputError(where + ": unknown record kind " + kind);
      }
    }
    if (r.total != entry.at("total").get<std::uint64_t>()) {
      throw InputError("shard total disagrees with manifest in " + file);
    }
    parts.push_back(std::move(r));
  }
  CensusRecord out = merge(parts);
  out.n = n;
  return out;
}

}  // namespace coversys
