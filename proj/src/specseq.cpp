#include "octic/specseq.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "octic/errors.hpp"

namespace octic {

void StrataData::validate() const {
  if (levels.empty() || levels[0].empty()) throw DataError("strata need at least one component in Z^(1)");
  for (std::size_t m = 0; m < levels.size(); ++m) {
    for (const auto& t : levels[m]) {
      if (t.dims.size() % 2 == 0) throw DataError("Betti vector of " + t.label + " must have odd length 2d + 1");
      for (int v : t.dims)
        if (v < 0) throw DataError("negative Betti number for " + t.label);
      if (t.dims[0] < 1) throw DataError("b_0 of " + t.label + " must be at least 1");
      const int d = t.dimension();
      if (t.smooth_proper)
        for (int i = 0; i <= 2 * d; ++i)
          if (t.b(i) != t.b(2 * d - i)) throw DataError("Poincare symmetry fails for " + t.label);
      const int expected = levels[0][0].dimension() - static_cast<int>(m);
      if (d != expected)
        throw DataError(t.label + " has dimension " + std::to_string(d) + ", expected " + std::to_string(expected));
    }
  }
}

int StrataData::b(int level, int i) const {
  if (level < 1 || level > static_cast<int>(levels.size())) return 0;
  int s = 0;
  for (const auto& t : levels[static_cast<std::size_t>(level - 1)]) s += t.b(i);
  return s;
}

int StrataData::level_dimension(int level) const {
  if (level < 1 || level > static_cast<int>(levels.size()) || levels[static_cast<std::size_t>(level - 1)].empty()) return -1;
  return levels[static_cast<std::size_t>(level - 1)][0].dimension();
}

StrataData StrataData::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("strata JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("strata JSON must be an object");
  StrataData s;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = it.key();
    if (key.size() < 2 || key[0] != 'Z' || key.find_first_not_of("0123456789", 1) != std::string::npos)
      throw DataError("strata JSON key " + key + " is not of the form Z<m>");
    const int m = std::stoi(key.substr(1));
    if (m < 1 || m > 16) throw DataError("stratum level out of range: " + key);
    if (static_cast<int>(s.levels.size()) < m) s.levels.resize(static_cast<std::size_t>(m));
    if (!it.value().is_object()) throw DataError(key + " must map component labels to Betti vectors");
    for (auto c = it.value().begin(); c != it.value().end(); ++c) {
      BettiTable t;
      t.label = c.key();
      try {
        t.dims = c.value().get<std::vector<int>>();
      } catch (const nlohmann::json::exception&) {
        throw DataError("Betti vector of " + t.label + " must be a list of integers");
      }
      s.levels[static_cast<std::size_t>(m - 1)].push_back(t);
    }
  }
  s.validate();
  return s;
}

std::string StrataData::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t m = 0; m < levels.size(); ++m) {
    nlohmann::json level = nlohmann::json::object();
    for (const auto& t : levels[m]) level[t.label] = t.dims;
    j["Z" + std::to_string(m + 1)] = level;
  }
  return j.dump();
}

StrataData two_component_instance(int b3R, int b3Q, int b1C, int b2R, int b2Q, int b2C) {
  StrataData s;
  s.levels.push_back({{"R", {1, 0, b2R, b3R, b2R, 0, 1}, true}, {"Q", {1, 0, b2Q, b3Q, b2Q, 0, 1}, true}});
  s.levels.push_back({{"C", {1, b1C, b2C, b1C, 1}, true}});
  s.validate();
  return s;
}

int E1Page::dim(int r, int s) const {
  auto it = entries.find({r, s});
  return it == entries.end() ? 0 : it->second.dim;
}

std::vector<int> E1Page::row(int s) const {
  return {dim(-1, s), dim(0, s), dim(1, s)};
}

std::vector<Differential> E1Page::differentials() const {
  std::vector<Differential> out;
  for (const auto& [pos, e] : entries) {
    const int t = dim(pos.first + 1, pos.second);
    if (e.dim > 0 && t > 0) out.push_back({pos, e.dim, t});
  }
  return out;
}

std::string E1Page::grid() const {
  if (entries.empty()) return "";
  int rmin = 0, rmax = 0, smax = 0;
  for (const auto& [pos, e] : entries) {
    rmin = std::min(rmin, pos.first);
    rmax = std::max(rmax, pos.first);
    smax = std::max(smax, pos.second);
  }
  std::ostringstream out;
  for (int s = smax; s >= 0; --s) {
    out << "s=" << s << ":";
    for (int r = rmin; r <= rmax; ++r) out << " " << dim(r, s);
    out << "\n";
  }
  return out.str();
}

E1Page build_E1(const StrataData& strata, int h_max) {
  strata.validate();
  E1Page page;
  page.h_max = h_max;
  const int levels = static_cast<int>(strata.levels.size());
  const int top = 2 * strata.level_dimension(1) + 2 * levels;
  // E_1^{-k, h+k} = sum over j >= max(-k, 0) of H^{h-2j-k}(Z^(2j+k+1))(-j-k)
  for (int h = 0; h <= top; ++h)
    for (int k = -levels; k <= levels; ++k)
      for (int j = std::max(-k, 0); 2 * j + k + 1 <= levels; ++j) {
        const int m = 2 * j + k + 1;
        if (m < 1) continue;
        const int i = h - 2 * j - k;
        const int d = strata.b(m, i);
        if (d == 0) continue;
        auto& e = page.entries[{-k, h + k}];
        e.dim += d;
        for (const auto& t : strata.levels[static_cast<std::size_t>(m - 1)])
          if (t.b(i))
            e.pieces.push_back("H^" + std::to_string(i) + "(" + t.label + ")(" + std::to_string(-j - k) + ")");
      }
  return page;
}

int e2_entry(const E1Page& page, const RankAssignment& ranks, int r, int s) {
  auto rank = [&](int rr, int ss) {
    auto it = ranks.find({rr, ss});
    return it == ranks.end() ? 0 : it->second;
  };
  return page.dim(r, s) - rank(r, s) - rank(r - 1, s);
}

std::vector<int> abutment_dims(const E1Page& page, const RankAssignment& ranks) {
  for (const auto& [pos, rk] : ranks) {
    const int bound = std::min(page.dim(pos.first, pos.second), page.dim(pos.first + 1, pos.second));
    if (rk < 0 || rk > bound)
      throw DataError("rank " + std::to_string(rk) + " out of range at (" + std::to_string(pos.first) + ", " +
                      std::to_string(pos.second) + ")");
  }
  std::vector<int> out(static_cast<std::size_t>(page.h_max) + 1, 0);
  for (const auto& [pos, e] : page.entries) {
    const int v = e2_entry(page, ranks, pos.first, pos.second);
    if (v < 0)
      throw DataError("inconsistent ranks: negative E_2 entry at (" + std::to_string(pos.first) + ", " +
                      std::to_string(pos.second) + ")");
    const int h = pos.first + pos.second;
    if (h >= 0 && h <= page.h_max) out[static_cast<std::size_t>(h)] += v;
  }
  return out;
}

std::vector<RankAssignment> consistency_search(const E1Page& page, const std::map<int, int>& target) {
  const auto diffs = page.differentials();
  double space = 1;
  for (const auto& d : diffs) space *= d.max_rank() + 1;
  if (space > 1e7) throw TaskError("rank search space too large");
  std::vector<RankAssignment> out;
  RankAssignment cur;
  std::vector<int> idx(diffs.size(), 0);
  while (true) {
    cur.clear();
    for (std::size_t i = 0; i < diffs.size(); ++i) cur[diffs[i].source] = idx[i];
    bool ok = true;
    for (const auto& [pos, e] : page.entries)
      if (e2_entry(page, cur, pos.first, pos.second) < 0) ok = false;
    if (ok) {
      const auto dims = abutment_dims(page, cur);
      for (const auto& [h, v] : target)
        if (h < 0 || h > page.h_max || dims[static_cast<std::size_t>(h)] != v) ok = false;
    }
    if (ok) out.push_back(cur);
    std::size_t i = 0;
    while (i < diffs.size() && ++idx[i] > diffs[i].max_rank()) idx[i++] = 0;
    if (i == diffs.size()) break;
  }
  return out;
}

}  // namespace octic
