#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace octic {

// Betti numbers (b_0, ..., b_{2d}) of a stratum of dimension d.
struct BettiTable {
  std::string label;
  std::vector<int> dims;
  bool smooth_proper = true;  // enforce b_i = b_{2d-i}

  int dimension() const { return (static_cast<int>(dims.size()) - 1) / 2; }
  int b(int i) const { return i < 0 || i >= static_cast<int>(dims.size()) ? 0 : dims[static_cast<std::size_t>(i)]; }
};

// levels[m - 1] lists the components of Z^(m) (disjoint union); higher
// levels are empty.
struct StrataData {
  std::vector<std::vector<BettiTable>> levels;

  // DataError on inconsistent dimensions or symmetry.
  void validate() const;
  int b(int level, int i) const;  // summed over components of Z^(level)
  int level_dimension(int level) const;

  // {"Z1": {"R": [..], "Q": [..]}, "Z2": {"C": [..]}}
  static StrataData from_json(const std::string& text);
  std::string to_json() const;
};

// Two threefolds R, Q with b_3 = 2 meeting in a surface C.
StrataData two_component_instance(int b3R = 2, int b3Q = 2, int b1C = 0, int b2R = 0, int b2Q = 0, int b2C = 0);

using Position = std::pair<int, int>;  // (r, s) of E_1^{r,s}

struct E1Entry {
  int dim = 0;
  std::vector<std::string> pieces;  // e.g. "H^1(C)(-1)"
};

// d_1 : E_1^{r,s} -> E_1^{r+1,s}, keyed by its source.
struct Differential {
  Position source;
  int source_dim = 0, target_dim = 0;
  int max_rank() const { return std::min(source_dim, target_dim); }
};

using RankAssignment = std::map<Position, int>;

struct E1Page {
  std::map<Position, E1Entry> entries;
  int h_max = 0;

  int dim(int r, int s) const;
  // Row s as (E^{-1,s}, E^{0,s}, E^{1,s}) dimensions.
  std::vector<int> row(int s) const;
  // Differentials with nonzero source and target; the others have rank 0.
  std::vector<Differential> differentials() const;
  std::string grid() const;
};

E1Page build_E1(const StrataData& strata, int h_max);

int e2_entry(const E1Page& page, const RankAssignment& ranks, int r, int s);
// dim H^h for h = 0..h_max; DataError if some E_2 entry is negative or a rank
// exceeds its bound.
std::vector<int> abutment_dims(const E1Page& page, const RankAssignment& ranks);

// Every rank assignment (over page.differentials()) whose abutment meets the
// targets h -> dim. An empty result means the constraints are unsatisfiable.
std::vector<RankAssignment> consistency_search(const E1Page& page, const std::map<int, int>& target);

}  // namespace octic
