#include "suptail/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "suptail/rng.hpp"
#include "suptail/rounding.hpp"

namespace suptail {

const char* const kDenseFitCaveat =
    "sampled-measure lower-bound certificate; the small-n constant of the "
    "classical VC-to-L1 conversion is not pinned by theory and is not used here";

Rat l1_distance(const std::vector<Rat>& a, const std::vector<Rat>& b,
                const FiniteSpace& measure) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != measure.point_count()) {
    throw std::invalid_argument("l1_distance: length mismatch");
  }
  Rat total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rat diff = a[i] - b[i];
    total += (diff < 0 ? -diff : diff) * measure.weight(static_cast<int>(i));
  }
  return total;
}

namespace {

std::vector<std::vector<Rat>> pairwise_distances(const FunctionTable& table,
                                                 const FiniteSpace& measure) {
  const int rows = table.row_count();
  std::vector<std::vector<Rat>> rowvals(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) rowvals[static_cast<std::size_t>(r)] = table.row(r);
  std::vector<std::vector<Rat>> dist(static_cast<std::size_t>(rows),
                                     std::vector<Rat>(static_cast<std::size_t>(rows), Rat(0)));
  for (int i = 0; i < rows; ++i) {
    for (int j = i + 1; j < rows; ++j) {
      const Rat d = l1_distance(rowvals[static_cast<std::size_t>(i)],
                                rowvals[static_cast<std::size_t>(j)], measure);
      dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
      dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = d;
    }
  }
  return dist;
}

}  // namespace

CoverCertificate greedy_cover(const FunctionTable& table, const FiniteSpace& measure,
                              const Rat& epsilon) {
  if (epsilon <= 0 || epsilon > 1) {
    throw std::invalid_argument("greedy_cover: epsilon must lie in (0, 1]");
  }
  const int rows = table.row_count();
  const auto dist = pairwise_distances(table, measure);

  CoverCertificate cert;
  cert.epsilon = epsilon;
  std::vector<Rat> min_dist(static_cast<std::size_t>(rows));
  cert.center_rows.push_back(0);
  for (int r = 0; r < rows; ++r) min_dist[static_cast<std::size_t>(r)] = dist[0][static_cast<std::size_t>(r)];

  for (;;) {
    int farthest = 0;
    for (int r = 1; r < rows; ++r) {
      if (min_dist[static_cast<std::size_t>(r)] > min_dist[static_cast<std::size_t>(farthest)]) {
        farthest = r;  // strict > keeps the lowest index among ties
      }
    }
    if (min_dist[static_cast<std::size_t>(farthest)] < epsilon) {
      cert.worst_gap = min_dist[static_cast<std::size_t>(farthest)];
      return cert;
    }
    cert.center_rows.push_back(farthest);
    for (int r = 0; r < rows; ++r) {
      const Rat& d = dist[static_cast<std::size_t>(farthest)][static_cast<std::size_t>(r)];
      if (d < min_dist[static_cast<std::size_t>(r)]) min_dist[static_cast<std::size_t>(r)] = d;
    }
  }
}

int exact_min_cover(const FunctionTable& table, const FiniteSpace& measure,
                    const Rat& epsilon, int row_cap) {
  const int rows = table.row_count();
  if (rows > row_cap) {
    throw std::invalid_argument("exact_min_cover: class has " + std::to_string(rows) +
                                " rows, above the exhaustive-search cap of " +
                                std::to_string(row_cap));
  }
  if (epsilon <= 0 || epsilon > 1) {
    throw std::invalid_argument("exact_min_cover: epsilon must lie in (0, 1]");
  }
  const auto dist = pairwise_distances(table, measure);

  // coverage[j] = bitmask of rows within < epsilon of center j
  std::vector<std::uint32_t> coverage(static_cast<std::size_t>(rows), 0);
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < rows; ++i) {
      if (dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] < epsilon) {
        coverage[static_cast<std::size_t>(j)] |= 1u << i;
      }
    }
  }
  const std::uint32_t all = rows == 32 ? ~0u : (1u << rows) - 1;

  for (int m = 1; m <= rows; ++m) {
    std::vector<int> pick(static_cast<std::size_t>(m));
    // lexicographic combinations of m centers
    for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::uint32_t covered = 0;
      for (int c : pick) covered |= coverage[static_cast<std::size_t>(c)];
      if (covered == all) return m;
      int i = m - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == rows - m + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) {
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return rows;  // unreachable: m == rows always covers (distance 0 to itself)
}

namespace {

struct Candidate {
  std::string id;
  FiniteSpace measure;
};

FiniteSpace simplex_from_grid(std::vector<BigInt> numerators, const BigInt& grid) {
  std::vector<Rat> weights;
  weights.reserve(numerators.size());
  for (const BigInt& v : numerators) weights.emplace_back(Rat(v, grid));
  return FiniteSpace(std::move(weights));
}

/// Rational surrogate for a Dirichlet(1,...,1) draw: exponential spacings
/// rounded onto a 2^20 grid with largest-remainder fixup.
FiniteSpace random_simplex_measure(SampleStream& stream, int points) {
  constexpr std::int64_t kGrid = 1 << 20;
  std::vector<double> raw(static_cast<std::size_t>(points));
  double total = 0;
  for (auto& v : raw) {
    double unit = stream.next_unit();
    if (unit <= 0) unit = 0x1.0p-53;
    v = -std::log(unit);
    total += v;
  }
  std::vector<BigInt> nums(static_cast<std::size_t>(points));
  std::vector<std::pair<double, int>> remainders;
  std::int64_t assigned = 0;
  for (int i = 0; i < points; ++i) {
    const double share = raw[static_cast<std::size_t>(i)] / total * static_cast<double>(kGrid);
    const auto fl = static_cast<std::int64_t>(std::floor(share));
    nums[static_cast<std::size_t>(i)] = fl;
    assigned += fl;
    remainders.emplace_back(share - static_cast<double>(fl), i);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::int64_t leftover = kGrid - assigned, i = 0; leftover > 0; --leftover, ++i) {
    nums[static_cast<std::size_t>(remainders[static_cast<std::size_t>(i) % remainders.size()].second)] += 1;
  }
  return simplex_from_grid(std::move(nums), BigInt(kGrid));
}

struct CoverSizes {
  long greedy = 0;
  long exact = -1;
  long best() const { return exact >= 0 ? exact : greedy; }
};

CoverSizes cover_sizes(const FunctionTable& table, const FiniteSpace& measure, const Rat& epsilon,
                       int exact_cap) {
  CoverSizes sizes;
  sizes.greedy = greedy_cover(table, measure, epsilon).size();
  if (table.row_count() <= exact_cap) {
    sizes.exact = exact_min_cover(table, measure, epsilon, exact_cap);
  }
  return sizes;
}

}  // namespace

DenseParams fit_dense_params(const FunctionTable& table, const std::vector<Rat>& epsilon_grid,
                             const std::vector<double>& exponent_candidates,
                             const FitOptions& options) {
  if (epsilon_grid.empty() || exponent_candidates.empty()) {
    throw std::invalid_argument("fit_dense_params: empty grid");
  }
  for (double cand : exponent_candidates) {
    if (cand < 1.0) throw std::invalid_argument("fit_dense_params: exponent candidates must be >= 1");
  }

  std::vector<Candidate> family;
  // (i) uniform measures on single atoms of the class algebra: the natural
  // extreme points for L1 geometry.
  {
    const FiniteSpace uniform = FiniteSpace::uniform(table.col_count());
    family.push_back({"uniform", uniform});
    const PartitionAlgebra atoms = signature_atoms(table, uniform);
    for (int a = 0; a < atoms.atom_count(); ++a) {
      std::vector<Rat> w(static_cast<std::size_t>(table.col_count()), Rat(0));
      const auto& members = atoms.atoms[static_cast<std::size_t>(a)];
      for (int p : members) w[static_cast<std::size_t>(p)] = Rat(1, static_cast<long>(members.size()));
      family.push_back({"atom:" + std::to_string(a), FiniteSpace(std::move(w))});
    }
  }
  // (ii) random rational simplex draws
  for (int d = 0; d < options.dirichlet_draws; ++d) {
    SampleStream stream(options.seed, static_cast<std::uint64_t>(d) + 1);
    family.push_back({"dirichlet:" + std::to_string(d),
                      random_simplex_measure(stream, table.col_count())});
  }

  struct Sample {
    std::size_t candidate;
    std::size_t epsilon_index;
    CoverSizes sizes;
  };
  std::vector<Sample> samples;
  long worst_size = -1;
  std::size_t worst_candidate = 0;
  for (std::size_t c = 0; c < family.size(); ++c) {
    for (std::size_t e = 0; e < epsilon_grid.size(); ++e) {
      const CoverSizes sizes =
          cover_sizes(table, family[c].measure, epsilon_grid[e], options.exact_cover_row_cap);
      samples.push_back({c, e, sizes});
      if (sizes.best() > worst_size) {
        worst_size = sizes.best();
        worst_candidate = c;
      }
    }
  }

  // (iii) coordinate hill-climbing from the worst sampled measure, chasing a
  // larger cover at the tightest epsilon of the grid.
  {
    const Rat eps_min = *std::min_element(epsilon_grid.begin(), epsilon_grid.end());
    std::vector<Rat> current = family[worst_candidate].measure.weights();
    long current_size =
        cover_sizes(table, FiniteSpace(current), eps_min, options.exact_cover_row_cap).best();
    const Rat delta(1, 32);
    const int points = table.col_count();
    for (int step = 0; step < options.hill_climb_steps; ++step) {
      bool improved = false;
      for (int from = 0; from < points && !improved; ++from) {
        if (current[static_cast<std::size_t>(from)] < delta) continue;
        for (int to = 0; to < points && !improved; ++to) {
          if (to == from) continue;
          std::vector<Rat> moved = current;
          moved[static_cast<std::size_t>(from)] -= delta;
          moved[static_cast<std::size_t>(to)] += delta;
          const long m =
              cover_sizes(table, FiniteSpace(moved), eps_min, options.exact_cover_row_cap).best();
          if (m > current_size) {
            current = std::move(moved);
            current_size = m;
            improved = true;
          }
        }
      }
      if (!improved) break;
      family.push_back({"hillclimb:" + std::to_string(step), FiniteSpace(current)});
      for (std::size_t e = 0; e < epsilon_grid.size(); ++e) {
        samples.push_back({family.size() - 1, e,
                           cover_sizes(table, family.back().measure, epsilon_grid[e],
                                       options.exact_cover_row_cap)});
      }
    }
  }

  DenseParams best;
  double best_parameter = std::numeric_limits<double>::infinity();
  for (double cand : exponent_candidates) {
    double implied = 1.0;
    for (const Sample& s : samples) {
      // round up so the stored parameter certifies m <= D * eps^-L for every entry
      const double term =
          nudge_up(static_cast<double>(s.sizes.best()) *
                   std::pow(to_double(epsilon_grid[s.epsilon_index]), cand));
      implied = std::max(implied, term);
    }
    if (implied < best_parameter) {
      best_parameter = implied;
      best.exponent = cand;
    }
  }
  best.parameter = best_parameter;
  best.evidence.reserve(samples.size());
  for (const Sample& s : samples) {
    best.evidence.push_back({epsilon_grid[s.epsilon_index], family[s.candidate].id,
                             s.sizes.greedy, s.sizes.exact});
  }
  return best;
}

}  // namespace suptail
