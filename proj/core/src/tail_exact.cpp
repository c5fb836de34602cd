#include "suptail/tail_exact.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "suptail/combinatorics.hpp"

namespace suptail {

namespace {

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  return std::strtoull(raw, nullptr, 10);
}

}  // namespace

std::uint64_t dp_state_cap() {
  static const std::uint64_t cap = env_cap("SUPTAIL_DP_STATE_CAP", 10'000'000ull);
  return cap;
}

namespace {

// Shared setup for the occupancy DP: atom weights and per-row atom values as
// integer numerators over common denominators, so the recursion below runs on
// integers and the final probability is assembled exactly once.
struct DpSetup {
  int atom_count = 0;
  BigInt weight_den;                          // WD
  std::vector<BigInt> weight_num;             // per atom
  std::vector<std::vector<BigInt>> value_num; // [row][atom], over value_den
  BigInt value_den;                           // VD
};

DpSetup make_setup(const FunctionTable& table, const FiniteSpace& space) {
  const PartitionAlgebra atoms = signature_atoms(table, space);
  DpSetup s;
  s.weight_den = 1;
  s.value_den = 1;
  std::vector<int> kept;
  for (int a = 0; a < atoms.atom_count(); ++a) {
    if (atoms.atom_measures[static_cast<std::size_t>(a)] == 0) continue;  // never drawn
    kept.push_back(a);
    s.weight_den = boost::multiprecision::lcm(
        s.weight_den, denominator(atoms.atom_measures[static_cast<std::size_t>(a)]));
  }
  s.atom_count = static_cast<int>(kept.size());
  for (int a : kept) {
    const Rat& m = atoms.atom_measures[static_cast<std::size_t>(a)];
    s.weight_num.push_back(numerator(m) * (s.weight_den / denominator(m)));
  }
  const int rows = table.row_count();
  s.value_num.assign(static_cast<std::size_t>(rows), {});
  for (int a : kept) {
    const int point = atoms.atoms[static_cast<std::size_t>(a)].front();
    for (int r = 0; r < rows; ++r) {
      s.value_den = boost::multiprecision::lcm(s.value_den, denominator(table.at(r, point)));
    }
  }
  for (int r = 0; r < rows; ++r) {
    s.value_num[static_cast<std::size_t>(r)].reserve(kept.size());
    for (int a : kept) {
      const int point = atoms.atoms[static_cast<std::size_t>(a)].front();
      const Rat& v = table.at(r, point);
      s.value_num[static_cast<std::size_t>(r)].push_back(numerator(v) *
                                                         (s.value_den / denominator(v)));
    }
  }
  return s;
}

// Composition enumeration with two exact prunes:
//  - a subtree where no row can reach the threshold contributes nothing;
//  - a subtree where some row has already reached it (values are >= 0, so
//    every completion stays above) contributes coeff * wprod * (suffix weight
//    sum)^remaining by the multinomial theorem.
class SupTailDp {
 public:
  SupTailDp(const DpSetup& setup, long n, const Rat& threshold, bool strict)
      : s_(setup), n_(n), strict_(strict) {
    rows_ = static_cast<int>(s_.value_num.size());
    // hit test: den_u * dot >= num_u * VD  (or > when strict)
    target_ = numerator(threshold) * s_.value_den;
    scale_ = denominator(threshold);
    pascal_ = pascal_triangle(static_cast<int>(n));
    const int q = s_.atom_count;
    weight_pow_.assign(static_cast<std::size_t>(q), {});
    for (int a = 0; a < q; ++a) {
      auto& powers = weight_pow_[static_cast<std::size_t>(a)];
      powers.resize(static_cast<std::size_t>(n) + 1);
      powers[0] = 1;
      for (long c = 1; c <= n; ++c) {
        powers[static_cast<std::size_t>(c)] =
            powers[static_cast<std::size_t>(c - 1)] * s_.weight_num[static_cast<std::size_t>(a)];
      }
    }
    suffix_weight_sum_.assign(static_cast<std::size_t>(q) + 1, 0);
    for (int a = q - 1; a >= 0; --a) {
      suffix_weight_sum_[static_cast<std::size_t>(a)] =
          suffix_weight_sum_[static_cast<std::size_t>(a) + 1] + s_.weight_num[static_cast<std::size_t>(a)];
    }
    suffix_max_.assign(static_cast<std::size_t>(rows_),
                       std::vector<BigInt>(static_cast<std::size_t>(q) + 1, 0));
    suffix_min_.assign(static_cast<std::size_t>(rows_),
                       std::vector<BigInt>(static_cast<std::size_t>(q) + 1, 0));
    for (int r = 0; r < rows_; ++r) {
      for (int a = q - 1; a >= 0; --a) {
        const BigInt& v = s_.value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)];
        const auto idx = static_cast<std::size_t>(a);
        suffix_max_[static_cast<std::size_t>(r)][idx] =
            a == q - 1 ? v : std::max(v, suffix_max_[static_cast<std::size_t>(r)][idx + 1]);
        suffix_min_[static_cast<std::size_t>(r)][idx] =
            a == q - 1 ? v : std::min(v, suffix_min_[static_cast<std::size_t>(r)][idx + 1]);
      }
    }
    dot_.assign(static_cast<std::size_t>(rows_), 0);
  }

  Rat run() {
    acc_ = 0;
    recurse(0, n_, BigInt(1), BigInt(1));
    return Rat(acc_, boost::multiprecision::pow(s_.weight_den, static_cast<unsigned>(n_)));
  }

 private:
  bool hits(const BigInt& dot) const {
    const BigInt lhs = scale_ * dot;
    return strict_ ? lhs > target_ : lhs >= target_;
  }

  void recurse(int atom, long remaining, BigInt coeff, BigInt wprod) {
    // certain hit: some row is already at/over the threshold
    for (int r = 0; r < rows_; ++r) {
      if (hits(dot_[static_cast<std::size_t>(r)])) {
        acc_ += coeff * wprod *
                boost::multiprecision::pow(suffix_weight_sum_[static_cast<std::size_t>(atom)],
                                           static_cast<unsigned>(remaining));
        return;
      }
    }
    // certain miss: no row can reach the threshold even on the best atoms
    bool reachable = false;
    for (int r = 0; r < rows_; ++r) {
      const BigInt best = dot_[static_cast<std::size_t>(r)] +
                          remaining * suffix_max_[static_cast<std::size_t>(r)][static_cast<std::size_t>(atom)];
      if (hits(best)) {
        reachable = true;
        break;
      }
    }
    if (!reachable) return;
    if (atom == s_.atom_count - 1) {
      for (int r = 0; r < rows_; ++r) {
        dot_[static_cast<std::size_t>(r)] +=
            remaining * s_.value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(atom)];
      }
      bool hit = false;
      for (int r = 0; r < rows_ && !hit; ++r) hit = hits(dot_[static_cast<std::size_t>(r)]);
      if (hit) {
        acc_ += coeff * wprod *
                weight_pow_[static_cast<std::size_t>(atom)][static_cast<std::size_t>(remaining)];
      }
      for (int r = 0; r < rows_; ++r) {
        dot_[static_cast<std::size_t>(r)] -=
            remaining * s_.value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(atom)];
      }
      return;
    }
    for (long c = 0; c <= remaining; ++c) {
      if (c > 0) {
        for (int r = 0; r < rows_; ++r) {
          dot_[static_cast<std::size_t>(r)] +=
              s_.value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(atom)];
        }
      }
      recurse(atom + 1, remaining - c,
              coeff * pascal_[static_cast<std::size_t>(remaining)][static_cast<std::size_t>(c)],
              wprod * weight_pow_[static_cast<std::size_t>(atom)][static_cast<std::size_t>(c)]);
    }
    for (int r = 0; r < rows_; ++r) {
      dot_[static_cast<std::size_t>(r)] -=
          remaining * s_.value_num[static_cast<std::size_t>(r)][static_cast<std::size_t>(atom)];
    }
  }

  const DpSetup& s_;
  long n_;
  bool strict_;
  int rows_ = 0;
  BigInt target_;
  BigInt scale_;
  BigInt acc_;
  std::vector<std::vector<BigInt>> pascal_;
  std::vector<std::vector<BigInt>> weight_pow_;
  std::vector<BigInt> suffix_weight_sum_;
  std::vector<std::vector<BigInt>> suffix_max_;
  std::vector<std::vector<BigInt>> suffix_min_;
  std::vector<BigInt> dot_;
};

}  // namespace

TailResult exact_sup_tail(const FunctionTable& table, const FiniteSpace& space, long sample_size,
                          const Rat& threshold, bool strict, std::uint64_t state_cap) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("exact_sup_tail: table columns do not match space points");
  }
  if (sample_size < 1) throw std::invalid_argument("exact_sup_tail: sample_size must be >= 1");
  if (threshold < 0) throw std::invalid_argument("exact_sup_tail: threshold must be >= 0");

  const DpSetup setup = make_setup(table, space);
  const BigInt states = binomial(sample_size + setup.atom_count - 1, setup.atom_count - 1);
  if (states > BigInt(state_cap)) {
    throw std::invalid_argument(
        "exact_sup_tail: composition count " + states.str() + " exceeds the DP state cap of " +
        std::to_string(state_cap) + "; consider the Monte Carlo estimator instead");
  }

  TailResult result;
  result.method = TailMethod::ExactDp;
  SupTailDp dp(setup, sample_size, threshold, strict);
  result.probability = dp.run();
  return result;
}

namespace {

class DisjointFamily final : public IndicatorFamily {
 public:
  explicit DisjointFamily(std::vector<Rat> measures) : measures_(std::move(measures)) {}
  int size() const override { return static_cast<int>(measures_.size()); }
  std::string describe() const override { return "disjoint"; }
  Rat intersection_measure(std::uint32_t mask) const override {
    if ((mask & (mask - 1)) != 0) return Rat(0);  // two or more members
    int i = 0;
    while ((mask & 1u) == 0) {
      mask >>= 1;
      ++i;
    }
    return measures_[static_cast<std::size_t>(i)];
  }

 private:
  std::vector<Rat> measures_;
};

class NestedFamily final : public IndicatorFamily {
 public:
  explicit NestedFamily(std::vector<Rat> measures) : measures_(std::move(measures)) {
    for (std::size_t i = 1; i < measures_.size(); ++i) {
      if (measures_[i] < measures_[i - 1]) {
        throw std::invalid_argument("nested_family: measures must be nondecreasing");
      }
    }
  }
  int size() const override { return static_cast<int>(measures_.size()); }
  std::string describe() const override { return "nested"; }
  Rat intersection_measure(std::uint32_t mask) const override {
    int lowest = 0;
    while ((mask & 1u) == 0) {
      mask >>= 1;
      ++lowest;
    }
    return measures_[static_cast<std::size_t>(lowest)];
  }

 private:
  std::vector<Rat> measures_;
};

class SunflowerFamily final : public IndicatorFamily {
 public:
  SunflowerFamily(Rat core, std::vector<Rat> petals)
      : core_(std::move(core)), petals_(std::move(petals)) {}
  int size() const override { return static_cast<int>(petals_.size()); }
  std::string describe() const override { return "sunflower"; }
  Rat intersection_measure(std::uint32_t mask) const override {
    if ((mask & (mask - 1)) != 0) return core_;
    int i = 0;
    while ((mask & 1u) == 0) {
      mask >>= 1;
      ++i;
    }
    return core_ + petals_[static_cast<std::size_t>(i)];
  }

 private:
  Rat core_;
  std::vector<Rat> petals_;
};

class TableFamily final : public IndicatorFamily {
 public:
  TableFamily(const FunctionTable& table, const FiniteSpace& space) : space_(space) {
    for (int r = 0; r < table.row_count(); ++r) {
      std::vector<bool> member(static_cast<std::size_t>(table.col_count()));
      for (int c = 0; c < table.col_count(); ++c) {
        const Rat& v = table.at(r, c);
        if (v != 0 && v != 1) {
          throw std::invalid_argument("bp_measure: rows must be 0/1-valued indicators");
        }
        member[static_cast<std::size_t>(c)] = v == 1;
      }
      members_.push_back(std::move(member));
    }
  }
  int size() const override { return static_cast<int>(members_.size()); }
  std::string describe() const override { return "table"; }
  Rat intersection_measure(std::uint32_t mask) const override {
    Rat total = 0;
    for (int p = 0; p < space_.point_count(); ++p) {
      bool in_all = true;
      for (int r = 0; r < size() && in_all; ++r) {
        if ((mask >> r & 1u) != 0 && !members_[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)]) {
          in_all = false;
        }
      }
      if (in_all) total += space_.weight(p);
    }
    return total;
  }

 private:
  FiniteSpace space_;
  std::vector<std::vector<bool>> members_;
};

constexpr int kFamilyCap = 20;

// Depth-first inclusion-exclusion. Intersection measures are monotone under
// adding members, so a zero-measure intersection prunes its whole supertree.
void ie_recurse(const IndicatorFamily& family, long power, std::uint32_t mask, int next_member,
                int parity, Rat& total) {
  for (int m = next_member; m < family.size(); ++m) {
    const std::uint32_t extended = mask | (1u << m);
    const Rat measure = family.intersection_measure(extended);
    if (measure == 0) continue;
    const Rat term = pow_rational(measure, power);
    if (parity > 0) {
      total += term;
    } else {
      total -= term;
    }
    ie_recurse(family, power, extended, m + 1, -parity, total);
  }
}

}  // namespace

std::unique_ptr<IndicatorFamily> disjoint_family(std::vector<Rat> measures) {
  return std::make_unique<DisjointFamily>(std::move(measures));
}
std::unique_ptr<IndicatorFamily> nested_family(std::vector<Rat> measures) {
  return std::make_unique<NestedFamily>(std::move(measures));
}
std::unique_ptr<IndicatorFamily> sunflower_family(Rat core_measure, std::vector<Rat> petal_measures) {
  return std::make_unique<SunflowerFamily>(std::move(core_measure), std::move(petal_measures));
}
std::unique_ptr<IndicatorFamily> table_family(const FunctionTable& table, const FiniteSpace& space) {
  if (table.col_count() != space.point_count()) {
    throw std::invalid_argument("table_family: table columns do not match space points");
  }
  return std::make_unique<TableFamily>(table, space);
}

TailResult bp_measure(const IndicatorFamily& family, long power) {
  if (family.size() < 1 || family.size() > kFamilyCap) {
    throw std::invalid_argument("bp_measure: family size must lie in [1, " +
                                std::to_string(kFamilyCap) + "]");
  }
  if (power < 1) throw std::invalid_argument("bp_measure: power must be >= 1");
  TailResult result;
  result.method = TailMethod::InclusionExclusion;
  Rat total = 0;
  ie_recurse(family, power, 0, 0, +1, total);
  result.probability = total;
  return result;
}

TailResult bp_measure(const FunctionTable& indicator_rows, const FiniteSpace& space, long power) {
  const auto family = table_family(indicator_rows, space);
  return bp_measure(*family, power);
}

}  // namespace suptail
