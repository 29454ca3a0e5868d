#pragma once

// Per-group binary-channel counts and the rates derived from them.

#include "fairaudit/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace fairaudit {

// Sensitive attribute S. 1 is the protected (unprivileged) group.
enum class GroupLabel : std::uint8_t { Unprotected = 0, Protected = 1 };

inline constexpr std::array<GroupLabel, 2> kGroups{GroupLabel::Unprotected,
                                                   GroupLabel::Protected};

constexpr int to_int(GroupLabel g) { return static_cast<int>(g); }
constexpr std::size_t index_of(GroupLabel g) { return static_cast<std::size_t>(g); }

struct GroupConfusion {
  std::uint64_t tp = 0;
  std::uint64_t fn = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fn + fp + tn; }
  std::uint64_t positives() const { return tp + fn; }
  std::uint64_t negatives() const { return fp + tn; }
  std::uint64_t predicted_positives() const { return tp + fp; }
  bool empty() const { return total() == 0; }

  friend bool operator==(const GroupConfusion&, const GroupConfusion&) = default;
};

// Rates of one group. Fields that need a population total (n, demographic
// rate) are absent when the stats were built from rates alone.
struct GroupStats {
  std::optional<std::uint64_t> n;
  std::optional<Rational> demographic_rate;  // pi_s
  Rational base_rate;                        // p_s
  Rational posterior;                        // q_s
  Rate fpr;
  Rate tpr;
  Rate fnr;
  std::optional<GroupConfusion> counts;
};

struct PopulationStats {
  std::array<GroupStats, 2> groups;
  std::optional<std::uint64_t> n_total;

  const GroupStats& operator[](GroupLabel g) const { return groups[index_of(g)]; }
  const GroupStats& unprotected() const { return groups[0]; }
  const GroupStats& protected_group() const { return groups[1]; }
};

// Rates of one group when no counts are available.
struct GroupRates {
  Rational base_rate;
  Rational fpr;
  Rational tpr;
};

// One labelled prediction. Fields are raw integers so out-of-domain input
// can be reported with its row index.
struct Record {
  int group = 0;
  int truth = 0;
  int prediction = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

// Throws EmptyGroup naming the first empty group.
PopulationStats stats_from_counts(const GroupConfusion& c0, const GroupConfusion& c1);

// Posterior from each group's base-rate and operating point. pi1, when
// given, is the protected group's population share.
PopulationStats stats_from_rates(const GroupRates& r0, const GroupRates& r1,
                                 std::optional<Rational> pi1 = std::nullopt);

// q = p*TPR + (1-p)*FPR. Throws DomainError outside [0,1].
Rational posterior_from_rates(const Rational& base_rate, const Rational& tpr,
                              const Rational& fpr);

// Throws MalformedRecord (row index is 0-based) for values outside {0,1}.
std::array<GroupConfusion, 2> counts_from_records(std::span<const Record> records);

}  // namespace fairaudit
