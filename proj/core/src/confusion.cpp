#include "fairaudit/confusion.hpp"

#include "fairaudit/errors.hpp"

#include <string>

namespace fairaudit {
namespace {

void require_unit(const Rational& v, const char* name) {
  if (!in_unit_interval(v)) {
    throw DomainError(std::string(name) + " = " + to_fraction_string(v) + " is outside [0,1]");
  }
}

GroupStats group_from_counts(const GroupConfusion& c, std::uint64_t n_total) {
  GroupStats g;
  const std::uint64_t n = c.total();
  g.n = n;
  g.counts = c;
  g.demographic_rate = Rational(n, n_total);
  g.base_rate = Rational(c.positives(), n);
  g.posterior = Rational(c.predicted_positives(), n);
  if (c.negatives() > 0) g.fpr = Rational(c.fp, c.negatives());
  if (c.positives() > 0) {
    g.tpr = Rational(c.tp, c.positives());
    g.fnr = Rational(c.fn, c.positives());
  }
  return g;
}

GroupStats group_from_rates(const GroupRates& r) {
  GroupStats g;
  g.base_rate = r.base_rate;
  g.fpr = r.fpr;
  g.tpr = r.tpr;
  g.fnr = 1 - r.tpr;
  g.posterior = posterior_from_rates(r.base_rate, r.tpr, r.fpr);
  return g;
}

}  // namespace

PopulationStats stats_from_counts(const GroupConfusion& c0, const GroupConfusion& c1) {
  if (c0.empty()) throw EmptyGroup(0);
  if (c1.empty()) throw EmptyGroup(1);
  PopulationStats stats;
  const std::uint64_t n_total = c0.total() + c1.total();
  stats.n_total = n_total;
  stats.groups[0] = group_from_counts(c0, n_total);
  stats.groups[1] = group_from_counts(c1, n_total);
  return stats;
}

PopulationStats stats_from_rates(const GroupRates& r0, const GroupRates& r1,
                                 std::optional<Rational> pi1) {
  PopulationStats stats;
  stats.groups[0] = group_from_rates(r0);
  stats.groups[1] = group_from_rates(r1);
  if (pi1) {
    require_unit(*pi1, "pi_1");
    if (*pi1 == 0 || *pi1 == 1) throw DomainError("pi_1 must leave both groups non-empty");
    stats.groups[0].demographic_rate = 1 - *pi1;
    stats.groups[1].demographic_rate = *pi1;
  }
  return stats;
}

Rational posterior_from_rates(const Rational& base_rate, const Rational& tpr,
                              const Rational& fpr) {
  require_unit(base_rate, "base-rate");
  require_unit(tpr, "TPR");
  require_unit(fpr, "FPR");
  return base_rate * tpr + (1 - base_rate) * fpr;
}

std::array<GroupConfusion, 2> counts_from_records(std::span<const Record> records) {
  std::array<GroupConfusion, 2> counts{};
  for (std::size_t row = 0; row < records.size(); ++row) {
    const Record& r = records[row];
    if (r.group != 0 && r.group != 1) throw MalformedRecord(row, "group", std::to_string(r.group));
    if (r.truth != 0 && r.truth != 1) throw MalformedRecord(row, "truth", std::to_string(r.truth));
    if (r.prediction != 0 && r.prediction != 1) {
      throw MalformedRecord(row, "prediction", std::to_string(r.prediction));
    }
    GroupConfusion& c = counts[static_cast<std::size_t>(r.group)];
    if (r.truth == 1) {
      ++(r.prediction == 1 ? c.tp : c.fn);
    } else {
      ++(r.prediction == 1 ? c.fp : c.tn);
    }
  }
  return counts;
}

}  // namespace fairaudit
