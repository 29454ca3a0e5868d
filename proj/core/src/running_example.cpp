#include "fairaudit/running_example.hpp"

#include "fairaudit/errors.hpp"

#include <cctype>
#include <string>

namespace fairaudit {
namespace {

struct PublishedGroup {
  Rational pi, p, q, fpr, tpr;
};

GroupStats expected_group(std::uint64_t n, const GroupConfusion& counts,
                          const PublishedGroup& g) {
  GroupStats s;
  s.n = n;
  s.counts = counts;
  s.demographic_rate = g.pi;
  s.base_rate = g.p;
  s.posterior = g.q;
  s.fpr = g.fpr;
  s.tpr = g.tpr;
  s.fnr = 1 - g.tpr;
  return s;
}

void append(std::vector<Record>& out, int group, int truth, int prediction, std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) out.push_back({group, truth, prediction});
}

}  // namespace

RunningPoint parse_running_point(std::string_view name) {
  if (name.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(name.front()))) {
      case 'A': return RunningPoint::A;
      case 'B': return RunningPoint::B;
      case 'C': return RunningPoint::C;
      default: break;
    }
  }
  throw Error("unknown operating point '" + std::string(name) + "' (expected A, B or C)");
}

RunningExample generate_running_example(RunningPoint point) {
  RunningExample ex;
  ex.point = point;

  // Both groups keep N_0 = 6000 (2000 positives) and N_1 = 2000 (200
  // positives); the points differ in how the classifier splits them.
  const Rational pi0(3, 4), pi1(1, 4), p0(1, 3), p1(1, 10);
  PublishedGroup g0, g1;
  switch (point) {
    case RunningPoint::A:
      ex.counts = {GroupConfusion{600, 1400, 1200, 2800}, GroupConfusion{60, 140, 540, 1260}};
      g0 = {pi0, p0, Rational(3, 10), Rational(3, 10), Rational(3, 10)};
      g1 = {pi1, p1, Rational(3, 10), Rational(3, 10), Rational(3, 10)};
      break;
    case RunningPoint::B:
      ex.counts = {GroupConfusion{1400, 600, 1200, 2800}, GroupConfusion{140, 60, 540, 1260}};
      g0 = {pi0, p0, Rational(13, 30), Rational(3, 10), Rational(7, 10)};
      g1 = {pi1, p1, Rational(17, 50), Rational(3, 10), Rational(7, 10)};
      break;
    case RunningPoint::C:
      ex.counts = {GroupConfusion{1400, 600, 400, 3600}, GroupConfusion{140, 60, 460, 1340}};
      g0 = {pi0, p0, Rational(3, 10), Rational(1, 10), Rational(7, 10)};
      g1 = {pi1, p1, Rational(3, 10), Rational(23, 90), Rational(7, 10)};
      break;
  }

  for (int s = 0; s < 2; ++s) {
    const GroupConfusion& c = ex.counts[static_cast<std::size_t>(s)];
    append(ex.records, s, 1, 1, c.tp);
    append(ex.records, s, 1, 0, c.fn);
    append(ex.records, s, 0, 1, c.fp);
    append(ex.records, s, 0, 0, c.tn);
  }

  ex.expected.n_total = 8000;
  ex.expected.groups[0] = expected_group(6000, ex.counts[0], g0);
  ex.expected.groups[1] = expected_group(2000, ex.counts[1], g1);
  return ex;
}

}  // namespace fairaudit
