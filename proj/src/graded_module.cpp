#include "hfb/graded_module.hpp"

#include <algorithm>

namespace hfb {

GradedUModule &GradedUModule::canonicalize() {
  std::sort(towers.begin(), towers.end(), [](const Rational &a, const Rational &b) { return a > b; });
  std::sort(torsion.begin(), torsion.end(), [](const TorsionSummand &a, const TorsionSummand &b) {
    return a.degree != b.degree ? a.degree < b.degree : a.length < b.length;
  });
  return *this;
}

bool GradedUModule::operator==(const GradedUModule &o) const {
  GradedUModule a = *this, b = o;
  a.canonicalize();
  b.canonicalize();
  return a.towers == b.towers && a.torsion == b.torsion;
}

GradedUModule GradedUModule::shifted(const Rational &by) const {
  GradedUModule m = *this;
  for (auto &t : m.towers)
    t += by;
  for (auto &s : m.torsion)
    s.degree += by;
  return m;
}

GradedUModule GradedUModule::reduced() const {
  GradedUModule m;
  m.torsion = torsion;
  return m.canonicalize();
}

int GradedUModule::omega() const {
  int w = 0;
  for (const auto &s : torsion)
    w = std::max(w, s.length);
  return w;
}

bool GradedUModule::same_up_to_shift(const GradedUModule &o) const {
  if (towers.size() != o.towers.size() || torsion.size() != o.torsion.size())
    return false;
  if (towers.empty() && torsion.empty())
    return true;
  GradedUModule a = *this, b = o;
  a.canonicalize();
  b.canonicalize();
  const Rational shift = !a.towers.empty() ? b.towers.front() - a.towers.front()
                                           : b.torsion.front().degree - a.torsion.front().degree;
  return a.shifted(shift) == b;
}

std::string GradedUModule::to_string() const {
  GradedUModule m = *this;
  m.canonicalize();
  std::vector<std::string> parts;
  for (const auto &t : m.towers)
    parts.push_back("F[U]_(" + hfb::to_string(t) + ")");
  for (const auto &s : m.torsion)
    parts.push_back((s.length == 1 ? std::string("F") : "F[U]/U^" + std::to_string(s.length)) + "_(" +
                    hfb::to_string(s.degree) + ")");
  if (parts.empty())
    return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i)
    out += " + " + parts[i];
  return out;
}

} // namespace hfb
