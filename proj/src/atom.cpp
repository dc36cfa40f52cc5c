#include "polder/atom.hpp"

#include <cmath>

#include "polder/errors.hpp"

namespace polder {

namespace {

std::pair<int, int> ordered(int i, int m) {
  return i <= m ? std::pair{i, m} : std::pair{m, i};
}

} // namespace

int AtomModel::add_level(const std::string& label, double omega) {
  for (const Level& l : levels_)
    if (l.label == label)
      throw DomainError("AtomModel: duplicate level label '" + label + "'");
  levels_.push_back(Level{label, omega});
  return static_cast<int>(levels_.size()) - 1;
}

void AtomModel::set_dipole_sq(int i, int m, const DipoleSq& d) {
  level(i);
  level(m);
  if (i == m) throw DomainError("AtomModel: dipole square requires i != m");
  if (!(d.par >= 0.0) || !(d.perp >= 0.0))
    throw DomainError("AtomModel: dipole squares must be >= 0");
  dipole_[ordered(i, m)] = d;
}

const Level& AtomModel::level(int i) const {
  if (i < 0 || i >= n_levels())
    throw UnknownStateError("AtomModel: level index out of range");
  return levels_[static_cast<std::size_t>(i)];
}

int AtomModel::index_of(const std::string& label) const {
  for (int i = 0; i < n_levels(); ++i)
    if (levels_[static_cast<std::size_t>(i)].label == label) return i;
  throw UnknownStateError("AtomModel: unknown level '" + label + "'");
}

DipoleSq AtomModel::dipole_sq(int i, int m) const {
  level(i);
  level(m);
  auto it = dipole_.find(ordered(i, m));
  return it == dipole_.end() ? DipoleSq{} : it->second;
}

AtomModel AtomModel::two_level(double omega_gap, double mu_par_sq,
                               double mu_perp_sq) {
  AtomModel atom;
  const int g = atom.add_level("g", 0.0);
  const int e = atom.add_level("e", omega_gap);
  atom.set_dipole_sq(g, e, DipoleSq{mu_par_sq, mu_perp_sq});
  return atom;
}

double transition_frequency(const AtomModel& atom, int i, int m) {
  return atom.level(m).omega - atom.level(i).omega;
}

double static_polarizability(const AtomModel& atom, int i, Axis axis) {
  double sum = 0.0;
  for (int j = 0; j < atom.n_levels(); ++j) {
    if (j == i) continue;
    const DipoleSq d = atom.dipole_sq(i, j);
    const double mu_sq = axis == Axis::z ? d.perp : 0.5 * d.par;
    if (mu_sq == 0.0) continue;
    const double w_ji = transition_frequency(atom, i, j);
    if (!(w_ji > 0.0))
      throw ResonanceError(
          "static_polarizability: state has a non-positive transition "
          "frequency to a dipole-connected level");
    sum += mu_sq / w_ji;
  }
  return 2.0 * sum;
}

double free_space_rate(const AtomModel& atom, int i, int m) {
  const double w = transition_frequency(atom, i, m);
  const DipoleSq d = atom.dipole_sq(i, m);
  const double mu_sq = d.par + d.perp;
  return std::abs(w * w * w) * mu_sq / (3.0 * pi);
}

} // namespace polder
