#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polder/types.hpp"

namespace polder {

struct Level {
  std::string label;
  double omega = 0.0; //!< level frequency in reference units
};

//! Squared dipole matrix elements of one transition, split into the
//! component parallel to the surface (|mu_x|^2 + |mu_y|^2) and the
//! perpendicular one (|mu_z|^2). Only squares enter the observables, so no
//! phase convention is needed.
struct DipoleSq {
  double par = 0.0;
  double perp = 0.0;
};

class AtomModel {
public:
  int add_level(const std::string& label, double omega);

  //! Symmetric under i <-> m; overwrites any previous entry for the pair.
  void set_dipole_sq(int i, int m, const DipoleSq& d);

  int n_levels() const { return static_cast<int>(levels_.size()); }
  const Level& level(int i) const;
  int index_of(const std::string& label) const; // throws UnknownStateError

  //! Zero for unconnected pairs.
  DipoleSq dipole_sq(int i, int m) const;

  const std::vector<Level>& levels() const { return levels_; }

  //! Convenience: levels {g: 0, e: omega_gap} with the given dipole squares.
  static AtomModel two_level(double omega_gap, double mu_par_sq,
                             double mu_perp_sq);

private:
  std::vector<Level> levels_;
  std::map<std::pair<int, int>, DipoleSq> dipole_;
};

//! omega_m - omega_i.
double transition_frequency(const AtomModel& atom, int i, int m);

enum class Axis { x, y, z };

//! Static diagonal polarizability 2 sum_j |<j|mu_axis|i>|^2 / omega_ji.
//! In-plane axes use half the stored parallel square (in-plane isotropy).
//! Throws ResonanceError when some connected omega_ji <= 0.
double static_polarizability(const AtomModel& atom, int i, Axis axis);

//! Free-space decay rate |omega_mi|^3 |mu_mi|^2 / (3 pi) in natural units.
double free_space_rate(const AtomModel& atom, int i, int m);

} // namespace polder
