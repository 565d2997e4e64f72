#pragma once

#include "ionchain/minimize.hpp"
#include "ionchain/potential.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ionchain {

class EquilibriumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class BracketingError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Branch { Symmetric, BrokenLeft, BrokenRight };
enum class Structure { Uniform, Defect };

std::string to_string(Branch b);
std::string to_string(Structure s);

inline constexpr double kSymmetryTolerance = 1e-9;  // x0

struct ClassicalEquilibrium {
  IonConfiguration cfg;
  std::complex<double> a_bar;  // eta / (1 - i delta_bar)
  double photon_number = 0.0;
  double delta_bar = 0.0;
  double f_bar = 0.0;
  double v_tot = 0.0;
  Branch branch = Branch::Symmetric;
  Structure structure = Structure::Uniform;
  bool hessian_pd = false;
  double gradient_norm = 0.0;
  double min_hessian_eigenvalue = 0.0;
};

struct SeedFailure {
  IonConfiguration seed;
  std::string reason;
};

struct EquilibriumSet {
  /// Symmetric first (if present), then BrokenLeft by ascending v_tot, then
  /// BrokenRight (the mirror images, same order).
  std::vector<ClassicalEquilibrium> equilibria;
  std::vector<SeedFailure> failures;

  const ClassicalEquilibrium* symmetric() const;
  /// Lowest-energy BrokenLeft equilibrium, or nullptr.
  const ClassicalEquilibrium* broken_left() const;
  bool has(Branch b) const;
};

/// Populates the derived fields (photon number, branch, Hessian flag, ...).
ClassicalEquilibrium make_equilibrium(const IonConfiguration& cfg, const DimensionlessParams& p);

/// Multi-start minimisation of v_tot. Seeds: the analytic eta=0 chain, the
/// pinned candidates (central ion on -1 and +1, end ions on the two odd sites
/// bracketing -d0 and +d0), and any extra continuation seeds.
EquilibriumSet find_equilibria(const DimensionlessParams& p,
                               const std::vector<IonConfiguration>& extra_seeds = {},
                               const MinimizeOptions& opt = {});

struct StructureInfo {
  Structure structure = Structure::Uniform;
  double gap_left = 0.0;        // units of the optical period 2 x0
  double gap_right = 0.0;
  double gap_difference = 0.0;  // |gap_right - gap_left|, periods
  double matching_metric = 0.0; // d0/x0 mod 2: 0 matching, 1 maximally mismatched
};

/// Uniform if the two gaps differ by less than half an optical period.
/// Throws std::invalid_argument on a Symmetric equilibrium.
StructureInfo classify_structure(const ClassicalEquilibrium& eq, const DimensionlessParams& p);

struct TransitionBoundaries {
  double eta_sym_max = 0.0;  // largest eta with a stable Symmetric solution
  double eta_pin_min = 0.0;  // smallest eta with a stable broken solution
  bool bistable = false;
};

inline constexpr double kBistableMinWidth = 1e-3;  // eta/kappa

/// Bisection (tolerance `tol` in eta/kappa) on branch existence over
/// [eta_lo, eta_hi]. p.eta is ignored. Throws BracketingError if the range does
/// not contain the transition.
TransitionBoundaries transition_boundaries(const DimensionlessParams& p, double eta_lo,
                                           double eta_hi, double tol = 1e-4);

} // namespace ionchain
