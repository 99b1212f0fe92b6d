#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgames/linalg.hpp"
#include "qgames/states.hpp"

namespace qgames {

inline constexpr double kCollapseThreshold = 1e-12;
inline constexpr double kDegeneracyGap = 1e-7;

class Observable {
 public:
  explicit Observable(ComplexMatrix matrix, double tol = kDefaultTolerance);
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

class POVM {
 public:
  // Throws PreconditionError unless every effect is PSD and they sum to I.
  POVM(std::vector<std::string> labels, std::vector<ComplexMatrix> effects, double tol = kDefaultTolerance);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<ComplexMatrix>& effects() const noexcept { return effects_; }
  std::size_t size() const noexcept { return effects_.size(); }
  std::size_t dimension() const noexcept { return effects_.front().rows(); }
  bool is_projective(double tol = kDefaultTolerance) const;

  // Effects U M U* for each M.
  POVM conjugated(const ComplexMatrix& u) const;

 private:
  std::vector<std::string> labels_;
  std::vector<ComplexMatrix> effects_;
};

struct OutcomeDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;

  double probability(const std::string& label) const;
};

// Projectors onto computational basis states; labels are the digit strings of
// the multi-index, e.g. "01" for |0>|1>.
POVM computational_povm(const std::vector<std::size_t>& dims);
std::string basis_label(std::size_t index, const std::vector<std::size_t>& dims);

POVM pvm_from_observable(const Observable& a);

OutcomeDistribution probabilities(const DensityMatrix& rho, const POVM& m);
OutcomeDistribution probabilities(const PureState& psi, const POVM& m);

struct Collapse {
  DensityMatrix state;
  double probability;
};
// P rho P / tr(rho P). Throws UndefinedCollapseError when tr(rho P) < 1e-12.
Collapse collapse(const DensityMatrix& rho, const ComplexMatrix& projector, double tol = kDefaultTolerance);

// sum_j P_j B P_j; throws PreconditionError for non-projective m.
ComplexMatrix pinch(const ComplexMatrix& b, const POVM& m, double tol = kDefaultTolerance);

// Inverse-CDF draw from a 64-bit Mersenne twister seeded with `seed`.
std::string sample(const OutcomeDistribution& dist, std::uint64_t seed);
std::vector<std::string> sample_many(const OutcomeDistribution& dist, std::uint64_t seed, std::size_t count);

}  // namespace qgames
