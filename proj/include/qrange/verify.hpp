#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrange/qmatrix.hpp"

namespace qrange {

enum class Comparison { at_most, at_least };

/// One cross-oracle comparison: passes when `measured` is on the right side of `threshold`.
struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::at_most;
  std::string detail;

  bool passed() const noexcept;
};

struct VerifyOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  std::size_t grid = 512;
  double tol = 1e-10;
  std::size_t support_angles = 1024;
  /// Multiplies every closed-form radius before containment checks; 1 except for negative controls.
  double radius_scale = 1.0;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;

  bool all_passed() const noexcept;
};

/// The worked examples: tree disk of radius 1, the ellipse family, the
/// circular real 4 x 4 matrix and the convex non-circular 3 x 3 matrix.
VerifyReport verify_worked_examples(const VerifyOptions& options);

/// Seeded random instances for every closed form against the sampling oracles.
VerifyReport verify_random(const VerifyOptions& options);

/// Whatever checks apply to the structure of one matrix.
VerifyReport verify_matrix(const QMatrix& a, const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

/// Fixture matrices of the worked examples.
QMatrix fixture_tree_plus_one();
QMatrix fixture_tree_block();
QMatrix fixture_real_cyclic();
/// [[0, q12, q13], [0, 1, 0], [0, 0, 1]] with |q12|^2 + |q13|^2 = k.
QMatrix fixture_ellipse(double k);
QMatrix fixture_convex_noncircular();

}  // namespace qrange
