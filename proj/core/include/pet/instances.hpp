#ifndef PET_INSTANCES_HPP
#define PET_INSTANCES_HPP

#include <Eigen/Dense>
#include <vector>

#include "pet/group.hpp"
#include "pet/orthogonal.hpp"
#include "pet/random.hpp"

namespace pet {

/// Random lamplighter element with lamp positions/values and shift in
/// [-range, range], up to max_lamps lamps.
LamplighterElement random_lamplighter(Rng& rng, int max_lamps = 4, std::int64_t range = 20);

/// Random (a, b) satisfying the quadratic commutation relations: a is
/// lamps-only (shift 0), so all conjugates b^k a b^{-k} stay in the abelian
/// lamp subgroup.  Occasionally both are powers of beta instead.
std::pair<LamplighterElement, LamplighterElement> random_admissible_pair(Rng& rng);

/// d pairwise-commuting orthogonal operators obtained by conjugating aligned
/// rotation blocks with one random orthogonal basis.  Some angles are zeroed
/// so fixed subspaces appear.
struct AbelianOrthogonalInstance {
  std::vector<OrthogonalOperator> generators;  // g_0, g_1, g_2
  int dim;
};
AbelianOrthogonalInstance random_abelian_degree2(Rng& rng, int dim_min = 2, int dim_max = 6);

Eigen::VectorXd random_unit_vector(Rng& rng, int dim);

}  // namespace pet

#endif  // PET_INSTANCES_HPP
