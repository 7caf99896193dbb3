#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "selfsim/fplinalg.hpp"
#include "selfsim/groups.hpp"
#include "selfsim/virtendo.hpp"

namespace selfsim {

/// The simple virtual endomorphism of a split extension of an elementary
/// abelian H by C_p, built from a Jordan basis of the conjugation action:
/// b_{1,1} -> b_{2,1} -> ... -> b_{m,1} -> a, and b_{i,j} -> 1 for j >= 2.
struct JordanConstruction {
  GroupPtr group;
  JordanData jordan;
  ElemId a;
  /// Jordan basis vectors as elements of H, in JordanData::basis order.
  std::vector<ElemId> basis_elements;
  VirtualEndo phi;
};

/// Throws std::invalid_argument if H is not elementary abelian or h0 != 0.
JordanConstruction construct_phi(const GroupPtr& g);

struct ConstructionReport {
  /// Every nontrivial alpha-invariant subgroup of H meets E_1 nontrivially.
  bool invariant_subspaces_meet_fixed_space = false;
  /// Whether the previous item was checked over all subgroups of H (rather
  /// than over the invariant closures of single elements).
  bool exhaustive_subgroup_scan = false;
  /// Every nontrivial element of E_1 leaves H after at most m applications of phi.
  bool fixed_space_pushed_out = false;
  std::size_t max_steps_to_exit = 0;
  bool core_trivial = false;
  bool images_commute_with_order_p = false;
  bool kernel_is_complement = false;

  bool holds() const {
    return invariant_subspaces_meet_fixed_space && fixed_space_pushed_out && core_trivial &&
           images_commute_with_order_p && kernel_is_complement;
  }
};

/// `subgroup_cap` bounds |H| for the exhaustive subgroup scan.
ConstructionReport verify_construction(const JordanConstruction& jc, std::size_t subgroup_cap = 243);

}  // namespace selfsim
