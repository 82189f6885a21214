#pragma once

// Finite extension descriptors and the classification predicates built on
// them (defectless, tame, unramified, immediate, pre-tame).

#include <optional>
#include <string>
#include <utility>

#include "ramify/common.hpp"
#include "ramify/ordgroup.hpp"

namespace ramify {

struct ExtensionDescriptor {
  std::string label;
  long degree = 1;
  long ram_index = 1;
  long res_degree = 1;
  long res_char = 0;
  bool residue_separable = true;
  std::optional<ValueGroup> value_group_base;
  std::optional<ValueGroup> value_group_ext;
  bool henselian_normal = false;
  /// Degree versus e*f over the henselizations, when the builder knows it.
  std::optional<bool> henselian_defectless;

  /// Henselian-level defect: 1 when the builder certifies defectlessness,
  /// otherwise degree / (e*f).
  Rational defect() const {
    if (henselian_defectless.value_or(false)) return Rational(1);
    return make_q(degree, ram_index * res_degree);
  }
};

inline bool fundamental_inequality_check(const ExtensionDescriptor& d) {
  return d.degree >= d.ram_index * d.res_degree;
}

/// Validates a descriptor: positive invariants, the fundamental inequality,
/// index of the value groups equal to e, and for henselian normal extensions
/// an integral defect that is a power of the residue characteristic.
inline ExtensionDescriptor make_descriptor(ExtensionDescriptor d) {
  if (d.degree < 1 || d.ram_index < 1 || d.res_degree < 1)
    throw precondition_error(d.label + ": degree, e and f must be positive");
  if (d.res_char != 0 && !is_prime(d.res_char))
    throw precondition_error(d.label + ": residue characteristic must be 0 or prime");
  if (!fundamental_inequality_check(d))
    throw precondition_error(d.label + ": degree " + std::to_string(d.degree) + " < e*f = " +
                             std::to_string(d.ram_index * d.res_degree));
  if (d.value_group_base.has_value() != d.value_group_ext.has_value())
    throw precondition_error(d.label + ": value groups must be given together");
  if (d.value_group_base) {
    GroupIndex idx = index(*d.value_group_ext, *d.value_group_base);
    if (!idx || *idx != d.ram_index)
      throw precondition_error(d.label + ": value group index " + to_string(idx) + " differs from e = " +
                               std::to_string(d.ram_index));
  }
  if (d.henselian_normal) {
    Rational def = d.defect();
    bool ok = is_integral(def) &&
              (d.res_char == 0 ? def == 1 : is_power_of(def.get_num(), Integer(d.res_char)));
    if (!ok) throw precondition_error(d.label + ": defect " + def.get_str() + " is not a power of the residue characteristic");
  }
  return d;
}

inline bool is_defectless(const ExtensionDescriptor& d) {
  return d.henselian_defectless.value_or(d.degree == d.ram_index * d.res_degree);
}

inline bool is_tame(const ExtensionDescriptor& d) {
  bool e_ok = d.res_char == 0 || d.ram_index % d.res_char != 0;
  return e_ok && d.residue_separable && is_defectless(d);
}

inline bool is_unramified(const ExtensionDescriptor& d) { return d.ram_index == 1 && d.residue_separable; }

inline bool is_immediate(const ExtensionDescriptor& d) { return d.ram_index == 1 && d.res_degree == 1; }

/// No coset of the extension value group modulo the base has order divisible
/// by the residue characteristic, the residue extension is separable, and the
/// extension is defectless at the henselian level.
inline bool pretame_check(const ExtensionDescriptor& d) {
  if (!d.value_group_base) throw precondition_error(d.label + ": pretame_check needs value groups");
  GroupIndex idx = index(*d.value_group_ext, *d.value_group_base);
  if (!idx) throw precondition_error(d.label + ": infinite index");
  bool pt1 = true;
  if (d.res_char != 0 && *idx != 1) {
    for (const auto& g : coset_representatives(*d.value_group_ext, *d.value_group_base)) {
      GroupIndex ord = order_mod(g, *d.value_group_base);
      if (*ord % d.res_char == 0) {
        pt1 = false;
        break;
      }
    }
  }
  return pt1 && d.residue_separable && is_defectless(d);
}

}  // namespace ramify
