#pragma once

#include "sumprod/structure.hpp"

namespace sumprod {

/// Additive groups G_n generated by the n-fold product sets A^n, n = 1..n_max.
struct GradedGroups {
  std::vector<RSet> groups;        // groups[i] = G_{i+1}
  std::uint64_t stable_size = 0;   // N, size of the terminal plateau
  std::uint32_t n0 = 0;            // first index (1-based) of the terminal plateau

  std::uint32_t n_max() const { return static_cast<std::uint32_t>(groups.size()); }
  const RSet& at(std::uint32_t n) const { return groups.at(n - 1); }
};

GradedGroups compute_graded_groups(const RSet& a, std::uint32_t n_max);

/// The ring R_0 of degree-0 maximal dilations, materialized over the carrier
/// G_{n0}: each dilation is represented by its value at a^{n0}. phi is the
/// twist automorphism x -> a x a^{-1} transported to the carrier; iota_n embeds
/// G_n as the degree-n component of the twisted polynomial model.
struct FreimanModel {
  std::uint32_t a_elt = 0;
  std::uint32_t n0 = 0;
  std::uint64_t stable_size = 0;           // |R_0| = N
  std::vector<std::uint32_t> carrier;      // sorted parent indices of G_{n0}
  RingHandle r0;                           // table ring over carrier ranks
  std::uint32_t identity_rank = 0;         // rank of a^{n0}
  std::vector<std::uint32_t> phi;          // rank permutation
  // iota[n-1]: pairs (parent index g in G_n, carrier rank of iota_n(g)), sorted by g
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> iota;

  struct Checks {
    bool axioms_pass = false;
    bool identity_matches = false;
    bool phi_automorphism = false;
    bool iota_additive = false;
    bool iota_injective = false;
    bool graded_law = false;
    bool grading_ok = false;  // G_n G_m ⊆ G_{n+m} and a G_n ⊆ G_{n+1}
    bool all() const {
      return axioms_pass && identity_matches && phi_automorphism && iota_additive &&
             iota_injective && graded_law && grading_ok;
    }
  } checks;
};

/// Builds the model and verifies every invariant exhaustively for degrees with
/// n+m <= n_max; throws InternalCheckFailed if any verification fails.
FreimanModel build_freiman_model(const RSet& a, const GradedGroups& gg, std::uint32_t a_elt,
                                 std::uint32_t n_max);

struct GeneralOutcome {
  std::variant<StructureCertificate, FreimanModel> v;
  Rational ratio;  // certificate ratio, or N/|A| for a model
  bool is_model() const { return std::holds_alternative<FreimanModel>(v); }
  const FreimanModel& model() const { return std::get<FreimanModel>(v); }
  const StructureCertificate& cert() const { return std::get<StructureCertificate>(v); }
};

/// Homogeneous pipeline in general rings: zero-divisor branch, else pick
/// a in (A-A) ∩ R^* (smallest index unless overridden), stabilize the graded
/// groups and materialize the Freiman model.
GeneralOutcome homogeneous_structure_general(
    const RSet& a, const Rational& k, std::uint32_t n_max,
    const ZdPolicy& zd = ZdPolicy{},
    std::optional<std::uint32_t> a_override = std::nullopt);

}  // namespace sumprod
