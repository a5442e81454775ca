#pragma once

#include "sumprod/freiman.hpp"
#include "sumprod/ruzsa.hpp"

namespace sumprod {

// --- F_p-linear structure of a ring with elementary abelian addition ---------

struct AlgebraView {
  RingHandle ring;
  std::uint32_t p = 0;
  std::uint32_t dim = 0;                       // N = p^dim
  std::vector<std::uint32_t> basis;            // ring elements spanning (R,+)
  std::vector<std::vector<std::uint8_t>> coords;  // [element][dim]
  std::vector<std::uint32_t> element_of;       // mixed-radix coordinate key -> element

  std::uint32_t key_of(const std::vector<std::uint8_t>& c) const;
  std::uint32_t elem(const std::vector<std::uint8_t>& c) const { return element_of[key_of(c)]; }
};

// Fails with HypothesisViolated unless (R,+) is elementary abelian of prime
// exponent; TooLarge above 4096 elements.
AlgebraView make_algebra_view(const RingHandle& ring);

struct AffineWitness {
  std::uint32_t dim = 0;
  std::vector<std::uint32_t> basis_elements;             // ring elements of the RREF rows
  std::vector<std::vector<std::uint8_t>> basis_coords;   // reduced echelon basis
  std::uint32_t offset = 0;                              // x; coset is x + V
  std::uint64_t overlap = 0;                             // |A ∩ (x+V)|
  bool affine_all_zd = false;                            // every element of x+V is a ZD
};

enum class OffsetMode { Best, ZeroOnly };

struct AffineSearchResult {
  std::optional<AffineWitness> best;
  std::int32_t max_all_zd_dimension = -1;  // largest all-ZD subspace dim enumerated
  std::vector<std::uint64_t> count_by_dim; // all-ZD subspaces found per dimension
  std::uint64_t nodes = 0;
};

/// Exhaustive echelon-basis enumeration of linear subspaces V (dim >= dim_min)
/// consisting entirely of zero divisors; for each V, offsets x maximizing
/// |A ∩ (x+V)|. require_affine_in_zd restricts offsets to cosets x+V that lie
/// entirely inside the zero-divisor set (the linearisation-oracle reading).
AffineSearchResult affine_zero_divisor_search(const RSet& a, std::uint32_t dim_min,
                                              bool require_affine_in_zd = false,
                                              OffsetMode offset_mode = OffsetMode::Best,
                                              std::uint64_t node_budget = 50000000);

bool validate_affine_witness(const RSet& a, const AffineWitness& w);

// --- experiments --------------------------------------------------------------

struct DivisionExperimentResult {
  Rational k_input;
  Rational k_kt;   // measured K for the extraction stage
  Rational k_hom;  // measured K for the invertible-pipeline stage
  std::optional<ExtractionOutcome> extraction;
  StructureCertificate certificate;
  std::optional<CoverWitness> cover;  // A ⊆ A'-A'+X
  bool cover_verified = false;        // A ⊆ a*S + X (or S + X) exact
};

DivisionExperimentResult division_ring_experiment(const RSet& a, const Rational& k,
                                                  const SrConfig& cfg = {});

struct ProjectionProfile {
  std::vector<std::uint64_t> proj_sizes;  // |π_j(A)|
  std::vector<std::uint64_t> fiber_max;   // max_v |A ∩ π_j^{-1}(v)|
};

struct ProductExperimentResult {
  int branch = 0;  // 1 or 2
  std::vector<std::uint64_t> a_j_sizes;  // |(A-A) ∩ π_j^{-1}(0)| per factor
  ProjectionProfile profile;
  // branch 1
  std::optional<std::size_t> j;
  bool inequality_ok = false;  // |A + A_j| >= |π_j(A)| |A_j|
  // branch 2
  Rational k_kt, k_hom;
  std::optional<ExtractionOutcome> extraction;
  std::optional<StructureCertificate> certificate;
  std::optional<CoverWitness> cover;
  bool cover_verified = false;
};

ProductExperimentResult product_ring_experiment(const RSet& a, const Rational& k,
                                                const SrConfig& cfg = {},
                                                const ZdPolicy& branch_threshold = {});

struct CyclicExperimentResult {
  std::uint32_t p = 0, kpow = 0;
  int branch = 0;
  std::uint64_t a1_size = 0;  // |(A-A) ∩ pR|
  // branch 1
  std::optional<CoverWitness> cover;  // A ⊆ A_1 - A_1 + X
  bool cover_verified = false;        // A ⊆ pR + X exact
  // branch 2
  Rational density;  // |A| / |R|
  Rational k_kt, k_hom;
  std::optional<ExtractionOutcome> extraction;
  std::optional<StructureCertificate> certificate;
};

CyclicExperimentResult cyclic_ring_experiment(const RSet& a, const Rational& k,
                                              const SrConfig& cfg = {},
                                              const ZdPolicy& branch_threshold = {});

struct AlgebraExperimentResult {
  int branch = 0;  // 1 = affine concentration, 2 = Freiman model
  std::string route;  // zd_majority | kt_zd_rich | general_zd_rich | good_subset
  std::optional<AffineWitness> witness;
  Rational k_kt;
  std::optional<ExtractionOutcome> extraction;
  std::optional<GeneralOutcome> general;
};

AlgebraExperimentResult algebra_experiment(const RSet& a, const Rational& k,
                                           std::uint32_t n_max = 6, std::uint32_t dim_min = 1);

struct M2AnnihilatorResult {
  std::vector<AffineWitness> spaces;  // left/right annihilator planes per projective vector
  std::int32_t searcher_max_dim = -1;
  std::uint64_t searcher_dim2_count = 0;
  bool cross_check_ok = false;  // searcher max dim == 2 and it finds exactly these planes
};

M2AnnihilatorResult m2_annihilator_spaces(const RingHandle& ring);

}  // namespace sumprod
