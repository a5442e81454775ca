#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sumprod/bitset.hpp"
#include "sumprod/util.hpp"

namespace sumprod {

enum class RingKind { Cyclic, GaloisField, Product, Matrix, Table };

/// Declarative description of a finite ring. Canonical element indexing:
///   cyclic     residue value
///   gf         polynomial coefficients, base-p little-endian
///   product    mixed radix, first factor least significant
///   matrix     row-major entries as base-|F| digits, entry (0,0) least significant
///   table      indices as given
struct RingSpec {
  RingKind kind = RingKind::Cyclic;
  std::uint64_t q = 0;                 // cyclic modulus
  std::uint32_t p = 0, k = 0;          // galois field
  std::vector<std::uint32_t> modulus;  // gf: ascending coefficients, size k+1; empty = canonical
  std::vector<RingSpec> parts;         // product factors
  std::uint32_t dim = 0;               // matrix dimension
  std::vector<RingSpec> base;          // matrix base field (exactly one entry)
  std::uint32_t n = 0;                 // table size
  std::vector<std::uint32_t> add_table, mul_table;  // row-major n*n
  std::string label;                   // optional display name (table rings)

  static RingSpec cyclic(std::uint64_t q);
  static RingSpec galois(std::uint32_t p, std::uint32_t k);
  static RingSpec galois(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus);
  static RingSpec product(std::vector<RingSpec> parts);
  static RingSpec matrix(std::uint32_t d, RingSpec base_field);
  static RingSpec table(std::uint32_t n, std::vector<std::uint32_t> add,
                        std::vector<std::uint32_t> mul, std::string label = "");
};

struct BuildOptions {
  enum class Memo { Auto, On, Off };
  Memo memo = Memo::Auto;
  std::uint32_t size_limit = 65536;
  std::uint32_t memo_threshold = 1024;  // Auto memoizes at or below this size
};

class FiniteRing;
using RingHandle = std::shared_ptr<const FiniteRing>;

/// A concrete finite ring with total arithmetic over indices [0, N).
/// Immutable after construction; safe to share across threads.
class FiniteRing {
 public:
  std::uint32_t size() const { return n_; }
  RingKind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }
  bool memoized() const { return !mul_memo_.empty(); }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return add_memo_.empty() ? add_raw(a, b) : add_memo_[static_cast<std::size_t>(a) * n_ + b];
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return mul_memo_.empty() ? mul_raw(a, b) : mul_memo_[static_cast<std::size_t>(a) * n_ + b];
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg_[b]); }
  std::uint32_t pow(std::uint32_t a, std::uint32_t e) const;  // e >= 1

  bool commutative() const { return commutative_; }
  bool has_identity() const { return one_.has_value(); }
  std::optional<std::uint32_t> one() const { return one_; }

  // R^*: lazily classified, cached, thread-safe.
  const Bitset& non_zero_divisors() const;
  bool is_zero_divisor(std::uint32_t a) const { return !non_zero_divisors().test(a); }

  // Brute-force two-sided inverse; nullopt when absent or the ring has no identity.
  std::optional<std::uint32_t> inverse_of(std::uint32_t a) const;

  std::string element_name(std::uint32_t a) const;
  void check_index(std::uint32_t a) const {
    require(a < n_, Errc::IndexOutOfRange, "element index " + std::to_string(a));
  }

  // kind-specific structure access
  std::uint64_t cyclic_modulus() const;
  std::uint32_t gf_p() const;
  std::uint32_t gf_k() const;
  const std::vector<std::uint32_t>& gf_modulus() const;
  std::size_t factor_count() const;
  const RingHandle& factor(std::size_t j) const;
  std::uint32_t project(std::uint32_t x, std::size_t j) const;
  std::uint32_t embed(const std::vector<std::uint32_t>& coords) const;
  std::uint32_t matrix_dim() const;
  const RingHandle& matrix_base() const;
  std::uint32_t matrix_entry(std::uint32_t x, std::uint32_t r, std::uint32_t c) const;
  std::uint32_t matrix_of(const std::vector<std::uint32_t>& entries) const;

  // Prime p such that (R,+) is elementary abelian of exponent p (N = p^d),
  // or nullopt. This is what makes R an algebra over F_p.
  std::optional<std::uint32_t> prime_characteristic() const;

 private:
  friend RingHandle build_ring(const RingSpec&, const BuildOptions&);
  friend RingHandle subring_view(const RingHandle&, const Bitset&, const BuildOptions&);
  FiniteRing() = default;

  std::uint32_t add_raw(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;
  void finish_build(const BuildOptions& opt);  // neg, flags, memo

  RingKind kind_ = RingKind::Cyclic;
  std::uint32_t n_ = 0;
  std::string descriptor_;
  // cyclic
  std::uint64_t q_ = 0;
  // galois field
  std::uint32_t p_ = 0, k_ = 0;
  std::vector<std::uint32_t> gf_mod_;   // monic, ascending, size k+1
  std::vector<std::uint32_t> p_pow_;    // p^0..p^k
  // product
  std::vector<RingHandle> factors_;
  std::vector<std::uint32_t> strides_;
  // matrix
  RingHandle base_;
  std::uint32_t dim_ = 0;
  std::vector<std::uint32_t> b_pow_;    // |F|^0..|F|^(d*d)
  // table
  std::vector<std::uint32_t> tab_add_, tab_mul_;
  // derived
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> add_memo_, mul_memo_;
  bool commutative_ = false;
  std::optional<std::uint32_t> one_;
  mutable std::once_flag zd_once_;
  mutable Bitset non_zd_;
};

RingHandle build_ring(const RingSpec& spec, const BuildOptions& opt = {});

/// "Drop identity" view: reindexes a subset closed under + and * as a
/// standalone table ring (index = rank among sorted parent indices).
RingHandle subring_view(const RingHandle& parent, const Bitset& members,
                        const BuildOptions& opt = {});

bool is_finite_field(const FiniteRing& ring);

// q = p^k with p prime, k >= 1
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q);

// --- axiom checking ---------------------------------------------------------

struct AxiomCheckOptions {
  std::uint32_t exhaustive_limit = 4096;
  std::uint64_t samples = 1000000;    // triples per sampled axiom
  std::uint64_t seed = 0x5350415853ull;  // fixed documented seed for sampled mode
};

struct AxiomResult {
  std::string name;
  bool pass = false;
  bool exhaustive = true;
  std::optional<std::array<std::uint32_t, 3>> witness;  // first failing triple
};

struct AxiomReport {
  bool all_pass = false;    // ring axioms only; commutativity of * is informational
  bool exhaustive = true;
  bool mul_commutative = false;
  std::vector<AxiomResult> results;
};

AxiomReport check_ring_axioms(const FiniteRing& ring, const AxiomCheckOptions& opt = {});

// R^* as a sorted index list (also forces the lazy classification).
std::vector<std::uint32_t> classify_non_zero_divisors(const FiniteRing& ring);

// --- spec text format -------------------------------------------------------

// One declaration per file: `kind=cyclic q=6`, `kind=gf p=3 k=2 mod=1,0,1`,
// `kind=product parts=<file,file>`, `kind=matrix d=2 base=<file>`,
// `kind=table n=<N>` followed by N add rows then N mul rows.
RingSpec parse_ring_spec_file(const std::string& path);
// Inline single-line form of the above (table kind not supported inline).
RingSpec parse_ring_spec_line(const std::string& line, const std::string& base_dir);
// Shorthand: z<q>, gf<q>, gf<p>_<k>, m<d>_<p>, p<a>x<b>
RingSpec parse_ring_token(const std::string& token);
// Path, inline `kind=...` line, or shorthand token.
RingSpec parse_ring_arg(const std::string& arg);

// Smallest-index monic irreducible of degree k over F_p.
std::vector<std::uint32_t> canonical_gf_modulus(std::uint32_t p, std::uint32_t k);

}  // namespace sumprod
