#include "sumprod/ring.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sumprod {

namespace {

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// --- polynomial helpers over F_p (coefficients ascending) ---

// a mod m, m monic
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& m, std::uint32_t p) {
  std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    if (lead) {
      for (std::size_t j = 0; j < dm; ++j) {
        std::uint64_t sub = static_cast<std::uint64_t>(lead) * m[j] % p;
        a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool poly_is_irreducible(const std::vector<std::uint32_t>& m, std::uint32_t p) {
  std::uint32_t k = static_cast<std::uint32_t>(m.size() - 1);
  if (k == 0) return false;
  if (k == 1) return true;
  // trial division by all monic polynomials of degree 1..k/2
  for (std::uint32_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> div(d + 1, 0);
      std::uint64_t t = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      div[d] = 1;
      if (poly_mod(std::vector<std::uint32_t>(m), div, p).empty()) return false;
    }
  }
  return true;
}

std::uint32_t mod_inverse_prime(std::uint32_t a, std::uint32_t p) {
  // Fermat; p prime, a != 0
  std::uint64_t r = 1, b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

std::vector<std::uint32_t> canonical_gf_modulus(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> m(k + 1, 0);
    std::uint64_t t = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      m[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    m[k] = 1;
    if (poly_is_irreducible(m, p)) return m;
  }
  fail(Errc::InternalCheckFailed, "no irreducible modulus found");
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      std::uint32_t k = 0;
      std::uint64_t v = q;
      while (v % d == 0) {
        v /= d;
        ++k;
      }
      if (v != 1) return std::nullopt;
      return std::make_pair(static_cast<std::uint32_t>(d), k);
    }
  }
  return std::make_pair(static_cast<std::uint32_t>(q), 1u);  // q prime
}

// --- RingSpec constructors ---

RingSpec RingSpec::cyclic(std::uint64_t q) {
  RingSpec s;
  s.kind = RingKind::Cyclic;
  s.q = q;
  return s;
}

RingSpec RingSpec::galois(std::uint32_t p, std::uint32_t k) {
  RingSpec s;
  s.kind = RingKind::GaloisField;
  s.p = p;
  s.k = k;
  return s;
}

RingSpec RingSpec::galois(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus) {
  RingSpec s = galois(p, k);
  s.modulus = std::move(modulus);
  return s;
}

RingSpec RingSpec::product(std::vector<RingSpec> parts) {
  RingSpec s;
  s.kind = RingKind::Product;
  s.parts = std::move(parts);
  return s;
}

RingSpec RingSpec::matrix(std::uint32_t d, RingSpec base_field) {
  RingSpec s;
  s.kind = RingKind::Matrix;
  s.dim = d;
  s.base.push_back(std::move(base_field));
  return s;
}

RingSpec RingSpec::table(std::uint32_t n, std::vector<std::uint32_t> add,
                         std::vector<std::uint32_t> mul, std::string label) {
  RingSpec s;
  s.kind = RingKind::Table;
  s.n = n;
  s.add_table = std::move(add);
  s.mul_table = std::move(mul);
  s.label = std::move(label);
  return s;
}

// --- arithmetic backends ---

std::uint32_t FiniteRing::add_raw(std::uint32_t a, std::uint32_t b) const {
  switch (kind_) {
    case RingKind::Cyclic:
      return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % q_);
    case RingKind::GaloisField: {
      std::uint32_t out = 0;
      for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t da = a / p_pow_[i] % p_;
        std::uint32_t db = b / p_pow_[i] % p_;
        out += (da + db) % p_ * p_pow_[i];
      }
      return out;
    }
    case RingKind::Product: {
      std::uint32_t out = 0;
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        std::uint32_t nj = factors_[j]->size();
        std::uint32_t xa = a / strides_[j] % nj;
        std::uint32_t xb = b / strides_[j] % nj;
        out += factors_[j]->add(xa, xb) * strides_[j];
      }
      return out;
    }
    case RingKind::Matrix: {
      std::uint32_t nb = base_->size();
      std::uint32_t out = 0;
      for (std::uint32_t e = 0; e < dim_ * dim_; ++e) {
        std::uint32_t xa = a / b_pow_[e] % nb;
        std::uint32_t xb = b / b_pow_[e] % nb;
        out += base_->add(xa, xb) * b_pow_[e];
      }
      return out;
    }
    case RingKind::Table:
      return tab_add_[static_cast<std::size_t>(a) * n_ + b];
  }
  return 0;
}

std::uint32_t FiniteRing::mul_raw(std::uint32_t a, std::uint32_t b) const {
  switch (kind_) {
    case RingKind::Cyclic:
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
    case RingKind::GaloisField: {
      // convolution then reduction by the monic modulus
      std::uint32_t conv[64] = {0};
      for (std::uint32_t i = 0; i < k_; ++i) {
        std::uint32_t da = a / p_pow_[i] % p_;
        if (!da) continue;
        for (std::uint32_t j = 0; j < k_; ++j) {
          std::uint32_t db = b / p_pow_[j] % p_;
          conv[i + j] = static_cast<std::uint32_t>(
              (conv[i + j] + static_cast<std::uint64_t>(da) * db) % p_);
        }
      }
      for (std::uint32_t i = 2 * k_ - 2 + 1; i-- > k_;) {
        std::uint32_t c = conv[i];
        if (!c) continue;
        conv[i] = 0;
        for (std::uint32_t j = 0; j < k_; ++j) {
          std::uint64_t sub = static_cast<std::uint64_t>(c) * gf_mod_[j] % p_;
          conv[i - k_ + j] =
              static_cast<std::uint32_t>((conv[i - k_ + j] + p_ - sub) % p_);
        }
      }
      std::uint32_t out = 0;
      for (std::uint32_t i = 0; i < k_; ++i) out += conv[i] * p_pow_[i];
      return out;
    }
    case RingKind::Product: {
      std::uint32_t out = 0;
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        std::uint32_t nj = factors_[j]->size();
        std::uint32_t xa = a / strides_[j] % nj;
        std::uint32_t xb = b / strides_[j] % nj;
        out += factors_[j]->mul(xa, xb) * strides_[j];
      }
      return out;
    }
    case RingKind::Matrix: {
      std::uint32_t nb = base_->size();
      std::uint32_t out = 0;
      for (std::uint32_t r = 0; r < dim_; ++r) {
        for (std::uint32_t c = 0; c < dim_; ++c) {
          std::uint32_t acc = 0;
          for (std::uint32_t t = 0; t < dim_; ++t) {
            std::uint32_t xa = a / b_pow_[r * dim_ + t] % nb;
            std::uint32_t xb = b / b_pow_[t * dim_ + c] % nb;
            acc = base_->add(acc, base_->mul(xa, xb));
          }
          out += acc * b_pow_[r * dim_ + c];
        }
      }
      return out;
    }
    case RingKind::Table:
      return tab_mul_[static_cast<std::size_t>(a) * n_ + b];
  }
  return 0;
}

std::uint32_t FiniteRing::pow(std::uint32_t a, std::uint32_t e) const {
  require(e >= 1, Errc::ZeroProductPower, "pow exponent must be >= 1");
  std::uint32_t out = a;
  for (std::uint32_t i = 1; i < e; ++i) out = mul(out, a);
  return out;
}

void FiniteRing::finish_build(const BuildOptions& opt) {
  // negation table
  neg_.resize(n_);
  switch (kind_) {
    case RingKind::Cyclic:
      for (std::uint32_t a = 0; a < n_; ++a)
        neg_[a] = static_cast<std::uint32_t>((q_ - a) % q_);
      break;
    case RingKind::GaloisField:
      for (std::uint32_t a = 0; a < n_; ++a) {
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < k_; ++i)
          out += (p_ - a / p_pow_[i] % p_) % p_ * p_pow_[i];
        neg_[a] = out;
      }
      break;
    case RingKind::Product:
      for (std::uint32_t a = 0; a < n_; ++a) {
        std::uint32_t out = 0;
        for (std::size_t j = 0; j < factors_.size(); ++j)
          out += factors_[j]->neg(a / strides_[j] % factors_[j]->size()) * strides_[j];
        neg_[a] = out;
      }
      break;
    case RingKind::Matrix:
      for (std::uint32_t a = 0; a < n_; ++a) {
        std::uint32_t out = 0;
        for (std::uint32_t e = 0; e < dim_ * dim_; ++e)
          out += base_->neg(a / b_pow_[e] % base_->size()) * b_pow_[e];
        neg_[a] = out;
      }
      break;
    case RingKind::Table:
      for (std::uint32_t a = 0; a < n_; ++a) {
        bool found = false;
        for (std::uint32_t b = 0; b < n_; ++b) {
          if (add_raw(a, b) == 0) {
            neg_[a] = b;
            found = true;
            break;
          }
        }
        require(found, Errc::MalformedTable,
                "no additive inverse for element " + std::to_string(a));
      }
      break;
  }

  // identity
  switch (kind_) {
    case RingKind::Cyclic:
      one_ = n_ == 1 ? 0u : 1u;
      break;
    case RingKind::GaloisField:
      one_ = 1u;
      break;
    case RingKind::Product: {
      std::uint32_t e = 0;
      bool all = true;
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (!factors_[j]->one()) {
          all = false;
          break;
        }
        e += *factors_[j]->one() * strides_[j];
      }
      one_ = all ? std::optional<std::uint32_t>(e) : std::nullopt;
      break;
    }
    case RingKind::Matrix: {
      std::uint32_t e = 0;
      for (std::uint32_t i = 0; i < dim_; ++i) e += *base_->one() * b_pow_[i * dim_ + i];
      one_ = e;
      break;
    }
    case RingKind::Table: {
      one_ = std::nullopt;
      for (std::uint32_t e = 0; e < n_ && !one_; ++e) {
        bool ok = true;
        for (std::uint32_t x = 0; x < n_; ++x) {
          if (mul_raw(e, x) != x || mul_raw(x, e) != x) {
            ok = false;
            break;
          }
        }
        if (ok) one_ = e;
      }
      break;
    }
  }
  if (one_) {  // detected, never assumed: verify the candidate
    for (std::uint32_t x = 0; x < n_; ++x) {
      if (mul_raw(*one_, x) != x || mul_raw(x, *one_) != x) {
        one_ = std::nullopt;
        break;
      }
    }
  }

  // commutativity flag
  switch (kind_) {
    case RingKind::Cyclic:
    case RingKind::GaloisField:
      commutative_ = true;
      break;
    case RingKind::Product:
      commutative_ = true;
      for (const auto& f : factors_) commutative_ = commutative_ && f->commutative();
      break;
    case RingKind::Matrix:
      commutative_ = dim_ == 1 || base_->size() == 1;
      break;
    case RingKind::Table: {
      commutative_ = true;
      for (std::uint32_t a = 0; a < n_ && commutative_; ++a)
        for (std::uint32_t b = a + 1; b < n_; ++b)
          if (mul_raw(a, b) != mul_raw(b, a)) {
            commutative_ = false;
            break;
          }
      break;
    }
  }

  bool memo = false;
  switch (opt.memo) {
    case BuildOptions::Memo::Off: memo = false; break;
    case BuildOptions::Memo::Auto: memo = n_ <= opt.memo_threshold; break;
    case BuildOptions::Memo::On: memo = n_ <= 4096; break;
  }
  if (memo && kind_ != RingKind::Table) {
    add_memo_.resize(static_cast<std::size_t>(n_) * n_);
    mul_memo_.resize(static_cast<std::size_t>(n_) * n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b) {
        add_memo_[static_cast<std::size_t>(a) * n_ + b] = add_raw(a, b);
        mul_memo_[static_cast<std::size_t>(a) * n_ + b] = mul_raw(a, b);
      }
  }
}

namespace {

// Singularity test over the base field by Gaussian elimination; a d x d
// matrix over a field is a zero divisor exactly when it is singular.
bool matrix_is_singular(const FiniteRing& base, std::uint32_t d,
                        std::vector<std::uint32_t> m,
                        const std::vector<std::uint32_t>& inv) {
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < d && rank < d; ++col) {
    std::uint32_t pivot = d;
    for (std::uint32_t row = rank; row < d; ++row)
      if (m[row * d + col] != 0) {
        pivot = row;
        break;
      }
    if (pivot == d) continue;
    for (std::uint32_t c = 0; c < d; ++c) std::swap(m[pivot * d + c], m[rank * d + c]);
    std::uint32_t scale = inv[m[rank * d + col]];
    for (std::uint32_t c = 0; c < d; ++c) m[rank * d + c] = base.mul(scale, m[rank * d + c]);
    for (std::uint32_t row = 0; row < d; ++row) {
      if (row == rank || m[row * d + col] == 0) continue;
      std::uint32_t f = m[row * d + col];
      for (std::uint32_t c = 0; c < d; ++c)
        m[row * d + c] = base.sub(m[row * d + c], base.mul(f, m[rank * d + c]));
    }
    ++rank;
  }
  return rank < d;
}

}  // namespace

const Bitset& FiniteRing::non_zero_divisors() const {
  std::call_once(zd_once_, [this] {
    Bitset nz(n_);
    switch (kind_) {
      case RingKind::Cyclic: {
        // r ∈ R^* in Z/q exactly when gcd(r, q) = 1 (q = 1: vacuously all)
        for (std::uint32_t r = 0; r < n_; ++r)
          if (n_ == 1 || std::gcd<std::uint64_t>(r, q_) == 1) nz.set(r);
        break;
      }
      case RingKind::GaloisField:
        // the modulus was verified irreducible at build, so this is a field
        for (std::uint32_t r = 1; r < n_; ++r) nz.set(r);
        break;
      case RingKind::Product: {
        // R^* of a product is the product of the factor R^*
        for (std::uint32_t r = 0; r < n_; ++r) {
          bool ok = true;
          for (std::size_t j = 0; j < factors_.size() && ok; ++j)
            ok = factors_[j]->non_zero_divisors().test(project(r, j));
          if (ok) nz.set(r);
        }
        break;
      }
      case RingKind::Matrix: {
        std::vector<std::uint32_t> inv(base_->size(), 0);
        for (std::uint32_t x = 1; x < base_->size(); ++x) inv[x] = *base_->inverse_of(x);
        std::vector<std::uint32_t> entries(static_cast<std::size_t>(dim_) * dim_);
        for (std::uint32_t r = 0; r < n_; ++r) {
          for (std::uint32_t e = 0; e < dim_ * dim_; ++e)
            entries[e] = r / b_pow_[e] % base_->size();
          if (!matrix_is_singular(*base_, dim_, entries, inv)) nz.set(r);
        }
        break;
      }
      case RingKind::Table: {
        // exhaustive scan; a zero product of nonzero elements marks both
        Bitset zd(n_);
        if (n_ >= 2) zd.set(0);
        for (std::uint32_t r = 1; r < n_; ++r) {
          if (zd.test(r)) continue;
          for (std::uint32_t a = 1; a < n_; ++a) {
            if (mul(r, a) == 0 || mul(a, r) == 0) {
              zd.set(r);
              zd.set(a);
              break;
            }
          }
        }
        for (std::uint32_t r = 0; r < n_; ++r)
          if (!zd.test(r)) nz.set(r);
        break;
      }
    }
    non_zd_ = std::move(nz);
  });
  return non_zd_;
}

std::optional<std::uint32_t> FiniteRing::inverse_of(std::uint32_t a) const {
  if (!one_) return std::nullopt;
  for (std::uint32_t x = 0; x < n_; ++x)
    if (mul(a, x) == *one_ && mul(x, a) == *one_) return x;
  return std::nullopt;
}

std::optional<std::uint32_t> FiniteRing::prime_characteristic() const {
  auto pp = prime_power(n_);
  if (!pp) return std::nullopt;
  std::uint32_t p = pp->first;
  for (std::uint32_t x = 0; x < n_; ++x) {
    // p*x by binary doubling
    std::uint32_t acc = 0, t = x, e = p;
    while (e) {
      if (e & 1) acc = add(acc, t);
      t = add(t, t);
      e >>= 1;
    }
    if (acc != 0) return std::nullopt;
  }
  return p;
}

// --- kind accessors ---

std::uint64_t FiniteRing::cyclic_modulus() const {
  require(kind_ == RingKind::Cyclic, Errc::InvalidSpec, "not a cyclic ring");
  return q_;
}
std::uint32_t FiniteRing::gf_p() const {
  require(kind_ == RingKind::GaloisField, Errc::InvalidSpec, "not a galois field");
  return p_;
}
std::uint32_t FiniteRing::gf_k() const {
  require(kind_ == RingKind::GaloisField, Errc::InvalidSpec, "not a galois field");
  return k_;
}
const std::vector<std::uint32_t>& FiniteRing::gf_modulus() const {
  require(kind_ == RingKind::GaloisField, Errc::InvalidSpec, "not a galois field");
  return gf_mod_;
}
std::size_t FiniteRing::factor_count() const {
  require(kind_ == RingKind::Product, Errc::InvalidSpec, "not a product ring");
  return factors_.size();
}
const RingHandle& FiniteRing::factor(std::size_t j) const {
  require(kind_ == RingKind::Product, Errc::InvalidSpec, "not a product ring");
  return factors_.at(j);
}
std::uint32_t FiniteRing::project(std::uint32_t x, std::size_t j) const {
  require(kind_ == RingKind::Product, Errc::InvalidSpec, "not a product ring");
  return x / strides_.at(j) % factors_[j]->size();
}
std::uint32_t FiniteRing::embed(const std::vector<std::uint32_t>& coords) const {
  require(kind_ == RingKind::Product, Errc::InvalidSpec, "not a product ring");
  require(coords.size() == factors_.size(), Errc::InvalidSpec, "coordinate arity mismatch");
  std::uint32_t out = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) out += coords[j] * strides_[j];
  return out;
}
std::uint32_t FiniteRing::matrix_dim() const {
  require(kind_ == RingKind::Matrix, Errc::NotM2, "not a matrix ring");
  return dim_;
}
const RingHandle& FiniteRing::matrix_base() const {
  require(kind_ == RingKind::Matrix, Errc::NotM2, "not a matrix ring");
  return base_;
}
std::uint32_t FiniteRing::matrix_entry(std::uint32_t x, std::uint32_t r, std::uint32_t c) const {
  require(kind_ == RingKind::Matrix, Errc::NotM2, "not a matrix ring");
  return x / b_pow_[r * dim_ + c] % base_->size();
}
std::uint32_t FiniteRing::matrix_of(const std::vector<std::uint32_t>& entries) const {
  require(kind_ == RingKind::Matrix, Errc::NotM2, "not a matrix ring");
  require(entries.size() == static_cast<std::size_t>(dim_) * dim_, Errc::InvalidSpec,
          "entry arity mismatch");
  std::uint32_t out = 0;
  for (std::size_t e = 0; e < entries.size(); ++e) out += entries[e] * b_pow_[e];
  return out;
}

std::string FiniteRing::element_name(std::uint32_t a) const {
  switch (kind_) {
    case RingKind::Cyclic:
      return std::to_string(a);
    case RingKind::GaloisField: {
      std::string out;
      for (std::uint32_t i = k_; i-- > 0;) {
        std::uint32_t c = a / p_pow_[i] % p_;
        if (!c) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
          out += std::to_string(c);
        } else {
          if (c != 1) out += std::to_string(c);
          out += i == 1 ? "a" : "a^" + std::to_string(i);
        }
      }
      return out.empty() ? "0" : out;
    }
    case RingKind::Product: {
      std::string out = "(";
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (j) out += ",";
        out += factors_[j]->element_name(project(a, j));
      }
      return out + ")";
    }
    case RingKind::Matrix: {
      std::string out = "[";
      for (std::uint32_t r = 0; r < dim_; ++r) {
        if (r) out += ",";
        out += "[";
        for (std::uint32_t c = 0; c < dim_; ++c) {
          if (c) out += ",";
          out += base_->element_name(matrix_entry(a, r, c));
        }
        out += "]";
      }
      return out + "]";
    }
    case RingKind::Table:
      return "#" + std::to_string(a);
  }
  return "?";
}

// --- construction ---

RingHandle build_ring(const RingSpec& spec, const BuildOptions& opt) {
  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  FiniteRing& r = *ring;
  r.kind_ = spec.kind;
  switch (spec.kind) {
    case RingKind::Cyclic: {
      require(spec.q >= 1, Errc::InvalidSpec, "cyclic requires q >= 1");
      require(spec.q <= opt.size_limit, Errc::SizeLimitExceeded,
              "cyclic ring size " + std::to_string(spec.q));
      r.q_ = spec.q;
      r.n_ = static_cast<std::uint32_t>(spec.q);
      r.descriptor_ = "Z/" + std::to_string(spec.q);
      break;
    }
    case RingKind::GaloisField: {
      require(is_prime_u64(spec.p), Errc::NonPrimeModulus,
              "p = " + std::to_string(spec.p) + " is not prime");
      require(spec.k >= 1 && spec.k <= 30, Errc::InvalidSpec, "gf requires 1 <= k <= 30");
      r.p_ = spec.p;
      r.k_ = spec.k;
      std::uint64_t n = 1;
      for (std::uint32_t i = 0; i < spec.k; ++i) {
        n *= spec.p;
        require(n <= opt.size_limit, Errc::SizeLimitExceeded, "gf ring size overflow");
      }
      r.n_ = static_cast<std::uint32_t>(n);
      r.p_pow_.resize(spec.k + 1);
      r.p_pow_[0] = 1;
      for (std::uint32_t i = 1; i <= spec.k; ++i) r.p_pow_[i] = r.p_pow_[i - 1] * spec.p;
      std::vector<std::uint32_t> m = spec.modulus.empty() ? canonical_gf_modulus(spec.p, spec.k)
                                                          : spec.modulus;
      require(m.size() == spec.k + 1, Errc::InvalidSpec,
              "modulus must have degree k = " + std::to_string(spec.k));
      for (auto& c : m) {
        require(c < spec.p, Errc::InvalidSpec, "modulus coefficient out of range");
      }
      require(m.back() != 0, Errc::InvalidSpec, "modulus leading coefficient is zero");
      if (m.back() != 1) {  // normalize monic
        std::uint32_t inv = mod_inverse_prime(m.back(), spec.p);
        for (auto& c : m)
          c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * inv % spec.p);
      }
      require(poly_is_irreducible(m, spec.p), Errc::ReducibleModulus,
              "modulus is reducible over F_" + std::to_string(spec.p));
      r.gf_mod_ = std::move(m);
      r.descriptor_ = "GF(" + std::to_string(spec.p) +
                      (spec.k > 1 ? "^" + std::to_string(spec.k) : "") + ")";
      break;
    }
    case RingKind::Product: {
      require(!spec.parts.empty(), Errc::InvalidSpec, "product requires >= 1 factors");
      std::uint64_t n = 1;
      std::string desc;
      for (const auto& part : spec.parts) {
        RingHandle f = build_ring(part, opt);
        n *= f->size();
        require(n <= opt.size_limit, Errc::SizeLimitExceeded, "product ring size overflow");
        if (!desc.empty()) desc += " x ";
        desc += f->descriptor();
        r.strides_.push_back(r.factors_.empty()
                                 ? 1u
                                 : r.strides_.back() * r.factors_.back()->size());
        r.factors_.push_back(std::move(f));
      }
      r.n_ = static_cast<std::uint32_t>(n);
      r.descriptor_ = "(" + desc + ")";
      break;
    }
    case RingKind::Matrix: {
      require(spec.dim >= 1, Errc::InvalidSpec, "matrix requires d >= 1");
      require(spec.base.size() == 1, Errc::InvalidSpec, "matrix requires one base field");
      RingHandle base = build_ring(spec.base[0], opt);
      require(is_finite_field(*base), Errc::InvalidSpec,
              "matrix base " + base->descriptor() + " is not a finite field");
      std::uint64_t n = 1;
      for (std::uint32_t e = 0; e < spec.dim * spec.dim; ++e) {
        n *= base->size();
        require(n <= opt.size_limit, Errc::SizeLimitExceeded, "matrix ring size overflow");
      }
      r.base_ = std::move(base);
      r.dim_ = spec.dim;
      r.n_ = static_cast<std::uint32_t>(n);
      r.b_pow_.resize(spec.dim * spec.dim + 1);
      r.b_pow_[0] = 1;
      for (std::uint32_t e = 1; e <= spec.dim * spec.dim; ++e)
        r.b_pow_[e] = r.b_pow_[e - 1] * r.base_->size();
      r.descriptor_ = "M_" + std::to_string(spec.dim) + "(" + r.base_->descriptor() + ")";
      break;
    }
    case RingKind::Table: {
      require(spec.n >= 1, Errc::InvalidSpec, "table requires n >= 1");
      require(spec.n <= 4096, Errc::SizeLimitExceeded, "table ring capped at n = 4096");
      std::size_t cells = static_cast<std::size_t>(spec.n) * spec.n;
      require(spec.add_table.size() == cells && spec.mul_table.size() == cells,
              Errc::MalformedTable, "tables must have n*n entries");
      for (std::uint32_t v : spec.add_table)
        require(v < spec.n, Errc::MalformedTable, "add table entry out of range");
      for (std::uint32_t v : spec.mul_table)
        require(v < spec.n, Errc::MalformedTable, "mul table entry out of range");
      r.n_ = spec.n;
      r.tab_add_ = spec.add_table;
      r.tab_mul_ = spec.mul_table;
      for (std::uint32_t x = 0; x < spec.n; ++x) {
        require(r.add_raw(0, x) == x && r.add_raw(x, 0) == x, Errc::MalformedTable,
                "index 0 is not the additive identity");
      }
      r.descriptor_ = spec.label.empty() ? "table(" + std::to_string(spec.n) + ")" : spec.label;
      break;
    }
  }
  r.finish_build(opt);
  return ring;
}

RingHandle subring_view(const RingHandle& parent, const Bitset& members,
                        const BuildOptions& opt) {
  require(members.size_bits() == parent->size(), Errc::InvalidSpec, "member set size mismatch");
  require(members.any(), Errc::EmptySet, "subring view of empty set");
  require(members.test(0), Errc::InvalidSpec, "member set must contain 0");
  std::vector<std::uint32_t> idx = members.to_indices();
  std::vector<std::int32_t> rank(parent->size(), -1);
  for (std::size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = static_cast<std::int32_t>(i);
  std::uint32_t n = static_cast<std::uint32_t>(idx.size());
  require(n <= 4096, Errc::SizeLimitExceeded, "subring view capped at 4096 elements");
  std::vector<std::uint32_t> add(static_cast<std::size_t>(n) * n), mul(add.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint32_t s = parent->add(idx[i], idx[j]);
      std::uint32_t m = parent->mul(idx[i], idx[j]);
      require(rank[s] >= 0, Errc::InvalidSpec, "member set not closed under +");
      require(rank[m] >= 0, Errc::InvalidSpec, "member set not closed under *");
      add[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint32_t>(rank[s]);
      mul[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint32_t>(rank[m]);
    }
  }
  RingSpec spec = RingSpec::table(n, std::move(add), std::move(mul),
                                  "sub(" + parent->descriptor() + ",n=" + std::to_string(n) + ")");
  return build_ring(spec, opt);
}

bool is_finite_field(const FiniteRing& ring) {
  if (!ring.has_identity() || ring.size() < 2) return false;
  for (std::uint32_t a = 1; a < ring.size(); ++a)
    if (!ring.inverse_of(a)) return false;
  return true;
}

// --- axiom checking ---

namespace {

template <class Check>
AxiomResult run_pairs(const FiniteRing& r, const char* name, bool exhaustive,
                      std::uint64_t samples, std::uint64_t seed, Check check) {
  AxiomResult res;
  res.name = name;
  res.pass = true;
  res.exhaustive = exhaustive;
  std::uint32_t n = r.size();
  if (exhaustive) {
    for (std::uint32_t a = 0; a < n && res.pass; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        if (!check(a, b)) {
          res.pass = false;
          res.witness = {{a, b, 0}};
          break;
        }
  } else {
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::uint32_t a = rng.below(n), b = rng.below(n);
      if (!check(a, b)) {
        res.pass = false;
        res.witness = {{a, b, 0}};
        break;
      }
    }
  }
  return res;
}

template <class Check>
AxiomResult run_triples(const FiniteRing& r, const char* name, bool exhaustive,
                        std::uint64_t samples, std::uint64_t seed, Check check) {
  AxiomResult res;
  res.name = name;
  res.pass = true;
  res.exhaustive = exhaustive;
  std::uint32_t n = r.size();
  if (exhaustive) {
    for (std::uint32_t a = 0; a < n && res.pass; ++a)
      for (std::uint32_t b = 0; b < n && res.pass; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          if (!check(a, b, c)) {
            res.pass = false;
            res.witness = {{a, b, c}};
            break;
          }
  } else {
    SplitMix64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::uint32_t a = rng.below(n), b = rng.below(n), c = rng.below(n);
      if (!check(a, b, c)) {
        res.pass = false;
        res.witness = {{a, b, c}};
        break;
      }
    }
  }
  return res;
}

}  // namespace

AxiomReport check_ring_axioms(const FiniteRing& r, const AxiomCheckOptions& opt) {
  AxiomReport rep;
  bool ex = r.size() <= opt.exhaustive_limit;
  rep.exhaustive = ex;
  std::uint32_t n = r.size();

  {
    AxiomResult res;
    res.name = "add_identity";
    res.pass = true;
    for (std::uint32_t a = 0; a < n; ++a)
      if (r.add(0, a) != a || r.add(a, 0) != a) {
        res.pass = false;
        res.witness = {{a, 0, 0}};
        break;
      }
    rep.results.push_back(std::move(res));
  }
  {
    AxiomResult res;
    res.name = "add_inverse";
    res.pass = true;
    for (std::uint32_t a = 0; a < n; ++a)
      if (r.add(a, r.neg(a)) != 0) {
        res.pass = false;
        res.witness = {{a, r.neg(a), 0}};
        break;
      }
    rep.results.push_back(std::move(res));
  }
  rep.results.push_back(run_pairs(r, "add_commutative", ex, opt.samples, opt.seed,
                                  [&](std::uint32_t a, std::uint32_t b) {
                                    return r.add(a, b) == r.add(b, a);
                                  }));
  rep.results.push_back(run_triples(r, "add_associative", ex, opt.samples, opt.seed ^ 1,
                                    [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
                                      return r.add(r.add(a, b), c) == r.add(a, r.add(b, c));
                                    }));
  rep.results.push_back(run_triples(r, "mul_associative", ex, opt.samples, opt.seed ^ 2,
                                    [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
                                      return r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c));
                                    }));
  rep.results.push_back(run_triples(r, "distributive_left", ex, opt.samples, opt.seed ^ 3,
                                    [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
                                      return r.mul(a, r.add(b, c)) ==
                                             r.add(r.mul(a, b), r.mul(a, c));
                                    }));
  rep.results.push_back(run_triples(r, "distributive_right", ex, opt.samples, opt.seed ^ 4,
                                    [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
                                      return r.mul(r.add(a, b), c) ==
                                             r.add(r.mul(a, c), r.mul(b, c));
                                    }));
  if (r.has_identity()) {
    AxiomResult res;
    res.name = "mul_identity";
    res.pass = true;
    std::uint32_t e = *r.one();
    for (std::uint32_t a = 0; a < n; ++a)
      if (r.mul(e, a) != a || r.mul(a, e) != a) {
        res.pass = false;
        res.witness = {{e, a, 0}};
        break;
      }
    rep.results.push_back(std::move(res));
  }

  rep.all_pass = true;
  for (const auto& res : rep.results) rep.all_pass = rep.all_pass && res.pass;

  AxiomResult comm = run_pairs(r, "mul_commutative", ex, opt.samples, opt.seed ^ 5,
                               [&](std::uint32_t a, std::uint32_t b) {
                                 return r.mul(a, b) == r.mul(b, a);
                               });
  rep.mul_commutative = comm.pass;
  return rep;
}

std::vector<std::uint32_t> classify_non_zero_divisors(const FiniteRing& ring) {
  return ring.non_zero_divisors().to_indices();
}

// --- parsing ---

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& s, char sep) {
  std::vector<std::uint32_t> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    try {
      out.push_back(static_cast<std::uint32_t>(std::stoul(cur)));
    } catch (const std::exception&) {
      fail(Errc::ConfigParse, "bad number in list: " + cur);
    }
  }
  return out;
}

struct KvMap {
  std::vector<std::pair<std::string, std::string>> kv;
  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : kv)
      if (k == key) return v;
    return std::nullopt;
  }
  std::string need(const std::string& key) const {
    auto v = get(key);
    require(v.has_value(), Errc::ConfigParse, "missing key: " + key);
    return *v;
  }
};

KvMap parse_kv(const std::string& line) {
  KvMap m;
  for (const auto& tok : split_ws(line)) {
    auto eq = tok.find('=');
    require(eq != std::string::npos, Errc::ConfigParse, "expected key=value, got: " + tok);
    m.kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return m;
}

std::uint64_t parse_u64(const std::string& s) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    fail(Errc::ConfigParse, "bad number: " + s);
  }
}

}  // namespace

RingSpec parse_ring_spec_line(const std::string& line, const std::string& base_dir) {
  KvMap m = parse_kv(line);
  std::string kind = m.need("kind");
  if (kind == "cyclic") return RingSpec::cyclic(parse_u64(m.need("q")));
  if (kind == "gf") {
    std::uint32_t p = static_cast<std::uint32_t>(parse_u64(m.need("p")));
    std::uint32_t k = static_cast<std::uint32_t>(parse_u64(m.need("k")));
    if (auto mod = m.get("mod")) return RingSpec::galois(p, k, parse_u32_list(*mod, ','));
    return RingSpec::galois(p, k);
  }
  if (kind == "product") {
    std::vector<RingSpec> parts;
    std::istringstream is(m.need("parts"));
    std::string path;
    while (std::getline(is, path, ',')) {
      std::filesystem::path full = std::filesystem::path(base_dir) / path;
      parts.push_back(parse_ring_spec_file(full.string()));
    }
    return RingSpec::product(std::move(parts));
  }
  if (kind == "matrix") {
    std::uint32_t d = static_cast<std::uint32_t>(parse_u64(m.need("d")));
    std::filesystem::path full = std::filesystem::path(base_dir) / m.need("base");
    return RingSpec::matrix(d, parse_ring_spec_file(full.string()));
  }
  if (kind == "table")
    fail(Errc::ConfigParse, "table rings require the file form with table rows");
  fail(Errc::ConfigParse, "unknown ring kind: " + kind);
}

RingSpec parse_ring_spec_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ConfigParse, "cannot open ring spec file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  require(!lines.empty(), Errc::ConfigParse, "ring spec file is empty: " + path);
  std::string dir = std::filesystem::path(path).parent_path().string();
  if (dir.empty()) dir = ".";
  KvMap m = parse_kv(lines[0]);
  if (m.need("kind") != "table") return parse_ring_spec_line(lines[0], dir);

  std::uint32_t n = static_cast<std::uint32_t>(parse_u64(m.need("n")));
  require(lines.size() == 1 + 2 * static_cast<std::size_t>(n), Errc::ConfigParse,
          "table spec needs n add rows then n mul rows");
  std::vector<std::uint32_t> add, mul;
  for (std::uint32_t i = 0; i < 2 * n; ++i) {
    auto row = split_ws(lines[1 + i]);
    require(row.size() == n, Errc::ConfigParse, "table row has wrong length");
    for (const auto& cell : row)
      (i < n ? add : mul).push_back(static_cast<std::uint32_t>(parse_u64(cell)));
  }
  return RingSpec::table(n, std::move(add), std::move(mul));
}

RingSpec parse_ring_token(const std::string& token) {
  auto num_after = [&](std::size_t pos) { return token.substr(pos); };
  if (token.size() > 1 && token[0] == 'z')
    return RingSpec::cyclic(parse_u64(num_after(1)));
  if (token.size() > 2 && token.compare(0, 2, "gf") == 0) {
    std::string rest = num_after(2);
    auto us = rest.find('_');
    if (us != std::string::npos) {
      return RingSpec::galois(static_cast<std::uint32_t>(parse_u64(rest.substr(0, us))),
                              static_cast<std::uint32_t>(parse_u64(rest.substr(us + 1))));
    }
    auto pp = prime_power(parse_u64(rest));
    require(pp.has_value(), Errc::ConfigParse, "gf token requires a prime power: " + token);
    return RingSpec::galois(pp->first, pp->second);
  }
  if (token.size() > 1 && token[0] == 'm') {
    auto us = token.find('_');
    require(us != std::string::npos && us > 1, Errc::ConfigParse, "bad matrix token: " + token);
    std::uint32_t d = static_cast<std::uint32_t>(parse_u64(token.substr(1, us - 1)));
    std::uint64_t p = parse_u64(token.substr(us + 1));
    return RingSpec::matrix(d, RingSpec::cyclic(p));
  }
  if (token.size() > 1 && token[0] == 'p') {
    auto x = token.find('x');
    require(x != std::string::npos && x > 1, Errc::ConfigParse, "bad product token: " + token);
    std::uint64_t a = parse_u64(token.substr(1, x - 1));
    std::uint64_t b = parse_u64(token.substr(x + 1));
    return RingSpec::product({RingSpec::cyclic(a), RingSpec::cyclic(b)});
  }
  fail(Errc::ConfigParse, "unknown ring token: " + token);
}

RingSpec parse_ring_arg(const std::string& arg) {
  if (arg.find("kind=") != std::string::npos) return parse_ring_spec_line(arg, ".");
  if (std::filesystem::exists(arg)) return parse_ring_spec_file(arg);
  return parse_ring_token(arg);
}

}  // namespace sumprod
