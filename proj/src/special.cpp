#include "sumprod/special.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace sumprod {

// --- algebra view -------------------------------------------------------------

std::uint32_t AlgebraView::key_of(const std::vector<std::uint8_t>& c) const {
  std::uint32_t key = 0, mult = 1;
  for (std::uint32_t i = 0; i < dim; ++i) {
    key += c[i] * mult;
    mult *= p;
  }
  return key;
}

AlgebraView make_algebra_view(const RingHandle& ring) {
  require(ring->size() <= 4096, Errc::TooLarge, "affine search capped at 4096 elements");
  std::optional<std::uint32_t> p = ring->prime_characteristic();
  require(p.has_value(), Errc::HypothesisViolated,
          ring->descriptor() + " is not an algebra over a prime field");
  AlgebraView v;
  v.ring = ring;
  v.p = *p;
  std::uint64_t n = 1;
  v.dim = 0;
  while (n < ring->size()) {
    n *= v.p;
    ++v.dim;
  }
  v.coords.assign(ring->size(), {});
  v.coords[0].assign(v.dim, 0);
  std::vector<std::uint32_t> known{0};
  Bitset seen(ring->size());
  seen.set(0);
  for (std::uint32_t e = 1; e < ring->size(); ++e) {
    if (seen.test(e)) continue;
    std::uint32_t b = static_cast<std::uint32_t>(v.basis.size());
    v.basis.push_back(e);
    std::size_t old = known.size();
    std::uint32_t ce = 0;
    for (std::uint32_t c = 1; c < v.p; ++c) {
      ce = ring->add(ce, e);
      for (std::size_t i = 0; i < old; ++i) {
        std::uint32_t t = ring->add(known[i], ce);
        require(!seen.test(t), Errc::InternalCheckFailed, "span collision while coordinatizing");
        seen.set(t);
        v.coords[t] = v.coords[known[i]];
        v.coords[t][b] = static_cast<std::uint8_t>(c);
        known.push_back(t);
      }
    }
  }
  require(v.basis.size() == v.dim, Errc::InternalCheckFailed, "basis size mismatch");
  v.element_of.assign(ring->size(), 0);
  for (std::uint32_t e = 0; e < ring->size(); ++e) v.element_of[v.key_of(v.coords[e])] = e;
  return v;
}

namespace {

// eliminate the pivot coordinates of v against RREF rows; canonical coset rep
std::vector<std::uint8_t> reduce_by_rref(const AlgebraView& view,
                                         const std::vector<std::vector<std::uint8_t>>& rows,
                                         const std::vector<std::uint32_t>& pivots,
                                         std::vector<std::uint8_t> v) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::uint8_t c = v[pivots[r]];
    if (!c) continue;
    for (std::uint32_t i = 0; i < view.dim; ++i)
      v[i] = static_cast<std::uint8_t>((v[i] + (view.p - c) * rows[r][i]) % view.p);
  }
  return v;
}

struct SubspaceScan {
  const AlgebraView& view;
  const Bitset& zd;  // zero-divisor elements
  const RSet& target;
  bool require_affine_in_zd;
  OffsetMode offset_mode;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  AffineSearchResult* out;

  void consider(const std::vector<std::vector<std::uint8_t>>& rows,
                const std::vector<std::uint32_t>& pivots) {
    const FiniteRing& ring = *view.ring;
    std::uint32_t k = static_cast<std::uint32_t>(rows.size());
    // enumerate the span; every element must be a zero divisor
    std::uint64_t span_size = 1;
    for (std::uint32_t i = 0; i < k; ++i) span_size *= view.p;
    nodes += span_size;
    require(nodes <= budget, Errc::TooLarge, "subspace enumeration budget exceeded");
    std::vector<std::uint8_t> combo(k, 0);
    std::vector<std::uint8_t> acc(view.dim, 0);
    while (true) {
      if (!zd.test(view.elem(acc))) return;  // not an all-zero-divisor subspace
      // next combination (mixed-radix increment), acc updated incrementally
      std::uint32_t d = 0;
      while (d < k) {
        for (std::uint32_t i = 0; i < view.dim; ++i)
          acc[i] = static_cast<std::uint8_t>((acc[i] + rows[d][i]) % view.p);
        combo[d] = static_cast<std::uint8_t>((combo[d] + 1) % view.p);
        if (combo[d] != 0) break;
        ++d;
      }
      if (d == k) break;
    }

    if (out->count_by_dim.size() <= k) out->count_by_dim.resize(k + 1, 0);
    ++out->count_by_dim[k];
    out->max_all_zd_dimension =
        std::max(out->max_all_zd_dimension, static_cast<std::int32_t>(k));

    // coset scan: canonical representative per coset, overlap with the target
    nodes += ring.size();
    require(nodes <= budget, Errc::TooLarge, "subspace enumeration budget exceeded");
    std::vector<std::uint64_t> overlap(ring.size(), 0);
    std::vector<std::uint8_t> all_zd(ring.size(), 1);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t e = 0; e < ring.size(); ++e) {
      std::uint32_t rep = view.elem(reduce_by_rref(view, rows, pivots, view.coords[e]));
      if (target.contains(e)) ++overlap[rep];
      if (!zd.test(e)) all_zd[rep] = 0;
      if (rep == e) reps.push_back(e);
    }
    for (std::uint32_t rep : reps) {
      if (offset_mode == OffsetMode::ZeroOnly && rep != 0) continue;
      if (require_affine_in_zd && !all_zd[rep]) continue;
      AffineWitness w;
      w.dim = k;
      w.basis_coords = rows;
      for (const auto& row : rows) w.basis_elements.push_back(view.elem(row));
      w.offset = rep;
      w.overlap = overlap[rep];
      w.affine_all_zd = all_zd[rep] == 1;
      better(w);
    }
  }

  void better(const AffineWitness& w) {
    if (!out->best) {
      out->best = w;
      return;
    }
    const AffineWitness& b = *out->best;
    if (w.overlap != b.overlap) {
      if (w.overlap > b.overlap) out->best = w;
      return;
    }
    if (w.dim != b.dim) {
      if (w.dim > b.dim) out->best = w;
      return;
    }
    if (w.basis_elements != b.basis_elements) {
      if (w.basis_elements < b.basis_elements) out->best = w;
      return;
    }
    if (w.offset < b.offset) out->best = w;
  }

  // enumerate RREF bases for a fixed pivot-column set, row by row
  void fill_rows(const std::vector<std::uint32_t>& pivots, std::size_t row,
                 std::vector<std::vector<std::uint8_t>>& rows) {
    std::uint32_t k = static_cast<std::uint32_t>(pivots.size());
    if (row == k) {
      consider(rows, pivots);
      return;
    }
    // free positions of this row: columns beyond its pivot that are not pivots
    std::vector<std::uint32_t> free_cols;
    for (std::uint32_t c = pivots[row] + 1; c < view.dim; ++c)
      if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cols.push_back(c);
    std::vector<std::uint8_t>& r = rows[row];
    std::fill(r.begin(), r.end(), 0);
    r[pivots[row]] = 1;
    // quick prune: each basis row itself must be a zero divisor
    std::function<void(std::size_t)> rec = [&](std::size_t fc) {
      if (fc == free_cols.size()) {
        ++nodes;
        require(nodes <= budget, Errc::TooLarge, "subspace enumeration budget exceeded");
        if (zd.test(view.elem(r))) fill_rows(pivots, row + 1, rows);
        return;
      }
      for (std::uint32_t val = 0; val < view.p; ++val) {
        r[free_cols[fc]] = static_cast<std::uint8_t>(val);
        rec(fc + 1);
      }
      r[free_cols[fc]] = 0;
    };
    rec(0);
  }

  void run(std::uint32_t dim_min) {
    for (std::uint32_t k = dim_min; k <= view.dim; ++k) {
      // choose pivot columns 0 <= p_1 < ... < p_k < dim
      std::vector<std::uint32_t> pivots(k);
      std::function<void(std::uint32_t, std::uint32_t)> choose = [&](std::uint32_t idx,
                                                                     std::uint32_t start) {
        if (idx == k) {
          std::vector<std::vector<std::uint8_t>> rows(k,
                                                      std::vector<std::uint8_t>(view.dim, 0));
          fill_rows(pivots, 0, rows);
          return;
        }
        for (std::uint32_t c = start; c < view.dim; ++c) {
          pivots[idx] = c;
          choose(idx + 1, c + 1);
        }
      };
      choose(0, 0);
    }
  }
};

}  // namespace

AffineSearchResult affine_zero_divisor_search(const RSet& a, std::uint32_t dim_min,
                                              bool require_affine_in_zd,
                                              OffsetMode offset_mode,
                                              std::uint64_t node_budget) {
  require(dim_min >= 1, Errc::ConfigParse, "dim_min must be >= 1");
  AlgebraView view = make_algebra_view(a.ring());
  const Bitset& nz = a.ring()->non_zero_divisors();
  Bitset zd(a.ring()->size());
  for (std::uint32_t e = 0; e < a.ring()->size(); ++e)
    if (!nz.test(e)) zd.set(e);

  AffineSearchResult res;
  SubspaceScan scan{view, zd, a, require_affine_in_zd, offset_mode, node_budget, 0, &res};
  scan.run(dim_min);
  res.nodes = scan.nodes;
  return res;
}

bool validate_affine_witness(const RSet& a, const AffineWitness& w) {
  AlgebraView view = make_algebra_view(a.ring());
  const FiniteRing& ring = *a.ring();
  if (w.dim != w.basis_coords.size() || w.dim == 0) return false;
  // reduced echelon form: ascending pivots, unit pivot entries, zeros above
  std::vector<std::uint32_t> pivots;
  for (const auto& row : w.basis_coords) {
    if (row.size() != view.dim) return false;
    std::uint32_t piv = view.dim;
    for (std::uint32_t c = 0; c < view.dim; ++c)
      if (row[c]) {
        piv = c;
        break;
      }
    if (piv == view.dim || row[piv] != 1) return false;
    if (!pivots.empty() && piv <= pivots.back()) return false;
    pivots.push_back(piv);
  }
  for (std::size_t r = 0; r < w.basis_coords.size(); ++r)
    for (std::size_t r2 = 0; r2 < w.basis_coords.size(); ++r2)
      if (r != r2 && w.basis_coords[r2][pivots[r]] != 0) return false;
  for (std::size_t r = 0; r < w.basis_coords.size(); ++r)
    if (view.elem(w.basis_coords[r]) != w.basis_elements[r]) return false;

  // every span element is a zero divisor; overlap recount
  std::uint64_t span_size = 1;
  for (std::uint32_t i = 0; i < w.dim; ++i) span_size *= view.p;
  std::uint64_t overlap = 0;
  bool affine_zd = true;
  std::vector<std::uint8_t> combo(w.dim, 0);
  for (std::uint64_t it = 0; it < span_size; ++it) {
    std::vector<std::uint8_t> acc(view.dim, 0);
    for (std::uint32_t r = 0; r < w.dim; ++r)
      for (std::uint32_t i = 0; i < view.dim; ++i)
        acc[i] = static_cast<std::uint8_t>((acc[i] + combo[r] * w.basis_coords[r][i]) % view.p);
    std::uint32_t v = view.elem(acc);
    if (!ring.is_zero_divisor(v)) return false;  // V must be all-ZD
    std::uint32_t shifted = ring.add(w.offset, v);
    if (a.contains(shifted)) ++overlap;
    if (!ring.is_zero_divisor(shifted)) affine_zd = false;
    std::uint32_t d = 0;
    while (d < w.dim) {
      combo[d] = static_cast<std::uint8_t>((combo[d] + 1) % view.p);
      if (combo[d] != 0) break;
      ++d;
    }
  }
  if (overlap != w.overlap) return false;
  if (w.affine_all_zd != affine_zd) return false;
  return true;
}

// --- experiments ----------------------------------------------------------------

namespace {

Rational measured_kt_k(const RSet& a) {
  Rational k = rat_max(Rational::ratio(sumset(a, a).card(), a.card()),
                       Rational::ratio(product_set(a, a).card(), a.card()));
  return rat_max(k, Rational::integer(1));
}

// collapse a dilated certificate to a plain subring certificate when A itself
// sits inside S and the inhomogeneous converse bound holds
StructureCertificate maybe_collapse(const RSet& a, StructureCertificate cert) {
  if (!cert.is_dilated()) return cert;
  const DilatedSubringCert& d = std::get<DilatedSubringCert>(cert.variant);
  if (!a.is_subset_of(d.s)) return cert;
  if (sumset(a, product_set(a, a)).card() > d.s.card()) return cert;
  StructureCertificate out = cert;
  out.variant = SubringCert{d.s, Rational::ratio(d.s.card(), a.card())};
  return out;
}

// final covering step shared by the experiments: A ⊆ a*S + X (or S + X)
bool verify_cover_against_certificate(const RSet& a, const StructureCertificate& cert,
                                      const RSet& x) {
  if (cert.is_saturated()) return true;  // S = R, containment trivial
  if (cert.is_subring())
    return a.is_subset_of(sumset(std::get<SubringCert>(cert.variant).s, x));
  if (cert.is_dilated()) {
    const DilatedSubringCert& d = std::get<DilatedSubringCert>(cert.variant);
    return a.is_subset_of(sumset(dilate(d.a, d.s, Side::Left), x));
  }
  return false;
}

}  // namespace

DivisionExperimentResult division_ring_experiment(const RSet& a, const Rational& k,
                                                  const SrConfig& cfg) {
  require(!a.empty(), Errc::EmptySet, "experiment over empty set");
  const RingHandle& ring = a.ring();
  require(is_finite_field(*ring), Errc::HypothesisViolated,
          ring->descriptor() + " is not a finite division ring");
  require(le_times(sumset(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A+A| > K|A|");
  require(le_times(product_set(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A*A| > K|A|");

  DivisionExperimentResult res;
  res.k_input = k;

  RSet a0 = a;
  if (a0.contains(0)) {
    Bitset b = a0.bits();
    b.reset(0);
    a0 = RSet(ring, std::move(b));
  }
  if (a0.empty()) {  // A = {0}: the zero subring certifies directly
    RSet zero = RSet::singleton(ring, 0);
    res.certificate.variant = SubringCert{zero, Rational::ratio(1, a.card())};
    res.cover_verified = true;
    return res;
  }

  // in a division ring, (A0-A0) \ R^* ⊆ {0}: option (i) cannot hold
  res.k_kt = measured_kt_k(a0);
  res.extraction = katz_tao_extract(a0, res.k_kt, ZdPolicy::never());
  const GoodSubset& good = res.extraction->good();

  const RSet& a_prime = good.a_prime;
  std::uint32_t pivot = a_prime.min_element();
  res.k_hom = rat_max(growth_report(a_prime).k_hom, Rational::integer(1));
  res.certificate = maybe_collapse(
      a, homogeneous_structure_invertible(a_prime, res.k_hom, pivot, cfg, ZdPolicy::never()));

  res.cover = ruzsa_cover(a, a_prime, CoverMode::Plus);
  res.cover_verified = verify_cover_against_certificate(a, res.certificate, res.cover->x);
  return res;
}

ProductExperimentResult product_ring_experiment(const RSet& a, const Rational& k,
                                                const SrConfig& cfg,
                                                const ZdPolicy& branch_threshold) {
  require(!a.empty(), Errc::EmptySet, "experiment over empty set");
  const RingHandle& ring = a.ring();
  require(ring->kind() == RingKind::Product, Errc::HypothesisViolated,
          ring->descriptor() + " is not a product ring");
  std::size_t nfac = ring->factor_count();
  for (std::size_t j = 0; j < nfac; ++j)
    require(is_finite_field(*ring->factor(j)), Errc::HypothesisViolated,
            "factor " + std::to_string(j) + " is not a finite field");
  require(le_times(sumset(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A+A| > K|A|");
  require(le_times(product_set(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A*A| > K|A|");

  ProductExperimentResult res;
  RSet diff = difference_set(a, a);

  std::vector<RSet> a_j;
  for (std::size_t j = 0; j < nfac; ++j) {
    RSet kernel_part(ring);
    diff.bits().for_each([&](std::uint32_t x) {
      if (ring->project(x, j) == 0) kernel_part.insert(x);
    });
    a_j.push_back(kernel_part);
    res.a_j_sizes.push_back(kernel_part.card());
  }
  for (std::size_t j = 0; j < nfac; ++j) {
    std::vector<std::uint64_t> fiber(ring->factor(j)->size(), 0);
    a.bits().for_each([&](std::uint32_t x) { ++fiber[ring->project(x, j)]; });
    std::uint64_t nonzero = 0, mx = 0;
    for (std::uint64_t f : fiber) {
      if (f) ++nonzero;
      mx = std::max(mx, f);
    }
    res.profile.proj_sizes.push_back(nonzero);
    res.profile.fiber_max.push_back(mx);
  }

  std::optional<std::size_t> big_j;
  for (std::size_t j = 0; j < nfac; ++j) {
    if (!branch_threshold.rich(res.a_j_sizes[j], a.card(), k)) continue;
    if (!big_j || res.a_j_sizes[j] > res.a_j_sizes[*big_j]) big_j = j;
  }
  if (big_j) {
    res.branch = 1;
    res.j = big_j;
    // fibre disjointness gives |A + A_j| >= |π_j(A)| |A_j|
    res.inequality_ok = sumset(a, a_j[*big_j]).card() >=
                        res.profile.proj_sizes[*big_j] * res.a_j_sizes[*big_j];
    require(res.inequality_ok, Errc::InternalCheckFailed,
            "projection inequality failed on a branch-1 instance");
    return res;
  }

  // strip zero divisors; every zero divisor of a product of fields has a zero
  // coordinate, so (A*-A*) \ R^* ⊆ union of the A_j, all below threshold
  RSet a_star = set_intersection(a, RSet(ring, Bitset(ring->non_zero_divisors())));
  require(!a_star.empty(), Errc::HypothesisViolated,
          "branch threshold declined but A has no non-zero-divisors");
  {
    RSet sd = difference_set(a_star, a_star);
    std::uint64_t count = sd.bits().and_not_count(ring->non_zero_divisors());
    std::uint64_t bound = 0;
    for (std::uint64_t s : res.a_j_sizes) bound += s;
    require(count <= bound, Errc::InternalCheckFailed, "zero-divisor bound miscount");
  }
  res.branch = 2;
  res.k_kt = measured_kt_k(a_star);
  res.extraction = katz_tao_extract(a_star, res.k_kt, ZdPolicy::never());
  const RSet& a_prime = res.extraction->good().a_prime;
  std::uint32_t pivot = a_prime.min_element();
  res.k_hom = rat_max(growth_report(a_prime).k_hom, Rational::integer(1));
  res.certificate = maybe_collapse(
      a, homogeneous_structure_invertible(a_prime, res.k_hom, pivot, cfg, ZdPolicy::never()));
  res.cover = ruzsa_cover(a, a_prime, CoverMode::Plus);
  res.cover_verified = verify_cover_against_certificate(a, *res.certificate, res.cover->x);
  return res;
}

CyclicExperimentResult cyclic_ring_experiment(const RSet& a, const Rational& k,
                                              const SrConfig& cfg,
                                              const ZdPolicy& branch_threshold) {
  require(!a.empty(), Errc::EmptySet, "experiment over empty set");
  const RingHandle& ring = a.ring();
  require(ring->kind() == RingKind::Cyclic, Errc::NotCyclicPrimePower,
          ring->descriptor() + " is not cyclic");
  auto pp = prime_power(ring->cyclic_modulus());
  require(pp.has_value(), Errc::NotCyclicPrimePower,
          ring->descriptor() + " is not of prime power order");
  require(le_times(sumset(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A+A| > K|A|");
  require(le_times(product_set(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A*A| > K|A|");

  CyclicExperimentResult res;
  res.p = pp->first;
  res.kpow = pp->second;

  RSet p_r(ring);  // p*R, the non-units (and exactly the zero divisors)
  for (std::uint32_t x = 0; x < ring->size(); x += res.p) p_r.insert(x);

  RSet diff = difference_set(a, a);
  RSet a1 = set_intersection(diff, p_r);
  res.a1_size = a1.card();

  if (branch_threshold.rich(res.a1_size, a.card(), k)) {
    res.branch = 1;
    res.cover = ruzsa_cover(a, a1, CoverMode::Plus);
    // A ⊆ A1 - A1 + X ⊆ pR + X
    res.cover_verified = a.is_subset_of(sumset(p_r, res.cover->x));
    require(res.cover_verified, Errc::InternalCheckFailed, "cyclic cover failed verification");
    return res;
  }

  res.branch = 2;
  RSet a_star = set_minus(a, p_r);
  require(!a_star.empty(), Errc::HypothesisViolated,
          "branch threshold declined but A consists of non-units");
  res.k_kt = measured_kt_k(a_star);
  res.extraction = katz_tao_extract(a_star, res.k_kt, ZdPolicy::never());
  const RSet& a_prime = res.extraction->good().a_prime;
  std::uint32_t pivot = a_prime.min_element();
  res.k_hom = rat_max(growth_report(a_prime).k_hom, Rational::integer(1));
  res.certificate = maybe_collapse(
      a, homogeneous_structure_invertible(a_prime, res.k_hom, pivot, cfg, ZdPolicy::never()));
  res.density = Rational::ratio(a.card(), ring->size());
  return res;
}

AlgebraExperimentResult algebra_experiment(const RSet& a, const Rational& k,
                                           std::uint32_t n_max, std::uint32_t dim_min) {
  require(!a.empty(), Errc::EmptySet, "experiment over empty set");
  const RingHandle& ring = a.ring();
  require(le_times(sumset(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A+A| > K|A|");
  require(le_times(product_set(a, a).card(), k, a.card()), Errc::HypothesisViolated,
          "|A*A| > K|A|");

  AlgebraExperimentResult res;
  const Bitset& nz = ring->non_zero_divisors();
  std::uint64_t zd_in_a = a.bits().and_not_count(nz);

  if (2 * zd_in_a > a.card()) {
    // most of A lies in the zero-divisor variety: affine concentration
    res.branch = 1;
    res.route = "zd_majority";
    RSet target = set_minus(a, RSet(ring, Bitset(nz)));
    AffineSearchResult search =
        affine_zero_divisor_search(target, dim_min, /*require_affine_in_zd=*/true);
    if (search.best)
      require(validate_affine_witness(target, *search.best), Errc::InternalCheckFailed,
              "affine witness failed validation");
    res.witness = search.best;
    return res;
  }

  RSet a_star = set_intersection(a, RSet(ring, Bitset(nz)));
  res.k_kt = measured_kt_k(a_star);
  res.extraction = katz_tao_extract(a_star, res.k_kt);
  if (res.extraction->is_zd_rich()) {
    res.branch = 1;
    res.route = "kt_zd_rich";
    RSet d = difference_set(a_star, a_star);
    RSet target = set_minus(d, RSet(ring, Bitset(nz)));
    AffineSearchResult search = affine_zero_divisor_search(
        target, dim_min, /*require_affine_in_zd=*/true, OffsetMode::ZeroOnly);
    if (search.best)
      require(validate_affine_witness(target, *search.best), Errc::InternalCheckFailed,
              "affine witness failed validation");
    res.witness = search.best;
    return res;
  }

  const RSet& a_prime = res.extraction->good().a_prime;
  Rational k_hom = rat_max(growth_report(a_prime).k_hom, Rational::integer(1));
  GeneralOutcome general = homogeneous_structure_general(a_prime, k_hom, n_max);
  if (!general.is_model()) {
    res.branch = 1;
    res.route = "general_zd_rich";
    RSet d = difference_set(a_prime, a_prime);
    RSet target = set_minus(d, RSet(ring, Bitset(nz)));
    AffineSearchResult search = affine_zero_divisor_search(
        target, dim_min, /*require_affine_in_zd=*/true, OffsetMode::ZeroOnly);
    if (search.best)
      require(validate_affine_witness(target, *search.best), Errc::InternalCheckFailed,
              "affine witness failed validation");
    res.witness = search.best;
    res.general = std::move(general);
    return res;
  }
  res.branch = 2;
  res.route = "good_subset";
  res.general = std::move(general);
  return res;
}

M2AnnihilatorResult m2_annihilator_spaces(const RingHandle& ring) {
  require(ring->kind() == RingKind::Matrix && ring->matrix_dim() == 2, Errc::NotM2,
          ring->descriptor() + " is not a 2x2 matrix ring");
  const RingHandle& base = ring->matrix_base();
  auto pp = prime_power(base->size());
  require(pp.has_value() && pp->second == 1, Errc::NotM2,
          "annihilator description requires a prime base field");
  std::uint32_t p = pp->first;
  const FiniteRing& f = *base;
  const FiniteRing& r = *ring;

  AlgebraView view = make_algebra_view(ring);

  // projective line: (1, t) for t in F_p, plus (0, 1)
  std::vector<std::array<std::uint32_t, 2>> pvecs;
  for (std::uint32_t t = 0; t < p; ++t) pvecs.push_back({1, t});
  pvecs.push_back({0, 1});

  M2AnnihilatorResult out;
  for (const auto& v : pvecs) {
    for (int side = 0; side < 2; ++side) {
      std::vector<std::uint32_t> elems;
      for (std::uint32_t m = 0; m < r.size(); ++m) {
        std::uint32_t e00 = r.matrix_entry(m, 0, 0), e01 = r.matrix_entry(m, 0, 1);
        std::uint32_t e10 = r.matrix_entry(m, 1, 0), e11 = r.matrix_entry(m, 1, 1);
        bool kills;
        if (side == 0) {  // left-annihilates the column vector v: M v = 0
          kills = f.add(f.mul(e00, v[0]), f.mul(e01, v[1])) == 0 &&
                  f.add(f.mul(e10, v[0]), f.mul(e11, v[1])) == 0;
        } else {  // right-annihilated by the row vector v: v M = 0
          kills = f.add(f.mul(v[0], e00), f.mul(v[1], e10)) == 0 &&
                  f.add(f.mul(v[0], e01), f.mul(v[1], e11)) == 0;
        }
        if (kills) elems.push_back(m);
      }
      // row-reduce the member coordinates into an RREF basis
      std::vector<std::vector<std::uint8_t>> rows;
      for (std::uint32_t e : elems) {
        std::vector<std::uint8_t> vec = view.coords[e];
        for (const auto& row : rows) {
          std::uint32_t piv = 0;
          while (piv < view.dim && !row[piv]) ++piv;
          std::uint8_t c = vec[piv];
          if (c)
            for (std::uint32_t i = 0; i < view.dim; ++i)
              vec[i] = static_cast<std::uint8_t>((vec[i] + (p - c) * row[i]) % p);
        }
        if (std::any_of(vec.begin(), vec.end(), [](std::uint8_t x) { return x != 0; })) {
          // normalize pivot to 1
          std::uint32_t piv = 0;
          while (!vec[piv]) ++piv;
          std::uint32_t inv = 1;
          for (std::uint32_t c = 1; c < p; ++c)
            if (c * vec[piv] % p == 1) inv = c;
          for (std::uint32_t i = 0; i < view.dim; ++i)
            vec[i] = static_cast<std::uint8_t>(vec[i] * inv % p);
          rows.push_back(vec);
        }
      }
      // back-substitute and sort rows by pivot for canonical RREF
      std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
        std::uint32_t px = 0, py = 0;
        while (px < view.dim && !x[px]) ++px;
        while (py < view.dim && !y[py]) ++py;
        return px < py;
      });
      for (std::size_t i = 0; i < rows.size(); ++i) {
        std::uint32_t piv = 0;
        while (piv < view.dim && !rows[i][piv]) ++piv;
        for (std::size_t j = 0; j < rows.size(); ++j) {
          if (i == j) continue;
          std::uint8_t c = rows[j][piv];
          if (c)
            for (std::uint32_t col = 0; col < view.dim; ++col)
              rows[j][col] =
                  static_cast<std::uint8_t>((rows[j][col] + (p - c) * rows[i][col]) % p);
        }
      }
      AffineWitness w;
      w.dim = static_cast<std::uint32_t>(rows.size());
      w.basis_coords = rows;
      for (const auto& row : rows) w.basis_elements.push_back(view.elem(row));
      w.offset = 0;
      w.overlap = elems.size();
      w.affine_all_zd = true;
      out.spaces.push_back(std::move(w));
    }
  }
  // deduplicate coinciding planes
  std::sort(out.spaces.begin(), out.spaces.end(),
            [](const AffineWitness& x, const AffineWitness& y) {
              return x.basis_coords < y.basis_coords;
            });
  out.spaces.erase(std::unique(out.spaces.begin(), out.spaces.end(),
                               [](const AffineWitness& x, const AffineWitness& y) {
                                 return x.basis_coords == y.basis_coords;
                               }),
                   out.spaces.end());

  // cross-check against the brute-force searcher
  AffineSearchResult search = affine_zero_divisor_search(RSet::full(ring), 1);
  out.searcher_max_dim = search.max_all_zd_dimension;
  out.searcher_dim2_count = search.count_by_dim.size() > 2 ? search.count_by_dim[2] : 0;
  bool planes_ok = true;
  for (const auto& w : out.spaces) planes_ok = planes_ok && w.dim == 2;
  out.cross_check_ok = planes_ok && out.searcher_max_dim == 2 &&
                       out.searcher_dim2_count == out.spaces.size();
  return out;
}

}  // namespace sumprod
