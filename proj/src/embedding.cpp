#include "quadrank/embedding.hpp"

namespace quadrank {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::pair<std::size_t, std::size_t>> sym2_pairs(std::size_t vars) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(sym2_size(vars));
  for (std::size_t a = 0; a < vars; ++a)
    for (std::size_t b = a; b < vars; ++b) out.emplace_back(a, b);
  return out;
}

VeroneseModel::VeroneseModel(unsigned n, unsigned d) : n_(n), d_(d) {
  if (n < 1 || d < 1) throw UnsupportedModel("Veronese model needs n >= 1 and d >= 1");
  if (binomial(n + d, n) > kMaxSections)
    throw UnsupportedModel("(P^" + std::to_string(n) + ", O(" + std::to_string(d) + ")) has more than " +
                           std::to_string(kMaxSections) + " sections");
  for (unsigned e = 0; e <= 2 * d; ++e) {
    bases_.push_back(monomials_of_degree(n + 1, e));
    std::map<Exponents, std::size_t> idx;
    for (std::size_t i = 0; i < bases_.back().size(); ++i) idx.emplace(bases_.back()[i], i);
    index_.push_back(std::move(idx));
  }
  for (unsigned ea = 0; ea <= 2 * d; ++ea)
    for (unsigned eb = 0; ea + eb <= 2 * d; ++eb) {
      std::vector<std::size_t> table;
      table.reserve(h0(ea) * h0(eb));
      Exponents m(n + 1);
      for (const auto& a : bases_[ea])
        for (const auto& b : bases_[eb]) {
          for (unsigned k = 0; k <= n; ++k) m[k] = static_cast<std::uint16_t>(a[k] + b[k]);
          table.push_back(index_[ea + eb].at(m));
        }
      products_.emplace(key(ea, eb), std::move(table));
    }
}

std::size_t VeroneseModel::index_of(const Exponents& m) const {
  const unsigned e = total_degree(m);
  if (m.size() != variables() || e >= index_.size()) throw ArityMismatch("monomial outside the model");
  return index_[e].at(m);
}

std::string VeroneseModel::name() const { return "P" + std::to_string(n_) + "/O(" + std::to_string(d_) + ")"; }

std::vector<SigmaEntry> VeroneseModel::sigma_list() const {
  std::vector<SigmaEntry> out;
  for (unsigned ell = 1; 2 * ell <= d_; ++ell) {
    const unsigned b = d_ - 2 * ell;
    out.push_back({ell, b, static_cast<unsigned>(h0(ell) - 1), static_cast<unsigned>(h0(b) - 1)});
  }
  return out;
}

CurveSampler::CurveSampler(const PrimeField& k) : k_(k) {
  if (k.characteristic() < 5) throw UnsupportedCharacteristic("curve sampling needs p >= 5");
}

std::vector<Vector<Fp>> CurveSampler::points_at(const Fp& s, const Fp& t) const {
  std::vector<Vector<Fp>> out;
  if (s.is_zero() && t.is_zero()) return out;
  const Fp a = s, b = s * s + t * t, c = s * s * s + t * t * t;
  auto push = [&](const Fp& x, const Fp& y) {
    Vector<Fp> z(5);
    z << s * x, t * x, s * s * y, s * t * y, t * t * y;
    for (Index i = 0; i < 5; ++i)
      if (!z(i).is_zero()) {
        out.push_back(std::move(z));
        return;
      }
  };
  const Fp one = k_(1), zero = k_(0);
  if (a.is_zero()) {
    // y (b x + c y) = 0
    push(one, zero);
    push(-c / b, one);  // b = t^2 != 0 here
    return out;
  }
  const auto r = sqrt(b * b - k_(4) * a * c);
  if (!r) return out;
  const Fp two_a = a + a;
  push((-b + *r) / two_a, one);
  if (!r->is_zero()) push((-b - *r) / two_a, one);
  return out;
}

std::vector<Vector<Fp>> CurveSampler::sample(std::size_t count, std::uint64_t seed) const {
  Rng rng(derive_seed(seed, 0));
  std::vector<Vector<Fp>> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Fp s = k_.random(rng), t = k_.random(rng);
    auto pts = points_at(s, t);
    if (!pts.empty()) out.push_back(std::move(pts.front()));
  }
  return out;
}

}  // namespace quadrank
