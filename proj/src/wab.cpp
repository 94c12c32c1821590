#include "quadrank/wab.hpp"

namespace quadrank {

namespace {

mpz_class binom(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class catalan(unsigned k) {
  std::vector<mpz_class> c{1};
  for (unsigned m = 1; m <= k; ++m) {
    mpz_class next = 0;
    for (unsigned i = 0; i < m; ++i) next += c[i] * c[m - 1 - i];
    c.push_back(next);
  }
  return c[k];
}

void require_positive(unsigned p) {
  if (p < 1) throw std::invalid_argument("degree formula needs p >= 1");
}

}  // namespace

mpz_class degree_closed_form(unsigned p, unsigned q) {
  require_positive(p);
  const unsigned n = 2 * p + q - 2;
  const mpz_class numer = (mpz_class(1) << n) * binom(n, 2 * p - 2) * binom(2 * p - 2, p - 1);
  if (numer % p != 0) throw TheoremViolation("degree numerator is not divisible by p");
  return numer / p;
}

mpz_class degree_product_form(unsigned p, unsigned q) {
  require_positive(p);
  const unsigned n = 2 * p + q - 2;
  return (mpz_class(1) << n) * binom(n, 2 * p - 2) * catalan(p - 1);
}

mpz_class degree_formula(unsigned p, unsigned q) {
  const mpz_class a = degree_closed_form(p, q), b = degree_product_form(p, q);
  if (a != b)
    throw TheoremViolation("degree forms disagree at (" + std::to_string(p) + ", " + std::to_string(q) +
                           "): " + a.get_str() + " vs " + b.get_str());
  return a;
}

std::string to_string(MembershipStatus s) {
  switch (s) {
    case MembershipStatus::witnessed: return "witnessed";
    case MembershipStatus::not_rank3: return "not_rank3";
    case MembershipStatus::extension_required: return "extension_required";
    case MembershipStatus::reconstruction_failed: return "reconstruction_failed";
  }
  return "unknown";
}

std::set<std::vector<std::uint32_t>> forward_image(const VeroneseModel& model, const QuadricSpace<Fp>& qs,
                                                   const SigmaEntry& e, const PrimeField& k) {
  std::set<std::vector<std::uint32_t>> out;
  std::vector<Section<Fp>> hs;
  for_each_projective_point(k, e.q + 1, [&](const Section<Fp>& h) { hs.push_back(h); });
  for_each_line(k, e.p, [&](const Section<Fp>& s, const Section<Fp>& t) {
    for (const auto& h : hs) {
      const auto q = q_ab(model, qs, e, s, t, h);
      if (q.is_zero()) throw TheoremViolation("Q(s,t,h) vanishes on a nondegenerate parameter");
      const Vector<Fp> c = projective_normalize(q.coords);
      std::vector<std::uint32_t> raw;
      for (Index i = 0; i < c.size(); ++i) raw.push_back(std::uint32_t(c(i).value()));
      out.insert(std::move(raw));
    }
  });
  return out;
}

}  // namespace quadrank
