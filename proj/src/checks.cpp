#include "quadrank/wab_checks.hpp"

#include <limits>
#include <set>

namespace quadrank {

std::string point_string(const std::vector<std::uint32_t>& raw) {
  std::string s = "[";
  for (std::size_t i = 0; i < raw.size(); ++i) s += (i ? ":" : "") + std::to_string(raw[i]);
  return s + "]";
}

namespace {

std::vector<std::uint32_t> raw_of(const Vector<Fp>& v) {
  std::vector<std::uint32_t> raw;
  for (Index i = 0; i < v.size(); ++i) raw.push_back(std::uint32_t(v(i).value()));
  return raw;
}

Vector<Fp> vector_of(const std::vector<std::uint32_t>& raw, const PrimeField& k) {
  Vector<Fp> v(Index(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) v(Index(i)) = k(raw[i]);
  return v;
}

void tally_membership(DecompositionReport& rep, const MembershipResult<Fp>& r, const std::string& point) {
  ++rep.rank3;
  if (r.status == MembershipStatus::witnessed) {
    ++(r.witness->extension ? rep.witnessed_extension : rep.witnessed_base);
    ++rep.by_ell[r.witness->ell];
  } else {
    rep.unresolved.push_back(point + " " + to_string(r.status) + (r.detail.empty() ? "" : ": " + r.detail));
  }
}

DecompositionReport membership_path(const VeroneseModel& model, const QuadricSpace<Fp>& qs, const PrimeField& k,
                                    const DecompositionOptions& opt, DecompositionReport rep) {
  rep.path = "membership";
  const P1Membership<Fp> member(model, qs, opt.allow_extension);
  const auto m = assemble_m(qs);
  ScanOptions scan;
  scan.threads = opt.threads;
  scan.budget = opt.budget;
  scan.max_listed = std::numeric_limits<std::size_t>::max();
  if (opt.exhaustive) {
    const PhiReport phi = enumerate_phi(m, k, 3, scan);
    rep.scanned = phi.scanned;
    for (const auto& pt : phi.points) {
      if (pt.rank < 3) {
        ++rep.low_rank;
        rep.unresolved.push_back(point_string(pt.coords) + " has rank " + std::to_string(pt.rank));
        continue;
      }
      tally_membership(rep, member(vector_of(pt.coords, k)), point_string(pt.coords));
    }
    return rep;
  }

  // Random span elements that happen to have rank 3.
  scan.exhaustive = false;
  scan.samples = opt.span_draws;
  scan.seed = derive_seed(opt.seed, 1);
  const PhiReport phi = enumerate_phi(m, k, 3, scan);
  rep.scanned = phi.scanned;
  for (const auto& pt : phi.points) {
    if (rep.rank3 >= opt.samples) break;
    if (pt.rank < 3) {
      ++rep.low_rank;
      rep.unresolved.push_back(point_string(pt.coords) + " has rank " + std::to_string(pt.rank));
      continue;
    }
    tally_membership(rep, member(vector_of(pt.coords, k)), point_string(pt.coords));
    ++rep.from_span;
  }

  // The rest by rejection from forward images of random parameters.
  const auto entries = model.sigma_list();
  Rng rng(derive_seed(opt.seed, 2));
  while (rep.rank3 < opt.samples) {
    const SigmaEntry& e = entries[std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng)];
    const auto q = q_ab(model, qs, e, random_section(model, e.ell, k, rng), random_section(model, e.ell, k, rng),
                        random_section(model, e.b_power, k, rng));
    if (q.is_zero() || form_rank(qs.form(q.coords)) != 3) {
      ++rep.forward_rejected;
      continue;
    }
    const Vector<Fp> c = projective_normalize(q.coords);
    tally_membership(rep, member(c), point_string(raw_of(c)));
    ++rep.from_forward;
  }
  return rep;
}

DecompositionReport forward_path(const VeroneseModel& model, const QuadricSpace<Fp>& qs, const PrimeField& k,
                                 const DecompositionOptions& opt, DecompositionReport rep) {
  rep.path = "forward";
  ScanOptions scan;
  scan.threads = opt.threads;
  scan.budget = opt.budget;
  scan.max_listed = std::numeric_limits<std::size_t>::max();
  const PhiReport phi = enumerate_phi(assemble_m(qs), k, 3, scan);
  rep.scanned = phi.scanned;
  std::set<std::vector<std::uint32_t>> rank3;
  for (const auto& pt : phi.points) {
    if (pt.rank < 3) {
      ++rep.low_rank;
      rep.unresolved.push_back(point_string(pt.coords) + " has rank " + std::to_string(pt.rank));
    } else {
      rank3.insert(pt.coords);
    }
  }
  rep.rank3 = rank3.size();
  std::set<std::vector<std::uint32_t>> image;
  for (const auto& e : model.sigma_list()) image.merge(forward_image(model, qs, e, k));
  rep.forward_count = image.size();
  for (const auto& pt : rank3)
    if (!image.count(pt)) rep.unresolved.push_back(point_string(pt) + " is not a forward image");
  for (const auto& pt : image)
    if (!rank3.count(pt)) rep.unresolved.push_back(point_string(pt) + " is a forward image outside the rank-3 locus");
  rep.sets_equal = rank3 == image;
  if (rep.sets_equal) rep.by_ell[1] = rep.rank3;
  return rep;
}

}  // namespace

DecompositionReport decomposition_check(const VeroneseModel& model, const PrimeField& k, const DecompositionOptions& opt) {
  DecompositionReport rep;
  rep.instance = model.name();
  rep.field = k.name();
  rep.exhaustive = opt.exhaustive;
  rep.seed = opt.seed;
  const auto qs = quad_ideal_basis(model, k);
  if (model.n() == 1) {
    if (k.characteristic() <= model.d())
      throw UnsupportedCharacteristic("decomposition on P^1 needs p > d (p = " + std::to_string(k.characteristic()) +
                                      ", d = " + std::to_string(model.d()) + ")");
    return membership_path(model, qs, k, opt, std::move(rep));
  }
  if (model.d() != 2) throw UnsupportedModel("decomposition on P^n with n >= 2 is checked for d = 2 only");
  if (!opt.exhaustive) throw UnsupportedModel("the forward comparison needs an exhaustive scan");
  return forward_path(model, qs, k, opt, std::move(rep));
}

SpanReport qr3_span_check(const VeroneseModel& model, const PrimeField& k, std::uint64_t seed, std::uint64_t patience) {
  if (k.characteristic() <= 3) throw UnsupportedCharacteristic("the span check needs characteristic other than 2, 3");
  const auto qs = quad_ideal_basis(model, k);
  const auto entries = model.sigma_list();
  SpanReport rep;
  rep.target = qs.dimension();
  rep.seed = seed;
  Rng rng(derive_seed(seed, 0x53));
  std::vector<Section<Fp>> rows;
  std::uint64_t idle = 0;
  while (rep.span < rep.target && idle < patience) {
    const SigmaEntry& e = entries[rep.draws % entries.size()];
    ++rep.draws;
    const auto q = q_ab(model, qs, e, random_section(model, e.ell, k, rng), random_section(model, e.ell, k, rng),
                        random_section(model, e.b_power, k, rng));
    rows.emplace_back(q.coords.data(), q.coords.data() + q.coords.size());
    const auto r = std::size_t(span_rank<Fp>(rows));
    if (r > rep.span) {
      rep.span = r;
      idle = 0;
    } else {
      rows.pop_back();
      ++idle;
    }
  }
  return rep;
}

namespace {

bool is_constant(const MultiPoly<Fp>& f) { return f.degree() == 0; }

bool squarefree_form(const MultiPoly<Fp>& f) { return f.degree() == 0 || odd_even_split(f).half.degree() == 0; }

}  // namespace

RoundtripReport uniqueness_roundtrip(const VeroneseModel& model, const SigmaEntry& e, const PrimeField& k,
                                     std::uint64_t trials, std::uint64_t seed) {
  if (model.n() != 1) throw UnsupportedModel("round trips need membership, which is implemented on P^1 only");
  const auto qs = quad_ideal_basis(model, k);
  const P1Membership<Fp> member(model, qs);
  using E = extension_t<Fp>;
  const E ezero = member.extension_field()(0);

  RoundtripReport rep;
  rep.instance = model.name() + " ell=" + std::to_string(e.ell);
  rep.trials = trials;
  rep.seed = seed;
  Rng rng(derive_seed(seed, 0x77));
  std::optional<std::tuple<Section<Fp>, Section<Fp>, Section<Fp>, Vector<Fp>>> previous;

  for (std::uint64_t trial = 0; trial < trials;) {
    const Section<Fp> s = random_section(model, e.ell, k, rng), t = random_section(model, e.ell, k, rng),
                      h = random_section(model, e.b_power, k, rng);
    const MultiPoly<Fp> fs = model.section_poly(s, e.ell), ft = model.section_poly(t, e.ell),
                        fh = model.section_poly(h, e.b_power);
    if (span_rank<Fp>({s, t}) != 2 || fh.is_zero() || !is_constant(binary_gcd(fs, ft)) || !squarefree_form(fh) ||
        !is_constant(binary_gcd(fh, fs * ft))) {
      ++rep.rejected_draws;
      continue;
    }
    ++trial;
    const std::string where = "trial " + std::to_string(trial) + " s=" + to_string(fs, {"u", "v"}) +
                              " t=" + to_string(ft, {"u", "v"}) + " h=" + to_string(fh, {"u", "v"});
    const auto q = q_ab(model, qs, e, s, t, h);
    const auto res = member(q.coords);
    if (res.status != MembershipStatus::witnessed) {
      rep.failures.push_back(where + ": " + to_string(res.status) + " " + res.detail);
      continue;
    }
    const auto& w = *res.witness;
    if (w.ell != e.ell) {
      rep.failures.push_back(where + ": recovered ell = " + std::to_string(w.ell));
      continue;
    }
    auto lifted = [&](const Section<Fp>& x) {
      Section<E> out;
      for (const auto& c : x) out.push_back(member.lift_scalar(c));
      return out;
    };
    const auto ws = binary_coefficients(w.s, e.ell, ezero), wt = binary_coefficients(w.t, e.ell, ezero),
               wh = binary_coefficients(w.h, e.b_power, ezero);
    if (span_rank<E>({lifted(s), lifted(t), ws, wt}) != 2) {
      rep.failures.push_back(where + ": <s,t> not recovered");
      continue;
    }
    if (span_rank<E>({lifted(h), wh}) != 1) {
      rep.failures.push_back(where + ": <h> not recovered");
      continue;
    }
    ++rep.passed;

    const Vector<Fp> image = projective_normalize(q.coords);
    if (previous) {
      const auto& [ps, pt, ph, pimage] = *previous;
      const bool same_params = span_rank<Fp>({s, t, ps, pt}) == 2 && span_rank<Fp>({h, ph}) == 1;
      ++rep.injectivity_pairs;
      if (!same_params && image == pimage) rep.failures.push_back(where + ": image repeats the previous trial");
    }
    previous.emplace(s, t, h, image);
  }
  return rep;
}

G2Report veronese_g2_check(unsigned n) {
  if (n < 2 || n > 3) throw UnsupportedModel("the Grassmannian check runs for n = 2 and n = 3");
  G2Report rep;
  rep.n = n;
  const VeroneseModel model(n, 2);
  const RationalField q;
  const auto qs = quad_ideal_basis(model, q);
  rep.kernel_dim = qs.dimension();
  const std::uint64_t big = std::uint64_t(n + 1) * (n + 1);
  rep.representation_count = big * (big - 1) / 12;
  rep.displayed_product = binomial(n + 1, 2) * binomial(n + 2, 2);

  auto sys = coefficient_polys(model, qs, model.sigma_list().front());
  rep.independent = independent_count(sys, q(1));
  if (std::size_t(rep.independent) != rep.kernel_dim)
    rep.failures.push_back("independent G_j = " + std::to_string(rep.independent) + " but dim I_2 = " +
                           std::to_string(rep.kernel_dim));
  if (rep.kernel_dim != rep.representation_count)
    rep.failures.push_back("dim I_2 = " + std::to_string(rep.kernel_dim) + " differs from N^2(N^2-1)/12 = " +
                           std::to_string(rep.representation_count));
  try {
    rep.certified = plucker_certify(sys, q(1)).expressions.size();
  } catch (const TheoremViolation& err) {
    rep.failures.push_back(err.what());
  }

  if (n == 2) {
    const PrimeField k(5);
    const auto qs5 = quad_ideal_basis(model, k);
    const PhiReport phi = enumerate_phi(assemble_m(qs5), k, 3, {});
    rep.phi3_count = phi.at_most(3);
    for_each_line(k, 2, [&](const Section<Fp>&, const Section<Fp>&) { ++rep.parameter_count; });
    rep.counted = true;
    if (rep.phi3_count != rep.parameter_count)
      rep.failures.push_back("rank-3 count " + std::to_string(rep.phi3_count) + " differs from the " +
                             std::to_string(rep.parameter_count) + " parameter points");
  }
  return rep;
}

IdentityTally vanishing_exhaustive_p1_2(const PrimeField& k) {
  const VeroneseModel model(1, 2);
  const auto qs = quad_ideal_basis(model, k);
  const SigmaEntry e = model.sigma_list().front();
  IdentityTally tally{"vanishing-exhaustive", 0, 0, {}};
  const std::uint64_t p = k.characteristic();
  for (std::uint64_t code = 0; code < p * p * p * p * p; ++code) {
    std::uint64_t rest = code;
    auto digit = [&] {
      const Fp x = k.element(rest % p);
      rest /= p;
      return x;
    };
    const Section<Fp> s{digit(), digit()}, t{digit(), digit()}, h{digit()};
    const bool degenerate = span_rank<Fp>({s, t}) <= 1 || h[0].is_zero();
    ++tally.instances;
    if (q_ab(model, qs, e, s, t, h).is_zero() != degenerate) {
      ++tally.failures;
      if (tally.witnesses.size() < 5)
        tally.witnesses.push_back("s=(" + to_string(s[0]) + "," + to_string(s[1]) + ") t=(" + to_string(t[0]) + "," +
                                  to_string(t[1]) + ") h=" + to_string(h[0]));
    }
  }
  return tally;
}

}  // namespace quadrank
