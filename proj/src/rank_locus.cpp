#include "quadrank/rank_locus.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

namespace quadrank {

std::uint64_t projective_count(std::uint64_t p, std::size_t coords) {
  std::uint64_t total = 0, block = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t i = 0; i < coords; ++i) {
    if (total > kMax - block) return kMax;
    total += block;
    if (i + 1 < coords) {
      if (block > kMax / p) return kMax;
      block *= p;
    }
  }
  return total;
}

void projective_point(std::uint64_t p, std::size_t coords, std::uint64_t index, std::uint32_t* out) {
  // Points with the leading 1 at position k form a block of size p^(coords - 1 - k).
  std::uint64_t block = 1;
  for (std::size_t i = 1; i < coords; ++i) block *= p;
  std::size_t lead = 0;
  while (index >= block) {
    index -= block;
    block /= p;
    ++lead;
  }
  for (std::size_t i = 0; i < lead; ++i) out[i] = 0;
  out[lead] = 1;
  for (std::size_t i = coords; i-- > lead + 1;) {
    out[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
}

std::uint64_t projective_index(std::uint64_t p, std::size_t coords, const std::uint32_t* point) {
  std::uint64_t block = 1;
  for (std::size_t i = 1; i < coords; ++i) block *= p;
  std::uint64_t index = 0;
  std::size_t lead = 0;
  while (point[lead] == 0) {
    index += block;
    block /= p;
    ++lead;
  }
  std::uint64_t tail = 0;
  for (std::size_t i = lead + 1; i < coords; ++i) tail = tail * p + point[i];
  return index + tail;
}

FpRankKernel::FpRankKernel(const SymLinearMatrix<Fp>& m)
    : p_(0), n_(std::size_t(m.size())), forms_(m.forms()) {
  for (std::size_t j = 0; j < forms_ && p_ == 0; ++j)
    for (Index a = 0; a < m.size() && p_ == 0; ++a)
      for (Index b = 0; b < m.size(); ++b)
        if (m.slice(j)(a, b).bound()) {
          p_ = m.slice(j)(a, b).modulus();
          break;
        }
  if (p_ == 0) throw std::invalid_argument("rank kernel needs entries bound to a prime field");
  slices_.resize(forms_ * n_ * n_);
  for (std::size_t j = 0; j < forms_; ++j)
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        slices_[(j * n_ + a) * n_ + b] = std::uint64_t(Fp::make(p_, m.slice(j)(Index(a), Index(b)).value()).value());
  inverse_.assign(p_, 0);
  for (std::uint64_t x = 1; x < p_; ++x) inverse_[x] = pow_mod(x, p_ - 2, p_);
}

unsigned FpRankKernel::rank(const std::uint32_t* y, std::uint64_t* a) const {
  const std::uint64_t p = p_;
  const std::size_t nn = n_ * n_;
  std::fill(a, a + nn, 0);
  for (std::size_t j = 0; j < forms_; ++j) {
    if (y[j] == 0) continue;
    const std::uint64_t c = y[j];
    const std::uint64_t* s = slices_.data() + j * nn;
    for (std::size_t i = 0; i < nn; ++i) a[i] = (a[i] + c * s[i]) % p;
  }
  unsigned row = 0;
  for (std::size_t col = 0; col < n_ && row < n_; ++col) {
    std::size_t piv = row;
    while (piv < n_ && a[piv * n_ + col] == 0) ++piv;
    if (piv == n_) continue;
    if (piv != row)
      for (std::size_t j = col; j < n_; ++j) std::swap(a[piv * n_ + j], a[row * n_ + j]);
    const std::uint64_t inv = inverse_[a[row * n_ + col]];
    for (std::size_t i = row + 1; i < n_; ++i) {
      const std::uint64_t v = a[i * n_ + col];
      if (v == 0) continue;
      const std::uint64_t f = (p - v) * inv % p;
      for (std::size_t j = col; j < n_; ++j) a[i * n_ + j] = (a[i * n_ + j] + f * a[row * n_ + j]) % p;
    }
    ++row;
  }
  return row;
}

namespace {

struct ChunkResult {
  std::map<unsigned, std::uint64_t> counts;
  std::vector<PhiPoint> points;
  std::uint64_t scanned = 0;
};

}  // namespace

PhiReport enumerate_phi(const SymLinearMatrix<Fp>& m, const PrimeField& k, unsigned max_rank, const ScanOptions& opt) {
  const FpRankKernel kernel(m);
  if (kernel.modulus() != k.characteristic()) throw FieldMismatch("matrix and scan field differ");
  const std::uint64_t p = k.characteristic();
  const std::size_t coords = m.forms();

  PhiReport rep;
  rep.field = k.name();
  rep.k = max_rank;
  rep.exhaustive = opt.exhaustive;
  rep.total = projective_count(p, coords);
  rep.seed = opt.seed;
  const std::uint64_t work = opt.exhaustive ? rep.total : opt.samples;
  if (opt.exhaustive && rep.total > opt.budget)
    throw BudgetExceeded("exhaustive scan of " + std::to_string(rep.total) + " points exceeds the budget of " +
                         std::to_string(opt.budget) + "; use sampling");
  const std::uint64_t chunks = (work + ScanOptions::kChunk - 1) / ScanOptions::kChunk;
  rep.chunks = chunks;

  std::vector<ChunkResult> results(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    std::vector<std::uint32_t> y(coords);
    std::vector<std::uint64_t> scratch(kernel.size() * kernel.size());
    for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
      ChunkResult& r = results[c];
      const std::uint64_t begin = c * ScanOptions::kChunk, end = std::min(work, begin + ScanOptions::kChunk);
      Rng rng(derive_seed(opt.seed, c));
      std::uniform_int_distribution<std::uint32_t> digit(0, std::uint32_t(p - 1));
      std::uniform_int_distribution<std::uint64_t> pick(0, rep.total - 1);
      for (std::uint64_t i = begin; i < end; ++i) {
        projective_point(p, coords, opt.exhaustive ? i : pick(rng), y.data());
        const unsigned rk = kernel.rank(y.data(), scratch.data());
        ++r.counts[rk];
        ++r.scanned;
        if (rk <= max_rank) r.points.push_back({y, rk});
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, unsigned(std::max<std::uint64_t>(chunks, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& r : results) {
    rep.scanned += r.scanned;
    for (const auto& [rk, n] : r.counts) rep.rank_counts[rk] += n;
    rep.points.insert(rep.points.end(), std::make_move_iterator(r.points.begin()),
                      std::make_move_iterator(r.points.end()));
  }
  std::sort(rep.points.begin(), rep.points.end());
  rep.points.erase(std::unique(rep.points.begin(), rep.points.end()), rep.points.end());
  if (rep.points.size() > opt.max_listed) {
    rep.points.resize(opt.max_listed);
    rep.truncated = true;
  }
  return rep;
}

bool phi2_empty_check(const SymLinearMatrix<Fp>& m, const PrimeField& k, const ScanOptions& opt) {
  ScanOptions o = opt;
  o.exhaustive = true;
  return enumerate_phi(m, k, 2, o).at_most(2) == 0;
}

}  // namespace quadrank
