#include "osculant/hilbert.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "osculant/combinat.hpp"

namespace osculant::hilbert {

namespace {

using schemes::Configuration;
using schemes::DualSet;
using schemes::MultiIndex;
using schemes::PlacedScheme;

// Truncated local polynomial algebra: the coefficient space on monomials
// t^g with |g| <= maxdeg, plus the index shifts needed to multiply by an
// affine linear form.
struct LocalBasis {
  int n = 0;
  int maxdeg = 0;
  std::vector<MultiIndex> monomials;            // canonical graded order
  std::vector<std::vector<std::size_t>> shift;  // shift[g][k] = index of g - e_k (or npos)
  std::map<std::vector<int>, std::size_t> index;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  LocalBasis(int n_, int maxdeg_) : n(n_), maxdeg(maxdeg_) {
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, int pos, int used) -> void {
      if (pos == n) {
        monomials.emplace_back(cur);
        return;
      }
      for (int e = 0; e + used <= maxdeg; ++e) {
        cur[pos] = e;
        self(self, pos + 1, used + e);
      }
      cur[pos] = 0;
    };
    rec(rec, 0, 0);
    std::sort(monomials.begin(), monomials.end());
    for (std::size_t i = 0; i < monomials.size(); ++i) index[monomials[i].e] = i;
    shift.assign(monomials.size(), std::vector<std::size_t>(n, npos));
    for (std::size_t i = 0; i < monomials.size(); ++i) {
      for (int k = 0; k < n; ++k) {
        if (monomials[i].e[k] == 0) continue;
        std::vector<int> down = monomials[i].e;
        --down[k];
        shift[i][k] = index.at(down);
      }
    }
  }

  std::size_t size() const { return monomials.size(); }
};

// One scheme's rows. `emit` receives (column, coefficient vector over the
// local basis) for every degree-d monomial, in column order.
class RowBuilder {
 public:
  RowBuilder(const PlacedScheme& ps, int n, const linalg::Fp& F, const LocalBasis& basis)
      : n_(n), F_(F), basis_(basis), pivot_(ps.frame.pivot) {
    if (static_cast<int>(ps.frame.point.size()) != n + 1)
      throw std::domain_error("conditions: frame arity does not match ambient dimension");
    const u64 pin = F_.inv(ps.frame.point[pivot_]);
    // Linear form for coordinate i: constant Pn[i], plus dirs[k][i] t_k.
    forms_.assign(n + 1, std::vector<u64>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
      forms_[i][0] = F_.mul(ps.frame.point[i], pin);
      for (int k = 0; k < n; ++k) {
        u64 dk = ps.frame.dirs[k][i];
        const u64 adj = F_.mul(ps.frame.dirs[k][pivot_], forms_[i][0]);
        forms_[i][k + 1] = F_.sub(dk, adj);  // chart projection, defensive
      }
    }
  }

  template <typename Emit>
  void run(int d, Emit&& emit) {
    std::vector<u64> one(basis_.size(), 0);
    one[0] = 1;  // canonical order puts the constant monomial first
    col_ = 0;
    dfs(0, d, one, emit);
  }

 private:
  std::vector<u64> mul_linear(const std::vector<u64>& in, int coord) const {
    const auto& f = forms_[coord];
    std::vector<u64> out(in.size(), 0);
    for (std::size_t g = 0; g < in.size(); ++g) {
      u64 acc = f[0] ? F_.mul(f[0], in[g]) : 0;
      for (int k = 0; k < n_; ++k) {
        const std::size_t src = basis_.shift[g][k];
        if (src == LocalBasis::npos || f[k + 1] == 0 || in[src] == 0) continue;
        acc = F_.add(acc, F_.mul(f[k + 1], in[src]));
      }
      out[g] = acc;
    }
    return out;
  }

  template <typename Emit>
  void dfs(int coord, int rem, const std::vector<u64>& poly, Emit&& emit) {
    if (coord == n_) {
      if (pivot_ == n_ || rem == 0) {
        emit(col_++, poly);
        return;
      }
      std::vector<u64> acc = poly;
      for (int j = 0; j < rem; ++j) acc = mul_linear(acc, n_);
      emit(col_++, acc);
      return;
    }
    std::vector<u64> acc = poly;
    for (int e = 0; e <= rem; ++e) {
      if (e > 0 && coord != pivot_) acc = mul_linear(acc, coord);
      dfs(coord + 1, rem - e, acc, emit);
    }
  }

  int n_;
  const linalg::Fp& F_;
  const LocalBasis& basis_;
  int pivot_;
  std::vector<std::vector<u64>> forms_;
  std::size_t col_ = 0;
};

void scheme_rows(const PlacedScheme& ps, int n, int d, const linalg::Fp& F,
                 const std::map<int, LocalBasis>& bases, const DualSet& dual,
                 u64* block, std::size_t cols) {
  const LocalBasis& basis = bases.at(dual.max_order());
  std::vector<std::size_t> alpha_index(dual.size());
  for (std::size_t j = 0; j < dual.size(); ++j)
    alpha_index[j] = basis.index.at(dual.idx[j].e);
  RowBuilder rb(ps, n, F, basis);
  rb.run(d, [&](std::size_t col, const std::vector<u64>& coeff) {
    for (std::size_t j = 0; j < dual.size(); ++j)
      block[j * cols + col] = coeff[alpha_index[j]];
  });
}

// Shared matrix assembly; `limit` caps the number of schemes used.
linalg::DenseMatrix assemble(const Configuration& cfg, std::size_t limit, int d,
                             const linalg::PrimeModulus& prime) {
  if (d < 0) throw std::domain_error("conditions: negative degree");
  linalg::Fp F(prime);
  const std::size_t cols = combinat::dim_forms(cfg.n, d);

  std::vector<DualSet> duals;
  std::size_t rows = 0;
  std::map<int, LocalBasis> bases;
  for (std::size_t i = 0; i < limit; ++i) {
    duals.push_back(schemes::dual_set(cfg.schemes[i].kind, cfg.n));
    rows += duals.back().size();
    const int m = duals.back().max_order();
    if (!bases.count(m)) bases.emplace(m, LocalBasis(cfg.n, m));
  }

  linalg::DenseMatrix M(rows, cols);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    scheme_rows(cfg.schemes[i], cfg.n, d, F, bases, duals[i], M.row(r0), cols);
    r0 += duals[i].size();
  }
  return M;
}

u64 alternate_prime(u64 p) {
  return p == linalg::kCrossCheckPrime ? linalg::kDefaultPrime : linalg::kCrossCheckPrime;
}

}  // namespace

linalg::DenseMatrix conditions_matrix(const Configuration& cfg, int d,
                                      const linalg::PrimeModulus& prime) {
  return assemble(cfg, cfg.schemes.size(), d, prime);
}

std::vector<u64> condition_row(const PlacedScheme& ps, int n, const MultiIndex& alpha, int d,
                               const linalg::PrimeModulus& prime) {
  linalg::Fp F(prime);
  const std::size_t cols = combinat::dim_forms(n, d);
  const int maxdeg = alpha.total();
  std::map<int, LocalBasis> bases;
  bases.emplace(maxdeg, LocalBasis(n, maxdeg));
  std::vector<MultiIndex> only{alpha};
  // A one-functional "dual set" need not be an order ideal; bypass make().
  DualSet single;
  single.n = n;
  single.idx = std::move(only);
  std::vector<u64> row(cols, 0);
  scheme_rows(ps, n, d, F, bases, single, row.data(), cols);
  return row;
}

HilbertReport report_from_rank(int n, int d, std::uint64_t total_length, std::uint64_t rank,
                               const HilbertOptions& opt, bool cross_checked) {
  HilbertReport r;
  r.n = n;
  r.d = d;
  r.total_length = total_length;
  r.dim_forms = combinat::dim_forms(n, d);
  r.rank = rank;
  r.h0 = r.dim_forms - rank;
  r.h1 = total_length - rank;
  r.expected_h0 = r.dim_forms > total_length ? r.dim_forms - total_length : 0;
  r.expected_h1 = total_length > r.dim_forms ? total_length - r.dim_forms : 0;
  r.regular = (r.h0 == r.expected_h0) && (r.h1 == r.expected_h1);
  r.defective_evidence = !r.regular;
  r.trials = opt.trials;
  r.prime = opt.prime;
  r.seed = opt.seed;
  r.cross_checked = cross_checked;
  return r;
}

HilbertReport hilbert_report(const Configuration& cfg, int d, const HilbertOptions& opt) {
  linalg::PrimeModulus P(opt.prime);
  auto builder = [&](u64 trial_seed) {
    return conditions_matrix(schemes::replace_frames(cfg, trial_seed, P), d, P);
  };
  linalg::RankResult rr = linalg::max_rank_over_trials(builder, opt.trials, P, opt.seed);
  std::uint64_t rank = rr.rank;
  bool crossed = false;
  if (opt.cross_check && !rr.full()) {
    linalg::PrimeModulus P2(alternate_prime(opt.prime));
    auto builder2 = [&](u64 trial_seed) {
      return conditions_matrix(schemes::replace_frames(cfg, trial_seed, P2), d, P2);
    };
    linalg::RankResult rr2 = linalg::max_rank_over_trials(
        builder2, opt.trials, P2, linalg::derive_seed(opt.seed, P2.p));
    rank = std::max<std::uint64_t>(rank, rr2.rank);
    crossed = true;
  }
  return report_from_rank(cfg.n, d, cfg.total_length(), rank, opt, crossed);
}

HilbertReport add_jets_report(const Configuration& cfg, int s, int d, bool on_hyperplane,
                              const HilbertOptions& opt) {
  if (s < 0) throw std::domain_error("add_jets_report: negative jet count");
  Configuration aug = cfg;
  schemes::PlacementFlags fl;
  fl.support_on_h = on_hyperplane;
  fl.dirs_in_h.assign(cfg.n, false);
  if (on_hyperplane) {
    // A jet of the hyperplane: support and direction both inside it.
    fl.dirs_in_h[schemes::distinguished_axis(schemes::SchemeKind::jet2(), cfg.n)] = true;
  }
  for (int i = 0; i < s; ++i) {
    schemes::PlacedScheme ps;
    ps.kind = schemes::SchemeKind::jet2();
    ps.flags = fl;
    aug.schemes.push_back(ps);
  }
  linalg::PrimeModulus P(opt.prime);
  aug = schemes::replace_frames(aug, opt.seed, P);  // frames valid pre-trials
  return hilbert_report(aug, d, opt);
}

namespace {

std::vector<std::uint64_t> nested_ranks_one_prime(const Configuration& cfg,
                                                  const std::vector<std::size_t>& cuts, int d,
                                                  const HilbertOptions& opt, u64 prime) {
  linalg::PrimeModulus P(prime);
  const std::size_t cols = combinat::dim_forms(cfg.n, d);
  std::vector<std::uint64_t> best(cuts.size(), 0);
  for (unsigned t = 0; t < opt.trials; ++t) {
    const u64 trial_seed = linalg::derive_seed(linalg::derive_seed(opt.seed, prime), t);
    Configuration placed = schemes::replace_frames(cfg, trial_seed, P);
    linalg::DenseMatrix M = assemble(placed, placed.schemes.size(), d, P);
    // Row offsets per scheme block.
    std::vector<std::size_t> offset(placed.schemes.size() + 1, 0);
    for (std::size_t i = 0; i < placed.schemes.size(); ++i)
      offset[i + 1] = offset[i] + schemes::scheme_length(placed.schemes[i].kind, cfg.n);

    linalg::StreamingRank sr(cols, P);
    std::size_t fed = 0;  // rows already streamed
    for (std::size_t j = 0; j < cuts.size(); ++j) {
      const std::size_t upto = offset[cuts[j]];
      for (; fed < upto; ++fed) sr.add_row(M.row(fed));
      best[j] = std::max<std::uint64_t>(best[j], sr.rank());
    }
  }
  return best;
}

}  // namespace

std::vector<std::uint64_t> nested_ranks(const Configuration& cfg,
                                        const std::vector<std::size_t>& cuts, int d,
                                        const HilbertOptions& opt) {
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    if (cuts[j] > cfg.schemes.size() || (j > 0 && cuts[j] < cuts[j - 1]))
      throw std::domain_error("nested_ranks: cuts must ascend within the configuration");
  }
  std::vector<std::uint64_t> best = nested_ranks_one_prime(cfg, cuts, d, opt, opt.prime);
  if (opt.cross_check) {
    const std::size_t cols = combinat::dim_forms(cfg.n, d);
    std::vector<std::size_t> offset(cfg.schemes.size() + 1, 0);
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i)
      offset[i + 1] = offset[i] + schemes::scheme_length(cfg.schemes[i].kind, cfg.n);
    bool deficient = false;
    for (std::size_t j = 0; j < cuts.size(); ++j)
      deficient = deficient || best[j] < std::min<std::uint64_t>(offset[cuts[j]], cols);
    if (deficient) {
      auto other = nested_ranks_one_prime(cfg, cuts, d, opt, alternate_prime(opt.prime));
      for (std::size_t j = 0; j < cuts.size(); ++j)
        best[j] = std::max(best[j], other[j]);
    }
  }
  return best;
}

}  // namespace osculant::hilbert
