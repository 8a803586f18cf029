#include "osculant/schemes.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "osculant/combinat.hpp"

namespace osculant::schemes {

int MultiIndex::total() const {
  int t = 0;
  for (int v : e) t += v;
  return t;
}

bool MultiIndex::operator<(const MultiIndex& o) const {
  const int ta = total();
  const int tb = o.total();
  if (ta != tb) return ta < tb;
  return e < o.e;
}

DualSet DualSet::make(int n, std::vector<MultiIndex> indices) {
  if (n < 0) throw std::domain_error("dual set: negative variable count");
  for (const auto& a : indices) {
    if (a.size() != n) throw std::domain_error("dual set: multi-index arity mismatch");
    for (int v : a.e)
      if (v < 0) throw std::domain_error("dual set: negative exponent");
  }
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!is_order_ideal(n, indices))
    throw std::domain_error("dual set: not closed under division");
  DualSet d;
  d.n = n;
  d.idx = std::move(indices);
  return d;
}

int DualSet::max_order() const {
  int m = 0;
  for (const auto& a : idx) m = std::max(m, a.total());
  return m;
}

bool DualSet::contains(const MultiIndex& a) const {
  return std::binary_search(idx.begin(), idx.end(), a,
                            [](const MultiIndex& x, const MultiIndex& y) { return x < y; });
}

bool is_order_ideal(int n, const std::vector<MultiIndex>& idx) {
  std::set<std::vector<int>> have;
  for (const auto& a : idx) have.insert(a.e);
  for (const auto& a : idx) {
    for (int i = 0; i < n; ++i) {
      if (a.e[i] == 0) continue;
      std::vector<int> b = a.e;
      --b[i];
      if (!have.count(b)) return false;
    }
  }
  return true;
}

SchemeKind SchemeKind::fat_point(int m) {
  if (m < 1) throw std::domain_error("fat point: multiplicity must be >= 1");
  SchemeKind k;
  k.tag = KindTag::FatPoint;
  k.param = m;
  return k;
}

SchemeKind SchemeKind::jet2() {
  SchemeKind k;
  k.tag = KindTag::Jet2;
  return k;
}

SchemeKind SchemeKind::tangent23() {
  SchemeKind k;
  k.tag = KindTag::Tangent23;
  return k;
}

SchemeKind SchemeKind::zbar(int kk) {
  if (kk < 1) throw std::domain_error("zbar: order must be >= 1");
  SchemeKind k;
  k.tag = KindTag::ZBar;
  k.param = kk;
  return k;
}

SchemeKind SchemeKind::zprime(int kk) {
  if (kk < 1) throw std::domain_error("zprime: order must be >= 1");
  SchemeKind k;
  k.tag = KindTag::ZPrime;
  k.param = kk;
  return k;
}

SchemeKind SchemeKind::custom_kind(DualSet d, std::string label) {
  SchemeKind k;
  k.tag = KindTag::Custom;
  k.custom = std::move(d);
  k.label = std::move(label);
  return k;
}

std::string SchemeKind::name() const {
  switch (tag) {
    case KindTag::FatPoint:
      return param == 1 ? std::string("pt") : "fat:" + std::to_string(param);
    case KindTag::Jet2:
      return "jet";
    case KindTag::Tangent23:
      return "t23";
    case KindTag::ZBar:
      return "zbar:" + std::to_string(param);
    case KindTag::ZPrime:
      return "zprime:" + std::to_string(param);
    case KindTag::Custom:
      return label.empty() ? std::string("custom") : label;
  }
  return "unknown";
}

namespace {

std::vector<MultiIndex> all_up_to(int n, int maxtotal) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(n, 0);
  // Depth-first enumeration of all exponent tuples with total <= maxtotal.
  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == n) {
      out.emplace_back(cur);
      return;
    }
    for (int e = 0; e + used <= maxtotal; ++e) {
      cur[pos] = e;
      self(self, pos + 1, used + e);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

MultiIndex unit(int n, int axis) {
  std::vector<int> e(n, 0);
  e[axis] = 1;
  return MultiIndex(std::move(e));
}

}  // namespace

DualSet dual_set(const SchemeKind& kind, int n) {
  if (n < 1) throw std::domain_error("dual set: need at least one local variable");
  switch (kind.tag) {
    case KindTag::FatPoint:
      return DualSet::make(n, all_up_to(n, kind.param - 1));
    case KindTag::Jet2: {
      std::vector<MultiIndex> v{MultiIndex(std::vector<int>(n, 0)), unit(n, n - 1)};
      return DualSet::make(n, std::move(v));
    }
    case KindTag::Tangent23: {
      std::vector<MultiIndex> v{MultiIndex(std::vector<int>(n, 0))};
      for (int i = 0; i < n; ++i) v.push_back(unit(n, i));
      for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] += 1;
        e[n - 1] += 1;
        v.emplace_back(std::move(e));
      }
      return DualSet::make(n, std::move(v));
    }
    case KindTag::ZBar:
    case KindTag::ZPrime: {
      if (n != 2)
        throw std::domain_error("zbar/zprime dual sets are defined for two local variables");
      const int k = kind.param;
      std::vector<MultiIndex> v = all_up_to(2, k);
      v.emplace_back(std::vector<int>{k + 1, 0});
      if (kind.tag == KindTag::ZBar) v.emplace_back(std::vector<int>{k, 1});
      return DualSet::make(2, std::move(v));
    }
    case KindTag::Custom:
      if (kind.custom.n != n)
        throw std::domain_error("custom dual set arity does not match ambient dimension");
      return kind.custom;
  }
  throw std::logic_error("dual_set: unreachable");
}

std::size_t scheme_length(const SchemeKind& kind, int n) {
  using combinat::dim_forms;
  switch (kind.tag) {
    case KindTag::FatPoint:
      return dim_forms(n, kind.param - 1);
    case KindTag::Jet2:
      return 2;
    case KindTag::Tangent23:
      return 2 * static_cast<std::size_t>(n) + 1;
    case KindTag::ZBar:
      if (n != 2) throw std::domain_error("zbar length is defined for two local variables");
      return dim_forms(2, kind.param) + 2;
    case KindTag::ZPrime:
      if (n != 2) throw std::domain_error("zprime length is defined for two local variables");
      return dim_forms(2, kind.param) + 1;
    case KindTag::Custom:
      if (kind.custom.n != n)
        throw std::domain_error("custom dual set arity does not match ambient dimension");
      return kind.custom.size();
  }
  throw std::logic_error("scheme_length: unreachable");
}

int distinguished_axis(const SchemeKind& kind, int n) {
  switch (kind.tag) {
    case KindTag::Jet2:
    case KindTag::Tangent23:
      return n - 1;
    case KindTag::ZBar:
    case KindTag::ZPrime:
      return 0;
    case KindTag::FatPoint:
    case KindTag::Custom:
      return -1;
  }
  return -1;
}

SlicePair differential_slice(const DualSet& d, int axis, int layer) {
  if (axis < 0 || axis >= d.n) throw std::domain_error("differential slice: axis out of range");
  if (layer < 0) throw std::domain_error("differential slice: negative layer");
  std::vector<MultiIndex> trace;
  std::vector<MultiIndex> residual;
  for (const auto& a : d.idx) {
    const int p = a.e[axis];
    if (p == layer) {
      std::vector<int> t = a.e;
      t.erase(t.begin() + axis);
      trace.emplace_back(std::move(t));
    } else {
      std::vector<int> r = a.e;
      if (p > layer) --r[axis];
      residual.emplace_back(std::move(r));
    }
  }
  SlicePair out;
  out.trace = DualSet::make(d.n - 1, std::move(trace));
  out.residual = DualSet::make(d.n, std::move(residual));
  return out;
}

DualSet embed_in_hyperplane(const DualSet& d) {
  std::vector<MultiIndex> v;
  v.reserve(d.size());
  for (const auto& a : d.idx) {
    std::vector<int> e = a.e;
    e.push_back(0);
    v.emplace_back(std::move(e));
  }
  return DualSet::make(d.n + 1, std::move(v));
}

std::size_t Configuration::total_length() const {
  std::size_t t = 0;
  for (const auto& s : schemes) t += scheme_length(s.kind, n);
  return t;
}

namespace {

// Draws a frame in coordinates where H = {x_n = 0}. Directions flagged in H
// get zero last coordinate; afterwards directions are projected into the
// chart at the pivot (subtracting a multiple of the point), which preserves
// every incidence because the point lies on H whenever a flagged direction
// does not start there by itself.
Frame draw_adapted_frame(int n, const PlacementFlags& flags, linalg::RandomStream& rs,
                         const linalg::Fp& F) {
  const u64 p = F.p();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Frame f;
    f.point.resize(n + 1);
    bool nonzero = false;
    for (int i = 0; i <= n; ++i) {
      f.point[i] = (flags.support_on_h && i == n) ? 0 : rs.next_mod(p);
      nonzero = nonzero || f.point[i] != 0;
    }
    if (!nonzero) continue;

    f.pivot = 0;
    for (int i = 1; i <= n; ++i)
      if (f.point[i] > f.point[f.pivot]) f.pivot = i;

    f.dirs.assign(n, std::vector<u64>(n + 1, 0));
    for (int k = 0; k < n; ++k) {
      const bool in_h = k < static_cast<int>(flags.dirs_in_h.size()) && flags.dirs_in_h[k];
      if (in_h && !flags.support_on_h)
        throw std::domain_error(
            "placement: a direction constrained to the hyperplane needs support on it");
      for (int i = 0; i <= n; ++i) f.dirs[k][i] = (in_h && i == n) ? 0 : rs.next_mod(p);
    }

    // Full-rank test on [point; dirs] before chart projection.
    linalg::DenseMatrix m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) m.at(0, i) = f.point[i];
    for (int k = 0; k < n; ++k)
      for (int i = 0; i <= n; ++i) m.at(k + 1, i) = f.dirs[k][i];
    if (!linalg::rank(m, linalg::PrimeModulus(p)).full()) continue;

    const u64 pinv = F.inv(f.point[f.pivot]);
    for (int k = 0; k < n; ++k) {
      const u64 c = F.mul(f.dirs[k][f.pivot], pinv);
      if (c == 0) continue;
      for (int i = 0; i <= n; ++i)
        f.dirs[k][i] = F.sub(f.dirs[k][i], F.mul(c, f.point[i]));
    }
    return f;
  }
  throw std::runtime_error("placement: no nondegenerate frame after bounded retries");
}

// Change of coordinates sending a custom hyperplane to {y_n = 0}: y = M x with
// last row the given form; x = M^{-1} y. Returns M^{-1} as column action.
std::vector<std::vector<u64>> adapted_to_ambient(const std::vector<u64>& h, int n,
                                                 const linalg::Fp& F) {
  int j = 0;
  for (int i = 0; i <= n; ++i)
    if (h[i] > h[j]) j = i;
  if (h[j] == 0) throw std::domain_error("placement: hyperplane form is zero");

  // M rows: the standard basis vectors skipping j, then h. Invert by solving
  // M X = I with Gaussian elimination over the field.
  const int m = n + 1;
  std::vector<std::vector<u64>> aug(m, std::vector<u64>(2 * m, 0));
  int r = 0;
  for (int i = 0; i <= n; ++i) {
    if (i == j) continue;
    aug[r][i] = 1;
    aug[r][m + r] = 1;
    ++r;
  }
  for (int i = 0; i <= n; ++i) aug[r][i] = h[i];
  aug[r][m + r] = 1;

  for (int col = 0, row = 0; col < m && row < m; ++col) {
    int piv = -1;
    for (int i = row; i < m; ++i)
      if (aug[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::domain_error("placement: hyperplane frame not invertible");
    std::swap(aug[piv], aug[row]);
    const u64 inv = F.inv(aug[row][col]);
    for (int c = 0; c < 2 * m; ++c) aug[row][c] = F.mul(aug[row][c], inv);
    for (int i = 0; i < m; ++i) {
      if (i == row || aug[i][col] == 0) continue;
      const u64 f = aug[i][col];
      for (int c = 0; c < 2 * m; ++c) aug[i][c] = F.sub(aug[i][c], F.mul(f, aug[row][c]));
    }
    ++row;
  }
  std::vector<std::vector<u64>> inv(m, std::vector<u64>(m));
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < m; ++c) inv[i][c] = aug[i][m + c];
  return inv;
}

std::vector<u64> apply(const std::vector<std::vector<u64>>& a, const std::vector<u64>& x,
                       const linalg::Fp& F) {
  const int m = static_cast<int>(a.size());
  std::vector<u64> y(m, 0);
  for (int i = 0; i < m; ++i) {
    u64 acc = 0;
    for (int c = 0; c < m; ++c) acc = F.add(acc, F.mul(a[i][c], x[c]));
    y[i] = acc;
  }
  return y;
}

Frame draw_frame(int n, const PlacementFlags& flags,
                 const std::optional<std::vector<u64>>& hyperplane, linalg::RandomStream& rs,
                 const linalg::Fp& F) {
  Frame f = draw_adapted_frame(n, flags, rs, F);
  if (!hyperplane) return f;
  if (static_cast<int>(hyperplane->size()) != n + 1)
    throw std::domain_error("placement: hyperplane form has wrong arity");

  const auto back = adapted_to_ambient(*hyperplane, n, F);
  f.point = apply(back, f.point, F);
  for (auto& d : f.dirs) d = apply(back, d, F);
  f.pivot = 0;
  for (int i = 1; i <= n; ++i)
    if (f.point[i] > f.point[f.pivot]) f.pivot = i;
  const u64 pinv = F.inv(f.point[f.pivot]);
  for (auto& d : f.dirs) {
    const u64 c = F.mul(d[f.pivot], pinv);
    if (c == 0) continue;
    for (int i = 0; i <= n; ++i) d[i] = F.sub(d[i], F.mul(c, f.point[i]));
  }
  return f;
}

PlacementFlags flags_for(const SchemeKind& kind, int n, const PlacementConstraint& c) {
  PlacementFlags fl;
  fl.support_on_h = c.support_on_h;
  fl.dirs_in_h.assign(n, false);
  if (c.direction_in_h) {
    const int axis = distinguished_axis(kind, n);
    if (axis < 0)
      throw std::domain_error("placement: kind has no distinguished direction to constrain");
    fl.dirs_in_h[axis] = true;
  }
  return fl;
}

}  // namespace

PlacedScheme place_one(const SchemeKind& kind, int n, const PlacementFlags& flags, u64 seed,
                       const linalg::PrimeModulus& prime) {
  if (n < 1) throw std::domain_error("placement: ambient dimension must be >= 1");
  (void)dual_set(kind, n);  // validates kind/n compatibility
  linalg::Fp F(prime);
  linalg::RandomStream rs(seed);
  PlacedScheme ps;
  ps.kind = kind;
  ps.flags = flags;
  ps.flags.dirs_in_h.resize(n, false);
  ps.frame = draw_adapted_frame(n, ps.flags, rs, F);
  return ps;
}

Configuration place_generic(const std::vector<std::pair<SchemeKind, int>>& groups, int n,
                            const PlacementConstraint& constraint, u64 seed,
                            const linalg::PrimeModulus& prime) {
  if (n < 1) throw std::domain_error("placement: ambient dimension must be >= 1");
  linalg::Fp F(prime);
  Configuration cfg;
  cfg.n = n;
  cfg.hyperplane = constraint.hyperplane;
  std::size_t index = 0;
  for (const auto& [kind, count] : groups) {
    if (count < 0) throw std::domain_error("placement: negative copy count");
    (void)dual_set(kind, n);
    const PlacementFlags fl = flags_for(kind, n, constraint);
    for (int c = 0; c < count; ++c, ++index) {
      PlacedScheme ps;
      ps.kind = kind;
      ps.flags = fl;
      linalg::RandomStream rs(
          linalg::derive_seed(linalg::derive_seed(seed, static_cast<u64>(index)),
                              static_cast<u64>(n)));
      ps.frame = draw_frame(n, fl, constraint.hyperplane, rs, F);
      cfg.schemes.push_back(std::move(ps));
    }
  }
  return cfg;
}

Configuration replace_frames(const Configuration& cfg, u64 seed,
                             const linalg::PrimeModulus& prime) {
  linalg::Fp F(prime);
  Configuration out;
  out.n = cfg.n;
  out.hyperplane = cfg.hyperplane;
  out.schemes.reserve(cfg.schemes.size());
  for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
    PlacedScheme ps = cfg.schemes[i];
    linalg::RandomStream rs(linalg::derive_seed(
        linalg::derive_seed(seed, static_cast<u64>(i)), static_cast<u64>(cfg.n)));
    ps.frame = draw_frame(cfg.n, ps.flags, cfg.hyperplane, rs, F);
    out.schemes.push_back(std::move(ps));
  }
  return out;
}

std::vector<SchemeKind> remainder_kinds(int n, int r) {
  if (r == 0) return {};
  const auto shape = combinat::decompose_remainder(r, n + 1, n);
  std::vector<SchemeKind> out;
  for (int i = 0; i < shape.delta; ++i) out.push_back(SchemeKind::fat_point(2));
  for (int i = 0; i < shape.h; ++i) out.push_back(SchemeKind::jet2());
  for (int i = 0; i < shape.eps; ++i) out.push_back(SchemeKind::fat_point(1));
  return out;
}

}  // namespace osculant::schemes
