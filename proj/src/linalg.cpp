#include "holo/linalg.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "holo/kernels.hpp"
#include "modular.hpp"

namespace holo {
namespace {

ContextPtr matrix_context(const RMatrix& m) {
  for (const auto& row : m)
    if (!row.empty()) return row[0].context();
  throw MathError("empty matrix");
}

// Polynomial, primitive, first nonzero entry with leading coefficient 1.
RVector normalize_kernel_vector(std::vector<Polynomial> v) {
  ContextPtr ctx = v.at(0).context();
  Polynomial g(ctx);
  for (const auto& a : v) {
    if (a.is_zero()) continue;
    g = gcd(g, a);
    if (g.is_constant()) break;
  }
  mpq_class scale = 0;
  RVector out;
  out.reserve(v.size());
  for (auto& a : v) {
    if (!a.is_zero() && !g.is_constant()) a = *Polynomial::divide_exact(a, g);
    if (!a.is_zero() && sgn(scale) == 0) scale = 1 / a.leading_coeff();
    out.emplace_back(a * scale);
  }
  return out;
}

// Thiele continued fraction through the points (xs[i], ys[i]) as a reduced
// pair (num, den) with monic den. The k-th convergent fits a later point
// exactly when its inverse difference equals a_k; such points are dropped,
// and the final fit must be confirmed by at least three unused points.
std::optional<std::pair<modp::UPoly, modp::UPoly>> thiele(const modp::Zp& f, const std::vector<std::uint64_t>& xs,
                                                          const std::vector<std::uint64_t>& ys) {
  std::vector<std::uint64_t> a, ax, xr = xs, phi = ys;
  while (!xr.empty()) {
    a.push_back(phi[0]);
    ax.push_back(xr[0]);
    std::vector<std::uint64_t> nx, nphi;
    for (std::size_t k = 1; k < xr.size(); ++k) {
      std::uint64_t d = f.sub(phi[k], phi[0]);
      if (d == 0) continue;
      nx.push_back(xr[k]);
      nphi.push_back(f.mul(f.sub(xr[k], ax.back()), f.inv(d)));
    }
    if (nx.empty()) {
      if (xr.size() < 4) return std::nullopt;
      // continuants: P_k = a_k P_{k-1} + (x - x_{k-1}) P_{k-2}
      modp::UPoly p0{1}, q0{}, p1{a[0]}, q1{1};
      modp::trim(p1);
      for (std::size_t k = 1; k < a.size(); ++k) {
        modp::UPoly lin{f.sub(0, ax[k - 1]), 1};
        auto p2 = modp::add(f, modp::scale(f, p1, a[k]), modp::mul(f, lin, p0));
        auto q2 = modp::add(f, modp::scale(f, q1, a[k]), modp::mul(f, lin, q0));
        p0 = std::move(p1);
        q0 = std::move(q1);
        p1 = std::move(p2);
        q1 = std::move(q2);
      }
      if (q1.empty()) return std::nullopt;
      auto g = modp::gcd(f, p1, q1);
      p1 = modp::divmod(f, p1, g).first;
      q1 = modp::divmod(f, q1, g).first;
      std::uint64_t s = f.inv(q1.back());
      return std::pair{modp::scale(f, p1, s), modp::scale(f, q1, s)};
    }
    xr = std::move(nx);
    phi = std::move(nphi);
  }
  return std::nullopt;
}

using SparseEntry = std::vector<std::pair<unsigned, mpq_class>>;

// Kernel modulo one prime: the RREF basis at points with the generic pivot
// set, interpolated entry by entry and combined into primitive polynomial
// vectors whose first nonzero entry is monic.
struct ModKernel {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<modp::UPoly>> vectors;
};

std::optional<ModKernel> kernel_mod(const modp::Zp& f, const std::vector<std::vector<SparseEntry>>& m,
                                    std::size_t columns, std::size_t& npoints) {
  std::vector<std::vector<std::vector<std::pair<unsigned, std::uint64_t>>>> mm;
  for (const auto& row : m) {
    std::vector<std::vector<std::pair<unsigned, std::uint64_t>>> r;
    for (const auto& e : row) {
      std::vector<std::pair<unsigned, std::uint64_t>> t;
      for (const auto& [k, c] : e) {
        auto x = f.from_mpq(c);
        if (!x) return std::nullopt;
        t.push_back({k, *x});
      }
      r.push_back(std::move(t));
    }
    mm.push_back(std::move(r));
  }
  // RREF basis at x with free column f set to 1.
  auto kernel_at = [&](std::uint64_t x, std::vector<std::size_t>& pivots) {
    std::vector<std::vector<std::uint64_t>> a;
    for (const auto& row : mm) {
      std::vector<std::uint64_t> r;
      for (const auto& e : row) {
        std::uint64_t v = 0;
        for (const auto& [k, c] : e) v = f.add(v, f.mul(c, f.pow(x, k)));
        r.push_back(v);
      }
      a.push_back(std::move(r));
    }
    pivots.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < columns && r < a.size(); ++c) {
      std::size_t q = r;
      while (q < a.size() && a[q][c] == 0) ++q;
      if (q == a.size()) continue;
      std::swap(a[q], a[r]);
      std::uint64_t s = f.inv(a[r][c]);
      for (std::size_t j = c; j < columns; ++j) a[r][j] = f.mul(a[r][j], s);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == r || a[i][c] == 0) continue;
        std::uint64_t t = a[i][c];
        for (std::size_t j = c; j < columns; ++j)
          if (a[r][j]) a[i][j] = f.sub(a[i][j], f.mul(t, a[r][j]));
      }
      pivots.push_back(c);
      ++r;
    }
    std::vector<bool> is_pivot(columns, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t free = 0; free < columns; ++free) {
      if (is_pivot[free]) continue;
      std::vector<std::uint64_t> v(columns, 0);
      v[free] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.sub(0, a[i][free]);
      basis.push_back(std::move(v));
    }
    return basis;
  };
  // A point is generic when its rank is maximal and its pivot set is the
  // lexicographically smallest among those of maximal rank.
  auto better = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  };
  ModKernel out;
  std::vector<std::uint64_t> xs;
  std::vector<std::vector<std::vector<std::uint64_t>>> kernels;
  std::uint64_t next = 29;
  for (std::size_t want = std::max<std::size_t>(npoints, 8); want <= 1024; want *= 2) {
    while (xs.size() < want) {
      if (next > 29 + 4 * 1024) return std::nullopt;
      std::uint64_t x = next++;
      std::vector<std::size_t> pivots;
      auto k = kernel_at(x, pivots);
      if (!xs.empty() && pivots != out.pivots) {
        if (!better(pivots, out.pivots)) continue;
        xs.clear();
        kernels.clear();
      }
      out.pivots = pivots;
      xs.push_back(x);
      kernels.push_back(std::move(k));
    }
    out.vectors.clear();
    bool ok = true;
    for (std::size_t b = 0; b < kernels[0].size() && ok; ++b) {
      std::vector<std::pair<modp::UPoly, modp::UPoly>> fr;
      modp::UPoly l{1};
      for (std::size_t c = 0; c < columns && ok; ++c) {
        std::vector<std::uint64_t> ys;
        for (const auto& k : kernels) ys.push_back(k[b][c]);
        if (std::all_of(ys.begin(), ys.end(), [](std::uint64_t y) { return y == 0; })) {
          fr.push_back({{}, {1}});
          continue;
        }
        auto t = thiele(f, xs, ys);
        if (!t) {
          ok = false;
          break;
        }
        l = modp::mul(f, l, modp::divmod(f, t->second, modp::gcd(f, l, t->second)).first);
        fr.push_back(std::move(*t));
      }
      if (!ok) break;
      std::vector<modp::UPoly> v;
      modp::UPoly g;
      for (const auto& [num, den] : fr) {
        v.push_back(modp::mul(f, num, modp::divmod(f, l, den).first));
        g = modp::gcd(f, g, v.back());
      }
      std::uint64_t lead = 0;
      for (auto& e : v) {
        e = modp::divmod(f, e, g).first;
        if (!lead && !e.empty()) lead = f.inv(e.back());
      }
      for (auto& e : v) e = modp::scale(f, e, lead);
      out.vectors.push_back(std::move(v));
    }
    if (ok) {
      npoints = want;
      return out;
    }
  }
  return std::nullopt;
}

std::optional<mpq_class> rational_reconstruction(const mpz_class& a, const mpz_class& m) {
  mpz_class bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound || gcd(r1, t1) != 1) return std::nullopt;
  mpq_class q(r1, t1);
  q.canonicalize();
  return q;
}

// Nullspace of a matrix whose entries involve at most one variable: kernels
// modulo several primes, lifted by Chinese remaindering and rational
// reconstruction, and checked exactly.
std::optional<std::vector<RVector>> interpolated_nullspace(const PMatrix& m, std::size_t columns,
                                                           const ContextPtr& ctx) {
  std::uint32_t mask = 0;
  for (const auto& row : m)
    for (const auto& a : row) mask |= a.support_mask();
  if (std::popcount(mask) != 1) return std::nullopt;
  std::size_t var = static_cast<std::size_t>(std::countr_zero(mask));
  std::vector<std::vector<SparseEntry>> sparse;
  for (const auto& row : m) {
    std::vector<SparseEntry> r;
    for (const auto& a : row) {
      SparseEntry e;
      for (const auto& t : a.terms()) e.push_back({t.exponents.e[var], t.coeff});
      r.push_back(std::move(e));
    }
    sparse.push_back(std::move(r));
  }
  Polynomial x = Polynomial::variable(ctx, var);
  auto profile = [](const ModKernel& k) {
    std::vector<std::size_t> d;
    for (const auto& v : k.vectors)
      for (const auto& e : v) d.push_back(e.size());
    return d;
  };
  mpz_class modulus = 0, prime = mpz_class(1) << 62;
  ModKernel acc;
  std::vector<std::vector<std::vector<mpz_class>>> residues;
  std::optional<std::vector<RVector>> previous;
  std::size_t npoints = 0;
  for (int round = 0; round < 40; ++round) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    modp::Zp f{prime.get_ui()};
    auto k = kernel_mod(f, sparse, columns, npoints);
    if (!k) return std::nullopt;
    if (modulus != 0 && (k->pivots != acc.pivots || profile(*k) != profile(acc))) {
      // A prime that loses rank or degree is unlucky; one that gains it
      // shows the previous ones were.
      bool gains = k->pivots != acc.pivots ? (k->pivots.size() > acc.pivots.size() ||
                                              (k->pivots.size() == acc.pivots.size() && k->pivots < acc.pivots))
                                           : profile(*k) > profile(acc);
      if (!gains) continue;
      modulus = 0;
      previous.reset();
    }
    if (modulus == 0) {
      acc = *k;
      residues.assign(k->vectors.size(), {});
      for (std::size_t b = 0; b < k->vectors.size(); ++b)
        for (const auto& e : k->vectors[b]) {
          std::vector<mpz_class> cs;
          for (auto c : e) cs.emplace_back(static_cast<unsigned long>(c));
          residues[b].push_back(std::move(cs));
        }
      modulus = prime;
    } else {
      // x = r + M * ((c - r) / M mod p)
      mpz_class minv;
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), prime.get_mpz_t());
      std::uint64_t mi = minv.get_ui();
      for (std::size_t b = 0; b < residues.size(); ++b)
        for (std::size_t c = 0; c < residues[b].size(); ++c)
          for (std::size_t i = 0; i < residues[b][c].size(); ++i) {
            auto& r = residues[b][c][i];
            std::uint64_t t = f.mul(f.sub(k->vectors[b][c][i], f.from_mpz(r)), mi);
            r += modulus * static_cast<unsigned long>(t);
          }
      modulus *= prime;
    }
    std::vector<RVector> lifted;
    bool ok = true;
    for (std::size_t b = 0; b < residues.size() && ok; ++b) {
      RVector v;
      for (std::size_t c = 0; c < residues[b].size() && ok; ++c) {
        Polynomial p(ctx);
        for (std::size_t i = 0; i < residues[b][c].size() && ok; ++i) {
          auto q = rational_reconstruction(residues[b][c][i], modulus);
          if (!q) ok = false;
          else if (sgn(*q) != 0) p += x.pow(static_cast<unsigned>(i)) * *q;
        }
        v.emplace_back(p);
      }
      lifted.push_back(std::move(v));
    }
    if (!ok) continue;
    if (previous && *previous == lifted) {
      for (const auto& v : lifted)
        for (const auto& row : m) {
          Polynomial s(ctx);
          for (std::size_t j = 0; j < columns; ++j)
            if (!row[j].is_zero() && !v[j].is_zero()) s += row[j] * v[j].num();
          if (!s.is_zero()) return std::nullopt;
        }
      return lifted;
    }
    previous = std::move(lifted);
  }
  return std::nullopt;
}

}  // namespace

PMatrix clear_row_denominators(const RMatrix& m) {
  PMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    if (row.empty()) {
      out.emplace_back();
      continue;
    }
    Polynomial l(row[0].context(), 1);
    for (const auto& a : row)
      if (!a.den().is_one()) l = lcm(l, a.den());
    std::vector<Polynomial> prow;
    prow.reserve(row.size());
    for (const auto& a : row) {
      if (a.is_zero())
        prow.emplace_back(a.context());
      else if (a.den().is_one())
        prow.push_back(a.num() * l);
      else
        prow.push_back(a.num() * *Polynomial::divide_exact(l, a.den()));
    }
    out.push_back(std::move(prow));
  }
  return out;
}

FractionFreeForm fraction_free_reduce(PMatrix m, std::size_t columns, Execution exec) {
  FractionFreeForm out;
  out.columns = columns;
  // Zero rows carry no information and only cost time.
  std::erase_if(m, [](const std::vector<Polynomial>& row) {
    for (const auto& a : row)
      if (!a.is_zero()) return false;
    return true;
  });
  if (m.empty()) return out;
  ContextPtr ctx = m[0][0].context();
  Polynomial prev(ctx, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      if (best == m.size() || m[i][c].size() < m[best][c].size()) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[r], m[best]);
    kernels::eliminate_column(m, r, c, prev, exec);
    prev = m[r][c];
    out.pivot_columns.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::vector<RVector> nullspace(const RMatrix& m, std::size_t columns, Execution exec) {
  std::vector<RVector> basis;
  if (columns == 0) return basis;
  ContextPtr ctx = matrix_context(m);
  PMatrix p = clear_row_denominators(m);
  if (auto ns = interpolated_nullspace(p, columns, ctx)) return std::move(*ns);
  if (std::all_of(p.begin(), p.end(), [](const std::vector<Polynomial>& row) {
        return std::all_of(row.begin(), row.end(), [](const Polynomial& a) { return a.is_constant(); });
      })) {
    QMatrix q;
    for (const auto& row : p) {
      QVector r;
      for (const auto& a : row) r.push_back(a.constant_value());
      q.push_back(std::move(r));
    }
    for (const auto& v : nullspace(q, columns)) {
      std::vector<Polynomial> e;
      for (const auto& c : v) e.emplace_back(ctx, c);
      basis.push_back(normalize_kernel_vector(std::move(e)));
    }
    return basis;
  }
  FractionFreeForm ff = fraction_free_reduce(std::move(p), columns, exec);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : ff.pivot_columns) is_pivot[c] = true;
  Polynomial d = ff.rows.empty() ? Polynomial(ctx, 1) : ff.rows[0][ff.pivot_columns[0]];
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Polynomial> v(columns, Polynomial(ctx));
    v[f] = d;
    for (std::size_t r = 0; r < ff.rows.size(); ++r) v[ff.pivot_columns[r]] = -ff.rows[r][f];
    basis.push_back(normalize_kernel_vector(std::move(v)));
  }
  return basis;
}

std::size_t rank(const RMatrix& m) {
  if (m.empty()) return 0;
  return fraction_free_reduce(clear_row_denominators(m), m[0].size(), Execution::serial).rows.size();
}

RMatrix inverse(const RMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return {};
  ContextPtr ctx = matrix_context(m);
  RMatrix a = m;
  RMatrix inv(n, RVector(n, RationalFunction(ctx)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = RationalFunction(ctx, 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw MathError("matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    RationalFunction s = a[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[c][j].is_zero()) a[c][j] *= s;
      if (!inv[c][j].is_zero()) inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      RationalFunction f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!a[c][j].is_zero()) a[i][j] -= f * a[c][j];
        if (!inv[c][j].is_zero()) inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RVector mat_vec(const RMatrix& m, const RVector& v) {
  RVector out;
  out.reserve(m.size());
  for (const auto& row : m) {
    RationalFunction s(v.at(0).context());
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero() && !v[j].is_zero()) s += row[j] * v[j];
    out.push_back(std::move(s));
  }
  return out;
}

QEchelon rref(QMatrix m, std::size_t columns) {
  QEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    mpq_class inv = 1 / m[r][c];
    for (std::size_t j = c; j < columns; ++j)
      if (sgn(m[r][j]) != 0) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j = c; j < columns; ++j)
        if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::vector<QVector> nullspace(const QMatrix& m, std::size_t columns) {
  QEchelon e = rref(m, columns);
  std::vector<bool> is_pivot(columns, false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (is_pivot[f]) continue;
    QVector v(columns, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivot_columns[r]] = -e.rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace holo
