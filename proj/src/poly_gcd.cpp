// Multivariate gcd over Q. The main path is the heuristic gcd: evaluate one
// variable at a large integer, recurse, and recover the result by xi-adic
// interpolation. A primitive PRS is the fallback.
#include <algorithm>
#include <tuple>

#include "holo/polynomial.hpp"

namespace holo {
namespace {

using Term = Polynomial::Term;

constexpr int kHeuristicAttempts = 6;

bool is_integral(const Polynomial& p) {
  for (const auto& t : p.terms())
    if (t.coeff.get_den() != 1) return false;
  return true;
}

mpz_class integer_content(const Polynomial& p) {
  mpz_class g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class max_norm(const Polynomial& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) {
    mpz_class a = abs(t.coeff.get_num());
    if (a > m) m = a;
  }
  return m;
}

Polynomial divide_ground(const Polynomial& p, const mpz_class& c) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.exponents, mpq_class(t.coeff.get_num() / c)});
  return Polynomial::from_sorted_terms(p.context(), std::move(out));
}

// Clears denominators and removes the integer content; sign is preserved.
Polynomial to_primitive_integer(const Polynomial& p) {
  mpz_class den = 1;
  for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  Polynomial q = p * mpq_class(den);
  mpz_class c = integer_content(q);
  return c > 1 ? divide_ground(q, c) : q;
}

Polynomial evaluate_at(const Polynomial& p, std::size_t var, const mpz_class& xi) {
  std::vector<mpz_class> powers{1};
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    auto d = t.exponents.e[var];
    while (powers.size() <= d) powers.push_back(powers.back() * xi);
    Term r{t.exponents, t.coeff * powers[d]};
    r.exponents.e[var] = 0;
    out.push_back(std::move(r));
  }
  return Polynomial::from_terms(p.context(), std::move(out));
}

// Symmetric residue of each coefficient modulo xi.
Polynomial ground_trunc(const Polynomial& p, const mpz_class& xi) {
  mpz_class half = xi / 2;
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), t.coeff.get_num_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    if (r != 0) out.push_back({t.exponents, mpq_class(r)});
  }
  return Polynomial::from_sorted_terms(p.context(), std::move(out));
}

Polynomial interpolate(Polynomial h, std::size_t var, const mpz_class& xi) {
  std::vector<Term> out;
  std::uint16_t power = 0;
  while (!h.is_zero()) {
    Polynomial g = ground_trunc(h, xi);
    for (const auto& t : g.terms()) {
      Term r = t;
      r.exponents.e[var] = power;
      out.push_back(std::move(r));
    }
    h -= g;
    h = divide_ground(h, xi);
    ++power;
  }
  Polynomial f = Polynomial::from_terms(h.context(), std::move(out));
  if (!f.is_zero() && sgn(f.leading_coeff()) < 0) f = -f;
  return f;
}

std::optional<Polynomial> divide_integral(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  auto q = Polynomial::divide_exact(a, b);
  if (!q || !is_integral(*q)) return std::nullopt;
  return q;
}

int first_variable(std::uint32_t mask) {
  for (int i = 0; i < int(kMaxVariables); ++i)
    if (mask & (1u << i)) return i;
  return -1;
}

using GcdTriple = std::tuple<Polynomial, Polynomial, Polynomial>;

// f, g integral. Returns (h, f/h, g/h) with all three integral, or nullopt.
std::optional<GcdTriple> heuristic_gcd(const Polynomial& f, const Polynomial& g) {
  const auto& ctx = f.context();
  if (f.is_zero() && g.is_zero()) return GcdTriple{f, f, f};
  if (f.is_zero()) {
    Polynomial h = sgn(g.leading_coeff()) < 0 ? -g : g;
    return GcdTriple{h, f, Polynomial(ctx, sgn(g.leading_coeff()))};
  }
  if (g.is_zero()) {
    Polynomial h = sgn(f.leading_coeff()) < 0 ? -f : f;
    return GcdTriple{h, Polynomial(ctx, sgn(f.leading_coeff())), g};
  }
  if (f.is_constant() || g.is_constant()) {
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), integer_content(f).get_mpz_t(), integer_content(g).get_mpz_t());
    return GcdTriple{Polynomial(ctx, mpq_class(c)), divide_ground(f, c), divide_ground(g, c)};
  }

  mpz_class cf = integer_content(f), cg = integer_content(g), content;
  mpz_gcd(content.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  Polynomial F = divide_ground(f, content), G = divide_ground(g, content);

  int var = first_variable(F.support_mask() | G.support_mask());
  mpz_class fn = max_norm(F), gn = max_norm(G);
  mpz_class B = 2 * std::min(fn, gn) + 29;
  mpz_class xi = std::min(B, mpz_class(99 * sqrt(B)));
  mpz_class flc = abs(F.leading_coeff().get_num()), glc = abs(G.leading_coeff().get_num());
  xi = std::max(xi, mpz_class(2 * std::min(mpz_class(fn / flc), mpz_class(gn / glc)) + 4));

  auto scale = [&](Polynomial p) { return p * mpq_class(content); };

  for (int attempt = 0; attempt < kHeuristicAttempts; ++attempt) {
    Polynomial ff = evaluate_at(F, var, xi), gg = evaluate_at(G, var, xi);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto sub = heuristic_gcd(ff, gg);
      if (sub) {
        auto& [h0, cff0, cfg0] = *sub;
        Polynomial h = interpolate(h0, var, xi);
        if (!h.is_zero()) {
          mpz_class hc = integer_content(h);
          h = divide_ground(h, hc);
          if (auto qf = divide_integral(F, h))
            if (auto qg = divide_integral(G, h)) return GcdTriple{scale(h), *qf, *qg};
        }
        Polynomial cff = interpolate(cff0, var, xi);
        if (auto hf = divide_integral(F, cff))
          if (auto qg = divide_integral(G, *hf)) return GcdTriple{scale(*hf), cff, *qg};
        Polynomial cfg = interpolate(cfg0, var, xi);
        if (auto hg = divide_integral(G, cfg))
          if (auto qf = divide_integral(F, *hg)) return GcdTriple{scale(*hg), *qf, cfg};
      }
    }
    xi = 73794 * xi * sqrt(sqrt(xi)) / 27011;
  }
  return std::nullopt;
}

Polynomial primitive_part_in(const Polynomial& p, std::uint32_t mask) {
  Polynomial c = content_in(p, mask);
  return c.is_constant() ? p : *Polynomial::divide_exact(p, c);
}

Polynomial leading_coefficient_in(const Polynomial& p, std::size_t var) {
  auto d = p.degree_in(var);
  std::vector<Term> out;
  for (const auto& t : p.terms())
    if (t.exponents.e[var] == d) {
      Term r = t;
      r.exponents.e[var] = 0;
      out.push_back(std::move(r));
    }
  return Polynomial::from_terms(p.context(), std::move(out));
}

// Primitive PRS in the first variable of the joint support.
Polynomial prs_gcd(const Polynomial& a, const Polynomial& b) {
  int var = first_variable(a.support_mask() | b.support_mask());
  std::uint32_t mask = 1u << var;
  Polynomial ca = content_in(a, mask), cb = content_in(b, mask);
  Polynomial c = gcd(ca, cb);
  Polynomial A = primitive_part_in(a, mask), B = primitive_part_in(b, mask);
  if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
  while (!B.is_zero() && B.depends_on(var)) {
    Polynomial lb = leading_coefficient_in(B, var);
    auto db = B.degree_in(var);
    Polynomial R = A;
    while (!R.is_zero() && R.degree_in(var) >= db) {
      Exponents shift;
      shift.e[var] = static_cast<std::uint16_t>(R.degree_in(var) - db);
      Polynomial lr = leading_coefficient_in(R, var);
      R = lb * R - (lr * B).mul_term(shift, 1);
    }
    A = std::move(B);
    B = R.is_zero() ? R : primitive_part_in(to_primitive_integer(R), mask);
  }
  Polynomial g = B.is_zero() ? A : Polynomial(a.context(), 1);
  return (c * g).monic();
}

Exponents min_exponents(const Polynomial& p) {
  Exponents m = p.terms().front().exponents;
  for (const auto& t : p.terms()) m = exponent_gcd(m, t.exponents);
  return m;
}

Polynomial divide_monomial(const Polynomial& p, const Exponents& m) {
  if (m.is_zero()) return p;
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.exponents - m, t.coeff});
  return Polynomial::from_sorted_terms(p.context(), std::move(out));
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (!same_context(a.context(), b.context())) throw MathError("polynomials over different variable lists");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto& ctx = a.context();
  if (a.is_constant() || b.is_constant()) return Polynomial(ctx, 1);

  Exponents ma = min_exponents(a), mb = min_exponents(b);
  Exponents mg = exponent_gcd(ma, mb);
  Polynomial mono = Polynomial::monomial(ctx, mg, 1);
  Polynomial A = divide_monomial(a, ma), B = divide_monomial(b, mb);

  // Variables occurring in only one operand cannot occur in the gcd.
  for (;;) {
    if (A.is_constant() || B.is_constant()) return mono;
    std::uint32_t sa = A.support_mask(), sb = B.support_mask();
    if ((sa & ~sb) == 0 && (sb & ~sa) == 0) break;
    if (sa & ~sb) A = content_in(A, sa & ~sb);
    if (sb & ~sa) B = content_in(B, sb & ~sa);
  }
  if (A.size() == 1 || B.size() == 1) return mono;

  if (A.size() <= B.size()) {
    if (Polynomial::divide_exact(B, A)) return (A * mono).monic();
  } else if (Polynomial::divide_exact(A, B)) {
    return (B * mono).monic();
  }

  Polynomial Ai = to_primitive_integer(A), Bi = to_primitive_integer(B);
  if (auto r = heuristic_gcd(Ai, Bi)) return (std::get<0>(*r) * mono).monic();
  return (prs_gcd(Ai, Bi) * mono).monic();
}

}  // namespace holo
