#include "tropo/superform.hpp"

#include "tropo/error.hpp"
#include "tropo/intersection.hpp"
#include "tropo/linalg.hpp"
#include "tropo/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace tropo {

namespace {

using Mask = std::uint32_t;

int popcount(Mask m) { return std::popcount(m); }

// (−1)^{#{(a, b) : a ∈ A, b ∈ B, a > b}}, the sign sorting A followed by B
int merge_sign(Mask a, Mask b) {
  int inversions = 0;
  for (int j = 0; j < 32; ++j)
    if (b >> j & 1u) inversions += popcount(a >> (j + 1));
  return inversions % 2 ? -1 : 1;
}

Mask full_mask(int k) { return k >= 32 ? ~Mask(0) : (Mask(1) << k) - 1; }

void check_rank(const Superform& a, const Superform& b) {
  if (a.ambient_rank != b.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "superform ranks differ");
}

Superform from_list(const Polynomial& f, const std::vector<int>& I, const std::vector<int>& J) {
  Superform s = Superform::function(f);
  for (int i : I) s = wedge(s, Superform::dprime(f.nvars(), i));
  Superform t = Superform::constant(f.nvars(), Rational(1));
  for (int j : J) t = wedge(t, Superform::ddprime(f.nvars(), j));
  return wedge(s, t);
}

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return to_rational(f);
}

// ∫ f dt over the standard simplex {u ≥ 0, Σu ≤ 1} in R^k
Rational simplex_monomials(const Polynomial& f) {
  const int k = f.nvars();
  Rational s = 0;
  for (const auto& [e, c] : f.terms()) {
    Rational t = c;
    int deg = 0;
    for (int a : e) {
      t *= factorial(a);
      deg += a;
    }
    s += t / factorial(deg + k);
  }
  return s;
}

// Lebesgue integral over a bounded full-dimensional polyhedron of R^k
Rational euclidean_integral(const Polynomial& f, const Polyhedron& P) {
  if (f.is_zero()) return 0;
  const int k = P.ambient_rank;
  if (k == 0) return f.constant_term();
  Rational total = 0;
  for (const auto& S : triangulate(P)) {
    RatMatrix M(k, k);
    for (int j = 0; j < k; ++j) M.col(j) = S[j + 1] - S[0];
    Rational vol = determinant(M);
    if (vol < 0) vol = -vol;
    total += vol * simplex_monomials(f.compose(S[0], M));
  }
  return total;
}

// x = p + B t with B a lattice basis of N_P
IntegralAffineMap chart(const Polyhedron& P) { return {lattice_of(P).basis, P.relint}; }

int koszul(int k) { return (k * (k - 1) / 2) % 2 ? -1 : 1; }

Polynomial restricted_zero_dims(const Superform& a, const Polyhedron& P) {
  return restrict_to_hull(a.coefficient({}, {}), P);
}

// ∫_P m·a with P canonical of dimension k
Rational cell_integral(const Superform& a, const Polyhedron& P) {
  const int k = P.dim;
  if (k < 0) return 0;
  if (k == 0) return restricted_zero_dims(a, P).eval(P.relint);
  const Superform top = a.component(k, k);
  if (top.is_zero()) return 0;
  const IntegralAffineMap F = chart(P);
  const Superform pulled = pullback(F, top);
  if (pulled.is_zero()) return 0;
  const Polynomial& g = pulled.terms.begin()->second;
  if (!is_bounded(P)) throw Error(ErrorCode::UnboundedIntegrand, "integrand nonzero on " + to_string(P));
  return koszul(k) * euclidean_integral(g, affine_preimage(F, P));
}

bool vanishes_on(const Superform& a, const Polyhedron& P) {
  if (P.dim == 0) return restricted_zero_dims(a, P).is_zero();
  return pullback(chart(P), a).is_zero();
}

// Boundary contributions of the facets of one cell Q of dimension k ≥ 1
Rational cell_boundary(const Superform& b, const Polyhedron& Q) {
  const int k = Q.dim;
  if (k < 1) return 0;
  const Superform lo = b.component(k - 1, k);
  const Superform hi = b.component(k, k - 1);
  if (lo.is_zero() && hi.is_zero()) return 0;
  if (!is_bounded(Q) && !vanishes_on(lo + hi, Q))
    throw Error(ErrorCode::UnboundedIntegrand, "boundary integrand nonzero on " + to_string(Q));
  Rational total = 0;
  for (const Polyhedron& tau : facets(Q)) {
    const IntMatrix Bt = lattice_of(tau).basis;
    IntMatrix B(Q.ambient_rank, k);
    B.leftCols(k - 1) = Bt;
    B.col(k - 1) = primitive_normal(Q, tau);
    const IntegralAffineMap F{B, tau.relint};
    const Superform pulled = pullback(F, lo + hi);
    std::vector<int> first, all;
    for (int i = 0; i < k; ++i) all.push_back(i);
    first.assign(all.begin(), all.end() - 1);
    const Polynomial hlo = pulled.coefficient(first, all);
    const Polynomial hhi = pulled.coefficient(all, first);
    const Polynomial integrand = (koszul(k) * (k % 2 ? -1 : 1)) * hlo + Rational(koszul(k)) * hhi;
    RatMatrix E = RatMatrix::Zero(k, k - 1);
    for (int i = 0; i < k - 1; ++i) E(i, i) = 1;
    const Polynomial on_tau = integrand.compose(RatVector::Zero(k), E);
    if (on_tau.is_zero()) continue;
    if (!is_bounded(tau)) throw Error(ErrorCode::UnboundedIntegrand, "boundary integrand nonzero on " + to_string(tau));
    total += euclidean_integral(on_tau, affine_preimage(IntegralAffineMap{Bt, tau.relint}, tau));
  }
  return total;
}

// Pieces of the cell σ on which a is a single superform
struct Piece {
  Polyhedron cell;
  std::size_t form;
};

std::vector<Piece> pieces_of(const Polyhedron& sigma, const PiecewiseSuperform& a) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    Polyhedron Q = intersect(sigma, a.cells[i]);
    if (Q.dim != sigma.dim) continue;
    if (std::any_of(out.begin(), out.end(), [&](const Piece& p) { return p.cell == Q; })) continue;
    out.push_back({std::move(Q), i});
  }
  return out;
}

Superform weighted(const Polynomial& m, const Superform& a) { return m * a; }

template <typename F>
Rational sum_over_cells(const TropicalCycle& C, const F& per_cell) {
  std::vector<Rational> parts(C.size());
  parallel_for(C.size(), [&](std::size_t i) { parts[i] = per_cell(i); });
  Rational s = 0;
  for (const auto& p : parts) s += p;
  return s;
}

template <typename Op>
PiecewiseSuperform overlay(const PiecewiseSuperform& a, const PiecewiseSuperform& b, const Op& op) {
  if (a.ambient_rank != b.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "form ranks differ");
  std::vector<Polyhedron> cells;
  std::vector<Superform> forms;
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    for (std::size_t j = 0; j < b.cells.size(); ++j) {
      Polyhedron Q = intersect(a.cells[i], b.cells[j]);
      if (Q.dim < 0) continue;
      cells.push_back(std::move(Q));
      forms.push_back(op(a.forms[i], b.forms[j]));
    }
  PiecewiseSuperform out{a.ambient_rank, {}, {}};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < cells.size() && !covered; ++j)
      covered = j != i && (cells[j].dim > cells[i].dim || (cells[j].dim == cells[i].dim && j < i)) &&
                is_subset(cells[i], cells[j]);
    if (covered) continue;
    out.cells.push_back(cells[i]);
    out.forms.push_back(forms[i]);
  }
  return out;
}

template <typename Op>
PiecewiseSuperform map_pieces(const PiecewiseSuperform& a, const Op& op) {
  PiecewiseSuperform out = a;
  for (auto& f : out.forms) f = op(f);
  return out;
}

bool agree_on(const Superform& a, const Superform& b, const Polyhedron& F) {
  const Superform d = a - b;
  for (const auto& [key, f] : d.terms)
    if (!restrict_to_hull(f, F).is_zero()) return false;
  return true;
}

}  // namespace

// --- Superform ---------------------------------------------------------------------------

Superform Superform::zero(int r) { return Superform{r, {}}; }

Superform Superform::function(const Polynomial& f) {
  Superform s{f.nvars(), {}};
  if (!f.is_zero()) s.terms.emplace(Key{0, 0}, f);
  return s;
}

Superform Superform::constant(int r, const Rational& c) { return function(Polynomial::constant(r, c)); }

Superform Superform::dprime(int r, int i) {
  if (i < 0 || i >= r) throw std::out_of_range("coordinate index");
  Superform s{r, {}};
  s.terms.emplace(Key{Mask(1) << i, 0}, Polynomial::constant(r, 1));
  return s;
}

Superform Superform::ddprime(int r, int j) {
  if (j < 0 || j >= r) throw std::out_of_range("coordinate index");
  Superform s{r, {}};
  s.terms.emplace(Key{0, Mask(1) << j}, Polynomial::constant(r, 1));
  return s;
}

Superform Superform::monomial(const Polynomial& f, const std::vector<int>& I, const std::vector<int>& J) {
  return from_list(f, I, J);
}

Superform Superform::volume(int r) {
  Superform s = constant(r, 1);
  for (int i = 0; i < r; ++i) s = wedge(wedge(s, dprime(r, i)), ddprime(r, i));
  return s;
}

std::optional<std::pair<int, int>> Superform::bidegree() const {
  std::optional<std::pair<int, int>> pq;
  for (const auto& [key, f] : terms) {
    const std::pair<int, int> d{popcount(key.first), popcount(key.second)};
    if (pq && *pq != d) return std::nullopt;
    pq = d;
  }
  return pq;
}

Superform Superform::component(int p, int q) const {
  Superform s{ambient_rank, {}};
  for (const auto& [key, f] : terms)
    if (popcount(key.first) == p && popcount(key.second) == q) s.terms.emplace(key, f);
  return s;
}

Polynomial Superform::coefficient(const std::vector<int>& I, const std::vector<int>& J) const {
  const Superform probe = from_list(Polynomial::constant(ambient_rank, 1), I, J);
  if (probe.is_zero()) return Polynomial(ambient_rank);
  const auto& [key, sgn] = *probe.terms.begin();
  auto it = terms.find(key);
  if (it == terms.end()) return Polynomial(ambient_rank);
  return it->second * sgn.constant_term();
}

Superform& Superform::operator+=(const Superform& o) {
  check_rank(*this, o);
  for (const auto& [key, f] : o.terms) {
    auto [it, inserted] = terms.emplace(key, f);
    if (inserted) continue;
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
  }
  return *this;
}

Superform& Superform::operator-=(const Superform& o) { return *this += -o; }

Superform& Superform::operator*=(const Polynomial& f) {
  if (f.nvars() != ambient_rank) throw Error(ErrorCode::DimensionMismatch, "coefficient arity differs");
  for (auto it = terms.begin(); it != terms.end();) {
    it->second = it->second * f;
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  }
  return *this;
}

std::string Superform::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, f] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << f.str() << ")";
    for (int i = 0; i < ambient_rank; ++i)
      if (key.first >> i & 1u) os << " d'x" << i + 1;
    for (int j = 0; j < ambient_rank; ++j)
      if (key.second >> j & 1u) os << " d''x" << j + 1;
  }
  return os.str();
}

Superform wedge(const Superform& a, const Superform& b) {
  check_rank(a, b);
  Superform out = Superform::zero(a.ambient_rank);
  for (const auto& [ka, fa] : a.terms)
    for (const auto& [kb, fb] : b.terms) {
      if ((ka.first & kb.first) || (ka.second & kb.second)) continue;
      int s = merge_sign(ka.first, kb.first) * merge_sign(ka.second, kb.second);
      if (popcount(ka.second) * popcount(kb.first) % 2) s = -s;
      Superform t = Superform::zero(a.ambient_rank);
      t.terms.emplace(Superform::Key{ka.first | kb.first, ka.second | kb.second}, (fa * fb) * Rational(s));
      out += t;
    }
  return out;
}

Superform d_prime(const Superform& a) {
  Superform out = Superform::zero(a.ambient_rank);
  for (const auto& [key, f] : a.terms)
    for (int i = 0; i < a.ambient_rank; ++i) {
      if (key.first >> i & 1u) continue;
      Polynomial g = f.derivative(i);
      if (g.is_zero()) continue;
      if (popcount(key.first & full_mask(i)) % 2) g = -g;
      Superform t = Superform::zero(a.ambient_rank);
      t.terms.emplace(Superform::Key{key.first | Mask(1) << i, key.second}, g);
      out += t;
    }
  return out;
}

Superform d_double_prime(const Superform& a) {
  Superform out = Superform::zero(a.ambient_rank);
  for (const auto& [key, f] : a.terms)
    for (int j = 0; j < a.ambient_rank; ++j) {
      if (key.second >> j & 1u) continue;
      Polynomial g = f.derivative(j);
      if (g.is_zero()) continue;
      if ((popcount(key.first) + popcount(key.second & full_mask(j))) % 2) g = -g;
      Superform t = Superform::zero(a.ambient_rank);
      t.terms.emplace(Superform::Key{key.first, key.second | Mask(1) << j}, g);
      out += t;
    }
  return out;
}

Superform J(const Superform& a) {
  Superform out = Superform::zero(a.ambient_rank);
  for (const auto& [key, f] : a.terms) {
    const bool odd = popcount(key.first) * popcount(key.second) % 2;
    out.terms.emplace(Superform::Key{key.second, key.first}, odd ? -f : f);
  }
  return out;
}

namespace {

// (−1)^p J on (p,p) forms; nullopt if some term is not of type (p,p)
std::optional<Superform> signed_J(const Superform& a) {
  Superform out = J(a);
  for (auto& [key, f] : out.terms) {
    if (popcount(key.first) != popcount(key.second)) return std::nullopt;
    if (popcount(key.first) % 2) f = -f;
  }
  return out;
}

}  // namespace

bool is_symmetric(const Superform& a) {
  const auto s = signed_J(a);
  return s && *s == a;
}

bool is_antisymmetric(const Superform& a) {
  const auto s = signed_J(a);
  return s && *s == -a;
}

Superform pullback(const IntegralAffineMap& F, const Superform& a) {
  if (F.target_rank() != a.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "map target differs from form rank");
  const int n = F.source_rank();
  std::vector<Polynomial> subs;
  std::vector<Superform> dp, ddp;
  for (int i = 0; i < a.ambient_rank; ++i) {
    const RatVector row = to_rational(IntVector(F.linear.row(i).transpose()));
    subs.push_back(Polynomial::affine(row, F.translation(i)));
    Superform p = Superform::zero(n), q = Superform::zero(n);
    for (int j = 0; j < n; ++j) {
      if (F.linear(i, j) == 0) continue;
      p += row(j) * Superform::dprime(n, j);
      q += row(j) * Superform::ddprime(n, j);
    }
    dp.push_back(std::move(p));
    ddp.push_back(std::move(q));
  }
  Superform out = Superform::zero(n);
  for (const auto& [key, f] : a.terms) {
    const Polynomial g = n == 0 ? Polynomial::constant(0, f.eval(F.translation)) : f.substitute(subs);
    if (g.is_zero()) continue;
    Superform t = Superform::function(g);
    for (int i = 0; i < a.ambient_rank && !t.is_zero(); ++i)
      if (key.first >> i & 1u) t = wedge(t, dp[i]);
    for (int j = 0; j < a.ambient_rank && !t.is_zero(); ++j)
      if (key.second >> j & 1u) t = wedge(t, ddp[j]);
    out += t;
  }
  return out;
}

// --- PiecewiseSuperform --------------------------------------------------------------------

PiecewiseSuperform PiecewiseSuperform::global(const Superform& a) {
  return {a.ambient_rank, {Polyhedron::whole_space(a.ambient_rank)}, {a}};
}

std::optional<std::size_t> PiecewiseSuperform::locate(const RatVector& x) const {
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (contains(cells[i], x)) return i;
  return std::nullopt;
}

PiecewiseSuperform make_piecewise_form(int r, const std::vector<Polyhedron>& cells,
                                       const std::vector<Superform>& forms) {
  if (cells.size() != forms.size()) throw std::invalid_argument("one form per cell required");
  PiecewiseSuperform a{r, {}, {}};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Polyhedron P = canonical(cells[i]);
    if (P.dim < 0) continue;
    if (forms[i].ambient_rank != r) throw Error(ErrorCode::DimensionMismatch, "form rank differs");
    a.cells.push_back(std::move(P));
    a.forms.push_back(forms[i]);
  }
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    for (std::size_t j = i + 1; j < a.cells.size(); ++j) {
      const Polyhedron F = intersect(a.cells[i], a.cells[j]);
      if (F.dim >= 0 && !agree_on(a.forms[i], a.forms[j], F))
        throw Error(ErrorCode::ContinuityViolation, "forms disagree on " + to_string(F));
    }
  return a;
}

bool is_c1(const PiecewiseSuperform& a) {
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    for (std::size_t j = i + 1; j < a.cells.size(); ++j) {
      const Polyhedron F = intersect(a.cells[i], a.cells[j]);
      if (F.dim < 0) continue;
      if (!agree_on(a.forms[i], a.forms[j], F)) return false;
      const Superform d = a.forms[i] - a.forms[j];
      for (const auto& [key, f] : d.terms)
        for (int k = 0; k < a.ambient_rank; ++k)
          if (!restrict_to_hull(f.derivative(k), F).is_zero()) return false;
    }
  return true;
}

PiecewiseSuperform operator+(const PiecewiseSuperform& a, const PiecewiseSuperform& b) {
  return overlay(a, b, [](const Superform& x, const Superform& y) { return x + y; });
}

PiecewiseSuperform operator-(const PiecewiseSuperform& a) {
  return map_pieces(a, [](const Superform& x) { return -x; });
}

PiecewiseSuperform operator-(const PiecewiseSuperform& a, const PiecewiseSuperform& b) { return a + (-b); }

PiecewiseSuperform wedge(const PiecewiseSuperform& a, const PiecewiseSuperform& b) {
  return overlay(a, b, [](const Superform& x, const Superform& y) { return wedge(x, y); });
}

PiecewiseSuperform d_prime(const PiecewiseSuperform& a) {
  return map_pieces(a, [](const Superform& x) { return d_prime(x); });
}

PiecewiseSuperform d_double_prime(const PiecewiseSuperform& a) {
  return map_pieces(a, [](const Superform& x) { return d_double_prime(x); });
}

PiecewiseSuperform J(const PiecewiseSuperform& a) {
  return map_pieces(a, [](const Superform& x) { return J(x); });
}

PiecewiseSuperform pullback(const IntegralAffineMap& F, const PiecewiseSuperform& a) {
  PiecewiseSuperform out{F.source_rank(), {}, {}};
  std::vector<std::pair<Polyhedron, Superform>> pre;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    Polyhedron P = affine_preimage(F, a.cells[i]);
    if (P.dim < 0) continue;
    pre.emplace_back(std::move(P), pullback(F, a.forms[i]));
  }
  std::stable_sort(pre.begin(), pre.end(), [](const auto& x, const auto& y) { return x.first.dim > y.first.dim; });
  for (auto& [P, f] : pre) {
    if (std::any_of(out.cells.begin(), out.cells.end(), [&](const Polyhedron& K) { return is_subset(P, K); }))
      continue;
    out.cells.push_back(P);
    out.forms.push_back(f);
  }
  return out;
}

PiecewiseSuperform as_form(const PiecewisePolynomial& phi) {
  PiecewiseSuperform a{phi.ambient_rank, phi.cells, {}};
  for (const auto& p : phi.pieces) a.forms.push_back(Superform::function(p));
  return a;
}

// --- integration ---------------------------------------------------------------------------

Calibration calibration(const Polyhedron& cell) {
  const Polyhedron P = canonical(cell);
  return {P, lattice_of(P).basis, 1};
}

std::vector<std::vector<RatVector>> triangulate(const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  if (cp.dim < 0) return {};
  if (!is_bounded(cp)) throw std::invalid_argument("triangulate needs a bounded polyhedron");
  const auto verts = vertices(cp);
  if (cp.dim == 0) return {{verts.front()}};
  const RatVector& apex = verts.front();
  std::vector<std::vector<RatVector>> out;
  for (const auto& F : facets(cp)) {
    if (contains(F, apex)) continue;
    for (auto S : triangulate(F)) {
      S.insert(S.begin(), apex);
      out.push_back(std::move(S));
    }
  }
  return out;
}

Rational lattice_integral(const Polynomial& f, const Polyhedron& P) {
  const Polyhedron cp = canonical(P);
  if (cp.dim < 0) return 0;
  if (cp.dim == 0) return f.eval(cp.relint);
  const IntegralAffineMap F = chart(cp);
  return euclidean_integral(f.compose(F.translation, to_rational(F.linear)), affine_preimage(F, cp));
}

Rational integrate(const Superform& a, const Polyhedron& P) { return cell_integral(a, canonical(P)); }

Rational integrate(const Superform& a, const TropicalCycle& C) {
  return integrate(PiecewiseSuperform::global(a), C);
}

Rational integrate(const PiecewiseSuperform& a, const TropicalCycle& C) {
  if (a.ambient_rank != C.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "form and cycle ranks differ");
  return sum_over_cells(C, [&](std::size_t i) {
    Rational s = 0;
    for (const auto& p : pieces_of(C.cells[i], a)) s += cell_integral(weighted(C.weights[i], a.forms[p.form]), p.cell);
    return s;
  });
}

Rational boundary_integrate(const Superform& b, const Polyhedron& P) { return cell_boundary(b, canonical(P)); }

Rational boundary_integrate(const PiecewiseSuperform& b, const TropicalCycle& C) {
  if (b.ambient_rank != C.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "form and cycle ranks differ");
  return sum_over_cells(C, [&](std::size_t i) {
    Rational s = 0;
    for (const auto& p : pieces_of(C.cells[i], b)) s += cell_boundary(weighted(C.weights[i], b.forms[p.form]), p.cell);
    return s;
  });
}

Rational stokes_residual(const PiecewiseSuperform& b, const TropicalCycle& C) {
  const int k = C.dim;
  const PiecewiseSuperform lo = map_pieces(b, [k](const Superform& x) { return x.component(k - 1, k); });
  const PiecewiseSuperform hi = map_pieces(b, [k](const Superform& x) { return x.component(k, k - 1); });
  return integrate(d_prime(lo), C) + integrate(d_double_prime(hi), C) - boundary_integrate(lo + hi, C);
}

Rational green_residual(const PiecewiseSuperform& b1, const PiecewiseSuperform& b2, const TropicalCycle& C) {
  const PiecewiseSuperform inner =
      wedge(b1, d_prime(d_double_prime(b2))) - wedge(b2, d_prime(d_double_prime(b1)));
  const PiecewiseSuperform outer = wedge(b1, d_double_prime(b2)) - wedge(b2, d_double_prime(b1));
  return integrate(inner, C) - boundary_integrate(outer, C);
}

PairingReport smooth_weight_boundary_pairing(const TropicalCycle& C, const PiecewiseSuperform& eta) {
  PairingReport rep;
  rep.lhs = -integrate(d_prime(eta), C);
  rep.rhs = sum_over_cells(C, [&](std::size_t i) {
    const Superform dm = d_prime(Superform::function(C.weights[i]));
    Rational s = 0;
    for (const auto& p : pieces_of(C.cells[i], eta)) s += cell_integral(wedge(dm, eta.forms[p.form]), p.cell);
    return s;
  });
  return rep;
}

// --- δ-preforms ----------------------------------------------------------------------------

namespace {

std::optional<std::pair<int, int>> piecewise_bidegree(const PiecewiseSuperform& a, bool& mixed) {
  std::optional<std::pair<int, int>> pq;
  for (const auto& f : a.forms) {
    if (f.is_zero()) continue;
    const auto d = f.bidegree();
    if (!d || (pq && *pq != *d)) {
      mixed = true;
      return std::nullopt;
    }
    pq = d;
  }
  return pq;
}

}  // namespace

std::optional<std::pair<int, int>> DeltaPreform::bidegree() const {
  std::optional<std::pair<int, int>> pq;
  for (const auto& t : terms) {
    bool mixed = false;
    const auto d = piecewise_bidegree(t.form, mixed);
    if (mixed) return std::nullopt;
    if (!d || has_empty_support(t.carrier)) continue;
    const std::pair<int, int> total{d->first + t.carrier.codim(), d->second + t.carrier.codim()};
    if (pq && *pq != total) return std::nullopt;
    pq = total;
  }
  return pq;
}

DeltaPreform delta_preform(const PiecewiseSuperform& a, const TropicalCycle& C) {
  if (a.ambient_rank != C.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "form and cycle ranks differ");
  return {C.ambient_rank, {{a, C}}};
}

void check_grading(const DeltaPreform& A) {
  bool any = false;
  for (const auto& t : A.terms) {
    bool mixed = false;
    if (piecewise_bidegree(t.form, mixed) || mixed) any = true;
  }
  if (any && !A.bidegree()) throw Error(ErrorCode::WrongBidegree, "terms of a δ-preform have different types");
}

DeltaPreform wedge_preforms(const DeltaPreform& A, const DeltaPreform& B, std::uint64_t seed) {
  if (A.ambient_rank != B.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "preform ranks differ");
  DeltaPreform out{A.ambient_rank, {}};
  for (const auto& a : A.terms)
    for (const auto& b : B.terms) {
      TropicalCycle carrier = prune(stable_intersection(a.carrier, b.carrier, seed));
      if (has_empty_support(carrier)) continue;
      out.terms.push_back({wedge(a.form, b.form), std::move(carrier)});
    }
  return out;
}

DeltaPreform pullback_preform(const IntegralAffineMap& F, const DeltaPreform& A, std::uint64_t seed) {
  if (F.target_rank() != A.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "map target differs from preform rank");
  DeltaPreform out{F.source_rank(), {}};
  for (const auto& t : A.terms) {
    TropicalCycle carrier = prune(pullback(F, t.carrier, seed));
    if (has_empty_support(carrier)) continue;
    out.terms.push_back({pullback(F, t.form), std::move(carrier)});
  }
  return out;
}

Rational integrate(const DeltaPreform& A) {
  Rational s = 0;
  for (const auto& t : A.terms) s += integrate(t.form, t.carrier);
  return s;
}

// --- Poincaré–Lelong -----------------------------------------------------------------------

PoincareLelongReport poincare_lelong(const PiecewisePolynomial& phi, const DeltaPreform& beta,
                                     const TropicalCycle& C, std::uint64_t seed) {
  if (phi.ambient_rank != C.ambient_rank || beta.ambient_rank != C.ambient_rank)
    throw Error(ErrorCode::DimensionMismatch, "function, preform and cycle ranks differ");
  const int k = C.dim;
  if (k < 1) throw Error(ErrorCode::WrongDimension, "the cycle must have positive dimension");
  check_grading(beta);
  const auto pq = beta.bidegree();
  if (pq && *pq != std::pair<int, int>{k - 1, k - 1})
    throw Error(ErrorCode::WrongBidegree, "β must have type (dim C − 1, dim C − 1)");

  const TropicalCycle D = corner_locus(phi, C);
  PoincareLelongReport rep;
  for (const auto& term : beta.terms) {
    const PiecewiseSuperform& alpha = term.form;
    if (!is_c1(alpha)) throw Error(ErrorCode::HypothesisViolated, "envelope is not C^1");
    const TropicalCycle Cp = prune(stable_intersection(term.carrier, C, seed));
    const TropicalCycle Dp = prune(stable_intersection(term.carrier, D, seed));
    const Refinement R = refine_for(phi, Cp);
    const PiecewiseSuperform ddc_alpha = d_prime(d_double_prime(alpha));
    std::vector<std::array<Rational, 4>> parts(R.cycle.size());
    parallel_for(R.cycle.size(), [&](std::size_t i) {
      const Polyhedron& sigma = R.cycle.cells[i];
      const Polynomial& m = R.cycle.weights[i];
      const Superform f = Superform::function(R.phi[i]);
      const Superform dpf = d_prime(f), ddpf = d_double_prime(f);
      const Superform ddcf = d_prime(ddpf);
      auto& out = parts[i];
      for (const auto& p : pieces_of(sigma, alpha)) {
        const Superform& a = alpha.forms[p.form];
        if (!is_bounded(p.cell) && !vanishes_on(a, p.cell))
          throw Error(ErrorCode::HypothesisViolated, "envelope is not compactly supported on the cycle");
        out[0] += cell_integral(weighted(m, wedge(f, ddc_alpha.forms[p.form])), p.cell);
        out[1] += cell_integral(weighted(m, wedge(ddcf, a)), p.cell);
        out[2] += cell_boundary(weighted(m, wedge(dpf, a)), p.cell);
        out[3] += cell_boundary(weighted(m, wedge(ddpf, a)), p.cell);
      }
    });
    for (const auto& p : parts) {
      rep.phi_ddc_beta += p[0];
      rep.ddc_phi_beta += p[1];
      rep.boundary_dprime += p[2];
      rep.boundary_ddprime += p[3];
    }
    rep.delta_term += integrate(alpha, Dp);
  }
  rep.residual = rep.phi_ddc_beta - rep.ddc_phi_beta - rep.delta_term;
  rep.boundary_dprime -= rep.delta_term;
  rep.boundary_ddprime += rep.delta_term;
  return rep;
}

Rational poincare_lelong_residual(const PiecewisePolynomial& phi, const DeltaPreform& beta,
                                  const TropicalCycle& C, std::uint64_t seed) {
  return poincare_lelong(phi, beta, C, seed).residual;
}

PiecewisePolynomial bump(const RatVector& center, const RatVector& half_widths) {
  const int r = static_cast<int>(center.size());
  if (half_widths.size() != center.size()) throw Error(ErrorCode::DimensionMismatch, "center and widths differ");
  std::vector<Polyhedron> cells;
  std::vector<Polynomial> pieces;
  int total = 1;
  for (int i = 0; i < r; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<Constraint> in;
    bool inner = true;
    Polynomial f = Polynomial::constant(r, 1);
    for (int i = 0, c = code; i < r; ++i, c /= 3) {
      RatVector e = RatVector::Zero(r);
      e(i) = 1;
      const Rational lo = center(i) - half_widths(i), hi = center(i) + half_widths(i);
      switch (c % 3) {
        case 0: in.push_back({-e, -lo}); break;
        case 1:
          in.push_back({e, lo});
          in.push_back({-e, -hi});
          break;
        default: in.push_back({e, hi}); break;
      }
      if (c % 3 != 1) {
        inner = false;
        continue;
      }
      const Polynomial u = Polynomial::affine(e / half_widths(i), -center(i) / half_widths(i));
      f = f * (Polynomial::constant(r, 1) - u * u).pow(2);
    }
    cells.push_back(make_polyhedron(r, in));
    pieces.push_back(inner ? f : Polynomial(r));
  }
  return make_piecewise(r, cells, pieces);
}

}  // namespace tropo
