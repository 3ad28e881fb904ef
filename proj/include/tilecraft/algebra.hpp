#pragma once

// Integer Laurent polynomials in x, y and their action on configurations.

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tilecraft/detail/nullspace.hpp"
#include "tilecraft/grid.hpp"

namespace tilecraft {

using Coefficient = std::int64_t;

namespace detail {

inline Coefficient checked_add(Coefficient a, Coefficient b) {
  Coefficient r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::InvalidArgument, "coefficient overflow");
  return r;
}

inline Coefficient checked_mul(Coefficient a, Coefficient b) {
  Coefficient r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::InvalidArgument, "coefficient overflow");
  return r;
}

}  // namespace detail

// Finitely supported map exponent -> nonzero coefficient. The term (a,b)
// stands for x^a y^b. Terms iterate in ascending (b, a) order.
class LaurentPoly {
 public:
  using Terms = std::map<Vec2, Coefficient>;

  LaurentPoly() = default;
  explicit LaurentPoly(const Terms& terms) {
    for (auto [e, c] : terms)
      if (c != 0) terms_.emplace(e, c);
  }
  LaurentPoly(std::initializer_list<std::pair<const Vec2, Coefficient>> terms) : LaurentPoly(Terms(terms)) {}

  static LaurentPoly constant(Coefficient c) { return monomial({0, 0}, c); }
  static LaurentPoly monomial(Vec2 e, Coefficient c = 1) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(e, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Coefficient coefficient(Vec2 e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }
  DiscreteDomain support() const {
    std::vector<Vec2> cells;
    cells.reserve(terms_.size());
    for (const auto& [e, c] : terms_) cells.push_back(e);
    return DiscreteDomain(std::move(cells));
  }

  // Greatest exponent in the canonical order; the polynomial must be nonzero.
  std::pair<Vec2, Coefficient> leading_term() const { return *terms_.rbegin(); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (auto [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (auto [e, c] : o.terms_) add_term(e, detail::checked_mul(c, -1));
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const { return LaurentPoly{} - *this; }

  friend LaurentPoly operator*(Coefficient k, const LaurentPoly& p) {
    LaurentPoly out;
    if (k == 0) return out;
    for (auto [e, c] : p.terms_) out.terms_.emplace(e, detail::checked_mul(k, c));
    return out;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  void add_term(Vec2 e, Coefficient c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second = detail::checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }

 private:
  Terms terms_;
};

// (fg)_n = sum over s + t = n of f_s g_t.
inline LaurentPoly poly_mul(const LaurentPoly& f, const LaurentPoly& g) {
  LaurentPoly out;
  for (auto [s, a] : f.terms())
    for (auto [t, b] : g.terms()) out.add_term(s + t, detail::checked_mul(a, b));
  return out;
}

inline LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return poly_mul(f, g); }

// x^v.x y^v.y - 1
inline LaurentPoly difference_poly(Vec2 v) {
  if (v.is_zero()) throw Error(ErrorCode::ZeroVector, "difference polynomial needs a nonzero vector");
  return LaurentPoly{{v, 1}, {Vec2{0, 0}, -1}};
}

// (fc)_n = sum_t f_t c(n - t) for every n in the window.
inline std::map<Vec2, Coefficient> apply(const LaurentPoly& f, const Configuration& c, const DiscreteDomain& window) {
  std::map<Vec2, Coefficient> out;
  for (auto n : window) {
    Coefficient acc = 0;
    for (auto [t, coef] : f.terms()) {
      if (!c.defined_at(n - t))
        throw Error(ErrorCode::OutOfWindow, "product needs cell " + (n - t).str() + " outside window");
      acc = detail::checked_add(acc, detail::checked_mul(coef, c.at(n - t)));
    }
    out.emplace(n, acc);
  }
  return out;
}

struct AnnihilationResult {
  bool annihilates = false;
  std::size_t violations = 0;  // cells where fc is nonzero
  bool trivial = false;        // f is the zero polynomial

  explicit operator bool() const { return annihilates; }
};

inline AnnihilationResult annihilates(const LaurentPoly& f, const Configuration& c, const DiscreteDomain& window) {
  AnnihilationResult r;
  r.trivial = f.is_zero();
  for (const auto& [n, v] : apply(f, c, window))
    if (v != 0) ++r.violations;
  r.annihilates = r.violations == 0;
  return r;
}

struct AnnihilatorCertificate {
  LaurentPoly poly;
  DiscreteDomain window;  // where fc was checked to vanish
  bool verified = false;
  std::vector<LaurentPoly> factors;  // nonempty when the poly was built as a product
};

// difference_poly(p1) * difference_poly(p2) over the Hermite basis, verified
// on a window of 2 x 2 fundamental blocks.
inline AnnihilatorCertificate periodic_annihilator(const PeriodicConfig& c) {
  AnnihilatorCertificate cert;
  cert.factors = {difference_poly(c.p1()), difference_poly(c.p2())};
  cert.poly = poly_mul(cert.factors[0], cert.factors[1]);
  cert.window = DiscreteDomain::rect(2 * c.block_width(), 2 * c.block_height());
  cert.verified = annihilates(cert.poly, c, cert.window).annihilates;
  return cert;
}

// Primitive, first nonzero coefficient (smallest exponent in (y,x) order)
// positive.
inline LaurentPoly canonicalize(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  Coefficient g = 0;
  for (auto [e, c] : f.terms()) g = std::gcd(g, c < 0 ? -c : c);
  LaurentPoly::Terms terms;
  const Coefficient sign = f.terms().begin()->second < 0 ? -1 : 1;
  for (auto [e, c] : f.terms()) terms.emplace(e, sign * (c / g));
  return LaurentPoly(terms);
}

struct AnnihilatorSearch {
  std::optional<AnnihilatorCertificate> certificate;
  std::size_t nullity = 0;    // dimension of the solution space on the support
  bool zero_series = false;   // c vanishes on every cell the system reads

  bool found() const { return certificate.has_value(); }
};

// Looks for f supported on `support` with fc = 0 on `window`. The returned
// polynomial is the kernel basis vector of the first free support cell,
// canonicalized.
inline AnnihilatorSearch annihilator_search(const Configuration& c, const DiscreteDomain& window,
                                            const DiscreteDomain& support) {
  if (support.empty()) throw Error(ErrorCode::InvalidArgument, "support box is empty");
  std::vector<std::vector<Coefficient>> rows;
  rows.reserve(window.size());
  bool all_zero = true;
  for (auto n : window) {
    std::vector<Coefficient> row;
    row.reserve(support.size());
    for (auto t : support) {
      if (!c.defined_at(n - t))
        throw Error(ErrorCode::OutOfWindow, "search needs cell " + (n - t).str() + " outside window");
      row.push_back(c.at(n - t));
      all_zero = all_zero && row.back() == 0;
    }
    rows.push_back(std::move(row));
  }

  AnnihilatorSearch out;
  out.zero_series = all_zero;
  auto basis = detail::integer_nullspace(rows, support.size());
  out.nullity = basis.size();
  if (basis.empty()) return out;

  LaurentPoly::Terms terms;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& k = basis.front()[i];
    if (k == 0) continue;
    if (k > std::numeric_limits<Coefficient>::max() || k < std::numeric_limits<Coefficient>::min())
      throw Error(ErrorCode::InvalidArgument, "annihilator coefficient exceeds 64 bits");
    terms.emplace(support[i], static_cast<Coefficient>(k));
  }
  AnnihilatorCertificate cert;
  cert.poly = canonicalize(LaurentPoly(terms));
  cert.window = window;
  cert.verified = annihilates(cert.poly, c, window).annihilates;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace tilecraft
