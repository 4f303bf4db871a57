#include "redei/poly.hpp"

#include <numeric>

#include "redei/error.hpp"

namespace redei {

namespace {

void require_same_field(const Polynomial& a, const Polynomial& b) {
  if (!(a.field() == b.field())) {
    throw Error(ErrorCode::SpecMismatch, "polynomials over different fields");
  }
}

}  // namespace

Polynomial::Polynomial(FieldSpec field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (FieldElement c : coeffs_) {
    if (!field_.contains(c)) throw Error(ErrorCode::CodeOutOfRange, "coefficient outside the field");
  }
  normalize();
}

void Polynomial::normalize() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == field_.zero()) coeffs_.pop_back();
}

Polynomial Polynomial::constant(const FieldSpec& field, FieldElement c) { return Polynomial(field, {c}); }

Polynomial Polynomial::monomial(const FieldSpec& field, FieldElement c, std::size_t degree) {
  std::vector<FieldElement> coeffs(degree + 1, field.zero());
  coeffs[degree] = c;
  return Polynomial(field, std::move(coeffs));
}

Polynomial Polynomial::identity(const FieldSpec& field) { return monomial(field, field.one(), 1); }

Polynomial Polynomial::linear(const FieldSpec& field, FieldElement root) {
  return Polynomial(field, {field.neg(root), field.one()});
}

FieldElement Polynomial::evaluate(FieldElement x) const {
  FieldElement acc = field_.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
  return acc;
}

Polynomial Polynomial::scale(FieldElement c) const {
  std::vector<FieldElement> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = field_.mul(coeffs_[i], c);
  return Polynomial(field_, std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  const FieldSpec& f = a.field_;
  std::vector<FieldElement> out(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(a.coeff(i), b.coeff(i));
  return Polynomial(f, std::move(out));
}

Polynomial operator-(const Polynomial& a) {
  std::vector<FieldElement> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.neg(a.coeffs_[i]);
  return Polynomial(a.field_, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_field(a, b);
  const FieldSpec& f = a.field_;
  if (a.is_zero() || b.is_zero()) return Polynomial(f);
  std::vector<FieldElement> out(a.coeffs_.size() + b.coeffs_.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == f.zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] = f.add(out[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return Polynomial(f, std::move(out));
}

Polynomial derivative(const Polynomial& f) {
  const FieldSpec& field = f.field();
  if (f.is_constant()) return Polynomial(field);
  std::vector<FieldElement> out(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
    out[i - 1] = field.mul(field.from_integer(static_cast<std::int64_t>(i % field.p())), f.coeffs()[i]);
  }
  return Polynomial(field, std::move(out));
}

DivMod quotient_rem(const Polynomial& num, const Polynomial& den) {
  require_same_field(num, den);
  const FieldSpec& f = num.field();
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "division by the zero polynomial");
  if (num.degree() < den.degree()) return {Polynomial(f), num};

  std::vector<FieldElement> rem(num.coeffs().begin(), num.coeffs().end());
  const auto d = den.coeffs();
  const std::size_t dd = d.size() - 1;
  const FieldElement lead_inv = f.inv(d.back());
  std::vector<FieldElement> quot(rem.size() - dd, f.zero());
  for (std::size_t k = rem.size(); k-- > dd;) {
    const FieldElement c = f.mul(rem[k], lead_inv);
    quot[k - dd] = c;
    if (c == f.zero()) continue;
    for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, d[i]));
  }
  rem.resize(dd);
  return {Polynomial(f, std::move(quot)), Polynomial(f, std::move(rem))};
}

std::optional<Polynomial> exact_divide(const Polynomial& num, const Polynomial& den) {
  auto [quot, rem] = quotient_rem(num, den);
  if (!rem.is_zero()) return std::nullopt;
  return std::move(quot);
}

Polynomial pow(const Polynomial& f, std::uint64_t n) {
  Polynomial result = Polynomial::constant(f.field(), f.field().one());
  Polynomial base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::vector<FieldElement> elementary_symmetric(const FieldSpec& field, std::span<const FieldElement> values) {
  // sigma[j] after processing v_1..v_i are the symmetric functions of those i values.
  std::vector<FieldElement> sigma(values.size() + 1, field.zero());
  sigma[0] = field.one();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!field.contains(values[i])) throw Error(ErrorCode::SpecMismatch, "value outside the field");
    for (std::size_t j = i + 1; j >= 1; --j) sigma[j] = field.add(sigma[j], field.mul(values[i], sigma[j - 1]));
  }
  return sigma;
}

Polynomial from_roots(const FieldSpec& field, std::span<const FieldElement> roots) {
  const auto sigma = elementary_symmetric(field, roots);
  const std::size_t n = roots.size();
  std::vector<FieldElement> coeffs(n + 1);
  for (std::size_t j = 0; j <= n; ++j) coeffs[n - j] = (j % 2 == 0) ? sigma[j] : field.neg(sigma[j]);
  return Polynomial(field, std::move(coeffs));
}

RootMultiset roots_with_multiplicity(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const FieldSpec& field = f.field();
  RootMultiset roots;
  for (FieldElement r : field.elements()) {
    if (f.evaluate(r) != field.zero()) continue;
    const Polynomial factor = Polynomial::linear(field, r);
    Polynomial rest = f;
    std::uint32_t mult = 0;
    while (auto q = exact_divide(rest, factor)) {
      rest = std::move(*q);
      ++mult;
    }
    roots.emplace(r, mult);
  }
  return roots;
}

std::uint32_t p_adic_valuation(std::uint64_t n, std::uint32_t p) noexcept {
  std::uint32_t v = 0;
  while (n > 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

LinearSplit linear_split(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "linear split of the zero polynomial");
  if (!f.is_monic()) throw Error(ErrorCode::NonMonic, "linear split requires a monic polynomial");
  const FieldSpec& field = f.field();
  const RootMultiset roots = roots_with_multiplicity(f);
  Polynomial fully = Polynomial::constant(field, field.one());
  std::uint64_t g = 0;
  for (const auto& [root, mult] : roots) {
    fully = fully * pow(Polynomial::linear(field, root), mult);
    g = std::gcd(g, std::uint64_t{mult});
  }
  auto nonlinear = exact_divide(f, fully);
  std::optional<std::uint32_t> l1;
  if (!roots.empty()) l1 = p_adic_valuation(g, field.p());
  return {std::move(fully), std::move(*nonlinear), l1};
}

PthContent pth_content(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "p-th content of the zero polynomial");
  const FieldSpec& field = f.field();
  if (f.is_constant()) return {0, f};
  std::uint64_t g = 0;
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] != field.zero()) g = std::gcd(g, std::uint64_t{i});
  }
  const std::uint32_t l = p_adic_valuation(g, field.p());
  std::uint64_t step = 1;
  for (std::uint32_t i = 0; i < l; ++i) step *= field.p();
  // Inverse of x -> x^{p^l} on F_q is x -> x^{p^{(e - l mod e) mod e}}.
  const std::uint32_t e = field.e();
  const std::uint32_t back = (e - l % e) % e;
  std::vector<FieldElement> reduced(static_cast<std::size_t>((f.coeffs().size() - 1) / step) + 1, field.zero());
  for (std::size_t i = 0; i < reduced.size(); ++i) reduced[i] = field.frobenius(f.coeffs()[i * step], back);
  return {l, Polynomial(field, std::move(reduced))};
}

}  // namespace redei
