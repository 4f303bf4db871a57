#include "redei/ff.hpp"

#include <algorithm>
#include <sstream>

#include "redei/error.hpp"

namespace redei {

struct FieldSpec::Tables {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // monic, size e + 1
  std::uint64_t modulus_code = 0;
  std::vector<std::uint32_t> exp;      // exp[i] = g^i, size 2(q - 1)
  std::vector<std::uint32_t> log;      // log[0] unused
  std::vector<std::uint32_t> frob;     // a -> a^p
  std::vector<std::uint32_t> negate;
  std::vector<std::uint32_t> add;      // q x q, only for small q
};

namespace {

// Addition tables are kept for fields up to this size (q^2 entries).
constexpr std::uint32_t kAddTableLimit = 256;

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint64_t code, std::uint32_t p, std::uint32_t e) {
  Digits d(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    d[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint64_t code = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) code = code * p + *it;
  return static_cast<std::uint32_t>(code);
}

// Remainder of a by a monic b over F_p; both constant-term first.
Digits poly_mod_p(Digits a, const Digits& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * std::uint64_t{b[i]}) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

Digits poly_mul_p(const Digits& a, const Digits& b, std::uint32_t p) {
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return r;
}

bool is_zero_digits(const Digits& d) {
  return std::all_of(d.begin(), d.end(), [](std::uint32_t c) { return c == 0; });
}

// Monic degree-e polynomial over F_p is irreducible iff no monic polynomial of
// degree 1..e/2 divides it.
bool irreducible_over_prime(const Digits& f, std::uint32_t p) {
  const std::uint32_t e = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits g = to_digits(code, p, d);
      g.push_back(1);
      if (is_zero_digits(poly_mod_p(f, g, p))) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::construct(std::uint64_t p, std::uint64_t e, std::uint64_t cap) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    q *= p;
    if (q > cap) {
      throw Error(ErrorCode::SizeLimit, "p^e exceeds the field size cap " + std::to_string(cap));
    }
  }

  auto t = std::make_shared<Tables>();
  t->p = static_cast<std::uint32_t>(p);
  t->e = static_cast<std::uint32_t>(e);
  t->q = static_cast<std::uint32_t>(q);
  const std::uint32_t P = t->p;
  const std::uint32_t E = t->e;

  if (E == 1) {
    t->modulus = {0, 1};
    t->modulus_code = 0;
  } else {
    for (std::uint64_t code = 0; code < q; ++code) {
      Digits f = to_digits(code, P, E);
      f.push_back(1);
      if (irreducible_over_prime(f, P)) {
        t->modulus = std::move(f);
        t->modulus_code = code;
        break;
      }
    }
  }

  const std::uint32_t Q = t->q;
  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
    if (E == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % P);
    return from_digits(poly_mod_p(poly_mul_p(to_digits(a, P, E), to_digits(b, P, E), P), t->modulus, P), P);
  };
  auto slow_pow = [&](std::uint32_t a, std::uint64_t n) {
    std::uint32_t r = 1;
    while (n > 0) {
      if (n & 1) r = slow_mul(r, a);
      a = slow_mul(a, a);
      n >>= 1;
    }
    return r;
  };

  // Primitive element: smallest code whose order is exactly q - 1.
  std::uint32_t generator = 1;
  if (Q > 2) {
    const auto factors = prime_factors(Q - 1);
    for (std::uint32_t g = 2; g < Q; ++g) {
      const bool primitive = std::all_of(factors.begin(), factors.end(),
                                         [&](std::uint64_t r) { return slow_pow(g, (Q - 1) / r) != 1; });
      if (primitive) {
        generator = g;
        break;
      }
    }
  }

  t->exp.assign(2 * std::size_t{Q - 1}, 0);
  t->log.assign(Q, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < Q - 1; ++i) {
    t->exp[i] = x;
    t->exp[i + Q - 1] = x;
    t->log[x] = i;
    x = slow_mul(x, generator);
  }

  t->negate.resize(Q);
  for (std::uint32_t a = 0; a < Q; ++a) {
    Digits d = to_digits(a, P, E);
    for (auto& c : d) c = (P - c) % P;
    t->negate[a] = from_digits(d, P);
  }

  if (Q <= kAddTableLimit) {
    t->add.resize(std::size_t{Q} * Q);
    for (std::uint32_t a = 0; a < Q; ++a) {
      const Digits da = to_digits(a, P, E);
      for (std::uint32_t b = 0; b < Q; ++b) {
        Digits db = to_digits(b, P, E);
        for (std::uint32_t i = 0; i < E; ++i) db[i] = (da[i] + db[i]) % P;
        t->add[std::size_t{a} * Q + b] = from_digits(db, P);
      }
    }
  }

  t->frob.resize(Q);
  for (std::uint32_t a = 0; a < Q; ++a) t->frob[a] = slow_pow(a, P);

  return FieldSpec(std::move(t));
}

std::uint32_t FieldSpec::p() const noexcept { return t_->p; }
std::uint32_t FieldSpec::e() const noexcept { return t_->e; }
std::uint32_t FieldSpec::q() const noexcept { return t_->q; }
std::span<const std::uint32_t> FieldSpec::modulus() const noexcept { return t_->modulus; }
std::uint64_t FieldSpec::modulus_code() const noexcept { return t_->modulus_code; }

void FieldSpec::check(FieldElement a) const {
  if (a.code >= t_->q) {
    throw Error(ErrorCode::CodeOutOfRange,
                "code " + std::to_string(a.code) + " outside [0, " + std::to_string(t_->q) + ")");
  }
}

FieldElement FieldSpec::element(std::uint64_t code) const {
  if (code >= t_->q) {
    throw Error(ErrorCode::CodeOutOfRange,
                "code " + std::to_string(code) + " outside [0, " + std::to_string(t_->q) + ")");
  }
  return FieldElement{static_cast<std::uint32_t>(code)};
}

FieldElement FieldSpec::from_integer(std::int64_t n) const noexcept {
  const std::int64_t p = t_->p;
  return FieldElement{static_cast<std::uint32_t>(((n % p) + p) % p)};
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  const auto& t = *t_;
  if (!t.add.empty()) return FieldElement{t.add[std::size_t{a.code} * t.q + b.code]};
  if (t.p == 2) return FieldElement{a.code ^ b.code};
  if (t.e == 1) return FieldElement{(a.code + b.code) % t.p};
  std::uint32_t result = 0;
  std::uint32_t place = 1;
  std::uint32_t x = a.code;
  std::uint32_t y = b.code;
  for (std::uint32_t i = 0; i < t.e; ++i) {
    result += ((x % t.p + y % t.p) % t.p) * place;
    x /= t.p;
    y /= t.p;
    place *= t.p;
  }
  return FieldElement{result};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  check(a);
  return FieldElement{t_->negate[a.code]};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (a.code == 0 || b.code == 0) return zero();
  return FieldElement{t_->exp[std::size_t{t_->log[a.code]} + t_->log[b.code]]};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  check(a);
  if (a.code == 0) throw Error(ErrorCode::ZeroInverse, "inverse of zero");
  const std::uint32_t n = t_->q - 1;
  return FieldElement{t_->exp[(n - t_->log[a.code]) % n]};
}

FieldElement FieldSpec::div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t n) const {
  check(a);
  FieldElement result = one();
  FieldElement base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

FieldElement FieldSpec::frobenius(FieldElement a, std::uint64_t l) const {
  check(a);
  for (std::uint64_t i = 0; i < l % t_->e; ++i) a = FieldElement{t_->frob[a.code]};
  return a;
}

std::vector<FieldElement> FieldSpec::elements() const {
  std::vector<FieldElement> out(t_->q);
  for (std::uint32_t i = 0; i < t_->q; ++i) out[i] = FieldElement{i};
  return out;
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  os << t_->p << ' ' << t_->e << ' ' << t_->modulus_code;
  return os.str();
}

std::string FieldSpec::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = t_->modulus.size(); i-- > 0;) {
    const std::uint32_t c = t_->modulus[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

bool operator==(const FieldSpec& lhs, const FieldSpec& rhs) noexcept {
  if (lhs.t_ == rhs.t_) return true;
  return lhs.t_->p == rhs.t_->p && lhs.t_->e == rhs.t_->e && lhs.t_->modulus == rhs.t_->modulus;
}

}  // namespace redei
