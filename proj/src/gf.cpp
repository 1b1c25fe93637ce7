#include "cutblock/gf.hpp"

#include <array>
#include <cassert>
#include <map>
#include <mutex>

namespace cutblock {

namespace {

struct ConwayEntry {
  std::uint16_t p, e;
  std::uint32_t enc;  // coefficients ascending, digit i of the base-p encoding
};

// Conway polynomials (Luebeck's standard tables) for every prime power
// p^e <= 1024 with e >= 2.  Frozen here so that element encodings never
// depend on runtime searches.
constexpr ConwayEntry kConwayTable[] = {
    {2, 2, 7u},      // x^2 + x + 1
    {2, 3, 11u},     // x^3 + x + 1
    {2, 4, 19u},     // x^4 + x + 1
    {2, 5, 37u},     // x^5 + x^2 + 1
    {2, 6, 91u},     // x^6 + x^4 + x^3 + x + 1
    {2, 7, 131u},    // x^7 + x + 1
    {2, 8, 285u},    // x^8 + x^4 + x^3 + x^2 + 1
    {2, 9, 529u},    // x^9 + x^4 + 1
    {2, 10, 1135u},  // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    {3, 2, 17u},     // x^2 + 2x + 2
    {3, 3, 34u},     // x^3 + 2x + 1
    {3, 4, 137u},    // x^4 + 2x^3 + 2
    {3, 5, 250u},    // x^5 + 2x + 1
    {3, 6, 908u},    // x^6 + 2x^4 + x^2 + 2x + 2
    {5, 2, 47u},     // x^2 + 4x + 2
    {5, 3, 143u},    // x^3 + 3x + 3
    {5, 4, 747u},    // x^4 + 4x^2 + 4x + 2
    {7, 2, 94u},     // x^2 + 6x + 3
    {7, 3, 641u},    // x^3 + 6x^2 + 4
    {11, 2, 200u},   // x^2 + 7x + 2
    {13, 2, 327u},   // x^2 + 12x + 2
    {17, 2, 564u},   // x^2 + 16x + 3
    {19, 2, 705u},   // x^2 + 18x + 2
    {23, 2, 1017u},  // x^2 + 21x + 5
    {29, 2, 1539u},  // x^2 + 24x + 2
    {31, 2, 1863u},  // x^2 + 29x + 3
};

// dense polynomials over GF(p), coefficients ascending; used only at
// construction time
using Poly = std::vector<int>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] = int((r[i + j] + 1LL * a[i] * b[j]) % p);
  ptrim(r);
  return r;
}

// remainder of a modulo monic m
Poly pmod(Poly a, const Poly& m, unsigned p) {
  ptrim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    int lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i < m.size(); ++i) {
      long long v = a[i + shift] - 1LL * lead * m[i];
      a[i + shift] = int(((v % p) + p) % p);
    }
    ptrim(a);
    if (a.empty()) break;
  }
  return a;
}

bool modulus_is_irreducible(const Poly& m, unsigned p) {
  // trial division by every monic polynomial of degree 1..deg(m)/2
  const std::size_t half = (m.size() - 1) / 2;
  for (std::size_t d = 1; d <= half; ++d) {
    std::vector<int> g(d + 1, 0);
    g[d] = 1;
    // odometer over the d free coefficients
    for (;;) {
      if (pmod(m, g, p).empty()) return false;
      std::size_t i = 0;
      while (i < d && ++g[i] == int(p)) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

unsigned smallest_primitive_root(unsigned p) {
  auto prime_factors = [](unsigned n) {
    std::vector<unsigned> fs;
    for (unsigned d = 2; 1ULL * d * d <= n; ++d)
      if (n % d == 0) {
        fs.push_back(d);
        while (n % d == 0) n /= d;
      }
    if (n > 1) fs.push_back(n);
    return fs;
  };
  auto powmod = [](unsigned long long b, unsigned long long e, unsigned long long m) {
    unsigned long long r = 1;
    b %= m;
    while (e) {
      if (e & 1) r = r * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return r;
  };
  const auto fs = prime_factors(p - 1);
  for (unsigned g = 1; g < p; ++g) {
    bool ok = true;
    for (unsigned r : fs)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error("no primitive root found (unreachable)");
}

}  // namespace

Field::Field(unsigned q) : q_(q) {
  if (q < 2) throw NotPrimePower("field order must be at least 2, got " + std::to_string(q));
  if (q > kMaxFieldOrder)
    throw FieldTooLarge("field order " + std::to_string(q) + " exceeds the cap " +
                        std::to_string(kMaxFieldOrder));
  // factor q = p^e
  unsigned p = 0, n = q;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      p = d;
      break;
    }
  if (p == 0) p = n;  // q itself prime
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1)
    throw NotPrimePower(std::to_string(q) + " is not a prime power");
  p_ = p;
  e_ = e;

  // fixed modulus: Conway polynomial for e >= 2, x - g for prime fields
  if (e_ == 1) {
    unsigned g = smallest_primitive_root(p_);
    modulus_ = {Elt((p_ - g) % p_), 1};
  } else {
    const ConwayEntry* hit = nullptr;
    for (const auto& ent : kConwayTable)
      if (ent.p == p_ && ent.e == e_) {
        hit = &ent;
        break;
      }
    if (!hit) throw Error("missing modulus table entry (unreachable for q <= 1024)");
    std::uint32_t enc = hit->enc;
    while (enc) {
      modulus_.push_back(Elt(enc % p_));
      enc /= p_;
    }
    Poly m(modulus_.begin(), modulus_.end());
    if (!modulus_is_irreducible(m, p_))
      throw Error("modulus table entry is reducible (corrupt table)");
  }

  // digit decomposition helpers on encodings
  const unsigned p0 = p_;
  auto decode = [&](Elt a, std::array<int, 11>& d) {
    for (unsigned i = 0; i < e_; ++i) {
      d[i] = int(a % p0);
      a = Elt(a / p0);
    }
  };
  auto encode = [&](const std::array<int, 11>& d) {
    unsigned v = 0;
    for (unsigned i = e_; i-- > 0;) v = v * p0 + unsigned(d[i]);
    return Elt(v);
  };

  // additive tables: digitwise arithmetic mod p
  add_.resize(std::size_t(q_) * q_);
  neg_.resize(q_);
  std::array<int, 11> da{}, db{}, dc{};
  for (unsigned a = 0; a < q_; ++a) {
    decode(Elt(a), da);
    for (unsigned i = 0; i < e_; ++i) dc[i] = (p0 - da[i]) % p0;
    neg_[a] = encode(dc);
    for (unsigned b = 0; b <= a; ++b) {
      decode(Elt(b), db);
      for (unsigned i = 0; i < e_; ++i) dc[i] = (da[i] + db[i]) % p0;
      Elt s = encode(dc);
      add_[std::size_t(a) * q_ + b] = s;
      add_[std::size_t(b) * q_ + a] = s;
    }
  }

  // exp/log by iterating the generator; covering all of GF(q)* doubles as a
  // primitivity check of the table entry
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  std::vector<char> seen(q_, 0);
  Poly x = (e_ == 1) ? Poly{int(smallest_primitive_root(p_))} : Poly{0, 1};
  Poly m(modulus_.begin(), modulus_.end());
  Poly cur{1};
  for (unsigned i = 0; i < q_ - 1; ++i) {
    unsigned enc = 0;
    for (std::size_t j = cur.size(); j-- > 0;) enc = enc * p0 + unsigned(cur[j]);
    if (seen[enc]) throw Error("modulus table entry is not primitive (corrupt table)");
    seen[enc] = 1;
    exp_[i] = Elt(enc);
    log_[enc] = i;
    cur = pmod(pmul(cur, x, p0), m, p0);
  }

  // multiplicative tables via exp/log
  mul_.assign(std::size_t(q_) * q_, 0);
  inv_.assign(q_, 0);
  for (unsigned a = 1; a < q_; ++a) {
    inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    const unsigned la = log_[a];
    Elt* row = mul_.data() + std::size_t(a) * q_;
    for (unsigned b = 1; b < q_; ++b) row[b] = exp_[(la + log_[b]) % (q_ - 1)];
  }
}

Elt Field::pow(Elt a, long long n) const {
  if (a == 0) {
    if (n == 0) return 1;
    if (n < 0) throw DivisionByZero("negative power of zero");
    return 0;
  }
  const long long ord = q_ - 1;
  long long r = n % ord;
  if (r < 0) r += ord;
  return exp_[(1ULL * log_[a] * (unsigned long long)r) % ord];
}

FieldPtr make_field(unsigned q) {
  static std::mutex mu;
  static std::map<unsigned, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  FieldPtr f(new Field(q));
  cache.emplace(q, f);
  return f;
}

Elt embed_subfield(const Field& from, const Field& to, Elt a) {
  if (from.p() != to.p() || to.e() % from.e() != 0)
    throw NotSubfield("GF(" + std::to_string(from.q()) + ") is not a subfield of GF(" +
                      std::to_string(to.q()) + ")");
  if (a == 0) return 0;
  const std::uint64_t stride = (std::uint64_t(to.q()) - 1) / (from.q() - 1);
  return to.gen_pow(std::uint64_t(from.log(a)) * stride);
}

}  // namespace cutblock
